"""Sweep small groups for pairs of equal-order subgroups whose conjugates cover the group.

Along the way, confirm that cosets of a transitive group fix one point on average.
"""

import random

from derange.constructions import alternating, dihedral, direct_product, psl2, symmetric
from derange.derangements import check_equal_order_coverings, coset_average_fixed_points
from derange.perm import Permutation, format_cycles

groups = {
    "S4": symmetric(4),
    "A5": alternating(5),
    "D12": dihedral(12),
    "S3xS3": direct_product(symmetric(3), symmetric(3)),
    "PSL(2,7)": psl2(7),
}
for name, g in groups.items():
    rep = check_equal_order_coverings(g, name)
    print(f"{name:9s} |G|={g.order:4d}  subgroup classes {rep.class_count:3d}  "
          f"equal-order pairs {rep.pair_count:3d}  counterexamples {len(rep.counterexamples)}")

rng = random.Random(1)
g = psl2(7)
for _ in range(3):
    images = list(range(g.degree))
    rng.shuffle(images)
    h = Permutation(images)
    print(f"average fixed points on PSL(2,7)*{format_cycles(h)}: {coset_average_fixed_points(g, h)}")
