"""Derangements in affine groups: a constructed element and the GL(3,2) witness on 8 points."""

from derange.affine import (
    affine_derangement_from,
    congruence_sweep,
    gl32_on_eight_points,
    gl_elements,
    gl_generators,
    isbell_witness,
)
from derange.linalg import MatrixFp
from derange.perm import format_cycles

# H = GL(2,2) acting on F_2^2 and on the cosets of V:C3
h = MatrixFp(2, ((1, 1), (0, 1)))
c3 = [MatrixFp(2, ((0, 1), (1, 1)))]
rep = affine_derangement_from(h, gl_generators(2, 2), c3, (1, 0))
print("constructed element:", format_cycles(rep.permutation), "orbit degrees", rep.degrees, "verified", rep.verified)
print("with v inside the image of h - 1:", affine_derangement_from(h, gl_generators(2, 2), c3, (0, 1)).status)

G, rho = gl32_on_eight_points()
w = isbell_witness(G, rho)
print(f"GL(3,2) on 8 points, with a 3-dimensional module over F_2: {w.status}")
print("  element", format_cycles(w.witness), "fixes", w.fixed_vector)

for d, p in ((2, 3), (3, 2)):
    print(f"fixed-space congruence over GL({d},{p}):", congruence_sweep(gl_elements(d, p), p))
