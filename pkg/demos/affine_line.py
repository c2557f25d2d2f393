"""The affine group of the line acting on points and on nonzero scalars.

Each orbit on its own has plenty of derangements, yet no single element moves
every point of both orbits at once.
"""

from derange.actions import action_kernel
from derange.constructions import agl1
from derange.perm import format_cycles
from derange.derangements import find_derangement, find_prime_power_derangement

for p in (5, 7, 11, 13):
    a = agl1(p)
    both = find_derangement(a)
    on_points = find_prime_power_derangement(a.restricted("affine"))
    kernel = action_kernel(a, "regular")
    print(f"p={p:2d}  orbits {a.orbit_sizes}  |G|={a.group.order}")
    print(f"      on the line alone: {format_cycles(on_points.witness)} (order {on_points.witness_order})")
    print(f"      kernel on the scalars has order {kernel.order}")
    print(f"      derangement on both orbits: {both.found}")
