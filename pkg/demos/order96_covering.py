"""A group of order 96 given by a presentation, covered by two subgroups of different orders."""

from derange.constructions import order_96_example
from derange.derangements import is_normal_covering
from derange.perm import format_cycles

ex = order_96_example()
pr = ex.presentation
print("generators:", ", ".join(pr.generators))
print("relators:", ", ".join(pr.word_str(w) for w in pr.relators))
print(f"realised on {ex.group.degree} points: {ex.degree_rule}")
for key, value in ex.checks.items():
    print(f"  {key}: {value}")

rep = is_normal_covering(ex.group, [ex.h1, ex.h2], cross_check=True)
print("conjugates of H1 and H2 cover G:", rep.covered)
alone = is_normal_covering(ex.group, [ex.h1])
print("H1 alone misses", format_cycles(alone.uncovered_witness))
