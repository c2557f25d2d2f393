"""Exceptional root systems and the arithmetic bounds used for p-parts of group orders."""

from derange.invariants import (
    check_ppart_bounds,
    field_bound_grid,
    shipped_records,
    valuation_bound_grid,
)
from derange.roots import build_root_system, end_node_roots

for rank in (6, 7, 8):
    rep = end_node_roots(rank, build_root_system(rank))
    print(f"E{rank}: {rep.root_count} roots; last node without its neighbour: {rep.filtered}"
          f"{'  (differs from the root named in the argument)' if rep.discrepancy else ''}")

first = valuation_bound_grid()
print(f"first bound: {first['checked']} cases, failures {first['failures']}, "
      f"failures where p does not divide r {first['failures_in_applied_domain']}")
second = field_bound_grid()
print(f"second bound: {second['checked']} cases, failures {second['failures']}")

for rec in shipped_records():
    rep = check_ppart_bounds(rec).to_dict()
    exceptions = [(e["p"], e["inequality"]) for e in rep["entries"] if e["status"] == "exception"]
    print(f"{rep['label']:8s} verdict {rep['verdict']}" + (f", exceptions at {exceptions}" if exceptions else ""))
