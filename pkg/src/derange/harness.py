"""Sweeps over the default catalog: equal-order coverings, derangement existence, coset averages."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .actions import is_transitive
from .constructions import build_catalog_entry, catalog_manifest
from .derangements import (
    check_equal_order_coverings,
    coset_average_fixed_points,
    find_derangement,
    find_prime_power_derangement,
)
from .errors import InvariantViolation
from .lattice import DEFAULT_LATTICE_CAP
from .perm import Permutation, format_cycles

HARNESS_MAX_ORDER = 200


def _sweep_entry(args) -> dict:
    entry, lattice_cap = args
    a = build_catalog_entry(entry)
    rep = check_equal_order_coverings(a.group, entry["name"], cross_check=True, lattice_cap=lattice_cap)
    return rep.to_dict()


def _harness_tasks(max_order: int, lattice_cap: int):
    """Catalog entries to sweep, plus entries skipped because an isomorphic group is swept.

    A coset entry whose image has the same order as its base group is a faithful
    action of that group, so it is abstractly the base group and gives the same
    covering verdicts.
    """
    order_of = {}
    tasks, skipped = [], []
    for e in catalog_manifest(lattice_cap):
        g = build_catalog_entry(e).group
        order_of[e["name"]] = g.order
        if g.order > max_order:
            continue
        if e["family"] == "coset" and order_of[e["params"][0]] == g.order:
            skipped.append({"name": e["name"], "same_group_as": e["params"][0]})
            continue
        tasks.append(e)
    return tasks, skipped


@dataclass
class HarnessReport:
    max_order: int
    groups: list[dict]
    skipped: list[dict]
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def pairs(self) -> int:
        return sum(g["pairs_checked"] for g in self.groups)

    def to_dict(self) -> dict:
        return {
            "verdict": "no counterexample" if not self.counterexamples else "counterexample found",
            "max_order": self.max_order,
            "groups_swept": len(self.groups),
            "pairs_checked": self.pairs,
            "counterexamples": self.counterexamples,
            "groups": self.groups,
            "skipped_as_isomorphic": self.skipped,
        }


def conjecture_harness(
    max_order: int = HARNESS_MAX_ORDER, jobs: int = 1, lattice_cap: int = DEFAULT_LATTICE_CAP
) -> HarnessReport:
    """Check that no two proper subgroups of equal order form a normal covering.

    Runs over every catalog group of order at most ``max_order``; each group is
    an independent task and results come back in manifest order.
    """
    tasks, skipped = _harness_tasks(max_order, lattice_cap)
    args = [(e, lattice_cap) for e in tasks]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(_sweep_entry, args, chunksize=4))
    else:
        groups = [_sweep_entry(a) for a in args]
    report = HarnessReport(max_order, groups, skipped)
    for g in groups:
        for c in g["counterexamples"]:
            report.counterexamples.append({"group": g["group"], **c})
    return report


def sweep_single_group(g, label: str = "", lattice_cap: int = DEFAULT_LATTICE_CAP) -> HarnessReport:
    rep = check_equal_order_coverings(g, label, cross_check=True, lattice_cap=lattice_cap).to_dict()
    out = HarnessReport(g.order, [rep], [])
    out.counterexamples = [{"group": label, **c} for c in rep["counterexamples"]]
    return out


# transitive actions ------------------------------------------------------------------------


def transitive_catalog_actions(max_order: int | None = None, lattice_cap: int = DEFAULT_LATTICE_CAP):
    """``(name, group)`` for each transitive catalog action of degree > 1."""
    for e in catalog_manifest(lattice_cap):
        a = build_catalog_entry(e)
        g = a.group
        if max_order is not None and g.order > max_order:
            continue
        if g.degree > 1 and is_transitive(g):
            yield e["name"], g


def derangement_sweep(max_order: int | None = None, lattice_cap: int = DEFAULT_LATTICE_CAP) -> list[dict]:
    """For each transitive catalog action: a derangement and one of prime-power order."""
    out = []
    for name, g in transitive_catalog_actions(max_order, lattice_cap):
        any_ = find_derangement(g)
        pp = find_prime_power_derangement(g)
        out.append(
            {
                "name": name,
                "degree": g.degree,
                "order": g.order,
                "derangement": any_.found,
                "prime_power_derangement": pp.found,
                "witness": format_cycles(pp.witness) if pp.found else None,
                "prime": pp.prime,
            }
        )
    return out


def coset_average_samples(samples: int = 500, seed: int = 0, max_order: int = 5000) -> list[dict]:
    """Exact average fixed-point counts over cosets ``G h`` for random ``h`` in Sym(Omega)."""
    pool = [(n, g) for n, g in transitive_catalog_actions(max_order)]
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        name, g = pool[rng.randrange(len(pool))]
        images = list(range(g.degree))
        rng.shuffle(images)
        h = Permutation(images)
        avg = coset_average_fixed_points(g, h)
        if avg != Fraction(1):
            raise InvariantViolation(f"coset average {avg} for {name} and {format_cycles(h)}")
        out.append({"group": name, "h": format_cycles(h), "average": str(avg)})
    return out
