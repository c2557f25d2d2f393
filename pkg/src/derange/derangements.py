"""Derangement search, normal coverings and the equal-order covering sweep."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .actions import MultiOrbitAction, action_kernel, coset_action, disjoint_union, is_transitive
from .errors import InvalidInput, InvariantViolation
from .group import PermGroup, rows_to_indices
from .lattice import SubgroupLattice, SubgroupRecord
from .numtheory import prime_factors, prime_power_base
from .perm import Permutation, element_order, format_cycles


def _as_action(a) -> MultiOrbitAction:
    if isinstance(a, MultiOrbitAction):
        return a
    if isinstance(a, PermGroup):
        return MultiOrbitAction.from_group(a)
    raise InvalidInput(f"expected an action, got {type(a).__name__}")


@dataclass
class DerangementReport:
    action: str
    verdict: str  # "has_derangement", "none" or "inapplicable"
    witness: Permutation | None = None
    witness_order: int | None = None
    fixed_per_orbit: list[int] | None = None
    prime: int | None = None
    classes_examined: int = 0
    elements_examined: int = 0
    status: str = ""
    assumptions: list[tuple[str, str, bool]] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.verdict == "has_derangement"

    def to_dict(self) -> dict:
        return {
            "action": self.action,
            "verdict": self.verdict,
            "witness_cycles": None if self.witness is None else format_cycles(self.witness),
            "witness_order": None if self.witness_order is None else str(self.witness_order),
            "fixed_per_orbit": self.fixed_per_orbit,
            "prime": None if self.prime is None else str(self.prime),
            "stats": {
                "classes_examined": self.classes_examined,
                "elements_examined": str(self.elements_examined),
            },
            "status": self.status,
            "assumptions_checked": [
                {"name": n, "how": how, "result": ok} for n, how, ok in self.assumptions
            ],
        }


def _describe(a: MultiOrbitAction) -> str:
    return f"degree {a.domain_size}, order {a.group.order}, orbit sizes {a.orbit_sizes}"


def is_derangement(p: Permutation, a=None) -> bool:
    if a is not None:
        a = _as_action(a)
        if p.degree != a.domain_size:
            raise InvalidInput("degree mismatch")
    return all(i != j for i, j in enumerate(p.images))


def _fixed_per_orbit(p: Permutation, a: MultiOrbitAction) -> list[int]:
    return [sum(1 for x in o if p.images[x] == x) for o in a.orbits]


def _check_class_function(g: PermGroup, rep: Permutation, rng: random.Random):
    x = g.random_element(rng)
    if rep.conjugate(x).num_fixed() != rep.num_fixed():
        raise InvariantViolation("fixed-point count differs between conjugates")


def _sweep(a: MultiOrbitAction, accept, cap=None, seed: int = 0):
    g = a.group
    table = g.conjugacy_classes(cap)
    rng = random.Random(seed)
    examined = 0
    covered = 0
    for k, rep in enumerate(table.representatives):
        examined += 1
        covered += table.sizes[k]
        _check_class_function(g, rep, rng)
        if rep.num_fixed() == 0 and accept(table.orders[k]):
            return rep, table.orders[k], examined, covered
    return None, None, examined, covered


def find_derangement(a, cap: int | None = None, seed: int = 0) -> DerangementReport:
    """Sweep conjugacy classes for an element with no fixed points."""
    a = _as_action(a)
    rep, order, examined, covered = _sweep(a, lambda o: True, cap, seed)
    report = DerangementReport(_describe(a), "none", classes_examined=examined, elements_examined=covered)
    if rep is not None:
        report.verdict = "has_derangement"
        report.witness = rep
        report.witness_order = order
        report.fixed_per_orbit = _fixed_per_orbit(rep, a)
    elif len(a.orbits) == 1 and a.domain_size > 1:
        raise InvariantViolation("transitive action of degree > 1 without a derangement")
    return report


def find_prime_power_derangement(a, cap: int | None = None, seed: int = 0) -> DerangementReport:
    a = _as_action(a)
    rep, order, examined, covered = _sweep(a, lambda o: prime_power_base(o) is not None, cap, seed)
    report = DerangementReport(_describe(a), "none", classes_examined=examined, elements_examined=covered)
    if rep is not None:
        report.verdict = "has_derangement"
        report.witness = rep
        report.witness_order = order
        report.prime = prime_power_base(order)
        report.fixed_per_orbit = _fixed_per_orbit(rep, a)
    elif len(a.orbits) == 1 and a.domain_size > 1:
        raise InvariantViolation("transitive action of degree > 1 without a prime-power derangement")
    return report


# normal coverings ---------------------------------------------------------------


@dataclass
class CoveringReport:
    group_order: int
    subgroup_orders: list[int]
    covered: bool
    uncovered_witness: Permutation | None = None
    classes: int = 0
    cross_checked: bool = False

    def to_dict(self) -> dict:
        return {
            "verdict": "covered" if self.covered else "not_covered",
            "group_order": str(self.group_order),
            "subgroup_orders": [str(o) for o in self.subgroup_orders],
            "witness_cycles": None if self.uncovered_witness is None else format_cycles(self.uncovered_witness),
            "witness_order": None if self.uncovered_witness is None else str(self.uncovered_witness.order()),
            "stats": {"classes": self.classes},
            "assumptions_checked": [
                {"name": "subgroups proper and contained", "how": "sifting generators", "result": True},
                {"name": "coset-action cross-check", "how": "derangement search on the union", "result": self.cross_checked},
            ],
        }


def _hit_classes(g: PermGroup, h: PermGroup) -> set[int]:
    table = g.conjugacy_classes()
    idx = rows_to_indices(h.element_array(), g.element_index())
    return set(table.class_of[idx].tolist())


def is_normal_covering(g: PermGroup, subgroups, cross_check: bool = False) -> CoveringReport:
    """Whether ``g`` is the union of the conjugates of the listed subgroups."""
    subs = list(subgroups)
    for h in subs:
        if h.degree != g.degree or not h.is_subgroup_of(g):
            raise InvalidInput("covering input is not a subgroup")
        if h.order >= g.order:
            raise InvalidInput("covering subgroups must be proper")
    table = g.conjugacy_classes()
    hit = set()
    for h in subs:
        hit |= _hit_classes(g, h)
    missing = [k for k in range(len(table)) if k not in hit]
    report = CoveringReport(
        g.order,
        [h.order for h in subs],
        covered=not missing,
        uncovered_witness=table.representatives[missing[0]] if missing else None,
        classes=len(table),
    )
    if cross_check and subs:
        union = disjoint_union(*[coset_action(g, h) for h in subs])
        via_union = find_derangement(union)
        if via_union.found == report.covered:
            raise InvariantViolation("class sweep and coset-action derangement search disagree")
        report.cross_checked = True
    return report


def coset_average_fixed_points(g: PermGroup, h: Permutation) -> Fraction:
    """Exact mean number of fixed points over the coset ``g * h``."""
    if h.degree != g.degree:
        raise InvalidInput("degree mismatch")
    if not is_transitive(g):
        raise InvalidInput("the group must be transitive")
    arr = g.element_array()
    ha = np.asarray(h.images, dtype=np.int64)
    fixed = int((ha[arr] == np.arange(g.degree)).sum())
    return Fraction(fixed, g.order)


# lifting along the kernel of the first orbit -------------------------------------


def lift_derangement(a: MultiOrbitAction, cap: int | None = None) -> DerangementReport:
    """Search for a derangement as in the kernel-coset argument for two-orbit actions.

    The search looks for ``g`` deranging the first orbit (prime-power order on
    that orbit first) and then scans the coset ``N1 g`` for an element that
    also deranges the second orbit, where ``N1`` is the kernel on the first
    orbit.  When the hypotheses fail the verdict is ``inapplicable``.
    """
    report = DerangementReport(_describe(a), "inapplicable")
    checks = report.assumptions
    two = len(a.orbits) == 2
    checks.append(("exactly two orbits", "orbit computation", two))
    if not two:
        report.status = "strategy inapplicable: need exactly two orbits"
        return report
    o1, o2 = a.orbits
    sizes_ok = len(o1) > 1 and len(o2) > 1
    checks.append(("both orbits nontrivial", "orbit sizes", sizes_ok))
    if not sizes_ok:
        report.status = "strategy inapplicable: an orbit has size 1"
        return report
    bad = [q for q in prime_factors(len(o1)) if (len(o2) - 1) % q == 0]
    checks.append(("no prime of |O1| divides |O2|-1", "factorisation", not bad))
    if bad:
        report.status = f"strategy inapplicable: prime {bad[0]} divides |O2|-1 = {len(o2) - 1}"
        return report
    kernel = action_kernel(a, a.labels[0])
    trans = kernel.order > 1 and is_transitive(kernel, o2) if len(o2) > 1 else False
    checks.append(("kernel on O1 transitive on O2", "orbit of the kernel", trans))
    if not trans:
        report.status = "strategy inapplicable: kernel on the first orbit is not transitive on the second"
        return report

    g = a.group
    arr = g.element_array(cap)
    o1a = np.asarray(o1)
    o2a = np.asarray(o2)
    deranges_o1 = ~(arr[:, o1a] == o1a).any(axis=1)
    candidates = np.flatnonzero(deranges_o1)
    pp_first = []
    rest = []
    for i in candidates:
        p = Permutation._trusted(tuple(arr[i].tolist()))
        o = element_order(p.restrict(o1))
        (pp_first if prime_power_base(o) is not None else rest).append(i)
    karr = kernel.element_array(cap)
    seen_cosets = set()
    examined = 0
    for i in pp_first + rest:
        coset = arr[i][karr]  # rows n*g for n in the kernel
        key = min(r.tobytes() for r in coset)
        if key in seen_cosets:
            continue
        seen_cosets.add(key)
        examined += coset.shape[0]
        good = ~(coset[:, o2a] == o2a).any(axis=1)
        if good.any():
            rows = coset[good]
            best = rows[np.lexsort(rows.T[::-1])[0]]
            w = Permutation._trusted(tuple(best.tolist()))
            if not (is_derangement(w, a) and g.contains(w)):
                raise InvariantViolation("lifted element is not a derangement of the group")
            report.verdict = "has_derangement"
            report.witness = w
            report.witness_order = w.order()
            report.fixed_per_orbit = _fixed_per_orbit(w, a)
            report.elements_examined = examined
            report.status = "lifted along a coset of the first-orbit kernel"
            return report
    raise InvariantViolation("hypotheses hold but no lifted derangement exists")


# equal-order covering sweep ---------------------------------------------------


@dataclass
class CoveringSweepReport:
    label: str
    group_order: int
    subgroup_count: int
    class_count: int
    pair_count: int
    counterexamples: list[dict]
    cross_checked: int = 0
    note: str = "pairs taken over subgroup conjugacy-class representatives; covering is conjugation invariant"

    def to_dict(self) -> dict:
        return {
            "group": self.label,
            "group_order": str(self.group_order),
            "subgroups": self.subgroup_count,
            "subgroup_classes": self.class_count,
            "pairs_checked": self.pair_count,
            "pairs_cross_checked": self.cross_checked,
            "counterexamples": self.counterexamples,
            "note": self.note,
        }


def equal_order_pairs(lattice: SubgroupLattice) -> list[tuple[SubgroupRecord, SubgroupRecord]]:
    reps = [r for r in lattice.class_representatives() if r.order < lattice.group.order]
    pairs = []
    for i, h1 in enumerate(reps):
        for h2 in reps[i:]:
            if h1.order == h2.order:
                pairs.append((h1, h2))
    return pairs


def check_equal_order_coverings(
    g: PermGroup,
    label: str = "",
    lattice: SubgroupLattice | None = None,
    cross_check: bool = True,
    lattice_cap: int | None = None,
) -> CoveringSweepReport:
    """Test every pair of equal-order proper subgroups for a normal 2-covering."""
    if lattice is None:
        lattice = SubgroupLattice(g) if lattice_cap is None else SubgroupLattice(g, lattice_cap)
    table = g.conjugacy_classes()
    nclasses = len(table)
    hits = {}
    for r in lattice.class_representatives():
        hits[r.conjugacy_class_id] = set(table.class_of[list(r.element_key)].tolist())
    pairs = equal_order_pairs(lattice)
    counter = []
    crossed = 0
    for h1, h2 in pairs:
        covered = len(hits[h1.conjugacy_class_id] | hits[h2.conjugacy_class_id]) == nclasses
        if cross_check:
            union = disjoint_union(
                coset_action(g, h1.group(g.degree, g.enum_cap)),
                coset_action(g, h2.group(g.degree, g.enum_cap)),
            )
            if find_derangement(union).found == covered:
                raise InvariantViolation("covering verdict disagrees with the coset-action search")
            crossed += 1
        if covered:
            counter.append(
                {
                    "orders": [str(h1.order), str(h2.order)],
                    "h1_generators": [format_cycles(x) for x in h1.generators],
                    "h2_generators": [format_cycles(x) for x in h2.generators],
                }
            )
    return CoveringSweepReport(
        label=label,
        group_order=g.order,
        subgroup_count=len(lattice),
        class_count=len(lattice.classes),
        pair_count=len(pairs),
        counterexamples=counter,
        cross_checked=crossed,
    )
