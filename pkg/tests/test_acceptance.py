"""Acceptance checks, one per criterion, each printing a single PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for a cold-cache timing
run, or through pytest.  Two sub-claims are known to be false as stated; they
are asserted faithfully and carried as strict xfails.
"""

import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import pytest

from derange.actions import coset_action
from derange.affine import (
    affine_derangement_from,
    affine_group,
    congruence_sweep,
    gl32_on_eight_points,
    gl_elements,
    gl_generators,
    isbell_witness,
    unipotent_field_extension_check,
)
from derange.constructions import agl1, order_96_example
from derange.derangements import find_derangement
from derange.harness import coset_average_samples, conjecture_harness, derangement_sweep
from derange.invariants import (
    field_bound_grid,
    legendre,
    table_invariant_holds,
    valuation_bound_grid,
    vp_factorial,
)
from derange.lattice import SubgroupLattice
from derange.linalg import MatrixFp
from derange.numtheory import primes_upto
from derange.roots import EXPECTED_COUNTS, build_root_system, end_node_roots


@dataclass
class Outcome:
    number: int
    ok: bool
    detail: str
    seconds: float = 0.0
    limit: float = 0.0
    parts: dict = field(default_factory=dict)

    @property
    def in_time(self) -> bool:
        return self.seconds <= self.limit

    def line(self) -> str:
        status = "PASS" if self.ok and self.in_time else "FAIL"
        return f"criterion {self.number:2d}: {status}  {self.detail}  [{self.seconds:.2f} s, limit {self.limit:g} s]"


def _timed(number, limit, fn):
    start = time.perf_counter()
    ok, detail, parts = fn()
    return Outcome(number, ok, detail, time.perf_counter() - start, limit, parts)


def criterion_1():
    def run():
        bad = []
        for p in primes_upto(31)[1:]:
            a = agl1(p, verify=False)
            arr = a.group.element_array()
            brute_derangement = bool((arr != np.arange(a.domain_size)).all(axis=1).any())
            if a.orbit_sizes != [p, p - 1] or find_derangement(a).found or brute_derangement:
                bad.append(p)
        return not bad, f"agl1(p) for primes 3..31: orbits (p, p-1), no derangement; failures {bad}", {}

    return _timed(1, 1.0, run)


def criterion_2():
    def run():
        ex = order_96_example.__wrapped__()
        c = ex.checks
        lat = SubgroupLattice(ex.group)
        parts = {
            "order 96": ex.group.order == 96,
            "H1 order 24": ex.h1.order == 24,
            "H1 maximal": lat.find(ex.h1).is_maximal,
            "H2 order 8": ex.h2.order == 8,
            "normal covering": c["covering"],
        }
        return all(parts.values()), "presented group: " + ", ".join(f"{k} {v}" for k, v in parts.items()), parts

    return _timed(2, 5.0, run)


def criterion_3():
    def run():
        rep = conjecture_harness(200, jobs=max(1, min(8, os.cpu_count() or 1)))
        detail = (
            f"{len(rep.groups)} catalog groups of order <= 200, {rep.pairs} equal-order pairs, "
            f"{len(rep.counterexamples)} counterexamples"
        )
        return not rep.counterexamples and rep.pairs > 0, detail, {}

    return _timed(3, 600.0, run)


def criterion_4():
    def run():
        rows = coset_average_samples(500, seed=2024)
        ok = len(rows) == 500 and all(Fraction(r["average"]) == 1 for r in rows)
        groups = len({r["group"] for r in rows})
        return ok, f"500 sampled (group, h) pairs over {groups} transitive actions, every average exactly 1", {}

    return _timed(4, 30.0, run)


def criterion_5():
    def run():
        rows = derangement_sweep()
        missing = [r["name"] for r in rows if not (r["derangement"] and r["prime_power_derangement"])]
        return not missing and len(rows) > 0, f"{len(rows)} transitive catalog actions, all with a prime-power derangement; missing {missing}", {}

    return _timed(5, 60.0, run)


def criterion_6():
    def run():
        out = {}
        for d, p in ((2, 2), (2, 3), (3, 2)):
            out[f"GL({d},{p})"] = congruence_sweep(gl_elements(d, p), p)
        ok = all(r["failed"] == 0 and r["checked"] > 0 for r in out.values())
        detail = "; ".join(f"{k}: {r['checked']} checked, {r['failed']} failed" for k, r in out.items())
        return ok, detail, out

    return _timed(6, 5.0, run)


def criterion_7():
    def run():
        G, rho = gl32_on_eight_points()
        isb = isbell_witness(G, rho)
        isbell_ok = (
            isb.status == "ok" and G.degree == 8 and isb.witness.num_fixed() == 0 and any(isb.fixed_vector)
            and isb.witness_matrix.act(isb.fixed_vector) == isb.fixed_vector
        )
        h = MatrixFp(2, ((1, 1), (0, 1)))
        c3 = [MatrixFp(2, ((0, 1), (1, 1)))]
        con = affine_derangement_from(h, gl_generators(2, 2), c3, (1, 0))
        # independent check: the element must occur among the images of V:H acting on V and on V:H/V:M
        A = affine_group(gl_generators(2, 2))
        VM = A.group.subgroup(list(A.translations.generators) + [c3[0].permutation()])
        union_images = coset_action(A.group, VM)
        full_rows = [
            x.images + tuple(4 + y for y in union_images.image(x).images) for x in A.group.element_list()
        ]
        present = con.permutation.images in set(full_rows)
        construct_ok = con.status == "ok" and con.verified and present and con.permutation.num_fixed() == 0
        parts = {"isbell witness on GL3(2), 8 points": isbell_ok, "construction for (GL2(2), C3)": construct_ok}
        detail = (
            f"witness {isb.to_dict().get('witness')} fixes vector {isb.fixed_vector}; "
            f"constructed element {con.to_dict().get('permutation')} deranges V and the cosets of V:M"
        )
        return isbell_ok and construct_ok, detail, parts

    return _timed(7, 5.0, run)


def criterion_8():
    def run():
        rep = unipotent_field_extension_check(3, 2)
        parts = {
            "2^6 divides |GL3(4):GL3(2)|": rep.divisibility_claim,
            "every unipotent class meets GL3(2)": rep.all_meet_subgroup,
        }
        detail = (
            f"index {rep.index} has 2-part 2^{rep.index_valuation} (2^6 needed: {rep.divisibility_claim}); "
            f"{rep.conjugators_verified}/{rep.unipotents_enumerated} unipotents conjugated into GL3(2)"
        )
        return all(parts.values()), detail, parts

    return _timed(8, 120.0, run)


def criterion_9():
    def run():
        out = {}
        for rank in (6, 7, 8):
            system = build_root_system(rank)
            rep = end_node_roots(rank, system)
            out[rank] = (len(system), rep)
        counts_ok = all(n == EXPECTED_COUNTS[r] for r, (n, _) in out.items())
        compared = all(rep.equals_simple_root is not None for _, rep in out.values())
        flagged = [f"E{r}" for r, (_, rep) in out.items() if rep.discrepancy]
        detail = (
            "|E6|, |E7|, |E8| = " + ", ".join(str(n) for n, _ in out.values())
            + "; filter equals {alpha_l}: " + ", ".join(str(rep.equals_simple_root) for _, rep in out.values())
            + f"; written-argument mismatch flagged for {flagged}"
        )
        return counts_ok and compared, detail, {"flagged": flagged}

    return _timed(9, 1.0, run)


def criterion_10():
    def run():
        mismatches = [
            (m, p) for p in primes_upto(97) for m in range(2001) if vp_factorial(m, p) != legendre(m, p)
        ]
        first = valuation_bound_grid()
        second = field_bound_grid()
        parts = {
            "digit sum equals Legendre sum": not mismatches,
            "first bound, stated domain": not first["failures"],
            "first bound, domain where it is applied": not first["failures_in_applied_domain"],
            "second bound": not second["failures"],
            "b >= d - 2 across families": table_invariant_holds(),
        }
        detail = (
            f"valuations {'agree' if not mismatches else mismatches[:3]}; first bound fails at "
            f"{first['failures']} of {first['checked']} (none where p does not divide r); second bound "
            f"{len(second['failures'])} failures of {second['checked']}; table invariant {parts['b >= d - 2 across families']}"
        )
        return all(parts.values()), detail, parts

    return _timed(10, 5.0, run)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]

_cache: dict[int, Outcome] = {}


def outcome(number: int) -> Outcome:
    if number not in _cache:
        _cache[number] = CRITERIA[number - 1]()
    return _cache[number]


@pytest.fixture
def show(capsys):
    def emit(o: Outcome):
        with capsys.disabled():
            print("\n" + o.line())

    return emit


@pytest.mark.parametrize("number", [1, 2, 3, 4, 5, 6, 7, 9])
def test_criterion(number, show):
    o = outcome(number)
    show(o)
    assert o.ok
    assert o.in_time


def test_criterion_8_unipotent_classes_meet_the_subfield_group(show):
    o = outcome(8)
    show(o)
    assert o.parts["every unipotent class meets GL3(2)"]
    assert o.in_time


@pytest.mark.xfail(strict=True, reason="|GL3(4):GL3(2)| = 1080 has 2-part 2^3, not divisible by 2^6")
def test_criterion_8_index_divisibility():
    assert outcome(8).parts["2^6 divides |GL3(4):GL3(2)|"]


def test_criterion_10_numeric_layer(show):
    o = outcome(10)
    show(o)
    for name in ("digit sum equals Legendre sum", "first bound, domain where it is applied",
                 "second bound", "b >= d - 2 across families"):
        assert o.parts[name], name
    assert o.in_time


@pytest.mark.xfail(strict=True, reason="(d, r, p) = (4, 4, 2) satisfies the stated hypotheses but 20^4 > 2^15")
def test_criterion_10_first_bound_on_its_stated_domain():
    assert outcome(10).parts["first bound, stated domain"]


def main() -> int:
    failed = 0
    for k in range(1, 11):
        o = outcome(k)
        print(o.line(), flush=True)
        failed += not (o.ok and o.in_time)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
