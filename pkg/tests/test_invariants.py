import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from derange.errors import InvalidInput
from derange.invariants import (
    LIE_FAMILIES,
    Bound,
    InvariantRecord,
    applied_domain,
    check_ppart_bounds,
    digit_sum,
    field_bound_check,
    field_bound_grid,
    legendre,
    lie_params,
    shipped_records,
    table_invariant_holds,
    v_p,
    valuation_bound_check,
    valuation_bound_grid,
    vp_factorial,
)
from derange.numtheory import primes_upto


def test_factorial_valuation_formulas_agree():
    for p in primes_upto(97):
        for m in range(2001):
            assert vp_factorial(m, p) == legendre(m, p)


@given(st.integers(0, 300), st.sampled_from([2, 3, 5, 7, 11]))
def test_factorial_valuation_by_factoring(m, p):
    assert vp_factorial(m, p) == v_p(math.factorial(m), p)


def test_valuation_basics():
    assert v_p(96, 2) == 5 and v_p(96, 3) == 1 and v_p(7, 2) == 0
    assert digit_sum(10, 2) == 2
    with pytest.raises(InvalidInput):
        v_p(10, 4)
    with pytest.raises(InvalidInput):
        vp_factorial(-1, 2)


def test_first_bound_single_points():
    assert valuation_bound_check(5, 3, 2).holds
    assert valuation_bound_check(4, 2, 3).excluded
    c = valuation_bound_check(4, 4, 2)
    assert c.in_domain and not c.holds
    assert not applied_domain(4, 4, 2)
    # exact comparison: (4*5+4)^4 = 331776 and 3^(5^2 - 1) is far larger
    assert valuation_bound_check(4, 5, 3).holds


def test_first_bound_grid_in_the_applied_domain():
    grid = valuation_bound_grid()
    assert grid["checked"] > 20000
    assert grid["failures_in_applied_domain"] == []
    assert grid["failures"] == [(4, 4, 2)]


def test_second_bound_grid():
    assert field_bound_check(3, 3, 1).holds
    grid = field_bound_grid()
    assert grid["failures"] == [] and grid["checked"] > 30000


def test_table_parameters():
    assert table_invariant_holds()
    for fam in LIE_FAMILIES:
        p = lie_params(fam, 8) if fam in ("A", "B", "C", "D") else lie_params(fam)
        assert p.b >= p.d - 2


def test_records():
    verdicts = {r.label: check_ppart_bounds(r).verdict for r in shipped_records()}
    assert verdicts["2F4(2)'"] == "holds"
    assert set(verdicts.values()) <= {"holds", "insufficient data"}
    a8 = check_ppart_bounds(shipped_records()[3])
    assert any(e["status"] == "exception" for e in a8.entries if e["p"] == 2 and e["inequality"] == "R_p")


def test_verdict_fails_on_exact_data():
    rec = InvariantRecord("toy", 2**10, permutation_degree=Bound(4, "exact"))
    assert check_ppart_bounds(rec).verdict == "fails"
