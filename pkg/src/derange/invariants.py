"""Exact numeric facts about orders of simple groups: valuations, bounds, parameter tables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInput
from .numtheory import factorize, is_prime, prime_power_base


def v_p(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in ``n``."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if n < 1:
        raise InvalidInput("v_p needs n >= 1")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def digit_sum(m: int, p: int) -> int:
    s = 0
    while m:
        s += m % p
        m //= p
    return s


def vp_factorial(m: int, p: int) -> int:
    """``v_p(m!)`` by the digit-sum formula ``(m - s_p(m)) / (p - 1)``."""
    if m < 0:
        raise InvalidInput("m must be non-negative")
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    top = m - digit_sum(m, p)
    assert top % (p - 1) == 0
    return top // (p - 1)


def legendre(m: int, p: int) -> int:
    """``v_p(m!)`` as the sum of ``floor(m / p^i)``."""
    total, pk = 0, p
    while pk <= m:
        total += m // pk
        pk *= p
    return total


# inequality checks -------------------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    in_domain: bool  # the stated hypotheses hold
    excluded: bool = False  # hit one of the listed exclusions
    note: str = ""

    def to_dict(self) -> dict:
        return {"holds": self.holds, "in_domain": self.in_domain, "excluded": self.excluded, "note": self.note}


def _le_power(lhs: int, base: int, exponent: int) -> bool:
    """Exact ``lhs <= base**exponent`` without building huge powers when the answer is clear."""
    if exponent < 0:
        return False
    if base >= 2 and exponent >= lhs.bit_length():
        return True
    return lhs <= base**exponent


EXCLUDED_DR = frozenset({(4, 2), (4, 3), (5, 2)})


def valuation_bound_check(d: int, r: int, p: int) -> BoundCheck:
    """``(4r+4)^d <= p^(r^(d-2) - 1)`` for ``d >= 4``, ``r, p >= 2``, ``r != p``."""
    excluded = (d, r) in EXCLUDED_DR
    in_domain = d >= 4 and r >= 2 and p >= 2 and r != p and not excluded
    exponent = r ** (d - 2) - 1 if d >= 2 else -1
    holds = _le_power((4 * r + 4) ** d, p, exponent)
    note = "" if in_domain else ("excluded (d, r)" if excluded else "hypothesis unmet")
    return BoundCheck(holds, in_domain, excluded, note)


def applied_domain(d: int, r: int, p: int) -> bool:
    """The setting the bound is used in: ``r`` a prime power, ``p`` a prime not dividing ``r``."""
    return is_prime(p) and prime_power_base(r) is not None and r % p != 0


def field_bound_check(b: int, p: int, f: int) -> BoundCheck:
    """``(b+1)^2 f <= p^(b f) - 1`` for ``b, p >= 3`` and ``f >= 1``."""
    in_domain = b >= 3 and p >= 3 and f >= 1
    lhs = (b + 1) ** 2 * f + 1
    holds = _le_power(lhs, p, b * f) if b * f >= 0 else False
    return BoundCheck(holds, in_domain, False, "" if in_domain else "hypothesis unmet")


def valuation_bound_grid(d_range=range(4, 13), r_range=range(2, 51), p_range=range(2, 51)) -> dict:
    """Evaluate the first bound over a grid; failures are split by whether ``p`` divides ``r``."""
    checked, failures = 0, []
    for d in d_range:
        for r in r_range:
            for p in p_range:
                c = valuation_bound_check(d, r, p)
                if not c.in_domain:
                    continue
                checked += 1
                if not c.holds:
                    failures.append((d, r, p))
    return {
        "checked": checked,
        "failures": failures,
        "failures_in_applied_domain": [x for x in failures if applied_domain(*x)],
    }


def field_bound_grid(b_range=range(3, 31), p_range=range(3, 98), f_range=range(1, 13)) -> dict:
    checked, failures = 0, []
    for b in b_range:
        for p in p_range:
            for f in f_range:
                c = field_bound_check(b, p, f)
                if c.in_domain:
                    checked += 1
                    if not c.holds:
                        failures.append((b, p, f))
    return {"checked": checked, "failures": failures}


# parameters of the Lie type families ------------------------------------------------------


@dataclass(frozen=True)
class LieParams:
    family: str
    rank: int | None
    e: int
    d: int
    c: int
    b: int

    def to_dict(self) -> dict:
        return {"family": self.family, "rank": self.rank, "e": self.e, "d": self.d, "c": self.c, "b": self.b}


_CLASSICAL = {
    # family: (minimum rank, (e, d, c, b) as functions of the rank)
    "A": (2, lambda l: ((l * l + l) // 2, l + 1, l + 1, l - 1)),
    "B": (2, lambda l: (l * l, l, 2 * l + 1, l)),
    "C": (3, lambda l: (l * l, l, 2 * l, l - 1)),
    "D": (4, lambda l: (l * l - l, l, 2 * l, l)),
}

_EXCEPTIONAL = {
    "E8": (120, 15, 248, 28),
    "E7": (63, 9, 56, 16),
    "E6": (36, 12, 27, 10),
    "F4": (24, 6, 25, 7),
    "G2": (6, 3, 6, 2),
    "A1": (1, 1, 2, 0),
    "3D4": (12, 6, 8, 4),
    "2F4": (12, 6, 26, 4),
    "2B2": (2, 2, 4, 1),
    "2G2": (3, 3, 7, 1),
}

LIE_FAMILIES = tuple(_CLASSICAL) + tuple(_EXCEPTIONAL)


def lie_params(family: str, rank: int | None = None) -> LieParams:
    """``e, d, c, b`` for a family (``A`` covers both signs, ``E6`` both forms)."""
    fam = family.replace("±", "").replace("+", "").replace("-", "").replace("^", "").replace("_", "")
    if fam in _CLASSICAL:
        lo, fn = _CLASSICAL[fam]
        if rank is None or rank < lo:
            raise InvalidInput(f"family {family} needs rank >= {lo}")
        return LieParams(fam, rank, *fn(rank))
    if fam in _EXCEPTIONAL:
        return LieParams(fam, None, *_EXCEPTIONAL[fam])
    raise InvalidInput(f"unknown family {family!r}")


def table_invariant_holds(max_rank: int = 50) -> bool:
    """``b >= d - 2`` for every family and every classical rank up to ``max_rank``."""
    rows = [lie_params(f) for f in _EXCEPTIONAL]
    for fam, (lo, _) in _CLASSICAL.items():
        rows.extend(lie_params(fam, l) for l in range(lo, max_rank + 1))
    return all(r.b >= r.d - 2 for r in rows)


def _isqrt_exact(n: Fraction) -> Fraction:
    num, den = n.numerator, n.denominator
    a, b = math.isqrt(num), math.isqrt(den)
    if a * a != num or b * b != den:
        raise InvalidInput(f"{n} is not a rational square")
    return Fraction(a, b)


A_FUNCTIONS = {
    "PSL2": lambda r: Fraction(r - 1, math.gcd(2, r - 1)),
    "PSL3": lambda r: Fraction(r * r - 1),
    "PSL4": lambda r: Fraction(r**3 - 1),
    "PSU3": lambda r: Fraction(r * r - r),
    "PSU4": lambda r: Fraction(r**3 - r * r + r - 1),
    "PSp4": lambda r: Fraction(r * r - 1, 2),
    "PSp6": lambda r: Fraction(r**3 - 1, 2),
    "Omega7": lambda r: Fraction(r**4 - 1),
    "G2": lambda r: Fraction(r**3 - r),
    "2B2": lambda r: _isqrt_exact(Fraction(r, 2)) * (r - 1),
    "2G2": lambda r: Fraction(r * r - r),
}


def a_function(label: str, r: int) -> Fraction:
    """Reference lower bounds for projective representation degrees of small-rank groups."""
    try:
        return A_FUNCTIONS[label](r)
    except KeyError:
        raise InvalidInput(f"unknown label {label!r}") from None


# reference records --------------------------------------------------------------------------

EXCEPTION_SET = frozenset({"A8", "PSU4(3)", "M22", "J2", "Suz"})


@dataclass(frozen=True)
class Bound:
    value: int
    kind: str  # "exact", "lower" or "upper"
    provenance: str = ""


@dataclass
class InvariantRecord:
    label: str
    order: int
    permutation_degree: Bound | None = None  # P(G)
    projective_degree: dict = field(default_factory=dict)  # p -> Bound for R_p(G)
    default_projective_degree: Bound | None = None  # bound valid for every p
    half_binary_degree: Bound = field(default_factory=lambda: Bound(1, "lower", "definition: n >= 1"))
    lie_characteristic: int | None = None
    provenance: str = ""

    def valuations(self) -> dict[int, int]:
        return factorize(self.order)

    def r_p(self, p: int) -> Bound | None:
        return self.projective_degree.get(p, self.default_projective_degree)


def _verdict(v: int, bound: Bound | None) -> str:
    if bound is None:
        return "insufficient data"
    if bound.kind in ("exact", "lower") and v <= bound.value:
        return "holds"
    if bound.kind in ("exact", "upper") and v > bound.value:
        return "fails"
    return "insufficient data"


@dataclass
class PPartReport:
    label: str
    entries: list[dict]
    verdict: str  # "holds", "insufficient data" or "fails"

    def to_dict(self) -> dict:
        return {"label": self.label, "entries": self.entries, "verdict": self.verdict}


def check_ppart_bounds(rec: InvariantRecord) -> PPartReport:
    """Check ``v_p(|G|) <= P(G)``, ``v_p(|G|) <= 2^n'`` (p odd) and ``v_p(|G|) <= R_p(G)``.

    The last inequality is exempt in the defining characteristic of a Lie type
    group and for ``p = 2`` with ``G`` in the five-group exception set.  A
    failure of an exempt inequality is reported as "exception", not "fails".
    """
    entries = []
    for p, v in sorted(rec.valuations().items()):
        entries.append({"p": p, "v_p": v, "inequality": "P", "status": _verdict(v, rec.permutation_degree)})
        if p != 2:
            nb = rec.half_binary_degree
            r2 = rec.r_p(2)
            if r2 is not None and r2.kind in ("exact", "lower") and (r2.value + 1) // 2 > nb.value:
                # an irreducible embedding in GL_2n(2) is a projective one of degree 2n
                nb = Bound((r2.value + 1) // 2, "lower", "from R_2(G) <= 2n'")
            bound = Bound(2**nb.value, nb.kind) if nb is not None else None
            entries.append({"p": p, "v_p": v, "inequality": "2^n'", "status": _verdict(v, bound)})
        status = _verdict(v, rec.r_p(p))
        exempt = rec.lie_characteristic == p or (p == 2 and rec.label in EXCEPTION_SET)
        if exempt and status != "holds":
            status = "exception"
        entries.append({"p": p, "v_p": v, "inequality": "R_p", "status": status})
    statuses = {e["status"] for e in entries}
    verdict = "fails" if "fails" in statuses else "insufficient data" if "insufficient data" in statuses else "holds"
    return PPartReport(rec.label, entries, verdict)


def alternating_record(m: int) -> InvariantRecord:
    return InvariantRecord(
        label=f"A{m}",
        order=math.factorial(m) // 2,
        permutation_degree=Bound(m, "exact", "natural action; minimal for m >= 5"),
    )


def shipped_records() -> list[InvariantRecord]:
    recs = [alternating_record(m) for m in (5, 6, 7, 8)]
    # A8 is PSL_4(2), so it has a 4-dimensional projective representation in characteristic 2
    recs[-1].projective_degree[2] = Bound(4, "upper", "A8 = PSL_4(2)")
    recs.append(
        InvariantRecord(
            label="2F4(2)'",
            order=2**11 * 3**3 * 5**2 * 13,
            permutation_degree=Bound(1600, "exact", "reference value"),
            default_projective_degree=Bound(26, "lower", "reference bound for every p"),
            provenance="Tits group",
        )
    )
    return recs
