"""Exceptional root systems E6, E7, E8 in explicit coordinates of R^8.

Simple roots (Bourbaki numbering) are::

    a1 = (1/2)(e1 + e8) - (1/2)(e2 + ... + e7)    a2 = e1 + e2
    a3 = e2 - e1    a4 = e3 - e2    a5 = e4 - e3
    a6 = e5 - e4    a7 = e6 - e5    a8 = e7 - e6

E7 and E6 are the subsystems spanned by the first 7 and 6 of these.
All arithmetic is exact (Fractions).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput

Vector = tuple[Fraction, ...]

_H = Fraction(1, 2)


def _e(i: int) -> list[Fraction]:
    v = [Fraction(0)] * 8
    v[i - 1] = Fraction(1)
    return v


def _add(*vs) -> Vector:
    return tuple(sum(xs, Fraction(0)) for xs in zip(*vs))


def _scale(c, v) -> Vector:
    return tuple(c * x for x in v)


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


SIMPLE_ROOTS: tuple[Vector, ...] = (
    (_H, -_H, -_H, -_H, -_H, -_H, -_H, _H),
    _add(_e(1), _e(2)),
    _add(_e(2), _scale(-1, _e(1))),
    _add(_e(3), _scale(-1, _e(2))),
    _add(_e(4), _scale(-1, _e(3))),
    _add(_e(5), _scale(-1, _e(4))),
    _add(_e(6), _scale(-1, _e(5))),
    _add(_e(7), _scale(-1, _e(6))),
)

EXPECTED_COUNTS = {6: 72, 7: 126, 8: 240}


def reflect(v: Vector, a: Vector) -> Vector:
    return tuple(x - 2 * _dot(v, a) / _dot(a, a) * y for x, y in zip(v, a))


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    a = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


@dataclass(frozen=True)
class RootSystem:
    rank: int
    simple_roots: tuple[Vector, ...]
    roots: tuple[Vector, ...]  # sorted
    coefficients: dict  # root -> tuple of integer coefficients over the simple roots

    @property
    def name(self) -> str:
        return f"E{self.rank}"

    def __len__(self):
        return len(self.roots)

    def positive_roots(self) -> list[Vector]:
        return [r for r in self.roots if any(c > 0 for c in self.coefficients[r])]

    def expand(self, coeffs) -> Vector:
        return _add(*(_scale(Fraction(c), a) for c, a in zip(coeffs, self.simple_roots)))


def _inverse(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    cols = [_solve(matrix, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def build_root_system(rank: int) -> RootSystem:
    """Close the first ``rank`` simple roots under their reflections."""
    if rank not in EXPECTED_COUNTS:
        raise InvalidInput("only E6, E7 and E8 are supported")
    simple = SIMPLE_ROOTS[:rank]
    # work with doubled coordinates, which are integers; every root has norm 2,
    # so the reflection in a is v -> v - (v.a) a, i.e. V -> V - (V.A / 4) A
    dbl = [tuple(int(2 * x) for x in a) for a in simple]
    roots = set(dbl)
    frontier = list(dbl)
    while frontier:
        new = []
        for v in frontier:
            for a in dbl:
                k = sum(x * y for x, y in zip(v, a))
                if k == 0:
                    continue
                assert k % 4 == 0
                k //= 4
                w = tuple(x - k * y for x, y in zip(v, a))
                if w not in roots:
                    roots.add(w)
                    new.append(w)
        frontier = new
    ginv = _inverse([[_dot(a, b) for b in simple] for a in simple])
    coeffs = {}
    for rd in roots:
        r = tuple(Fraction(x, 2) for x in rd)
        rhs = [Fraction(sum(x * y for x, y in zip(rd, a)), 4) for a in dbl]
        m = [sum((g * y for g, y in zip(row, rhs)), Fraction(0)) for row in ginv]
        if any(x.denominator != 1 for x in m):
            raise AssertionError("non-integral coefficient")
        m = tuple(int(x) for x in m)
        if not (all(x >= 0 for x in m) or all(x <= 0 for x in m)):
            raise AssertionError("mixed-sign coefficients")
        coeffs[r] = m
    system = RootSystem(rank, simple, tuple(sorted(coeffs)), coeffs)
    for r, m in coeffs.items():
        assert system.expand(m) == r
        assert tuple(-x for x in r) in coeffs
    return system


def format_vector(v: Vector) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


# which root ends the last node's support ------------------------------------------------------

# index of the root named at the end of each case of the written argument
CLAIMED_IN_ARGUMENT = {8: 6, 7: 7, 6: 6}


@dataclass
class EndNodeReport:
    rank: int
    root_count: int
    filtered: list[tuple[int, ...]]  # coefficient vectors of roots with m_l > 0 and m_{l-1} = 0
    equals_simple_root: bool  # filtered == [alpha_l]
    argument_index: int | None
    argument_matches: bool | None
    discrepancy: bool

    def to_dict(self) -> dict:
        return {
            "system": f"E{self.rank}",
            "root_count": self.root_count,
            "filtered": [list(c) for c in self.filtered],
            "filtered_is_alpha_l": self.equals_simple_root,
            "root_named_in_argument": None if self.argument_index is None else f"alpha_{self.argument_index}",
            "argument_matches": self.argument_matches,
            "discrepancy": self.discrepancy,
        }


def end_node_roots(rank: int, system: RootSystem | None = None, claimed: int | None = None) -> EndNodeReport:
    """All roots ``sum m_i a_i`` with ``m_l > 0`` and ``m_(l-1) = 0`` (``l`` the rank).

    The result is compared with ``{a_l}`` and, separately, with ``{a_k}`` for the
    index ``k`` named at the end of the corresponding case of the written argument.
    """
    system = system or build_root_system(rank)
    l = rank
    filtered = sorted(
        c for c in system.coefficients.values() if c[l - 1] > 0 and c[l - 2] == 0
    )
    unit = tuple(1 if i == l - 1 else 0 for i in range(l))
    equals = filtered == [unit]
    claimed = CLAIMED_IN_ARGUMENT.get(rank) if claimed is None else claimed
    matches = None
    if claimed is not None:
        cu = tuple(1 if i == claimed - 1 else 0 for i in range(l))
        matches = filtered == [cu]
    discrepancy = matches is not None and matches != equals
    return EndNodeReport(l, len(system), filtered, equals, claimed, matches, discrepancy)
