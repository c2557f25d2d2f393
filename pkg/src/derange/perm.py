"""Permutations of {0, ..., n-1} stored as image tuples.

Products act on the right: ``(p * q)`` sends ``i`` to ``q[p[i]]``, so ``p`` is
applied first.  Cycle notation at the I/O boundary is 1-based.
"""

from __future__ import annotations

import math
import re
from functools import reduce

from .errors import InvalidInput


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise InvalidInput(f"not a permutation: {images!r}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> Permutation:
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls._trusted(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> Permutation:
        """Build from 0-based cycles, e.g. ``from_cycles(4, [(0, 1, 2)])``."""
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for c in cyc:
                if not 0 <= c < n:
                    raise InvalidInput(f"point {c} out of range for degree {n}")
                if c in seen:
                    raise InvalidInput(f"point {c} repeated in cycle notation")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls._trusted(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __len__(self):
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __mul__(self, other: Permutation) -> Permutation:
        if len(self.images) != len(other.images):
            raise InvalidInput("degree mismatch in composition")
        q = other.images
        return Permutation._trusted(tuple([q[i] for i in self.images]))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._trusted(tuple(inv))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, x: Permutation) -> Permutation:
        """Return ``x^-1 * self * x``."""
        return x.inverse() * self * x

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i == j]

    def num_fixed(self) -> int:
        return sum(1 for i, j in enumerate(self.images) if i == j)

    def moved_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return element_order(self)

    def restrict(self, points) -> Permutation:
        """Action on an invariant subset, relabelled 0..k-1 in the given order."""
        points = list(points)
        index = {p: i for i, p in enumerate(points)}
        try:
            return Permutation._trusted(tuple(index[self.images[p]] for p in points))
        except KeyError:
            raise InvalidInput("point set is not invariant") from None

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r}, n={self.degree})"

    def __str__(self):
        return format_cycles(self)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    return p * q


def element_order(p: Permutation) -> int:
    return reduce(math.lcm, (len(c) for c in p.cycles()), 1)


def format_cycles(p: Permutation) -> str:
    """1-based disjoint cycle notation; the identity prints as ``()``."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(c + 1) for c in cyc) + ")" for cyc in cycles)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse 1-based cycle notation such as ``(1 2)(3 4 5)``."""
    stripped = text.strip()
    if not stripped:
        raise InvalidInput("empty permutation text")
    rest = _CYCLE.sub("", stripped)
    if rest.strip():
        raise InvalidInput(f"could not parse permutation {text!r}")
    cycles = []
    for body in _CYCLE.findall(stripped):
        body = body.replace(",", " ").split()
        if not body:
            continue
        try:
            cycles.append([int(tok) - 1 for tok in body])
        except ValueError:
            raise InvalidInput(f"non-integer point in {text!r}") from None
    # a point may legitimately appear in several non-disjoint cycles; multiply them
    result = Permutation.identity(n)
    for cyc in cycles:
        result = result * Permutation.from_cycles(n, [cyc])
    return result
