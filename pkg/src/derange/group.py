"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from operator import itemgetter

import numpy as np

from .errors import CapExceeded, InvalidInput
from .perm import Permutation, element_order

DEFAULT_ENUM_CAP = 10**6


def _mul(a: tuple, b: tuple) -> tuple:
    if len(a) < 2:
        return tuple(b[i] for i in a)
    return itemgetter(*a)(b)


def _inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


class _Level:
    __slots__ = ("base", "gens", "orbit", "trans", "trans_inv", "checked")

    def __init__(self, base: int, n: int):
        ident = tuple(range(n))
        self.base = base
        self.gens: list[tuple] = []
        self.orbit: list[int] = [base]
        self.trans = {base: ident}
        self.trans_inv = {base: ident}
        self.checked: set[tuple[int, int]] = set()

    def add_gen(self, g: tuple):
        self.gens.append(g)
        trans = self.trans
        # extend the orbit: images of old points under g, then closure
        queue = list(self.orbit)
        k = 0
        while k < len(queue):
            x = queue[k]
            k += 1
            ux = trans[x]
            for s in self.gens:
                y = s[x]
                if y not in trans:
                    u = _mul(ux, s)
                    trans[y] = u
                    self.trans_inv[y] = _inv(u)
                    self.orbit.append(y)
                    queue.append(y)


class PermGroup:
    """A permutation group of fixed degree with a complete stabilizer chain.

    Instances are immutable once built.  Derived data (element lists, class
    tables) is computed on first request and then reused.
    """

    def __init__(self, degree: int, generators=(), enum_cap: int = DEFAULT_ENUM_CAP):
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise InvalidInput(f"generator of degree {g.degree} in a group of degree {degree}")
            gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.enum_cap = enum_cap
        self._identity = tuple(range(degree))
        self._levels: list[_Level] = []
        for g in gens:
            self._insert(g.images)
        self.order = 1
        for lvl in self._levels:
            self.order *= len(lvl.orbit)

    # chain construction ---------------------------------------------------

    def _sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        levels = self._levels
        for i in range(start, len(levels)):
            lvl = levels[i]
            x = g[lvl.base]
            inv = lvl.trans_inv.get(x)
            if inv is None:
                return g, i
            g = _mul(g, inv)
        return g, len(levels)

    def _add_strong(self, h: tuple, k: int):
        if k == len(self._levels):
            moved = next(i for i, j in enumerate(h) if i != j)
            self._levels.append(_Level(moved, self.degree))
        for lvl in self._levels[: k + 1]:
            lvl.add_gen(h)

    def _insert(self, g: tuple):
        h, k = self._sift(g)
        if h == self._identity:
            return
        self._add_strong(h, k)
        self._complete(k)

    def _complete(self, start: int):
        levels = self._levels
        lev = start
        while lev >= 0:
            lvl = levels[lev]
            restart = None
            for xi in range(len(lvl.orbit)):
                x = lvl.orbit[xi]
                ux = lvl.trans[x]
                for si in range(len(lvl.gens)):
                    if (xi, si) in lvl.checked:
                        continue
                    lvl.checked.add((xi, si))
                    s = lvl.gens[si]
                    schreier = _mul(_mul(ux, s), lvl.trans_inv[s[x]])
                    h, k = self._sift(schreier, lev + 1)
                    if h != self._identity:
                        self._add_strong(h, k)
                        restart = k
                        break
                if restart is not None:
                    break
            if restart is None:
                lev -= 1
            else:
                lev = restart

    # queries --------------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lvl.base for lvl in self._levels]

    @property
    def transversal_sizes(self) -> list[int]:
        return [len(lvl.orbit) for lvl in self._levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        if not self._levels:
            return []
        return [Permutation._trusted(g) for g in self._levels[0].gens]

    def identity(self) -> Permutation:
        return Permutation._trusted(self._identity)

    def is_trivial(self) -> bool:
        return self.order == 1

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise InvalidInput("degree mismatch in membership test")
        h, _ = self._sift(p.images)
        return h == self._identity

    __contains__ = contains

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        return (
            isinstance(other, PermGroup)
            and self.degree == other.degree
            and self.order == other.order
            and self.is_subgroup_of(other)
        )

    def __hash__(self):
        return hash((self.degree, self.order))

    def is_normal_subgroup_of(self, other: PermGroup) -> bool:
        return self.is_subgroup_of(other) and all(
            self.contains(h.conjugate(x)) for h in self.generators for x in other.generators
        )

    def subgroup(self, generators) -> PermGroup:
        sub = PermGroup(self.degree, generators, enum_cap=self.enum_cap)
        if not sub.is_subgroup_of(self):
            raise InvalidInput("generators do not lie in the group")
        return sub

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a, b in itertools.combinations(gens, 2))

    def random_element(self, rng) -> Permutation:
        g = self._identity
        for lvl in reversed(self._levels):
            g = _mul(g, lvl.trans[lvl.orbit[rng.randrange(len(lvl.orbit))]])
        return Permutation._trusted(g)

    # enumeration ----------------------------------------------------------

    def _check_cap(self, cap):
        cap = self.enum_cap if cap is None else cap
        if self.order > cap:
            raise CapExceeded(f"group of order {self.order} is too large to enumerate (cap {cap})")

    def element_array(self, cap: int | None = None) -> np.ndarray:
        """All elements as rows of an ``(order, degree)`` integer array."""
        self._check_cap(cap)
        return self._element_array

    @cached_property
    def _element_array(self) -> np.ndarray:
        arr = np.arange(self.degree, dtype=np.int32)[None, :]
        for lvl in reversed(self._levels):
            trans = np.array([lvl.trans[x] for x in lvl.orbit], dtype=np.int32)
            # rows a*u for a in arr (major) and u in the transversal (minor)
            arr = trans[:, arr].transpose(1, 0, 2).reshape(-1, self.degree)
        arr.setflags(write=False)
        return arr

    def elements(self, cap: int | None = None):
        """Yield every element exactly once, in a fixed order."""
        for row in self.element_array(cap):
            yield Permutation._trusted(tuple(row.tolist()))

    def element_list(self, cap: int | None = None) -> list[Permutation]:
        self._check_cap(cap)
        return self._element_list

    @cached_property
    def _element_list(self) -> list[Permutation]:
        return [Permutation._trusted(tuple(r)) for r in self._element_array.tolist()]

    def element_index(self, cap: int | None = None) -> dict[bytes, int]:
        """Map from ``row.tobytes()`` of an int32 image array to its position."""
        self._check_cap(cap)
        return self._element_index

    @cached_property
    def _element_index(self) -> dict[bytes, int]:
        arr = self._element_array
        return {arr[i].tobytes(): i for i in range(arr.shape[0])}

    def index_of(self, p: Permutation) -> int:
        return self.element_index()[np.asarray(p.images, dtype=np.int32).tobytes()]

    def conjugacy_classes(self, cap: int | None = None) -> ConjugacyClassTable:
        self._check_cap(cap)
        return self._class_table

    @cached_property
    def _class_table(self) -> ConjugacyClassTable:
        return _build_class_table(self)

    def __repr__(self):
        return f"<PermGroup degree={self.degree} order={self.order} ngens={len(self.generators)}>"


def build_chain(generators, degree: int | None = None, enum_cap: int = DEFAULT_ENUM_CAP) -> PermGroup:
    gens = list(generators)
    if degree is None:
        if not gens:
            raise InvalidInput("degree required for an empty generator list")
        degree = gens[0].degree
    return PermGroup(degree, gens, enum_cap=enum_cap)


def contains(g: PermGroup, p: Permutation) -> bool:
    return g.contains(p)


def elements(g: PermGroup, cap: int | None = None):
    return g.elements(cap)


def rows_to_indices(rows: np.ndarray, index: dict[bytes, int]) -> np.ndarray:
    rows = np.ascontiguousarray(rows, dtype=np.int32)
    return np.fromiter((index[r.tobytes()] for r in rows), dtype=np.int64, count=rows.shape[0])


@dataclass(frozen=True)
class ConjugacyClassTable:
    representatives: list[Permutation]
    sizes: list[int]
    orders: list[int]
    class_of: np.ndarray  # class id per element, indexed like the group's element list

    def __len__(self):
        return len(self.representatives)

    def members(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == k)


def _build_class_table(g: PermGroup) -> ConjugacyClassTable:
    arr = g._element_array
    index = g._element_index
    n_el = arr.shape[0]
    conj_maps = []
    for x in g.generators:
        xa = np.asarray(x.images, dtype=np.int32)
        xinv = np.asarray(x.inverse().images, dtype=np.int32)
        # (x^-1 g x)[i] = x[g[x^-1[i]]]
        conj_maps.append(rows_to_indices(xa[arr[:, xinv]], index))
    label = np.full(n_el, -1, dtype=np.int64)
    groups = []
    for start in range(n_el):
        if label[start] >= 0:
            continue
        k = len(groups)
        label[start] = k
        members = [start]
        i = 0
        while i < len(members):
            e = members[i]
            i += 1
            for cm in conj_maps:
                f = int(cm[e])
                if label[f] < 0:
                    label[f] = k
                    members.append(f)
        groups.append(members)
    # canonical order: by element order, then lexicographically least member
    info = []
    for members in groups:
        rows = arr[members]
        lex = np.lexsort(rows.T[::-1])
        rep = Permutation._trusted(tuple(rows[lex[0]].tolist()))
        info.append((element_order(rep), rep.images, rep, len(members), members))
    order = sorted(range(len(info)), key=lambda k: (info[k][0], info[k][1]))
    remap = np.empty(len(info), dtype=np.int64)
    for new, old in enumerate(order):
        remap[old] = new
    return ConjugacyClassTable(
        representatives=[info[k][2] for k in order],
        sizes=[info[k][3] for k in order],
        orders=[info[k][0] for k in order],
        class_of=remap[label],
    )


def conjugacy_classes(g: PermGroup, cap: int | None = None) -> ConjugacyClassTable:
    return g.conjugacy_classes(cap)
