"""Exhaustive subgroup lattices of small permutation groups.

Subgroups are found by closing the set of cyclic subgroups under joins with
cyclic subgroups; every subgroup is a join of its cyclic subgroups, so the
closure is complete.  Element sets are Python-int bitmasks over the parent's
fixed element order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded
from .group import PermGroup, rows_to_indices
from .numtheory import prime_power_base
from .perm import Permutation, format_cycles

DEFAULT_LATTICE_CAP = 400


class CayleyTable:
    """Multiplication table of an enumerable permutation group."""

    def __init__(self, group: PermGroup):
        self.group = group
        arr = group.element_array()
        index = group.element_index()
        n_el = arr.shape[0]
        self.size = n_el
        self.elements = group.element_list()
        mult = np.empty((n_el, n_el), dtype=np.int64)
        for j in range(n_el):
            # column j: E_i * E_j for all i
            mult[:, j] = rows_to_indices(arr[j][arr], index)
        self.mult = mult
        ident = np.arange(group.degree, dtype=np.int32).tobytes()
        self.identity = index[ident]
        self.inverse = np.argmax(mult == self.identity, axis=1)
        self._rows = mult.tolist()

    def closure(self, generators, start=None) -> list[int]:
        """Elements of the subgroup generated by ``generators`` (indices), optionally seeded."""
        rows = self._rows
        elems = [self.identity] if start is None else list(start)
        seen = set(elems)
        i = 0
        while i < len(elems):
            row = rows[elems[i]]
            i += 1
            for s in generators:
                y = row[s]
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
        return elems

    def closure_mask(self, generators, start: np.ndarray) -> np.ndarray:
        """Boolean membership of the subgroup generated by ``start`` (a subgroup) and ``generators``."""
        members = start.copy()
        gens = np.asarray(generators, dtype=np.int64)
        frontier = np.flatnonzero(members)
        while frontier.size:
            new = np.zeros_like(members)
            new[self.mult[frontier][:, gens].ravel()] = True
            new &= ~members
            members |= new
            frontier = np.flatnonzero(new)
        return members

    def conjugation_map(self, g: int) -> np.ndarray:
        """Index map x -> g^-1 x g."""
        return self.mult[self.mult[self.inverse[g], :], g]


def _mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass
class SubgroupRecord:
    generators: list[Permutation]
    order: int
    element_key: tuple[int, ...]
    is_maximal: bool = False
    conjugacy_class_id: int = -1
    mask: int = field(default=0, repr=False)
    gen_indices: tuple[int, ...] = field(default=(), repr=False)

    def group(self, degree: int, enum_cap: int | None = None) -> PermGroup:
        kw = {} if enum_cap is None else {"enum_cap": enum_cap}
        return PermGroup(degree, self.generators, **kw)


class SubgroupLattice:
    def __init__(self, group: PermGroup, cap: int = DEFAULT_LATTICE_CAP):
        if group.order > cap:
            raise CapExceeded(f"group of order {group.order} exceeds the lattice cap {cap}")
        self.group = group
        self.cap = cap
        self.table = CayleyTable(group)
        self.records = self._enumerate()
        self._mark_maximal()
        self.classes = self._conjugacy_classes()

    def _enumerate(self) -> list[SubgroupRecord]:
        t = self.table
        n_el = t.size
        found: dict[bytes, tuple[int, ...]] = {}
        masks: dict[bytes, np.ndarray] = {}
        conj = [t.conjugation_map(self.group.index_of(s)) for s in self.group.generators]

        def add_class(m: np.ndarray, gens: tuple[int, ...]) -> bytes:
            # register m and all its conjugates; joins commute with conjugation,
            # so only the first member needs expanding later
            key = np.packbits(m).tobytes()
            found[key], masks[key] = gens, m
            todo = [key]
            while todo:
                k = todo.pop()
                for cm in conj:
                    img = np.zeros(n_el, dtype=bool)
                    img[cm[masks[k]]] = True
                    ik = np.packbits(img).tobytes()
                    if ik not in found:
                        found[ik], masks[ik] = tuple(int(cm[x]) for x in found[k]), img
                        todo.append(ik)
            return key

        trivial = np.zeros(n_el, dtype=bool)
        trivial[t.identity] = True
        add_class(trivial, ())
        cyclic: list[int] = []
        seen: set[bytes] = set()
        frontier = []
        for g in range(n_el):
            members = t.closure([g])
            # every element is a product of prime-power powers of itself, so
            # cyclic subgroups of prime-power order suffice for all joins
            if prime_power_base(len(members)) is None:
                continue
            m = np.zeros(n_el, dtype=bool)
            m[members] = True
            key = np.packbits(m).tobytes()
            if key in seen:
                continue
            seen.add(key)
            cyclic.append(g)
            if key not in found:
                frontier.append(add_class(m, (g,)))
        while frontier:
            new = []
            for hk in frontier:
                gens, hm = found[hk], masks[hk]
                for c in cyclic:
                    if hm[c]:
                        continue
                    jm = t.closure_mask(gens + (c,), hm)
                    jk = np.packbits(jm).tobytes()
                    if jk not in found:
                        new.append(add_class(jm, gens + (c,)))
            frontier = new
        records = []
        for k, gens in found.items():
            key = tuple(np.flatnonzero(masks[k]).tolist())
            records.append(
                SubgroupRecord(
                    generators=[t.elements[i] for i in gens],
                    order=len(key),
                    element_key=key,
                    mask=_mask(key),
                    gen_indices=gens,
                )
            )
        records.sort(key=lambda r: (r.order, r.element_key))
        return records

    def _mark_maximal(self):
        full = self.group.order
        proper = [r for r in self.records if r.order < full]
        for r in proper:
            r.is_maximal = not any(
                s is not r and s.order > r.order and (s.mask & r.mask) == r.mask for s in proper
            )

    def _conjugacy_classes(self) -> list[list[SubgroupRecord]]:
        t = self.table
        by_mask = {r.mask: r for r in self.records}
        gen_idx = [self.group.index_of(g) for g in self.group.generators]
        conj = [t.conjugation_map(g) for g in gen_idx]
        classes = []
        for r in self.records:
            if r.conjugacy_class_id >= 0:
                continue
            cid = len(classes)
            r.conjugacy_class_id = cid
            members = [r]
            i = 0
            while i < len(members):
                key = members[i].element_key
                i += 1
                for cm in conj:
                    img = by_mask[_mask(cm[list(key)])]
                    if img.conjugacy_class_id < 0:
                        img.conjugacy_class_id = cid
                        members.append(img)
            classes.append(members)
        return classes

    def __len__(self):
        return len(self.records)

    @property
    def maximal(self) -> list[SubgroupRecord]:
        return [r for r in self.records if r.is_maximal]

    def class_representatives(self) -> list[SubgroupRecord]:
        return [cls[0] for cls in self.classes]

    def find(self, subgroup: PermGroup) -> SubgroupRecord:
        """Record whose element set equals that of ``subgroup``."""
        idx = rows_to_indices(subgroup.element_array(), self.group.element_index())
        m = _mask(idx)
        for r in self.records:
            if r.mask == m:
                return r
        raise KeyError("subgroup not in lattice")

    def normalizer_order(self, rec: SubgroupRecord) -> int:
        t = self.table
        return sum(1 for g in range(t.size) if _mask(t.conjugation_map(g)[list(rec.element_key)]) == rec.mask)

    def to_json(self) -> str:
        deg = self.group.degree
        body = {
            "group_order": str(self.group.order),
            "subgroups": [
                {
                    "order": str(r.order),
                    "generators": [format_cycles(g) for g in r.generators],
                    "maximal": r.is_maximal,
                    "class_id": r.conjugacy_class_id,
                }
                for r in self.records
            ],
            "degree": deg,
        }
        return json.dumps(body, sort_keys=True, indent=2)


def all_subgroups(g: PermGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[SubgroupRecord]:
    return SubgroupLattice(g, cap).records


def maximal_subgroups(g: PermGroup, lattice: SubgroupLattice | None = None) -> list[SubgroupRecord]:
    lattice = lattice or SubgroupLattice(g)
    return lattice.maximal


def subgroup_conjugacy_classes(g: PermGroup, lattice: SubgroupLattice | None = None) -> list[list[SubgroupRecord]]:
    lattice = lattice or SubgroupLattice(g)
    return lattice.classes
