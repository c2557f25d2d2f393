"""Orbits, stabilizers, block systems, coset actions and disjoint unions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded, InvalidInput
from .group import PermGroup, rows_to_indices
from .perm import Permutation


def orbit(g: PermGroup, point: int) -> list[int]:
    """Orbit of ``point`` in breadth-first order."""
    if not 0 <= point < g.degree:
        raise InvalidInput(f"point {point} out of range")
    seen = {point}
    out = [point]
    i = 0
    gens = [s.images for s in g.generators]
    while i < len(out):
        x = out[i]
        i += 1
        for s in gens:
            y = s[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def orbits(g: PermGroup, points=None) -> list[tuple[int, ...]]:
    """Orbits as sorted tuples, listed by their smallest point."""
    todo = range(g.degree) if points is None else sorted(points)
    done = set()
    out = []
    for x in todo:
        if x in done:
            continue
        orb = orbit(g, x)
        done.update(orb)
        out.append(tuple(sorted(orb)))
    return out


def is_transitive(g: PermGroup, points=None) -> bool:
    pts = range(g.degree) if points is None else list(points)
    pts = list(pts)
    if not pts:
        return True
    return set(orbit(g, pts[0])) == set(pts)


def _transversal(g: PermGroup, point: int) -> dict[int, Permutation]:
    trans = {point: g.identity()}
    queue = [point]
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        for s in g.generators:
            y = s(x)
            if y not in trans:
                trans[y] = trans[x] * s
                queue.append(y)
    return trans


def point_stabilizer(g: PermGroup, point: int) -> PermGroup:
    """Stabilizer of ``point`` from its Schreier generators."""
    trans = _transversal(g, point)
    gens = []
    seen = set()
    for x, ux in trans.items():
        for s in g.generators:
            h = ux * s * trans[s(x)].inverse()
            if not h.is_identity() and h not in seen:
                seen.add(h)
                gens.append(h)
    stab = PermGroup(g.degree, gens, enum_cap=g.enum_cap)
    assert stab.order * len(trans) == g.order
    return stab


def pointwise_stabilizer(g: PermGroup, points) -> PermGroup:
    k = g
    for x in points:
        if all(s(x) == x for s in k.generators):
            continue
        k = point_stabilizer(k, x)
    return k


def restrict(g: PermGroup, points) -> PermGroup:
    """Induced group on an invariant set, points relabelled 0..k-1 in ascending order."""
    pts = sorted(points)
    return PermGroup(len(pts), [s.restrict(pts) for s in g.generators], enum_cap=g.enum_cap)


# multi-orbit actions -------------------------------------------------------


@dataclass(frozen=True)
class MultiOrbitAction:
    """A group with its domain split into labelled orbits."""

    group: PermGroup
    orbits: tuple[tuple[int, ...], ...]
    labels: tuple = ()

    def __post_init__(self):
        orbs = tuple(tuple(sorted(o)) for o in self.orbits)
        object.__setattr__(self, "orbits", orbs)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, len(orbs) + 1)))
        if len(self.labels) != len(orbs) or len(set(self.labels)) != len(self.labels):
            raise InvalidInput("orbit labels must be distinct and match the orbit count")
        flat = sorted(p for o in orbs for p in o)
        if flat != list(range(self.group.degree)):
            raise InvalidInput("labelled parts must partition the domain")
        actual = {frozenset(o) for o in orbits(self.group)}
        for o in orbs:
            if frozenset(o) not in actual:
                raise InvalidInput(f"part {o} is not a single orbit of the group")

    @classmethod
    def from_group(cls, group: PermGroup, labels=()) -> MultiOrbitAction:
        return cls(group, tuple(orbits(group)), tuple(labels))

    @property
    def domain_size(self) -> int:
        return self.group.degree

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def _index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidInput(f"unknown orbit label {label!r}") from None

    def orbit_points(self, label) -> tuple[int, ...]:
        return self.orbits[self._index(label)]

    def restricted(self, label) -> PermGroup:
        return restrict(self.group, self.orbit_points(label))


def action_kernel(a: MultiOrbitAction, label) -> PermGroup:
    """Subgroup of ``a.group`` acting trivially on the labelled orbit."""
    return pointwise_stabilizer(a.group, a.orbit_points(label))


# block systems ---------------------------------------------------------------


def minimal_block(g: PermGroup, points, a: int, b: int) -> list[int]:
    """Smallest block of the action on ``points`` containing ``a`` and ``b``."""
    parent = {x: x for x in points}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = [s.images for s in g.generators]
    queue = [(a, b)]
    parent[find(b)] = find(a)
    while queue:
        x, y = queue.pop()
        for s in gens:
            u, v = find(s[x]), find(s[y])
            if u != v:
                if v < u:
                    u, v = v, u
                parent[v] = u
                queue.append((s[x], s[y]))
    root = find(a)
    return sorted(x for x in points if find(x) == root)


@dataclass(frozen=True)
class PrimitivityResult:
    primitive: bool
    block: tuple[int, ...] | None = None

    def __bool__(self):
        return self.primitive


def is_primitive(g: PermGroup, points=None) -> PrimitivityResult:
    """Primitivity of the (transitive) action on ``points``; a block is returned when imprimitive."""
    pts = sorted(range(g.degree) if points is None else points)
    if len(pts) < 2:
        raise InvalidInput("primitivity needs an orbit of size at least 2")
    if not is_transitive(g, pts):
        raise InvalidInput("action is not transitive on the given points")
    first = pts[0]
    for w in pts[1:]:
        blk = minimal_block(g, pts, first, w)
        if len(blk) < len(pts):
            return PrimitivityResult(False, tuple(blk))
    return PrimitivityResult(True, None)


def block_systems_bruteforce(g: PermGroup, points=None) -> list[tuple[frozenset, ...]]:
    """All nontrivial block systems by testing every partition into equal parts.

    Exponential; only intended as an independent check at small degree.
    """
    pts = sorted(range(g.degree) if points is None else points)
    n = len(pts)
    gens = [s.images for s in g.generators]
    found = []
    for size in range(2, n):
        if n % size:
            continue
        for part in _equal_partitions(pts, size):
            blocks = {frozenset(b) for b in part}
            if all(frozenset(s[x] for x in b) in blocks for b in blocks for s in gens):
                found.append(tuple(sorted(blocks, key=min)))
    return found


def _equal_partitions(pts, size):
    if not pts:
        yield []
        return
    from itertools import combinations

    first, rest = pts[0], pts[1:]
    for others in combinations(rest, size - 1):
        block = (first,) + others
        remaining = [x for x in rest if x not in others]
        for tail in _equal_partitions(remaining, size):
            yield [block] + tail


# coset actions ----------------------------------------------------------------


@dataclass(frozen=True)
class CosetAction:
    """Action of ``parent`` by right multiplication on the right cosets of ``subgroup``."""

    parent: PermGroup
    subgroup: PermGroup
    coset_of: np.ndarray = field(repr=False)  # coset label per parent element index
    representatives: np.ndarray = field(repr=False)  # element index of each coset's first member
    quotient_images: tuple[Permutation, ...] = ()
    kernel: PermGroup | None = None

    @property
    def degree(self) -> int:
        return len(self.representatives)

    @property
    def point_stabilizer_order(self) -> int:
        return self.subgroup.order

    @property
    def image_group(self) -> PermGroup:
        return PermGroup(self.degree, self.quotient_images, enum_cap=self.parent.enum_cap)

    def image(self, g: Permutation) -> Permutation:
        """The permutation of cosets induced by an arbitrary element of the parent."""
        arr = self.parent.element_array()
        ga = np.asarray(g.images, dtype=np.int32)
        idx = rows_to_indices(ga[arr[self.representatives]], self.parent.element_index())
        return Permutation._trusted(tuple(self.coset_of[idx].tolist()))


def coset_action(g: PermGroup, h: PermGroup, cap: int | None = None) -> CosetAction:
    if not h.is_subgroup_of(g):
        raise InvalidInput("coset action requires a subgroup")
    index = g.order // h.order
    cap = g.enum_cap if cap is None else cap
    if index > cap:
        raise CapExceeded(f"index {index} exceeds the cap {cap}")
    arr = g.element_array()
    eidx = g.element_index()
    harr = h.element_array()
    coset_of = np.full(arr.shape[0], -1, dtype=np.int64)
    reps = []
    for i in range(arr.shape[0]):
        if coset_of[i] >= 0:
            continue
        # members h*g of the coset Hg, g the first unassigned element
        members = rows_to_indices(arr[i][harr], eidx)
        coset_of[members] = len(reps)
        reps.append(i)
    reps = np.asarray(reps, dtype=np.int64)
    images = []
    for s in g.generators:
        sa = np.asarray(s.images, dtype=np.int32)
        idx = rows_to_indices(sa[arr[reps]], eidx)
        images.append(Permutation._trusted(tuple(coset_of[idx].tolist())))
    kernel = _kernel_of_images(g, images, index)
    return CosetAction(g, h, coset_of, reps, tuple(images), kernel)


def _kernel_of_images(g: PermGroup, images, m: int) -> PermGroup:
    """Elements of ``g`` whose image under the generator-aligned action is trivial."""
    n = g.degree
    diag = [
        Permutation._trusted(s.images + tuple(n + x for x in q.images))
        for s, q in zip(g.generators, images)
    ]
    d = PermGroup(n + m, diag, enum_cap=g.enum_cap)
    k = pointwise_stabilizer(d, range(n, n + m))
    return PermGroup(n, [s.restrict(range(n)) for s in k.generators], enum_cap=g.enum_cap)


def core(g: PermGroup, h: PermGroup) -> PermGroup:
    """Largest normal subgroup of ``g`` contained in ``h``."""
    return coset_action(g, h).kernel


def _part_images(part):
    if isinstance(part, CosetAction):
        return part.quotient_images, part.degree
    if isinstance(part, MultiOrbitAction):
        part = part.group
    if isinstance(part, PermGroup):
        return part.generators, part.degree
    raise InvalidInput(f"cannot take a disjoint union with {type(part).__name__}")


def _part_cap(part) -> int:
    if isinstance(part, CosetAction):
        return part.parent.enum_cap
    if isinstance(part, MultiOrbitAction):
        return part.group.enum_cap
    return part.enum_cap


def disjoint_union(*parts, labels=()) -> MultiOrbitAction:
    """Concatenate generator-aligned actions of one abstract group on disjoint domains."""
    if not parts:
        raise InvalidInput("disjoint union of nothing")
    data = [_part_images(p) for p in parts]
    ngens = {len(imgs) for imgs, _ in data}
    if len(ngens) != 1:
        raise InvalidInput("parts have different generator counts")
    total = sum(deg for _, deg in data)
    gens = []
    for k in range(ngens.pop()):
        images = []
        offset = 0
        for imgs, deg in data:
            images.extend(offset + x for x in imgs[k].images)
            offset += deg
        gens.append(Permutation._trusted(tuple(images)))
    group = PermGroup(total, gens, enum_cap=max(_part_cap(p) for p in parts))
    orbs = []
    offset = 0
    for imgs, deg in data:
        sub = PermGroup(deg, imgs)
        orbs.extend(tuple(offset + x for x in o) for o in orbits(sub))
        offset += deg
    return MultiOrbitAction(group, tuple(orbs), tuple(labels))
