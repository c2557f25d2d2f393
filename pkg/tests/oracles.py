"""Slow, obviously-correct reference computations used as test oracles."""

import itertools


def compose(p, q):
    """Apply p first, then q (image tuples)."""
    return tuple(q[i] for i in p)


def inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def closure(gens, degree):
    """All products of the generators, by breadth-first search."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def subgroups(elements, degree):
    """Every subgroup, grown by adjoining one element at a time to known subgroups."""
    elements = list(elements)
    ident = tuple(range(degree))
    found = {frozenset([ident])}
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            gens = list(s)
            for g in elements:
                if g in s:
                    continue
                t = frozenset(_close_set(gens + [g], s))
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return found


def _close_set(gens, start):
    seen = set(start)
    frontier = list(seen | {gens[-1]})
    seen.add(gens[-1])
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def conjugacy_classes(elements):
    elements = list(elements)
    left = set(elements)
    classes = []
    while left:
        g = min(left)
        cls = {compose(compose(inverse(x), g), x) for x in elements}
        classes.append(cls)
        left -= cls
    return classes


def fixes_nothing(p):
    return all(i != j for i, j in enumerate(p))


def set_partitions_equal(points, size):
    points = sorted(points)
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for others in itertools.combinations(rest, size - 1):
        block = frozenset((first,) + others)
        remaining = [x for x in rest if x not in block]
        for tail in set_partitions_equal(remaining, size):
            yield [block] + tail


def block_systems(gens, points):
    """Nontrivial block systems found by checking every equal-size partition."""
    n = len(points)
    out = []
    for size in range(2, n):
        if n % size:
            continue
        for part in set_partitions_equal(points, size):
            blocks = set(part)
            if all(frozenset(g[x] for x in b) in blocks for g in gens for b in part):
                out.append(frozenset(part))
    return out
