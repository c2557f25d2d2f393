import pytest

from derange.actions import (
    MultiOrbitAction,
    action_kernel,
    block_systems_bruteforce,
    core,
    coset_action,
    disjoint_union,
    is_primitive,
    is_transitive,
    orbit,
    orbits,
    point_stabilizer,
    pointwise_stabilizer,
)
from derange.constructions import agl1, build_catalog_entry, catalog_manifest, dihedral, symmetric
from derange.errors import InvalidInput
from derange.group import PermGroup
from derange.lattice import SubgroupLattice
from derange.perm import parse_cycles

import oracles


def _catalog(max_order=None, max_degree=None):
    for e in catalog_manifest():
        a = build_catalog_entry(e)
        g = a.group
        if max_order is not None and g.order > max_order:
            continue
        if max_degree is not None and g.degree > max_degree:
            continue
        yield e["name"], a


def test_orbit_stabilizer_everywhere():
    for name, a in _catalog(max_order=5000):
        g = a.group
        for o in a.orbits:
            x = o[0]
            assert len(orbit(g, x)) * point_stabilizer(g, x).order == g.order, name


def test_orbit_labels_match_recomputation():
    for name, a in _catalog():
        assert sorted(a.orbits) == sorted(orbits(a.group)), name
        assert sorted(p for o in a.orbits for p in o) == list(range(a.domain_size))


def test_primitivity_against_all_partitions():
    seen = 0
    for name, a in _catalog(max_degree=12):
        g = a.group
        if g.degree < 2 or not is_transitive(g):
            continue
        gens = [s.images for s in g.generators]
        brute = oracles.block_systems(gens, list(range(g.degree)))
        res = is_primitive(g)
        assert bool(res) == (not brute), name
        if not res:
            blk = frozenset(res.block)
            assert any(blk in system for system in brute)
        assert len(block_systems_bruteforce(g)) == len(brute)
        seen += 1
    assert seen > 100


def test_kernel_is_intersection_of_conjugates():
    for g in [symmetric(4), dihedral(6), dihedral(8)]:
        elements = g.element_list()
        for rec in SubgroupLattice(g).records:
            h = rec.group(g.degree)
            members = {p.images for p in h.element_list()}
            inter = set(members)
            for x in elements:
                xi = x.inverse().images
                inter &= {oracles.compose(oracles.compose(xi, m), x.images) for m in members}
            k = coset_action(g, h).kernel
            assert {p.images for p in k.element_list()} == inter
            assert core(g, h).order == len(inter)


def test_primitive_iff_maximal():
    for name, a in _catalog(max_order=400):
        g = a.group
        if g.order == 1:
            continue
        lat = SubgroupLattice(g)
        for rec in lat.class_representatives():
            if rec.order == g.order:
                continue
            act = coset_action(g, rec.group(g.degree))
            if act.degree < 2:
                continue
            img = act.image_group
            assert bool(is_primitive(img)) == rec.is_maximal, (name, rec.order)


def test_coset_action_is_deterministic():
    g = symmetric(4)
    h = PermGroup(4, [parse_cycles("(1 2 3)", 4), parse_cycles("(1 2)", 4)])
    a1, a2 = coset_action(g, h), coset_action(g, h)
    assert a1.quotient_images == a2.quotient_images
    assert a1.degree == 4
    # first coset is H itself and its label is 0
    assert a1.representatives[0] == 0
    for s in g.generators:
        assert a1.image(s) in a1.quotient_images


def test_multi_orbit_validation():
    a = agl1(5)
    assert a.orbit_sizes == [5, 4]
    assert a.labels == ("affine", "regular")
    assert action_kernel(a, "regular").order == 5
    with pytest.raises(InvalidInput):
        MultiOrbitAction(a.group, ((0, 1), tuple(range(2, 9))))
    with pytest.raises(InvalidInput):
        MultiOrbitAction(a.group, (tuple(range(5)),))


def test_disjoint_union_of_coset_actions():
    g = symmetric(4)
    h1 = point_stabilizer(g, 3)
    h2 = PermGroup(4, [parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 3)", 4)])
    u = disjoint_union(coset_action(g, h1), coset_action(g, h2), labels=("points", "pairs"))
    assert u.orbit_sizes == [4, 3]
    assert u.group.order == 24
    assert pointwise_stabilizer(u.group, u.orbit_points("points")).is_trivial


def test_restriction_errors():
    with pytest.raises(InvalidInput):
        orbit(symmetric(3), 5)
    with pytest.raises(InvalidInput):
        is_primitive(agl1(3).group)
