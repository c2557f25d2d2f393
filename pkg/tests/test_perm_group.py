import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derange.constructions import (
    alternating,
    catalog_manifest,
    build_catalog_entry,
    cyclic,
    dihedral,
    direct_product,
    symmetric,
)
from derange.errors import CapExceeded, InvalidInput
from derange.group import PermGroup
from derange.perm import Permutation, format_cycles, parse_cycles

import oracles


perms = st.integers(1, 9).flatmap(lambda n: st.permutations(list(range(n)))).map(Permutation)


@given(perms)
def test_cycle_notation_round_trip(p):
    assert parse_cycles(format_cycles(p), p.degree) == p


@given(perms, st.data())
def test_composition_acts_on_the_right(p, data):
    q = Permutation(data.draw(st.permutations(list(range(p.degree)))))
    for i in range(p.degree):
        assert (p * q)(i) == q(p(i))
    assert (p * q).inverse() == q.inverse() * p.inverse()


@given(perms)
def test_order_and_sign(p):
    assert (p ** p.order()).is_identity()
    assert all(not (p**k).is_identity() for k in range(1, p.order()))
    assert p.sign() == (-1) ** sum(len(c) - 1 for c in p.cycles())


def test_one_based_io():
    p = parse_cycles("(1 2)(3 4 5)", 5)
    assert p.images == (1, 0, 3, 4, 2)
    assert format_cycles(p) == "(1 2)(3 4 5)"
    assert format_cycles(Permutation.identity(3)) == "()"


@pytest.mark.parametrize("text", ["(1 2", "(1 x)", "(1 9)", "", "1 2"])
def test_bad_cycle_text(text):
    with pytest.raises(InvalidInput):
        parse_cycles(text, 4)


def test_not_a_permutation():
    with pytest.raises(InvalidInput):
        Permutation([0, 0, 1])


def test_s3_against_cayley_table():
    g = symmetric(3)
    brute = oracles.closure([s.images for s in g.generators], 3)
    assert g.order == len(brute) == 6
    assert {p.images for p in g.element_list()} == brute
    for a in brute:
        for b in brute:
            assert oracles.compose(a, b) in brute


def _small_catalog():
    for e in catalog_manifest():
        g = build_catalog_entry(e).group
        if g.order <= 2000 and g.degree <= 40:
            yield e["name"], g


def test_chain_order_matches_enumeration():
    for name, g in _small_catalog():
        brute = oracles.closure([s.images for s in g.generators], g.degree)
        assert len(brute) == g.order, name
        assert g.element_array().shape[0] == g.order


def test_membership_completeness():
    rng = random.Random(1)
    for g in [dihedral(7), alternating(5), direct_product(cyclic(3), symmetric(3)), symmetric(4)]:
        members = {p.images for p in g.element_list()}
        assert all(g.contains(p) for p in g.element_list())
        outside = 0
        while outside < 100 and len(members) < _factorial(g.degree):
            images = list(range(g.degree))
            rng.shuffle(images)
            p = Permutation(images)
            if p.images not in members:
                assert not g.contains(p)
                outside += 1


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def test_known_orders():
    assert symmetric(6).order == 720
    assert alternating(6).order == 360
    assert dihedral(12).order == 24
    assert direct_product(symmetric(3), symmetric(3)).order == 36
    assert PermGroup(5).order == 1


def test_enumeration_cap_is_loud():
    with pytest.raises(CapExceeded):
        PermGroup(6, symmetric(6).generators, enum_cap=100).element_array()


def test_conjugacy_classes_against_brute_force():
    for g in [symmetric(4), dihedral(6), alternating(5)]:
        table = g.conjugacy_classes()
        brute = oracles.conjugacy_classes(p.images for p in g.element_list())
        assert sorted(table.sizes) == sorted(len(c) for c in brute)
        assert sum(table.sizes) == g.order
        for k, rep in enumerate(table.representatives):
            assert g.order % table.sizes[k] == 0
            assert rep.order() == table.orders[k]
            members = {g.element_list()[i].images for i in table.members(k)}
            assert min(members) == rep.images
    orders = symmetric(4).conjugacy_classes().orders
    assert orders == sorted(orders)


def test_fixed_points_are_a_class_function():
    rng = random.Random(3)
    g = symmetric(5)
    for rep in g.conjugacy_classes().representatives:
        for _ in range(10):
            x = g.random_element(rng)
            assert rep.conjugate(x).num_fixed() == rep.num_fixed()


@settings(max_examples=30)
@given(st.sampled_from([3, 4, 5]), st.integers(0, 10**6))
def test_subgroup_orders_divide(n, seed):
    rng = random.Random(seed)
    g = symmetric(n)
    h = g.subgroup([g.random_element(rng) for _ in range(2)])
    assert g.order % h.order == 0
    assert h.is_subgroup_of(g)
    assert len(oracles.closure([s.images for s in h.generators], n)) == h.order


def test_normality():
    g = symmetric(4)
    v4 = PermGroup(4, [parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)])
    assert v4.is_normal_subgroup_of(g)
    assert not PermGroup(4, [parse_cycles("(1 2)", 4)]).is_normal_subgroup_of(g)
    assert v4.is_abelian() and not g.is_abelian()
