import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derange import fields
from derange.errors import InvalidInput
from derange.linalg import (
    AffineMap,
    MatrixFp,
    SubspaceFp,
    all_vectors,
    decode,
    encode,
    mat_rank_image_kernel,
    translation_permutation,
)


@pytest.mark.parametrize("p, f", [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4)])
def test_field_axioms(p, f):
    F = fields.field(p, f)
    q = p**f
    e = range(q)
    for a in e:
        assert F.add[a, 0] == a and F.mul[a, 1] == a
        assert F.add[a, F.neg[a]] == 0
        if a:
            assert F.mul[a, F.inv[a]] == 1
    for a, b, c in itertools.product(e, repeat=3):
        assert F.mul[a, F.add[b, c]] == F.add[F.mul[a, b], F.mul[a, c]]
        assert F.mul[F.mul[a, b], c] == F.mul[a, F.mul[b, c]]
    w = F.primitive_element()
    assert F.element_order(w) == q - 1


def test_smallest_irreducible_choices():
    assert fields.field(2, 2).modulus == (1, 1, 1)
    assert fields.field(3, 2).modulus == (1, 0, 1)
    assert fields.field(2, 3).modulus == (1, 1, 0, 1)


def test_regular_embedding_is_a_ring_map():
    F = fields.field(2, 3)
    P = fields.field(2)
    for a in range(8):
        for b in range(8):
            ea, eb = F.embed(a), F.embed(b)
            assert np.array_equal(F.embed(F.mul[a, b]), fields.mat_mul(P, ea, eb))
            assert np.array_equal(F.embed(F.add[a, b]), (ea + eb) % 2)


def test_gl_orders():
    assert fields.gl_order(2, 2) == 6
    assert fields.gl_order(3, 2) == 168
    assert fields.gl_order(2, 3) == 48
    assert fields.gl_order(3, 4) // fields.gl_order(3, 2) == 1080


def matrices(p, d):
    return st.lists(st.lists(st.integers(0, p - 1), min_size=d, max_size=d), min_size=d, max_size=d).map(
        lambda rows: MatrixFp(p, tuple(map(tuple, rows)))
    )


@settings(max_examples=60)
@given(st.sampled_from([(2, 3), (3, 2), (5, 2), (3, 3), (2, 4)]).flatmap(lambda pd: matrices(*pd)))
def test_rank_nullity_and_kernel(m):
    rank, image, kernel = mat_rank_image_kernel(m)
    assert rank + kernel.dimension == m.d
    for v in kernel.basis:
        assert not any(m.act(v))
    for v in all_vectors(m.p, m.d)[:50]:
        assert m.act(v) in image
    if m.is_invertible():
        assert (m @ m.inverse()).is_identity()
        assert m.det() != 0


def test_image_of_h_minus_one():
    h = MatrixFp(2, ((1, 1), (0, 1)))
    rank, image, _ = mat_rank_image_kernel(h, shift=True)
    assert rank == 1
    assert image.basis == ((0, 1),)
    assert (1, 0) not in image


def test_point_encoding():
    assert encode((0, 0, 0), 3) == 0
    assert encode((1, 2, 0), 3) == 7
    assert decode(7, 3, 3) == (1, 2, 0)
    vecs = all_vectors(3, 3)
    assert all(encode(v, 3) == k for k, v in enumerate(vecs))
    with pytest.raises(InvalidInput):
        decode(27, 3, 3)


@settings(max_examples=50)
@given(matrices(3, 2), matrices(3, 2), st.tuples(st.integers(0, 2), st.integers(0, 2)), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_affine_composition_matches_permutations(m1, m2, u1, u2):
    if not (m1.is_invertible() and m2.is_invertible()):
        return
    a, b = AffineMap(u1, m1), AffineMap(u2, m2)
    assert (a * b).permutation() == a.permutation() * b.permutation()
    assert (a * a.inverse()).permutation().is_identity()
    for w in all_vectors(3, 2):
        assert (a * b).apply(w) == b.apply(a.apply(w))


def test_affine_map_and_translation():
    a = AffineMap((1, 0), MatrixFp.identity(2, 2))
    assert a.permutation() == translation_permutation((1, 0), 2)
    assert a.fixed_vectors() == []
    with pytest.raises(InvalidInput):
        AffineMap((0, 0), MatrixFp(2, ((1, 1), (1, 1))))


def test_subspaces():
    s = SubspaceFp.span(3, 3, [(1, 1, 0), (2, 2, 0)])
    assert s.dimension == 1
    assert (2, 2, 0) in s and (1, 0, 0) not in s
    assert SubspaceFp.whole(3, 3).dimension == 3
    m = MatrixFp(3, ((0, 1, 0), (1, 0, 0), (0, 0, 1)))
    assert s.is_invariant(m)
    with pytest.raises(InvalidInput):
        MatrixFp(4, ((1,),))
