import itertools

import pytest

from derange import fields
from derange.affine import (
    affine_derangement_from,
    affine_group,
    check_fixed_space_congruence,
    congruence_hypothesis,
    congruence_sweep,
    gl32_on_eight_points,
    gl_elements,
    gl_generators,
    gl_over_extension_as_subgroup,
    is_irreducible,
    isbell_witness,
    jordan_type,
    jordan_unipotent,
    linear_group,
    matrix_group_elements,
    partitions,
    sl_generators,
    unipotent_field_extension_check,
)
from derange.actions import is_primitive
from derange.constructions import AFFINE_SPECS, affine_catalog_group, affine_primitivity_agrees
from derange.errors import CapExceeded
from derange.linalg import MatrixFp, SubspaceFp, all_vectors

import oracles


def _has_invariant_subspace(gens, p, d):
    vecs = [tuple(int(x) for x in v) for v in all_vectors(p, d)[1:]]
    for k in range(1, d):
        for spanning in itertools.combinations(vecs, k):
            w = SubspaceFp.span(p, d, spanning)
            if 0 < w.dimension < d and all(w.is_invariant(g) for g in gens):
                return True
    return False


@pytest.mark.parametrize("name", list(AFFINE_SPECS))
def test_irreducibility_against_subspace_search(name):
    A = affine_catalog_group(name)
    if A.p**A.d > 16:
        pytest.skip("subspace search too slow")
    res = is_irreducible(A.linear_generators, A.p, A.d)
    assert bool(res) == (not _has_invariant_subspace(A.linear_generators, A.p, A.d))
    if not res:
        assert all(res.witness.is_invariant(g) for g in A.linear_generators)


@pytest.mark.parametrize("name", list(AFFINE_SPECS) + ["AGL(1,5)", "AGL(1,13)"])
def test_affine_primitive_iff_irreducible(name):
    assert affine_primitivity_agrees(name)


def test_affine_group_structure():
    A = affine_group(gl_generators(2, 3))
    assert A.group.order == 9 * 48
    assert A.linear.order == 48
    assert A.translations.order == 9
    assert bool(is_primitive(A.group))
    assert linear_group(sl_generators(2, 3)).order == 24
    with pytest.raises(CapExceeded):
        is_irreducible(gl_generators(2, 3), cap=8)


def test_fixed_space_congruence_sweeps():
    groups = [(gl_elements(2, 2), 2), (gl_elements(2, 3), 3), (gl_elements(3, 2), 2)]
    gens = gl_over_extension_as_subgroup(2, 2, 2)
    groups.append((matrix_group_elements(gens, 2, 4), 4))
    assert len(groups[-1][0]) == fields.gl_order(2, 4)
    for elems, q in groups:
        res = congruence_sweep(elems, q)
        assert res["failed"] == 0 and res["checked"] > 0


def test_fixed_dimension_by_counting_vectors():
    for g in gl_elements(3, 2):
        for e in range(1, 4):
            r = check_fixed_space_congruence(g, 2, e)
            if r.status == "hypothesis unmet":
                continue
            fixed = sum(1 for v in all_vectors(2, 3) if g.act(v) == tuple(int(x) for x in v))
            assert 2**r.fixed_dim == fixed


def test_congruence_hypothesis():
    assert congruence_hypothesis(7, 2, 3)
    assert not congruence_hypothesis(3, 2, 4)  # 3 divides 2^2 - 1
    assert congruence_hypothesis(5, 2, 4)


def test_construction_from_vector_outside_the_image():
    H = gl_generators(2, 2)
    h = MatrixFp(2, ((1, 1), (0, 1)))
    c3 = [MatrixFp(2, ((0, 1), (1, 1)))]
    rep = affine_derangement_from(h, H, c3, (1, 0))
    assert rep.status == "ok" and rep.verified
    assert rep.degrees == (4, 2)
    assert oracles.fixes_nothing(rep.permutation.images)
    assert affine_derangement_from(h, H, c3, (0, 1)).status == "precondition failed"
    assert affine_derangement_from(c3[0], H, c3, (1, 0)).status == "no admissible v"
    assert "h fixes a coset of M in H" in affine_derangement_from(h, H, [h], (1, 0)).failures


def test_isbell_on_gl32():
    G, rho = gl32_on_eight_points()
    assert G.degree == 8 and G.order == 168
    rep = isbell_witness(G, rho)
    assert rep.status == "ok"
    assert all(rep.preconditions.values())
    assert oracles.fixes_nothing(rep.witness.images)
    assert any(rep.fixed_vector) and rep.witness_matrix.act(rep.fixed_vector) == rep.fixed_vector
    # a map that breaks the relations is rejected before any search
    bad = list(rho)
    bad[0] = MatrixFp.identity(2, 3)
    assert isbell_witness(G, bad).status == "precondition failed"


def test_jordan_types():
    F = fields.field(2, 2)
    for lam in partitions(3):
        assert jordan_type(F, jordan_unipotent(lam, 3)) == lam
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_unipotent_check_small():
    rep = unipotent_field_extension_check(2, 2)
    assert rep.all_meet_subgroup
    assert rep.unipotents_enumerated == 16
    assert rep.index == fields.gl_order(2, 4) // fields.gl_order(2, 2)
