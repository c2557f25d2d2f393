import pytest

from derange.constructions import ORDER_96_PRESENTATION, order_96_example
from derange.errors import CapExceeded
from derange.presentation import (
    PresentationSyntaxError,
    evaluate_word,
    parse_presentation,
    todd_coxeter,
)

import oracles


def test_symmetric_group_of_degree_three():
    pr = parse_presentation("gens: a, b; rels: a^2, b^3, (a*b)^2")
    table = todd_coxeter(pr)
    assert table.status == "complete" and table.n_cosets == 6
    g = table.group()
    assert g.order == 6 and not g.is_abelian()
    sub = todd_coxeter(pr, [pr.parse_word("a")])
    assert sub.n_cosets == 3


def test_sugar_expands_to_plain_words():
    pr = parse_presentation("gens: x, y\nrels: [x,y], x^y = x, x^3, y^2")
    assert pr.relators == parse_presentation("gens: x, y; rels: x^-1 y^-1 x y, y^-1 x y x^-1, x^3, y^2").relators
    assert todd_coxeter(pr).n_cosets == 6


def test_chain_equal_to_one():
    pr = parse_presentation("gens: a, b; rels: a^2 = b^2 = (a b)^2 = 1")
    assert len(pr.relators) == 3
    assert todd_coxeter(pr).group().order == 4


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("gens: x; rels: [x,y]", 1, None),
        ("rels: x^2", 1, 1),
        ("gens: x\nrels: x^^2", 2, None),
        ("gens: x, x; rels: x", 1, None),
    ],
)
def test_syntax_errors_report_position(text, line, col):
    with pytest.raises(PresentationSyntaxError) as exc:
        parse_presentation(text)
    assert exc.value.line == line
    if col is not None:
        assert exc.value.col == col
    assert f"line {line}" in str(exc.value)


def test_coset_cap():
    pr = parse_presentation("gens: a, b; rels: a^2, b^3, (a*b)^5")
    assert todd_coxeter(pr).group().order == 60
    with pytest.raises(CapExceeded):
        todd_coxeter(pr, cap=20)


def test_relators_hold_on_images():
    pr = parse_presentation(ORDER_96_PRESENTATION)
    g = todd_coxeter(pr).group()
    assert g.order == 96
    for r in pr.relators:
        assert evaluate_word(r, g.generators).is_identity()
    brute = oracles.closure([s.images for s in g.generators], g.degree)
    assert len(brute) == 96


def test_order_96_example():
    ex = order_96_example()
    c = ex.checks
    assert (c["order"], c["h1_order"], c["h2_order"], c["normal_order"]) == (96, 24, 8, 8)
    assert c["h1_maximal"] and c["covering"] and c["quotient_is_a4"] and c["h2_abelian_c4xc2"]
    assert ex.group.degree == 12
    assert "cosets of H2" in ex.degree_rule
    # independent covering check: union of the conjugates of both subgroups is everything
    elements = [p for p in ex.group.element_list()]
    union = set()
    for h in (ex.h1, ex.h2):
        members = [p.images for p in h.element_list()]
        for x in elements:
            xi = x.inverse().images
            union |= {oracles.compose(oracles.compose(xi, m), x.images) for m in members}
    assert len(union) == 96
