import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from pcnil.commutators import (BracketingError, all_bracketings, foliage, is_pc_admissible,
                               is_standard, maltsev_basis, standard_bracketing,
                               standard_commutators, tree_from_text, tree_to_text, weight)
from pcnil.graph import complete_graph, edgeless_graph
from pcnil.words import compare, generate_als, word_from_text

from conftest import graphs

T = tree_from_text

EXAMPLE_BASIS = {
    "x1", "x2", "x3", "(x1,x3)", "(x2,x3)", "(x1,(x1,x3))", "(x2,(x2,x3))",
    "((x1,x3),x2)", "((x1,x3),x3)", "((x2,x3),x3)",
}


def test_foliage():
    assert foliage(T("(x1,(x1,x3))")) == ("x1", "x1", "x3")
    assert foliage("x2") == ("x2",)
    assert foliage(T("((x1,x3),x2)")) == ("x1", "x3", "x2")
    assert weight(T("((x1,x3),x2)")) == 3


def test_tree_text_round_trip():
    for s in EXAMPLE_BASIS:
        assert tree_to_text(T(s)) == s
    assert T(" ( x1 , x2 ) ") == ("x1", "x2")
    for bad in ["(x1,x2", "(x1 x2)", "x1)", "", "(,x1)"]:
        with pytest.raises(BracketingError):
            T(bad)


def test_is_standard_examples(ex):
    assert is_standard(ex, T("((x1,x3),x3)"))
    assert not is_standard(ex, T("((x1,x2),x3)"))
    assert is_standard(ex, "x1")


def test_standard_bracketing_examples(ex):
    w = lambda s: word_from_text(ex, s)
    assert standard_bracketing(ex, w("x1 x1 x3")) == T("(x1,(x1,x3))")
    assert standard_bracketing(ex, w("x1 x3 x2")) == T("((x1,x3),x2)")
    assert standard_bracketing(ex, w("x1 x3")) == ("x1", "x3")
    with pytest.raises(BracketingError):
        standard_bracketing(ex, w("x3 x1"))


def test_admissibility_examples(ex):
    assert not is_pc_admissible(ex, T("(x1,(x2,x3))"))
    assert is_pc_admissible(ex, T("(x2,(x2,x3))"))
    assert is_pc_admissible(ex, "x3")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_standard_bracketing_is_unique(n):
    g = edgeless_graph([f"v{i}" for i in range(n)])
    for k, words in generate_als(g, 5).items():
        for w in words:
            standard = [t for t in all_bracketings(w) if is_standard(g, t)]
            assert standard == [standard_bracketing(g, w)]


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_bracketing_foliage_bijection(data):
    g = data.draw(graphs(max_n=3))
    for k, words in generate_als(g, 4).items():
        trees = standard_commutators(g, k)
        assert len(trees) == len(words)
        for t in trees:
            assert standard_bracketing(g, foliage(t)) == t
        for w in words:
            assert foliage(standard_bracketing(g, w)) == w


def test_example_basis(ex):
    b = maltsev_basis(ex, 3)
    assert {tree_to_text(c) for c in b} == EXAMPLE_BASIS
    assert len(b) == 10
    assert b.weight_sizes() == [3, 2, 5]


def test_basis_order(ex):
    b = maltsev_basis(ex, 3)
    assert [tree_to_text(c) for c in b] == [
        "x1", "x2", "x3", "(x1,x3)", "(x2,x3)",
        "(x1,(x1,x3))", "((x1,x3),x2)", "((x1,x3),x3)", "(x2,(x2,x3))", "((x2,x3),x3)",
    ]
    ws = [weight(c) for c in b]
    assert ws == sorted(ws)
    for a, c in zip(b, b[1:]):
        if weight(a) == weight(c):
            assert compare(ex, foliage(a), foliage(c)) == 1


def test_complete_graph_has_only_generators():
    for m in (1, 2, 4):
        b = maltsev_basis(complete_graph("abc"), m)
        assert b.weight_sizes() == [3] + [0] * (m - 1)


def test_edgeless_two_vertices(edgeless2):
    b = maltsev_basis(edgeless2, 3)
    assert b.weight_sizes() == [2, 1, 2]
    assert {tree_to_text(c) for c in b} == {"a", "b", "(b,a)", "(b,(b,a))", "((b,a),a)"}


def test_edgeless_equals_all_standard():
    g = edgeless_graph("abc")
    b = maltsev_basis(g, 4)
    for k in range(1, 5):
        assert set(b.of_weight(k)) == set(standard_commutators(g, k))


@given(graphs())
@settings(max_examples=40, deadline=None)
def test_basis_closure_and_membership(g):
    b = maltsev_basis(g, 4)
    members = set(b)
    for c in b:
        assert is_standard(g, c) and is_pc_admissible(g, c)
        if not isinstance(c, str):
            assert c[0] in members and c[1] in members


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_adding_an_edge_never_enlarges(data):
    g = data.draw(graphs())
    missing = [p for p in itertools.combinations(g.vertices, 2) if not g.adjacent(*p)]
    if not missing:
        return
    h = g.with_edge(*data.draw(st.sampled_from(missing)))
    for k in range(1, 5):
        assert set(maltsev_basis(h, 4).of_weight(k)) <= set(maltsev_basis(g, 4).of_weight(k))


def test_basis_json(ex):
    doc = json.loads(maltsev_basis(ex, 3).dumps())
    assert doc["schema"] == "pcnil/1"
    assert [d["weight"] for d in doc["basis"]] == [1, 1, 1, 2, 2, 3, 3, 3, 3, 3]
    assert doc["basis"][5] == {"weight": 3, "foliage": "x1 x1 x3", "tree": "(x1,(x1,x3))"}


def test_class_must_be_positive(ex):
    with pytest.raises(ValueError):
        maltsev_basis(ex, 0)
