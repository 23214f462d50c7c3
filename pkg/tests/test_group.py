import random
import re

import pytest
from hypothesis import given, settings, strategies as st

from pcnil.commutators import MaltsevBasis, maltsev_basis, tree_from_text, weight
from pcnil.graph import complete_graph
from pcnil.group import (Collector, GroupWord, NormalForm, WordSyntaxError, collect, collector,
                         commutator_word, magnus, nf_comm, nf_inv, nf_mul, nf_pow, parse_word,
                         random_word, reconstruct, tree_word)
from pcnil.lie import lie_expand
from pcnil.trace_algebra import TruncatedSeries

from conftest import graphs

T = tree_from_text


def nf_dict(nf):
    return {c: e for c, e in nf.items()}


def test_parse_examples(ex):
    assert parse_word(ex, "x1^2 x2^-1").syllables == (("x1", 2), ("x2", -1))
    assert parse_word(ex, "[x1,x3]").syllables == (("x1", -1), ("x3", -1), ("x1", 1), ("x3", 1))
    assert parse_word(ex, "(x1 x2)^-1").syllables == (("x2", -1), ("x1", -1))
    assert parse_word(ex, "(x1 x2)^2").syllables == (("x1", 1), ("x2", 1)) * 2
    assert parse_word(ex, "[ x1 x2 , x3 ]^+1") == commutator_word(parse_word(ex, "x1 x2"), parse_word(ex, "x3"))
    assert parse_word(ex, "[[x1,x3],x2]") == commutator_word(parse_word(ex, "[x1,x3]"), parse_word(ex, "x2"))


@pytest.mark.parametrize("text, pos, msg", [
    ("x1^0", 3, "zero exponent"),
    ("x9", 0, "unknown generator"),
    ("x1 (x2", 6, "expected ')'"),
    ("[x1 x2]", 6, "expected ','"),
    ("", 0, "expected a generator"),
    ("x1 ^", 4, "signed integer"),
    ("x1 $", 3, "unexpected character"),
    ("x1 )", 3, "unexpected"),
    ("()", 1, "expected a generator"),
])
def test_parse_errors(ex, text, pos, msg):
    with pytest.raises(WordSyntaxError, match=re.escape(msg)) as info:
        parse_word(ex, text)
    assert info.value.position == pos


def test_word_text(ex):
    assert parse_word(ex, "x1 x1 x2^-1 x2 x3").to_text() == "x1^2 x3"
    assert GroupWord().to_text() == ""


def test_magnus_examples(ex):
    one = TruncatedSeries.one(ex, 3)
    X1 = TruncatedSeries.monomial(ex, ["x1"], 3)
    assert magnus(ex, parse_word(ex, "x1"), 3) == one + X1
    m2 = magnus(ex, parse_word(ex, "x1^-1"), 2)
    assert m2 == TruncatedSeries.one(ex, 2) - X1.truncate(2) + (X1 * X1).truncate(2)
    assert magnus(ex, parse_word(ex, "[x1,x2]"), 3).is_one()


@given(graphs(), st.integers(0, 2**32), st.integers(1, 5))
@settings(max_examples=30, deadline=None)
def test_magnus_paths_agree(g, seed, m):
    """The dense table expansion and the generic product agree."""
    rng = random.Random(seed)
    w = random_word(rng, list(g.vertices), 14, 3)
    s = TruncatedSeries.one(g, m)
    for x, e in w.syllables:
        s = s * TruncatedSeries.letter_power(g, x, e, m)
    assert magnus(g, w, m) == s


def test_collect_examples(ex):
    assert collect(ex, parse_word(ex, "[x1,x2]"), 3).is_identity()
    assert nf_dict(collect(ex, parse_word(ex, "x1 x1"), 2)) == {"x1": 2}
    assert nf_dict(collect(ex, parse_word(ex, "x3 x1"), 2)) == {"x1": 1, "x3": 1, ("x1", "x3"): -1}


def test_x3_x1_by_commutator_identity(ex):
    # ba = ab (b,a) and (x3,x1) = (x1,x3)^-1 mod the third term; check at the expansion level
    lhs = magnus(ex, parse_word(ex, "x3 x1"), 2)
    assert lhs == magnus(ex, parse_word(ex, "x1 x3 [x3,x1]"), 2)
    assert lhs == magnus(ex, parse_word(ex, "x1 x3 [x1,x3]^-1"), 2)


def test_reconstruct_examples(ex):
    b = maltsev_basis(ex, 3)
    assert reconstruct(NormalForm.identity(b)) == GroupWord()
    assert reconstruct(NormalForm.from_dict(b, {"x1": 2})).syllables == (("x1", 2),)
    assert reconstruct(NormalForm.from_dict(b, {("x1", "x3"): 1})).syllables == (
        ("x1", -1), ("x3", -1), ("x1", 1), ("x3", 1))


def test_nf_ops_examples(ex):
    col = collector(ex, 3)
    a = col.collect(parse_word(ex, "x1 x3^2 x2"))
    assert nf_mul(a, col.identity()) == a
    assert nf_mul(a, nf_inv(a)).is_identity()
    x1, x2, x3 = (col.collect(parse_word(ex, v)) for v in ("x1", "x2", "x3"))
    assert nf_comm(x1, x2).is_identity()
    assert nf_dict(nf_comm(x1, x3)) == {("x1", "x3"): 1}
    assert nf_dict(nf_pow(x2, 5)) == {"x2": 5}


def test_nf_ops_match_word_route(ex):
    rng = random.Random(3)
    col = collector(ex, 3)
    for _ in range(20):
        u, v = (random_word(rng, list(ex.vertices), 6, 2) for _ in range(2))
        a, b = col.collect(u), col.collect(v)
        assert col.mul(a, b) == col.collect(reconstruct(a) * reconstruct(b))
        assert col.inv(a) == col.collect(reconstruct(a).inverse())
        assert col.comm(a, b) == col.collect(commutator_word(reconstruct(a), reconstruct(b)))
        assert col.pow(a, -3) == col.collect(reconstruct(a) ** -3)


def test_basis_mismatch(ex):
    a = collector(ex, 3).identity()
    b = collector(ex, 2).identity()
    with pytest.raises(ValueError):
        nf_mul(a, b)


@given(graphs(), st.integers(0, 2**32), st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_soundness(g, seed, m):
    rng = random.Random(seed)
    w = random_word(rng, list(g.vertices), 10, 3)
    nf = collect(g, w, m)
    assert magnus(g, reconstruct(nf), m) == magnus(g, w, m)


@given(graphs(), st.integers(0, 2**32), st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_uniqueness(g, seed, m):
    rng = random.Random(seed)
    b = maltsev_basis(g, m)
    v = NormalForm(b, tuple(rng.randint(-2, 2) for _ in b))
    assert collect(g, reconstruct(v), m) == v


@given(graphs(), st.integers(0, 2**32), st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_relation_invariance(g, seed, m):
    rng = random.Random(seed)
    edges = g.sorted_edges()
    if not edges:
        return
    w = random_word(rng, list(g.vertices), 8, 2)
    a, b = rng.choice(edges)
    i = rng.randint(0, len(w))
    pre, post = w.syllables[:i], w.syllables[i:]
    left = GroupWord(pre + ((a, 1), (b, 1)) + post)
    right = GroupWord(pre + ((b, 1), (a, 1)) + post)
    assert collect(g, left, m) == collect(g, right, m)


@given(graphs(), st.integers(0, 2**32), st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_homomorphism(g, seed, m):
    rng = random.Random(seed)
    u, v = (random_word(rng, list(g.vertices), 7, 3) for _ in range(2))
    assert collect(g, u * v, m) == nf_mul(collect(g, u, m), collect(g, v, m))


@given(graphs(), st.integers(0, 2**32), st.integers(2, 5))
@settings(max_examples=40, deadline=None)
def test_filtration(g, seed, m):
    rng = random.Random(seed)
    b = maltsev_basis(g, m)
    k = rng.randint(1, m)
    deep = [c for c in b if weight(c) >= k]
    if not deep:
        return
    w = GroupWord()
    for _ in range(4):
        w = w * tree_word(rng.choice(deep)) ** rng.choice([-2, -1, 1, 2])
    nf = collect(g, w, m)
    assert all(e == 0 for c, e in zip(b, nf.exponents) if weight(c) < k)


@given(graphs(), st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_alpha_consistency(g, m):
    for c in maltsev_basis(g, m):
        k = weight(c)
        s = magnus(g, tree_word(c), m) - 1
        assert min(len(w) for w in s.terms) == k
        assert s.degree_part(k) == lie_expand(g, c, m).series


def test_within_weight_order_only_moves_deeper_exponents(ex):
    """Reordering one weight changes only deeper exponents; both decompositions
    multiply back to the same element."""
    m = 4
    b = maltsev_basis(ex, m)
    rng = random.Random(11)
    shuffled = []
    for k in range(1, m + 1):
        seg = list(b.of_weight(k))
        rng.shuffle(seg)
        shuffled += seg
    other = Collector(ex, m, MaltsevBasis(ex, m, tuple(shuffled)))
    mine = collector(ex, m)
    for _ in range(20):
        w = random_word(rng, list(ex.vertices), 10, 3)
        a, c = mine.collect(w), other.collect(w)
        low = [x for x in b if weight(x) == 1]
        assert {x: a[x] for x in low} == {x: c[x] for x in low}
        assert magnus(ex, reconstruct(c), m) == magnus(ex, w, m)


def test_class_one_is_abelian():
    g = complete_graph("ab")
    nf = collect(g, parse_word(g, "a b^-2 a^3 b"), 1)
    assert nf_dict(nf) == {"a": 4, "b": -1}
    e = collect(complete_graph("ab"), parse_word(g, "[a,b]^3"), 1)
    assert e.is_identity()


def test_nf_json_round_trip(ex):
    col = collector(ex, 3)
    nf = col.collect(parse_word(ex, "x3 x1^2 x2^-1 x3"))
    again = NormalForm.from_json(col.basis, nf.to_json())
    assert again == nf
    assert all(d["exponent"] != "0" for d in nf.to_json())
    assert nf["(x1,x3)"] == nf[("x1", "x3")]
