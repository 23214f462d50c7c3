"""Group words, their expansions, and canonical forms over the Maltsev basis.

Each generator ``x`` expands to ``1 + X`` in the truncated partially
commutative algebra. A word lies in the ``k``-th term of the lower central
series exactly when its expansion is ``1`` plus terms of degree ``>= k``, and
the degree-``k`` part is then the Lie element of its class. Collection peels
basis-commutator powers off weight by weight until the expansion is ``1``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .commutators import (CommTree, MaltsevBasis, is_leaf, maltsev_basis,
                          tree_from_text, tree_to_text, weight)
from .graph import CommutationGraph
from .lie import express_in_basis
from .trace_algebra import TruncatedSeries, monomial_table


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CollectionError(ArithmeticError):
    """An internal invariant of collection failed; indicates a bug."""


@dataclass(frozen=True)
class GroupWord:
    syllables: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", tuple((x, int(e)) for x, e in self.syllables))
        for x, e in self.syllables:
            if e == 0:
                raise ValueError(f"zero exponent on {x}")

    def __len__(self):
        return len(self.syllables)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.syllables + other.syllables)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((x, -e) for x, e in reversed(self.syllables)))

    def __pow__(self, e: int) -> "GroupWord":
        base = self if e >= 0 else self.inverse()
        return GroupWord(base.syllables * abs(e))

    def reduced(self) -> "GroupWord":
        """Merge adjacent syllables on the same generator, dropping zeros."""
        out: list[list] = []
        for x, e in self.syllables:
            if out and out[-1][0] == x:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([x, e])
        return GroupWord(tuple((x, e) for x, e in out))

    def to_text(self) -> str:
        parts = []
        for x, e in self.reduced().syllables:
            parts.append(x if e == 1 else f"{x}^{e}")
        return " ".join(parts)

    def letters(self) -> set[str]:
        return {x for x, _ in self.syllables}


_TOKEN = re.compile(r"\s*(?:(?P<gen>[A-Za-z][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|(?P<sym>[()\[\],^]))")


_CLOSERS = {")", "]", ","}


class _Parser:
    def __init__(self, g: CommutationGraph, text: str):
        self.g, self.text = g, text
        self.tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            what = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise WordSyntaxError(f"expected {value!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> list:
        out = []
        terms = 0
        while True:
            kind, val, pos = self.peek()
            if kind == "end" or val in _CLOSERS:
                break
            out.extend(self.term())
            terms += 1
        if not terms:
            raise WordSyntaxError("expected a generator, '(' or '['", self.peek()[2])
        return out

    def term(self) -> list:
        body = self.atom()
        if self.peek()[1] == "^":
            self.take("^")
            kind, val, pos = self.take()
            if kind != "int":
                raise WordSyntaxError("expected a signed integer exponent", pos)
            e = int(val)
            if e == 0:
                raise WordSyntaxError("zero exponent", pos)
            if len(body) == 1:
                x, f = body[0]
                return [(x, f * e)]
            word = GroupWord(tuple(body)) ** e
            return list(word.syllables)
        return body

    def atom(self) -> list:
        kind, val, pos = self.take()
        if kind == "gen":
            if val not in self.g:
                raise WordSyntaxError(f"unknown generator {val!r}", pos)
            return [(val, 1)]
        if val == "(":
            body = self.expr()
            self.take(")")
            return body
        if val == "[":
            u = self.expr()
            self.take(",")
            v = self.expr()
            self.take("]")
            uw, vw = GroupWord(tuple(u)), GroupWord(tuple(v))
            return list((uw.inverse() * vw.inverse() * uw * vw).syllables)
        what = repr(val) if kind != "end" else "end of input"
        raise WordSyntaxError(f"expected a generator, '(' or '[', found {what}", pos)

    def parse(self) -> GroupWord:
        body = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise WordSyntaxError(f"unexpected {val!r}", pos)
        return GroupWord(tuple(body))


def parse_word(g: CommutationGraph, text: str) -> GroupWord:
    """Parse ``expr := term+``, ``term := atom ('^' int)?``,
    ``atom := generator | '(' expr ')' | '[' expr ',' expr ']'``.

    ``[u,v]`` stands for ``u^-1 v^-1 u v``; powers and brackets are expanded
    into a flat list of syllables.
    """
    return _Parser(g, text).parse()


@lru_cache(maxsize=None)
def tree_word(t: CommTree) -> GroupWord:
    """The commutator tree as a word in the generators."""
    if is_leaf(t):
        return GroupWord(((t, 1),))
    u, v = tree_word(t[0]), tree_word(t[1])
    return (u.inverse() * v.inverse() * u * v).reduced()


def magnus(g: CommutationGraph, w: GroupWord, m: int) -> TruncatedSeries:
    """Image of ``w`` under ``x -> 1 + X``, truncated above degree ``m``."""
    if m < 1:
        raise ValueError("class must be at least 1")
    if len(w) <= 4:
        s = TruncatedSeries.one(g, m)
        for x, e in w.syllables:
            s = s * TruncatedSeries.letter_power(g, x, e, m)
        return s
    return monomial_table(g, m).expand_word(w.syllables)


@dataclass(frozen=True)
class NormalForm:
    basis: MaltsevBasis
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.basis):
            raise ValueError("exponent vector length does not match the basis")

    @classmethod
    def identity(cls, basis: MaltsevBasis) -> "NormalForm":
        return cls(basis, (0,) * len(basis))

    @classmethod
    def from_dict(cls, basis: MaltsevBasis, exps: dict) -> "NormalForm":
        vec = [0] * len(basis)
        for c, e in exps.items():
            vec[basis.index(c)] += e
        return cls(basis, tuple(vec))

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def items(self) -> list[tuple[CommTree, int]]:
        """Nonzero ``(commutator, exponent)`` pairs in basis order."""
        return [(c, e) for c, e in zip(self.basis, self.exponents) if e]

    def __getitem__(self, c) -> int:
        if isinstance(c, str) and c not in self.basis.graph:
            c = tree_from_text(c)
        return self.exponents[self.basis.index(c)]

    def to_json(self) -> list[dict]:
        return [{"commutator": tree_to_text(c), "exponent": str(e)} for c, e in self.items()]

    def dumps(self) -> str:
        return json.dumps({"schema": "pcnil/1", "class": self.basis.nilpotency_class,
                           "normal_form": self.to_json()}, indent=2)

    @classmethod
    def from_json(cls, basis: MaltsevBasis, items: list[dict]) -> "NormalForm":
        return cls.from_dict(basis, {tree_from_text(d["commutator"]): int(d["exponent"]) for d in items})

    def to_text(self) -> str:
        return "\n".join(f"{tree_to_text(c)}: {e}" for c, e in self.items())


class Collector:
    """Canonical forms over ``maltsev_basis(graph, m)``.

    Expansions of the basis commutators are computed once from their words.
    """

    def __init__(self, g: CommutationGraph, m: int, basis: MaltsevBasis | None = None):
        self.graph, self.nilpotency_class = g, m
        self.basis = maltsev_basis(g, m) if basis is None else basis
        self._weights = {k: self.basis.of_weight(k) for k in range(1, m + 1)}
        self._expansion: dict = {}

    def expansion(self, c: CommTree) -> TruncatedSeries:
        s = self._expansion.get(c)
        if s is None:
            s = self._expansion[c] = magnus(self.graph, tree_word(c), self.nilpotency_class)
        return s

    def power_expansion(self, c: CommTree, e: int) -> TruncatedSeries:
        return self.expansion(c) ** e

    def collect_series(self, s: TruncatedSeries) -> NormalForm:
        """Exponent vector of the group element whose expansion is ``s``."""
        m = self.nilpotency_class
        if s.bound != m or s.constant_term != 1:
            raise CollectionError("expansion must have bound equal to the class and constant term 1")
        exps: dict = {}
        for k in range(1, m + 1):
            basis_k = self._weights[k]
            coords = express_in_basis(self.graph, k, s.degree_part(k), basis_k)
            for c in basis_k:
                t = coords.get(c)
                if t:
                    exps[c] = t
                    s = self.power_expansion(c, -t) * s
            low = [w for w in s.terms if 0 < len(w) <= k]
            if low:
                raise CollectionError(f"degree {len(low[0])} terms survive stage {k}")
        if not s.is_one():
            raise CollectionError("residual expansion is not 1 after the last stage")
        return NormalForm.from_dict(self.basis, exps)

    def collect(self, w: GroupWord) -> NormalForm:
        return self.collect_series(magnus(self.graph, w, self.nilpotency_class))

    def expand(self, nf: NormalForm) -> TruncatedSeries:
        """Expansion of the product of basis powers, built from cached pieces."""
        s = TruncatedSeries.one(self.graph, self.nilpotency_class)
        for c, e in nf.items():
            s = s * self.power_expansion(c, e)
        return s

    def _check(self, *nfs: NormalForm):
        for nf in nfs:
            if nf.basis != self.basis:
                raise ValueError("normal form belongs to a different basis")

    def mul(self, a: NormalForm, b: NormalForm) -> NormalForm:
        self._check(a, b)
        return self.collect_series(self.expand(a) * self.expand(b))

    def inv(self, a: NormalForm) -> NormalForm:
        self._check(a)
        s = TruncatedSeries.one(self.graph, self.nilpotency_class)
        for c, e in reversed(a.items()):
            s = s * self.power_expansion(c, -e)
        return self.collect_series(s)

    def comm(self, a: NormalForm, b: NormalForm) -> NormalForm:
        """``a^-1 b^-1 a b``."""
        self._check(a, b)
        sa, sb = self.expand(a), self.expand(b)
        return self.collect_series(sa.geom_inverse() * sb.geom_inverse() * sa * sb)

    def pow(self, a: NormalForm, e: int) -> NormalForm:
        self._check(a)
        return self.collect_series(self.expand(a) ** e)

    def identity(self) -> NormalForm:
        return NormalForm.identity(self.basis)


@lru_cache(maxsize=64)
def collector(g: CommutationGraph, m: int) -> Collector:
    return Collector(g, m)


def collect(g: CommutationGraph, w: GroupWord, m: int) -> NormalForm:
    return collector(g, m).collect(w)


def reconstruct(nf: NormalForm) -> GroupWord:
    """The word ``prod c^t`` over the basis in order, with each commutator
    written out in the generators and adjacent syllables merged."""
    out = GroupWord()
    for c, e in nf.items():
        out = out * tree_word(c) ** e
    return out.reduced()


def nf_mul(a: NormalForm, b: NormalForm) -> NormalForm:
    return collector(a.basis.graph, a.basis.nilpotency_class).mul(a, b)


def nf_inv(a: NormalForm) -> NormalForm:
    return collector(a.basis.graph, a.basis.nilpotency_class).inv(a)


def nf_comm(a: NormalForm, b: NormalForm) -> NormalForm:
    return collector(a.basis.graph, a.basis.nilpotency_class).comm(a, b)


def nf_pow(a: NormalForm, e: int) -> NormalForm:
    return collector(a.basis.graph, a.basis.nilpotency_class).pow(a, e)


def word_of_letters(pairs: Iterable[tuple[str, int]]) -> GroupWord:
    return GroupWord(tuple(pairs))


def commutator_word(u: GroupWord, v: GroupWord) -> GroupWord:
    return u.inverse() * v.inverse() * u * v


def random_word(rng, letters: Sequence[str], max_len: int, max_exp: int) -> GroupWord:
    n = rng.randint(0, max_len)
    syl = []
    for _ in range(n):
        e = 0
        while e == 0:
            e = rng.randint(-max_exp, max_exp)
        syl.append((rng.choice(letters), e))
    return GroupWord(tuple(syl))
