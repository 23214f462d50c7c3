"""Integer series in the free partially commutative associative algebra,
truncated above a fixed degree.

Monomials are stored as tuples of vertex ranks in trace normal form: the
lexicographically least rearrangement reachable by swapping adjacent
commuting letters. Coefficients are Python ints throughout.
"""
from __future__ import annotations

import weakref
from array import array
from math import comb
from typing import Iterable, Mapping

from . import _kernels
from .graph import CommutationGraph

_CACHES: "weakref.WeakKeyDictionary[CommutationGraph, dict]" = weakref.WeakKeyDictionary()


def _cache(g: CommutationGraph) -> dict:
    c = _CACHES.get(g)
    if c is None:
        c = _CACHES[g] = {}
    return c


def normalize_ranks(g: CommutationGraph, w: tuple[int, ...]) -> tuple[int, ...]:
    cache = _cache(g)
    out = cache.get(w)
    if out is None:
        out = cache[w] = _kernels.normalize(w, g.masks)
    return out


def normalize(g: CommutationGraph, w: Iterable[str]) -> tuple[str, ...]:
    """Canonical representative of the commutation class of a word of symbols."""
    ranks = tuple(g.rank(x) for x in w)
    return tuple(g.vertices[i] for i in normalize_ranks(g, ranks))


class BoundMismatch(ValueError):
    pass


class TruncatedSeries:
    """Finitely supported ``{monomial: int}`` map, all degrees ``<= bound``."""

    __slots__ = ("graph", "bound", "terms")

    def __init__(self, graph: CommutationGraph, bound: int, terms: Mapping | None = None):
        if bound < 0:
            raise ValueError("bound must be nonnegative")
        self.graph = graph
        self.bound = bound
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if len(w) <= bound and c:
                w = normalize_ranks(graph, w)
                c = clean.get(w, 0) + c
                if c:
                    clean[w] = c
                else:
                    del clean[w]
        self.terms = clean

    @classmethod
    def _raw(cls, graph, bound, terms):
        s = cls.__new__(cls)
        s.graph, s.bound, s.terms = graph, bound, terms
        return s

    # constructors

    @classmethod
    def one(cls, g: CommutationGraph, bound: int) -> "TruncatedSeries":
        return cls._raw(g, bound, {(): 1})

    @classmethod
    def zero(cls, g: CommutationGraph, bound: int) -> "TruncatedSeries":
        return cls._raw(g, bound, {})

    @classmethod
    def monomial(cls, g: CommutationGraph, word: Iterable[str], bound: int, coeff: int = 1) -> "TruncatedSeries":
        return cls(g, bound, {tuple(g.rank(x) for x in word): coeff})

    @classmethod
    def letter_power(cls, g: CommutationGraph, x: str, e: int, bound: int) -> "TruncatedSeries":
        """``(1 + X)**e`` by the (generalized) binomial series."""
        r = g.rank(x)
        terms = {}
        for j in range(bound + 1):
            c = _binom(e, j)
            if c:
                terms[(r,) * j] = c
        return cls._raw(g, bound, terms)

    # queries

    def coefficient(self, word: Iterable[str]) -> int:
        ranks = tuple(self.graph.rank(x) for x in word)
        return self.terms.get(normalize_ranks(self.graph, ranks), 0)

    @property
    def constant_term(self) -> int:
        return self.terms.get((), 0)

    def degree_part(self, k: int) -> "TruncatedSeries":
        return self._raw(self.graph, self.bound, {w: c for w, c in self.terms.items() if len(w) == k})

    def min_degree(self) -> int | None:
        return min((len(w) for w in self.terms), default=None)

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, bound: int) -> "TruncatedSeries":
        return self._raw(self.graph, bound, {w: c for w, c in self.terms.items() if len(w) <= bound})

    # arithmetic

    def _check(self, other: "TruncatedSeries"):
        if self.bound != other.bound:
            raise BoundMismatch(f"bounds differ: {self.bound} vs {other.bound}")
        if self.graph != other.graph:
            raise ValueError("series over different graphs")

    def __add__(self, other):
        if isinstance(other, int):
            other = self._raw(self.graph, self.bound, {(): other} if other else {})
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            c = out.get(w, 0) + c
            if c:
                out[w] = c
            else:
                out.pop(w, None)
        return self._raw(self.graph, self.bound, out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.graph, self.bound, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "TruncatedSeries":
        if not c:
            return self.zero(self.graph, self.bound)
        return self._raw(self.graph, self.bound, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        prod = _kernels.series_mul(self.terms, other.terms, self.bound, self.graph.masks, _cache(self.graph))
        return self._raw(self.graph, self.bound, prod)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def geom_inverse(self) -> "TruncatedSeries":
        """Inverse of a series with constant term 1: the sum of ``(1 - s)**k``
        for ``k <= bound``."""
        if self.constant_term != 1:
            raise ValueError("only series with constant term 1 are invertible here")
        nil = 1 - self
        acc = self.one(self.graph, self.bound)
        term = acc
        for _ in range(self.bound):
            term = term * nil
            if term.is_zero():
                break
            acc = acc + term
        return acc

    def __pow__(self, e: int) -> "TruncatedSeries":
        if not isinstance(e, int):
            return NotImplemented
        if self.constant_term == 1:
            # (1 + N)**e = sum C(e, j) N**j, and N**j vanishes past the bound
            nil = self - 1
            acc = self.one(self.graph, self.bound)
            term = acc
            for j in range(1, self.bound + 1):
                term = term * nil
                if term.is_zero():
                    break
                acc = acc + term.scale(_binom(e, j))
            return acc
        if e < 0:
            raise ValueError("negative power of a series whose constant term is not 1")
        result = self.one(self.graph, self.bound)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.bound == other.bound and self.graph == other.graph and self.terms == other.terms

    def __hash__(self):
        return hash((self.bound, frozenset(self.terms.items())))

    # presentation

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def word_of(self, ranks: tuple[int, ...]) -> tuple[str, ...]:
        return tuple(self.graph.vertices[i] for i in ranks)

    def to_json(self) -> list[dict]:
        return [{"monomial": " ".join(self.word_of(w)) if w else "1", "coefficient": str(c)}
                for w, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, g: CommutationGraph, bound: int, items: list[dict]) -> "TruncatedSeries":
        terms = {}
        for item in items:
            mono = item["monomial"].split()
            ranks = () if mono == ["1"] else tuple(g.rank(x) for x in mono)
            terms[ranks] = terms.get(ranks, 0) + int(item["coefficient"])
        return cls(g, bound, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mono = "*".join(self.word_of(w)).upper() if w else ""
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _binom(e: int, j: int) -> int:
    """Generalized binomial coefficient, valid for negative ``e``."""
    if e >= 0:
        return comb(e, j)
    # C(-n, j) = (-1)**j C(n + j - 1, j)
    return (-1) ** j * comb(-e + j - 1, j)


class MonomialTable:
    """All trace normal forms of degree ``<= bound`` numbered densely in
    breadth-first order (so degree never decreases with the id), with the
    right action of each letter tabulated. Used for long word expansions."""

    def __init__(self, g: CommutationGraph, bound: int):
        self.graph, self.bound = g, bound
        n = len(g)
        monos = [()]
        ids = {(): 0}
        right = []
        i = 0
        while i < len(monos):
            u = monos[i]
            for x in range(n):
                if len(u) == bound:
                    right.append(-1)
                    continue
                w = normalize_ranks(g, u + (x,))
                j = ids.get(w)
                if j is None:
                    j = ids[w] = len(monos)
                    monos.append(w)
                right.append(j)
            i += 1
        self.monomials = monos
        self.right = array("i", right)
        self.degree = array("i", [len(u) for u in monos])

    def __len__(self):
        return len(self.monomials)

    def expand_word(self, syllables) -> TruncatedSeries:
        """Expansion of ``prod (1 + X)**e`` over ``(letter, e)`` syllables."""
        g, m = self.graph, self.bound
        coeff_cache: dict = {}
        prepared = []
        for x, e in syllables:
            cs = coeff_cache.get(e)
            if cs is None:
                cs = coeff_cache[e] = [_binom(e, j) for j in range(m + 1)]
            prepared.append((g.rank(x), cs))
        dense = _kernels.expand_word(prepared, self.right, self.degree, len(g), m, len(self.monomials))
        monos = self.monomials
        return TruncatedSeries._raw(g, m, {monos[i]: c for i, c in enumerate(dense) if c})


_TABLES: dict = {}


def monomial_table(g: CommutationGraph, bound: int) -> MonomialTable:
    key = (g, bound)
    t = _TABLES.get(key)
    if t is None:
        if len(_TABLES) > 64:
            _TABLES.clear()
        t = _TABLES[key] = MonomialTable(g, bound)
    return t


def mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    return s * t


def add(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    return s + t


def scale(c: int, s: TruncatedSeries) -> TruncatedSeries:
    return s.scale(c)


def geom_inverse(s: TruncatedSeries) -> TruncatedSeries:
    return s.geom_inverse()


def int_power(s: TruncatedSeries, e: int) -> TruncatedSeries:
    return s ** e
