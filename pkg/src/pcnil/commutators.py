"""Bracketings, standard commutators and the ordered Maltsev basis.

A commutator tree is either a vertex symbol (a leaf) or a pair
``(left, right)`` of trees. The same object reads as the group commutator
``left^-1 right^-1 left right`` or, on the Lie side, as ``[left, right]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from .graph import CommutationGraph
from .words import Word, generate_als, is_als, order_key, word_to_text

CommTree = Union[str, tuple]


class BracketingError(ValueError):
    pass


def is_leaf(t: CommTree) -> bool:
    return isinstance(t, str)


@lru_cache(maxsize=None)
def foliage(t: CommTree) -> Word:
    """Erase all brackets: the underlying word of ``t``."""
    if is_leaf(t):
        return (t,)
    return foliage(t[0]) + foliage(t[1])


def weight(t: CommTree) -> int:
    return len(foliage(t))


def tree_to_text(t: CommTree) -> str:
    if is_leaf(t):
        return t
    return f"({tree_to_text(t[0])},{tree_to_text(t[1])})"


def tree_from_text(text: str) -> CommTree:
    """Inverse of ``tree_to_text``; whitespace is ignored."""
    s = "".join(text.split())
    pos = 0

    def node() -> CommTree:
        nonlocal pos
        if pos < len(s) and s[pos] == "(":
            pos += 1
            left = node()
            if pos >= len(s) or s[pos] != ",":
                raise BracketingError(f"expected ',' at position {pos} in {text!r}")
            pos += 1
            right = node()
            if pos >= len(s) or s[pos] != ")":
                raise BracketingError(f"expected ')' at position {pos} in {text!r}")
            pos += 1
            return (left, right)
        start = pos
        while pos < len(s) and (s[pos].isalnum() or s[pos] == "_"):
            pos += 1
        if start == pos:
            raise BracketingError(f"expected a vertex symbol at position {pos} in {text!r}")
        return s[start:pos]

    t = node()
    if pos != len(s):
        raise BracketingError(f"trailing input at position {pos} in {text!r}")
    return t


def is_standard(g: CommutationGraph, t: CommTree) -> bool:
    if is_leaf(t):
        return True
    u, v = t
    if not is_als(g, foliage(t)):
        return False
    if not (is_standard(g, u) and is_standard(g, v)):
        return False
    if not order_key(g, foliage(u)) > order_key(g, foliage(v)):
        return False
    if not is_leaf(u) and order_key(g, foliage(v)) < order_key(g, foliage(u[1])):
        return False
    return True


def standard_bracketing(g: CommutationGraph, w: Word) -> CommTree:
    """The unique standard commutator whose foliage is the ALS word ``w``."""
    w = tuple(w)
    if not w or not is_als(g, w):
        raise BracketingError(f"{word_to_text(w)!r} is not an ALS word")
    return _bracket(g, w)


@lru_cache(maxsize=None)
def _bracket(g: CommutationGraph, w: Word) -> CommTree:
    if len(w) == 1:
        return w[0]
    found = []
    for i in range(1, len(w)):
        left, right = w[:i], w[i:]
        if not (is_als(g, left) and is_als(g, right)):
            continue
        t = (_bracket(g, left), _bracket(g, right))
        if is_standard(g, t):
            found.append(t)
    if len(found) != 1:
        raise BracketingError(
            f"expected exactly one standard bracketing of {word_to_text(w)!r}, found {len(found)}")
    return found[0]


def all_bracketings(w: Word) -> Iterator[CommTree]:
    """Every binary tree with foliage ``w`` (Catalan many)."""
    if len(w) == 1:
        yield w[0]
        return
    for i in range(1, len(w)):
        for left in all_bracketings(w[:i]):
            for right in all_bracketings(w[i:]):
                yield (left, right)


def is_pc_admissible(g: CommutationGraph, t: CommTree) -> bool:
    """Graph filter: some letter of the left part must fail to commute with
    the first letter of the right part (a letter never commutes with itself)."""
    if is_leaf(t):
        return True
    v, w = t
    if not (is_pc_admissible(g, v) and is_pc_admissible(g, w)):
        return False
    head = foliage(w)[0]
    return any(x == head or not g.adjacent(x, head) for x in set(foliage(v)))


@dataclass(frozen=True)
class MaltsevBasis:
    """Basis commutators of weight ``1..nilpotency_class`` in the order used for
    normal forms: by weight, then by descending foliage within a weight."""

    graph: CommutationGraph
    nilpotency_class: int
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def of_weight(self, k: int) -> tuple:
        return tuple(c for c in self.elements if weight(c) == k)

    def weight_sizes(self) -> list[int]:
        return [len(self.of_weight(k)) for k in range(1, self.nilpotency_class + 1)]

    def index(self, t: CommTree) -> int:
        return self._index[t]

    @property
    def _index(self) -> dict:
        try:
            return self.__dict__["_index_cache"]
        except KeyError:
            idx = {c: i for i, c in enumerate(self.elements)}
            object.__setattr__(self, "_index_cache", idx)
            return idx

    def to_json(self) -> list[dict]:
        return [
            {"weight": weight(c), "foliage": word_to_text(foliage(c)), "tree": tree_to_text(c)}
            for c in self.elements
        ]

    def dumps(self) -> str:
        doc = {"schema": "pcnil/1", "graph": self.graph.to_json(),
               "class": self.nilpotency_class, "basis": self.to_json()}
        return json.dumps(doc, indent=2)


def standard_commutators(g: CommutationGraph, k: int) -> list[CommTree]:
    """All standard commutators of weight ``k``, descending by foliage."""
    words = generate_als(g, k)[k]
    return [standard_bracketing(g, w) for w in reversed(words)]


@lru_cache(maxsize=64)
def maltsev_basis(g: CommutationGraph, m: int) -> MaltsevBasis:
    if m < 1:
        raise ValueError("nilpotency class must be at least 1")
    als = generate_als(g, m)
    elements = []
    for k in range(1, m + 1):
        for w in reversed(als[k]):
            t = standard_bracketing(g, w)
            if is_pc_admissible(g, t):
                elements.append(t)
    return MaltsevBasis(g, m, tuple(elements))
