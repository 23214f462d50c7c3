"""Words over the vertex alphabet and the associative Lyndon-Shirshov predicate.

Words are tuples of vertex symbols; the empty tuple is the empty word ``1``.

The order used here compares first letters by vertex order and recurses on
the tails, with every nonempty word *smaller* than the empty word. So a
proper prefix is greater than any of its extensions, and an ALS word is one
that is strictly greater than each of its proper rotations (the mirror image
of the usual "least rotation" Lyndon convention).
"""
from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable, Sequence

from .graph import CommutationGraph

Word = tuple  # tuple[str, ...]


def word_from_text(g: CommutationGraph, text: str) -> Word:
    """Parse space-separated vertex symbols; ``"1"`` is the empty word."""
    parts = text.split()
    if parts == ["1"]:
        return ()
    for p in parts:
        g.rank(p)
    return tuple(parts)


def word_to_text(u: Sequence[str]) -> str:
    return " ".join(u) if u else "1"


def order_key(g: CommutationGraph, u: Sequence[str]) -> tuple[int, ...]:
    """Sort key realizing ``compare``: tuple comparison with an end sentinel
    above every rank, so a proper prefix sorts after its extensions."""
    return tuple(g.rank(x) for x in u) + (len(g),)


def compare(g: CommutationGraph, u: Sequence[str], v: Sequence[str]) -> int:
    """Return -1, 0 or 1 as ``u`` is less than, equal to, or greater than ``v``."""
    ku, kv = order_key(g, u), order_key(g, v)
    return (ku > kv) - (ku < kv)


def is_als(g: CommutationGraph, u: Sequence[str]) -> bool:
    if not u:
        raise ValueError("the empty word has no ALS status")
    key = [g.rank(x) for x in u]
    # rotations have equal length, so plain tuple comparison matches compare()
    return all(key[i:] + key[:i] < key for i in range(1, len(key)))


def _lyndon_min(n: int, max_len: int):
    """Duval's generator: all words over range(n) of length <= max_len that
    are strictly smaller than their proper rotations, in lexicographic order."""
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()


def generate_als(g: CommutationGraph, max_len: int) -> dict[int, list[Word]]:
    """ALS words grouped by length ``1..max_len``, each group sorted ascending
    by ``compare``.

    Reversing the alphabet turns "greater than every rotation" into the
    classical "smaller than every rotation", so Duval's algorithm applies.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    n = len(g)
    top = n - 1
    out: dict[int, list[Word]] = {k: [] for k in range(1, max_len + 1)}
    for w in _lyndon_min(n, max_len):
        out[len(w)].append(tuple(g.vertices[top - i] for i in w))
    for k in out:
        out[k].sort(key=lambda u: order_key(g, u))
    return out


def generate_als_bruteforce(g: CommutationGraph, max_len: int) -> dict[int, list[Word]]:
    """Reference enumerator: filter all ``n**k`` words with ``is_als``."""
    out = {}
    for k in range(1, max_len + 1):
        words = [w for w in itertools.product(g.vertices, repeat=k) if is_als(g, w)]
        out[k] = sorted(words, key=lambda u: order_key(g, u))
    return out


def occurrences(u: Iterable[str], x: str) -> int:
    return sum(1 for y in u if y == x)


def support(u: Iterable[str]) -> frozenset[str]:
    return frozenset(u)


def letter_counts(u: Iterable[str]) -> Counter:
    return Counter(u)
