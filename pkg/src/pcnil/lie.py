"""Lie elements inside the partially commutative associative algebra.

A bracket ``[u, v]`` is realized as ``uv - vu``. Coordinates of homogeneous
Lie elements in the basis commutators of one weight are found by exact
linear algebra, block by block: every bracket is homogeneous in each letter
separately, so monomials with different letter multisets never interact.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ._linalg import ExactSolver, SolveError, rank
from .commutators import CommTree, is_leaf, standard_commutators, tree_to_text, weight
from .graph import CommutationGraph
from .trace_algebra import TruncatedSeries


class BasisExpressionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class HomogeneousLieElement:
    degree: int
    series: TruncatedSeries

    def __post_init__(self):
        bad = [w for w in self.series.terms if len(w) != self.degree]
        if bad:
            raise ValueError(f"element is not homogeneous of degree {self.degree}")


def lie_expand(g: CommutationGraph, t: CommTree, bound: int) -> HomogeneousLieElement:
    k = weight(t)
    if k > bound:
        raise ValueError(f"weight {k} of {tree_to_text(t)} exceeds bound {bound}")
    return HomogeneousLieElement(k, _expand(g, t, bound))


@lru_cache(maxsize=None)
def _expand(g: CommutationGraph, t: CommTree, bound: int) -> TruncatedSeries:
    if is_leaf(t):
        return TruncatedSeries.monomial(g, (t,), bound)
    u, v = _expand(g, t[0], bound), _expand(g, t[1], bound)
    return u * v - v * u


def _multidegree(w: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(w))


def _blocks(columns: list[dict]) -> dict[tuple, list[int]]:
    """Group column indices by the letter multiset of their support."""
    out: dict[tuple, list[int]] = {}
    for i, col in enumerate(columns):
        key = _multidegree(next(iter(col))) if col else None
        out.setdefault(key, []).append(i)
    return out


class DegreeSolver:
    """Coordinates of degree-``k`` Lie elements in a list of weight-``k`` trees."""

    def __init__(self, g: CommutationGraph, k: int, basis_k: tuple):
        self.graph, self.degree, self.basis = g, k, tuple(basis_k)
        columns = [_expand(g, c, k).terms for c in self.basis]
        if any(not col for col in columns):
            raise BasisExpressionError("a basis element expands to zero")
        self.blocks = {}
        for key, idx in _blocks(columns).items():
            try:
                self.blocks[key] = (idx, ExactSolver([columns[i] for i in idx]))
            except SolveError as exc:
                raise BasisExpressionError(f"basis images are dependent in block {key}: {exc}") from None

    def solve(self, terms: dict) -> dict:
        parts: dict[tuple, dict] = {}
        for w, c in terms.items():
            if len(w) != self.degree:
                raise BasisExpressionError(f"monomial of degree {len(w)} in a degree-{self.degree} element")
            parts.setdefault(_multidegree(w), {})[w] = c
        out = {}
        for key, target in parts.items():
            if key not in self.blocks:
                raise BasisExpressionError("element is not in the span of the basis")
            idx, solver = self.blocks[key]
            try:
                x = solver.solve(target)
            except SolveError as exc:
                raise BasisExpressionError(str(exc)) from None
            for i, xi in zip(idx, x):
                if xi:
                    out[self.basis[i]] = xi
        return out


@lru_cache(maxsize=256)
def degree_solver(g: CommutationGraph, k: int, basis_k: tuple) -> DegreeSolver:
    return DegreeSolver(g, k, basis_k)


def express_in_basis(g: CommutationGraph, k: int, e, basis_k) -> dict:
    """Integer coordinates of the homogeneous Lie element ``e`` (a
    ``HomogeneousLieElement`` or a degree-``k`` ``TruncatedSeries``) in the
    images of ``basis_k``; zero coordinates are omitted."""
    series = e.series if isinstance(e, HomogeneousLieElement) else e
    if not series.terms:
        return {}
    if k == 1:
        out = {}
        for w, c in series.terms.items():
            if len(w) != 1:
                raise BasisExpressionError("degree-1 element has a longer monomial")
            out[g.vertices[w[0]]] = c
        if not set(out) <= set(basis_k):
            raise BasisExpressionError("letter missing from the degree-1 basis")
        return out
    return degree_solver(g, k, tuple(basis_k)).solve(series.terms)


def _rank_of(g: CommutationGraph, trees, k: int) -> int:
    columns = [_expand(g, t, k).terms for t in trees]
    total = 0
    for key, idx in _blocks(columns).items():
        if key is None:
            continue
        rows = sorted({w for i in idx for w in columns[i]})
        total += rank([[columns[i].get(w, 0) for w in rows] for i in idx])
    return total


@lru_cache(maxsize=None)
def rank_of_degree(g: CommutationGraph, k: int) -> int:
    """Rank of the span of all standard commutators of weight ``k``, unfiltered
    by the graph, after mapping them into the partially commutative algebra."""
    if k < 1:
        raise ValueError("degree must be positive")
    return _rank_of(g, standard_commutators(g, k), k)


def images_independent(g: CommutationGraph, trees, k: int) -> bool:
    trees = list(trees)
    return _rank_of(g, trees, k) == len(trees)
