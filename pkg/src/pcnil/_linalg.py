"""Exact rational linear algebra on small sparse integer systems."""
from __future__ import annotations

from fractions import Fraction


class SolveError(ArithmeticError):
    pass


def _reduce(row: list, basis: list[tuple[int, list]]) -> list:
    """Reduce ``row`` against an echelon list of ``(pivot, row)`` pairs."""
    row = list(row)
    for piv, b in basis:
        f = row[piv]
        if f:
            for j in range(piv, len(row)):
                if b[j]:
                    row[j] -= f * b[j]
    return row


def _insert(row: list, basis: list[tuple[int, list]]) -> bool:
    row = _reduce(row, basis)
    for piv, f in enumerate(row):
        if f:
            basis.append((piv, [Fraction(x) / f for x in row]))
            return True
    return False


def rank(rows: list[list[int]]) -> int:
    """Rank over the rationals of a dense integer matrix given by rows."""
    basis: list[tuple[int, list]] = []
    for r in rows:
        _insert([Fraction(x) for x in r], basis)
    return len(basis)


def invert(square: list[list[int]]) -> list[list[Fraction]]:
    n = len(square)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(square)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SolveError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


class ExactSolver:
    """Solves ``A x = e`` for integer ``x``, where the columns of ``A`` are
    linearly independent sparse integer vectors ``{row_key: int}``.

    A square invertible submatrix is chosen once; each solve is then a
    matrix-vector product followed by a full consistency check.
    """

    def __init__(self, columns: list[dict]):
        self.columns = columns
        keys = sorted({k for col in columns for k in col})
        basis: list[tuple[int, list]] = []
        pivots = []
        for key in keys:
            row = [Fraction(col.get(key, 0)) for col in columns]
            if _insert(row, basis):
                pivots.append(key)
                if len(pivots) == len(columns):
                    break
        if len(pivots) != len(columns):
            raise SolveError(f"columns are dependent: rank {len(pivots)} < {len(columns)}")
        self.pivots = pivots
        self.inverse = invert([[col.get(k, 0) for col in columns] for k in pivots]) if columns else []

    def solve(self, target: dict) -> list[int]:
        rhs = [target.get(k, 0) for k in self.pivots]
        x = []
        for row in self.inverse:
            v = sum((a * b for a, b in zip(row, rhs) if b), Fraction(0))
            if v.denominator != 1:
                raise SolveError(f"non-integral coordinate {v}")
            x.append(int(v))
        check: dict = {}
        for xi, col in zip(x, self.columns):
            if xi:
                for k, a in col.items():
                    check[k] = check.get(k, 0) + xi * a
        if {k: v for k, v in check.items() if v} != {k: v for k, v in target.items() if v}:
            raise SolveError("target is not in the span of the columns")
        return x
