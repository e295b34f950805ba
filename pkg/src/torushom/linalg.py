"""Dense exact linear algebra over Q (lists of Fractions).

Everything here works on plain lists of `Fraction`; sizes are desk scale
(degree slices of small graded modules), so no sparse formats are needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional


def _as_fracs(row):
    return [x if isinstance(x, Fraction) else Fraction(x) for x in row]


class RowSpan:
    """Incrementally maintained row space in reduced echelon form.

    `reduce` returns the residual of a vector against the current span;
    `add` inserts the residual as a new pivot row (if non-zero).
    """

    def __init__(self, width: int):
        self.width = width
        self.rows: List[List[Fraction]] = []
        self.pivots: List[int] = []  # pivot column of each row, increasing

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> List[Fraction]:
        v = _as_fracs(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.width):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def add(self, vec) -> bool:
        """Insert vec into the span; True if it enlarged the space."""
        v = self.reduce(vec)
        piv = next((j for j in range(self.width) if v[j]), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        v = [x * inv for x in v]
        # keep fully reduced: clear this column in existing rows
        for row in self.rows:
            c = row[piv]
            if c:
                for j in range(piv, self.width):
                    if v[j]:
                        row[j] -= c * v[j]
        at = next((k for k, p in enumerate(self.pivots) if p > piv), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, piv)
        return True

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def coordinates(self, vec) -> Optional[List[Fraction]]:
        """Coefficients expressing vec over the stored rows, or None."""
        v = _as_fracs(vec)
        coeffs = [Fraction(0)] * len(self.rows)
        for k, (row, p) in enumerate(zip(self.rows, self.pivots)):
            c = v[p]
            if c:
                coeffs[k] = c
                for j in range(p, self.width):
                    if row[j]:
                        v[j] -= c * row[j]
        if any(v):
            return None
        return coeffs


def rank(matrix) -> int:
    if not matrix:
        return 0
    span = RowSpan(len(matrix[0]))
    for row in matrix:
        span.add(row)
    return span.rank


def nullspace(matrix, ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Basis of the right kernel {x : A x = 0} of a rows-list matrix."""
    if not matrix:
        return [] if not ncols else [
            [Fraction(1) if i == j else Fraction(0) for j in range(ncols)]
            for i in range(ncols)]
    n = len(matrix[0])
    span = RowSpan(n)
    for row in matrix:
        span.add(row)
    pivot_set = set(span.pivots)
    free_cols = [j for j in range(n) if j not in pivot_set]
    basis = []
    for f in free_cols:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(span.rows, span.pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def matvec(matrix, vec):
    return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in matrix]
