"""Degreewise slices of graded free modules: the brute-force oracle.

Every finitely presented module in the system has finite-dimensional graded
pieces.  This module materializes a single degree as an exact rational
vector space, so kernels, images, ranks and quotient dimensions can be
cross-checked against the Groebner machinery by plain linear algebra.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .linalg import RowSpan
from .ring import GradedPoly, mono_degree, mono_mul

Mono = Tuple[int, tuple]  # (position, exponent)


def monomials_of_polydegree(rank: int, total: int):
    """All exponent tuples of length `rank` with entry sum `total`."""
    if total < 0:
        return
    if rank == 0:
        if total == 0:
            yield ()
        return
    if rank == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in monomials_of_polydegree(rank - 1, total - first):
            yield (first,) + rest


def count_monomials(rank: int, total: int) -> int:
    if total < 0:
        return 0
    if rank == 0:
        return 1 if total == 0 else 0
    n = 1
    for i in range(1, rank):
        n = n * (total + i) // i
    return n


def free_slice_monomials(free, d: int) -> List[Mono]:
    """Monomial basis of the degree-d piece of a free module."""
    out = []
    for pos, g in enumerate(free.degrees):
        rem = d - g
        if rem < 0 or rem % 2:
            continue
        for exp in monomials_of_polydegree(free.rank, rem // 2):
            out.append((pos, exp))
    return out


def vector_slice_coords(vec: Dict[Mono, Fraction], index: Dict[Mono, int],
                        width: int) -> List[Fraction]:
    coords = [Fraction(0)] * width
    for mono, c in vec.items():
        coords[index[mono]] = c
    return coords


class FreeSlice:
    """Degree-d piece of a free module with a monomial basis."""

    def __init__(self, free, d: int):
        self.free = free
        self.degree = d
        self.monomials = free_slice_monomials(free, d)
        self.index = {m: i for i, m in enumerate(self.monomials)}

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def coords(self, vec: Dict[Mono, Fraction]) -> List[Fraction]:
        return vector_slice_coords(vec, self.index, self.dim)


def column_multiples_in_degree(col: Dict[Mono, Fraction], col_degree: int,
                               rank: int, d: int):
    """All monomial multiples of a homogeneous vector landing in degree d."""
    rem = d - col_degree
    if rem < 0 or rem % 2:
        return
    for exp in monomials_of_polydegree(rank, rem // 2):
        yield {(pos, mono_mul(e, exp)): c for (pos, e), c in col.items()}


def span_of_columns(free, cols_with_degrees, d: int) -> RowSpan:
    """Row space of all degree-d monomial multiples of the given columns."""
    sl = FreeSlice(free, d)
    span = RowSpan(sl.dim)
    for col, cdeg in cols_with_degrees:
        for vec in column_multiples_in_degree(col, cdeg, free.rank, d):
            span.add(sl.coords(vec))
    return span


class ModuleSlice:
    """Degree-d piece of coker(relations -> free), in quotient coordinates.

    Quotient coordinates are the non-pivot monomials once the relation span
    is put in reduced echelon form.
    """

    def __init__(self, free, relation_cols_with_degrees, d: int):
        self.free_slice = FreeSlice(free, d)
        self.span = RowSpan(self.free_slice.dim)
        for col, cdeg in relation_cols_with_degrees:
            for vec in column_multiples_in_degree(col, cdeg, free.rank, d):
                self.span.add(self.free_slice.coords(vec))
        pivots = set(self.span.pivots)
        self.quotient_cols = [j for j in range(self.free_slice.dim)
                              if j not in pivots]

    @property
    def dim(self) -> int:
        return len(self.quotient_cols)

    def reduce_coords(self, coords: List[Fraction]) -> List[Fraction]:
        """Quotient coordinates of a free-slice coordinate vector."""
        res = self.span.reduce(coords)
        return [res[j] for j in self.quotient_cols]

    def reduce_vec(self, vec: Dict[Mono, Fraction]) -> List[Fraction]:
        return self.reduce_coords(self.free_slice.coords(vec))


def apply_matrix_to_mono(matrix, source_free, target_rank, mono: Mono):
    """Image of a basis monomial under a generator matrix, as a sparse vector."""
    pos, exp = mono
    out: Dict[Mono, Fraction] = {}
    for i in range(len(matrix)):
        entry: GradedPoly = matrix[i][pos]
        for e, c in entry.terms.items():
            key = (i, mono_mul(e, exp))
            out[key] = out.get(key, Fraction(0)) + c
    return out


def hom_slice_matrix(matrix, source_slice: ModuleSlice, target_slice: ModuleSlice):
    """Matrix of the induced map on degree-d quotient slices.

    Columns are indexed by the source quotient basis (classes of non-pivot
    monomials), rows by the target quotient basis.
    """
    cols = []
    for j in source_slice.quotient_cols:
        mono = source_slice.free_slice.monomials[j]
        image = apply_matrix_to_mono(matrix, source_slice.free_slice.free,
                                     len(matrix), mono)
        cols.append(target_slice.reduce_vec(image))
    rows = [[cols[j][i] for j in range(len(cols))]
            for i in range(target_slice.dim)]
    return rows
