"""Homological invariants of finitely presented graded modules.

Ext against the polynomial ring (via the dual of a minimal free resolution),
Hilbert series, Krull dimension, depth, the Cohen-Macaulay test, syzygy
order through the transpose criterion, and a degree-windowed local
cohomology table with its duality check.

Wherever an invariant has two independent characterizations, both are
computed and compared; a discrepancy is raised as an internal bug, never
papered over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import slices
from .errors import InternalInvariantError, StabilizationError
from .module import (FPHom, FPModule, FreeModule, GradedHom, direct_sum,
                     kernel, minimal_resolution, minimize_presentation,
                     subquotient, syzygy_columns)
from .ring import GradedPoly

INFINITY = float("inf")
NEG_INFINITY = float("-inf")


# --------------------------------------------------------------------------
# Hilbert series
# --------------------------------------------------------------------------

def _laurent_mul(a: Dict[int, int], b: Dict[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _one_minus_q2_power(k: int) -> Dict[int, int]:
    out = {0: 1}
    for _ in range(k):
        out = _laurent_mul(out, {0: 1, 2: -1})
    return out


@dataclass(frozen=True)
class HilbertSeries:
    """numerator / (1 - q^2)^rank, numerator an integer Laurent polynomial.

    The coefficient of q^d in the expansion is the dimension of the
    degree-d piece of the module.
    """

    numerator: tuple          # sorted tuple of (exponent, coefficient)
    rank: int

    @classmethod
    def make(cls, numerator: Dict[int, int], rank: int) -> "HilbertSeries":
        clean = tuple(sorted((e, c) for e, c in numerator.items() if c))
        return cls(clean, rank)

    def num_dict(self) -> Dict[int, int]:
        return dict(self.numerator)

    def is_zero(self) -> bool:
        return not self.numerator

    def coefficient(self, d: int) -> int:
        total = 0
        for e, c in self.numerator:
            rem = d - e
            if rem < 0 or rem % 2:
                continue
            total += c * slices.count_monomials(self.rank, rem // 2)
        return total

    def shift(self, l: int) -> "HilbertSeries":
        return HilbertSeries.make({e + l: c for e, c in self.numerator}, self.rank)

    def plus(self, other: "HilbertSeries") -> "HilbertSeries":
        if self.rank != other.rank:
            raise ValueError("rank mismatch in Hilbert series sum")
        num = self.num_dict()
        for e, c in other.numerator:
            num[e] = num.get(e, 0) + c
        return HilbertSeries.make(num, self.rank)

    def equals(self, other: "HilbertSeries") -> bool:
        """Equality as rational functions (ranks may differ)."""
        left = _laurent_mul(self.num_dict(),
                            _one_minus_q2_power(other.rank))
        right = _laurent_mul(other.num_dict(),
                             _one_minus_q2_power(self.rank))
        return left == right

    def pole_order_at_one(self) -> Optional[int]:
        """rank minus the multiplicity of q=1 in the numerator; None if zero."""
        if not self.numerator:
            return None
        coeffs = self.num_dict()
        shift = min(coeffs)
        poly = {e - shift: c for e, c in coeffs.items()}
        deg = max(poly)
        vec = [poly.get(i, 0) for i in range(deg + 1)]
        mult = 0
        while sum(vec) == 0:
            # synthetic division by (q - 1)
            out = [0] * (len(vec) - 1)
            acc = 0
            for i in range(len(vec) - 1, 0, -1):
                acc += vec[i]
                out[i - 1] = acc
            vec = out
            mult += 1
            if not vec:
                break
        return self.rank - mult

    def numerator_str(self) -> str:
        if not self.numerator:
            return "0"
        parts = []
        for e, c in self.numerator:
            if e == 0:
                body = str(abs(c))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def hilbert_series(M: FPModule) -> HilbertSeries:
    """Alternating sum of generator degrees over a minimal free resolution."""
    if M._hilbert is not None:
        return M._hilbert
    res = minimal_resolution(M)
    num: Dict[int, int] = {}
    sign = 1
    for free in res.free_modules:
        for d in free.degrees:
            num[d] = num.get(d, 0) + sign
        sign = -sign
    hs = HilbertSeries.make(num, M.rank)
    M._hilbert = hs
    return hs


# --------------------------------------------------------------------------
# Ext against R
# --------------------------------------------------------------------------

@dataclass
class ExtTable:
    """Ext^p(M, R) for 0 <= p <= rank, each a finitely presented module.

    The dual of the free module with generator degree d has generator
    degree -d; `entry_shifted(p)` applies the extra [p] twist used when a
    comparison wants Ext^p(M,R)[p] instead.
    """

    module: FPModule
    entries: Dict[int, FPModule]

    def entry(self, p: int) -> FPModule:
        return self.entries[p]

    def entry_shifted(self, p: int) -> FPModule:
        return self.entries[p].shifted(p)

    def max_nonzero(self) -> Optional[int]:
        out = None
        for p, m in self.entries.items():
            if not m.is_zero():
                out = p if out is None else max(out, p)
        return out

    def min_nonzero(self) -> Optional[int]:
        out = None
        for p in sorted(self.entries):
            if not self.entries[p].is_zero():
                return p
        return out


def ext_table(M: FPModule) -> ExtTable:
    """Cohomology of the R-dual of a minimal free resolution of M."""
    res = minimal_resolution(M)
    r = M.rank
    length = res.length
    duals = [f.dual() for f in res.free_modules]
    deltas = [d.transpose() for d in res.differentials]  # deltas[p]: D_p -> D_{p+1}

    entries: Dict[int, FPModule] = {}
    for p in range(r + 1):
        if p > length:
            entries[p] = FPModule.zero(r)
            continue
        D_p = duals[p]
        if p < length:
            ker_gens = syzygy_columns(deltas[p].columns(), deltas[p].target,
                                      list(deltas[p].source.degrees))
        else:
            zero_exp = (0,) * r
            ker_gens = [{(i, zero_exp): Fraction(1)} for i in range(D_p.ngens)]
        modulo = deltas[p - 1].columns() if p >= 1 else []
        entries[p] = subquotient(D_p, ker_gens, modulo)
    return ExtTable(module=M, entries=entries)


# --------------------------------------------------------------------------
# dimension, depth, Cohen-Macaulay, syzygy order
# --------------------------------------------------------------------------

def dimension(M: FPModule):
    """Krull dimension via the pole order of the Hilbert series at q=1.

    The zero module reports -inf.
    """
    if M.is_zero():
        return NEG_INFINITY
    dim = hilbert_series(M).pole_order_at_one()
    if dim is None or dim < 0 or dim > M.rank:
        raise InternalInvariantError(f"impossible dimension {dim}")
    return dim


def depth(M: FPModule):
    """Depth, computed two independent ways (they must agree).

    Auslander-Buchsbaum gives rank - projective dimension; the Ext route
    gives rank - max{p : Ext^p(M,R) != 0}.  The zero module reports +inf.
    """
    if M.is_zero():
        return INFINITY
    r = M.rank
    via_pd = r - minimal_resolution(M).length
    top = ext_table(M).max_nonzero()
    if top is None:
        raise InternalInvariantError("non-zero module with vanishing Ext table")
    via_ext = r - top
    if via_pd != via_ext:
        raise InternalInvariantError(
            f"depth disagreement: rank-pd gives {via_pd}, Ext gives {via_ext}")
    return via_pd


@dataclass
class CMVerdict:
    passed: bool
    is_zero: bool
    dim: object
    depth: object
    expected_dim: Optional[int]
    detail: str

    def __bool__(self):
        return self.passed


def is_cohen_macaulay(M: FPModule, expected_dim: Optional[int] = None) -> CMVerdict:
    """depth == dimension, cross-checked against a single non-zero Ext column.

    The zero module counts as Cohen-Macaulay of any expected dimension.
    """
    if M.is_zero():
        return CMVerdict(True, True, NEG_INFINITY, INFINITY, expected_dim,
                         "zero module")
    d = dimension(M)
    dp = depth(M)
    cm = (d == dp)
    table = ext_table(M)
    nonzero = [p for p, m in table.entries.items() if not m.is_zero()]
    ext_cm = (len(nonzero) == 1 and nonzero[0] == M.rank - d)
    if cm != ext_cm:
        raise InternalInvariantError(
            f"CM characterizations disagree: depth={dp} dim={d} "
            f"but non-zero Ext columns are {nonzero}")
    passed = cm
    detail = f"dim={d}, depth={dp}"
    if expected_dim is not None and cm and d != expected_dim:
        passed = False
        detail += f", expected dim {expected_dim}"
    return CMVerdict(passed, False, d, dp, expected_dim, detail)


def transpose_module(M: FPModule) -> FPModule:
    """Cokernel of the transposed minimal presentation."""
    mp = minimize_presentation(M)
    return FPModule(mp.module.presentation.transpose())


def syzygy_order(M: FPModule):
    """Largest j such that M is a j-th syzygy; free modules report +inf.

    Transpose criterion: M is a j-th syzygy iff Ext^i(Tr M, R) = 0 for
    1 <= i <= j (the polynomial ring is Gorenstein, so j-torsion-free and
    j-th syzygy coincide).
    """
    if M.is_zero() or minimal_resolution(M).length == 0:
        return INFINITY
    tr = transpose_module(M)
    table = ext_table(tr)
    order = 0
    for i in range(1, M.rank + 1):
        if table.entries[i].is_zero():
            order = i
        else:
            break
    return order


def torsion_submodule_is_zero(M: FPModule) -> bool:
    """Torsion-freeness via the evaluation into the generators of Hom(M,R).

    The combined map M -> R^k over a generating set of Hom(M,R) has the
    torsion submodule as its kernel; this is independent of the transpose
    criterion behind `syzygy_order`.
    """
    if M.is_zero():
        return True
    mp = minimize_presentation(M)
    Mmin = mp.module
    res = minimal_resolution(Mmin)
    if res.length == 0:
        return True
    delta1 = res.differentials[0].transpose()  # D_0 -> D_1
    psis = syzygy_columns(delta1.columns(), delta1.target,
                          list(delta1.source.degrees))
    rank = M.rank
    from .module import vec_degree
    D0 = res.free_modules[0].dual()
    degs = [vec_degree(p, D0) for p in psis]
    target = FPModule.free(rank, [-e for e in degs])
    zero = GradedPoly.zero(rank)
    matrix = [[zero for _ in range(Mmin.ngens)] for _ in range(len(psis))]
    for j, psi in enumerate(psis):
        buckets = [dict() for _ in range(Mmin.ngens)]
        for (pos, e), c in psi.items():
            buckets[pos][e] = c
        for pos in range(Mmin.ngens):
            if buckets[pos]:
                matrix[j][pos] = GradedPoly(rank, buckets[pos])
    h = FPHom(Mmin, target, matrix, validate=True)
    ker, _ = kernel(h)
    return ker.is_zero()


# --------------------------------------------------------------------------
# local cohomology in a degree window
# --------------------------------------------------------------------------

def _koszul_cochain(M: FPModule, exponent: int):
    """Stable Koszul cochain complex on t_i^exponent.

    Position p is the direct sum over size-p subsets S of the variables of
    M[-2*exponent*p]; the differential multiplies by t_i^exponent with the
    usual alternating sign.  Its cohomology approximates the Cech complex
    of the localizations; degreewise it stabilizes to H_m once the
    exponent is large enough for the window.
    """
    from itertools import combinations

    r = M.rank
    positions: List[FPModule] = []
    subsets: List[List[tuple]] = []
    for p in range(r + 1):
        subs = list(combinations(range(r), p))
        subsets.append(subs)
        shifted = M.shifted(-2 * exponent * p)
        if len(subs) == 1:
            positions.append(shifted)
        else:
            positions.append(direct_sum([shifted] * len(subs)))
    diffs: List[FPHom] = []
    ng = M.ngens
    zero = GradedPoly.zero(r)
    for p in range(r):
        src_subs = subsets[p]
        tgt_subs = {S: b for b, S in enumerate(subsets[p + 1])}
        rows = positions[p + 1].ngens
        cols = positions[p].ngens
        matrix = [[zero] * cols for _ in range(rows)]
        for a, S in enumerate(src_subs):
            for i in range(r):
                if i in S:
                    continue
                T = tuple(sorted(S + (i,)))
                b = tgt_subs[T]
                sign = (-1) ** sum(1 for x in S if x < i)
                entry = GradedPoly.variable(r, i) ** exponent
                entry = entry.scale(sign)
                for g in range(ng):
                    matrix[b * ng + g][a * ng + g] = entry
        diffs.append(FPHom(positions[p], positions[p + 1], matrix,
                           validate=False))
    return positions, diffs


def _cochain_cohomology_dims(positions, diffs, d: int) -> List[int]:
    """Cohomology dimensions of a cochain complex in one internal degree."""
    from .linalg import rank as mat_rank

    n = len(positions)
    mod_slices = [m.slice(d) for m in positions]
    ranks = []
    for p in range(n - 1):
        mat = slices.hom_slice_matrix(diffs[p].matrix, mod_slices[p],
                                      mod_slices[p + 1])
        ranks.append(mat_rank(mat))
    out = []
    for p in range(n):
        dim = mod_slices[p].dim
        out_rank = ranks[p] if p < n - 1 else 0
        in_rank = ranks[p - 1] if p > 0 else 0
        out.append(dim - out_rank - in_rank)
    return out


def local_cohomology_window(M: FPModule, lo: int, hi: int,
                            exponent: int = 6) -> Dict[int, Dict[int, int]]:
    """dim_Q H_m^j(M)_d for 0 <= j <= rank and lo <= d <= hi.

    The table is computed at the given saturation exponent and again at
    exponent+1; disagreement means the colimit has not stabilized inside
    the window, which is reported (exponent too small), never returned.
    """
    if exponent < 1:
        raise ValueError("saturation exponent must be >= 1")
    tables = []
    for N in (exponent, exponent + 1):
        positions, diffs = _koszul_cochain(M, N)
        table: Dict[int, Dict[int, int]] = {j: {} for j in range(M.rank + 1)}
        for d in range(lo, hi + 1):
            dims = _cochain_cohomology_dims(positions, diffs, d)
            for j, v in enumerate(dims):
                if v:
                    table[j][d] = v
        tables.append(table)
    if tables[0] != tables[1]:
        raise StabilizationError(
            f"local cohomology window [{lo},{hi}] not stable between "
            f"exponents {exponent} and {exponent + 1}; raise the exponent")
    return tables[0]


@dataclass
class LocalDualityVerdict:
    passed: bool
    mismatches: List[tuple]
    local_table: Dict[int, Dict[int, int]]
    ext_table_dims: Dict[int, Dict[int, int]]

    def __bool__(self):
        return self.passed


def verify_local_duality(M: FPModule, lo: int = -20, hi: int = 20,
                         exponent: int = 6) -> LocalDualityVerdict:
    """Degreewise graded local duality check.

    For every j and every d in the window, the dimension of H_m^j(M) in
    degree d must equal that of Ext^{r-j}(M, R) in degree -d-2r (the
    graded dual twisted by R[2r]).
    """
    r = M.rank
    local = local_cohomology_window(M, lo, hi, exponent)
    table = ext_table(M)
    ext_dims: Dict[int, Dict[int, int]] = {}
    mismatches = []
    for j in range(r + 1):
        ext_mod = table.entries[r - j]
        ext_dims[r - j] = {}
        for d in range(lo, hi + 1):
            dual_degree = -d - 2 * r
            rhs = ext_mod.dim_slice_bruteforce(dual_degree)
            if rhs:
                ext_dims[r - j][dual_degree] = rhs
            lhs = local[j].get(d, 0)
            if lhs != rhs:
                mismatches.append((j, d, lhs, rhs))
    return LocalDualityVerdict(not mismatches, mismatches, local, ext_dims)
