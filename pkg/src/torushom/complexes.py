"""Bounded cochain complexes of finitely presented modules.

Cohomology as first-class FPModules (kernel presented by syzygy lifting,
then quotiented by the lifted image), exactness verdicts for augmented
complexes, short-exact-sequence verification, and the graded isomorphism
probe used to certify "there is an isomorphism" claims.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .errors import FixtureError, InternalInvariantError
from .invariants import (ExtTable, HilbertSeries, depth, dimension, ext_table,
                         hilbert_series)
from .module import (FPHom, FPModule, kernel, subquotient, syzygies_modulo)
from .ring import GradedPoly


class GradedComplex:
    """Cochain complex C^start -> ... -> C^end with degree-zero differentials.

    Validation happens at construction: matching endpoints, d о d = 0 as
    maps of cokernels, and (if present) augmentation composing to zero.
    """

    def __init__(self, start: int, modules: Sequence[FPModule],
                 differentials: Sequence[FPHom],
                 augmentation: Optional[FPHom] = None, validate: bool = True):
        if len(differentials) != max(len(modules) - 1, 0):
            raise FixtureError("need one differential between consecutive positions")
        self.start = start
        self.modules = list(modules)
        self.differentials = list(differentials)
        self.augmentation = augmentation
        if validate:
            self._validate()

    def _validate(self):
        for k, d in enumerate(self.differentials):
            if d.source is not self.modules[k] or d.target is not self.modules[k + 1]:
                raise FixtureError(
                    f"differential at position {self.start + k} does not "
                    f"connect consecutive positions")
        for k in range(len(self.differentials) - 1):
            comp = self.differentials[k + 1].compose(self.differentials[k])
            if not comp.is_zero_hom():
                raise FixtureError(
                    f"d o d != 0 at position {self.start + k}")
        if self.augmentation is not None:
            if self.augmentation.target is not self.modules[0]:
                raise FixtureError("augmentation must land in the first position")
            if self.differentials:
                comp = self.differentials[0].compose(self.augmentation)
                if not comp.is_zero_hom():
                    raise FixtureError("augmentation composed with d_0 is non-zero")

    @property
    def end(self) -> int:
        return self.start + len(self.modules) - 1

    def positions(self):
        return range(self.start, self.end + 1)

    def module_at(self, i: int) -> Optional[FPModule]:
        if self.start <= i <= self.end:
            return self.modules[i - self.start]
        return None

    def differential_at(self, i: int) -> Optional[FPHom]:
        k = i - self.start
        if 0 <= k < len(self.differentials):
            return self.differentials[k]
        return None


def cohomology_at(C: GradedComplex, i: int,
                  include_augmentation: bool = False) -> FPModule:
    """ker(d_i)/im(d_{i-1}) as a finitely presented module.

    Kernel representatives are the preimage of the next position's
    relations; the quotient adds the previous differential's columns (and,
    at the first position of an augmented complex, the augmentation's).
    """
    M = C.module_at(i)
    if M is None:
        return FPModule.zero(C.modules[0].rank)
    d_out = C.differential_at(i)
    if d_out is not None:
        ker_gens = syzygies_modulo(d_out.free_hom.columns(),
                                   d_out.target.relation_columns(),
                                   d_out.target.free_cover,
                                   list(M.gen_degrees))
    else:
        zero_exp = (0,) * M.rank
        ker_gens = [{(pos, zero_exp): Fraction(1)} for pos in range(M.ngens)]
    denominator = list(M.relation_columns())
    d_in = C.differential_at(i - 1)
    if d_in is not None:
        denominator += [c for c in d_in.free_hom.columns() if c]
    if include_augmentation and i == C.start and C.augmentation is not None:
        denominator += [c for c in C.augmentation.free_hom.columns() if c]
    return subquotient(M.free_cover, ker_gens, denominator)


@dataclass
class ExactnessReport:
    """Vanishing verdicts per position, including -1 for the augmentation."""

    per_position: Dict[int, bool]
    exact_through: int  # largest p with all positions <= p exact; start-2 if none

    def is_exact_at(self, i: int) -> bool:
        return self.per_position.get(i, True)


def exactness_positions(C: GradedComplex) -> ExactnessReport:
    """Exactness of an augmented complex, from the augmentation upward."""
    if C.augmentation is None:
        raise FixtureError("exactness report needs an augmented complex")
    per: Dict[int, bool] = {}
    ker, _ = kernel(C.augmentation)
    per[C.start - 1] = ker.is_zero()
    for i in C.positions():
        per[i] = cohomology_at(C, i, include_augmentation=True).is_zero()
    exact_through = C.start - 2
    for i in range(C.start - 1, C.end + 1):
        if per[i]:
            exact_through = i
        else:
            break
    return ExactnessReport(per, exact_through)


# --------------------------------------------------------------------------
# short exact sequences
# --------------------------------------------------------------------------

@dataclass
class SESVerdict:
    passed: bool
    composite_zero: bool
    injective: bool
    middle_exact: bool
    surjective: bool
    detail: str = ""

    def __bool__(self):
        return self.passed


def verify_ses(f: FPHom, g: FPHom) -> SESVerdict:
    """Check 0 -> A -> B -> C -> 0 and report which leg fails.

    On success, Hilbert series additivity HS(B) = HS(A) + HS(C) is also
    asserted; its failure would mean the kernel/image machinery lied, so it
    raises rather than returning a verdict.
    """
    if g.source is not f.target and g.source.gen_degrees != f.target.gen_degrees:
        raise FixtureError("maps are not composable")
    composite_zero = g.compose(f).is_zero_hom()
    ker_f, _ = kernel(f)
    injective = ker_f.is_zero()
    surj = cokernel_is_zero(g)
    middle = composite_zero
    if composite_zero:
        B = f.target
        ker_gens = syzygies_modulo(g.free_hom.columns(),
                                   g.target.relation_columns(),
                                   g.target.free_cover,
                                   list(B.gen_degrees))
        from .module import buchberger
        span_cols = [c for c in f.free_hom.columns() if c] + B.relation_columns()
        gb = buchberger(span_cols, B.free_cover)
        from .module import normal_form
        for k in ker_gens:
            if normal_form(k, gb):
                middle = False
                break
    passed = composite_zero and injective and middle and surj
    detail_bits = []
    if not composite_zero:
        detail_bits.append("g o f != 0")
    if not injective:
        detail_bits.append("first map not injective")
    if not middle:
        detail_bits.append("ker(g) != im(f)")
    if not surj:
        detail_bits.append("second map not surjective")
    if passed:
        total = hilbert_series(f.source).plus(hilbert_series(g.target))
        if not hilbert_series(f.target).equals(total):
            raise InternalInvariantError(
                "short exact sequence verified but Hilbert series not additive")
    return SESVerdict(passed, composite_zero, injective, middle, surj,
                      "; ".join(detail_bits))


def cokernel_is_zero(h: FPHom) -> bool:
    from .module import buchberger, normal_form
    cols = [c for c in h.free_hom.columns() if c] + h.target.relation_columns()
    gb = buchberger(cols, h.target.free_cover)
    zero_exp = (0,) * h.target.rank
    return all(not normal_form({(pos, zero_exp): Fraction(1)}, gb)
               for pos in range(h.target.ngens))


# --------------------------------------------------------------------------
# isomorphism probe
# --------------------------------------------------------------------------

@dataclass
class IsoVerdict:
    """certified-iso carries a witness; certified-noniso cites an invariant."""

    status: str  # "iso" | "noniso" | "unknown"
    witness: Optional[FPHom] = None
    reason: str = ""

    def __bool__(self):
        return self.status == "iso"


#: search budget: exhaustive sign patterns over this many basis homs ...
ISO_EXHAUSTIVE_BASIS = 4
#: ... then this many randomized draws with coefficients in [-9, 9]
ISO_RANDOM_DRAWS = 200


def _certify_iso(h: FPHom) -> bool:
    ker, _ = kernel(h)
    if not ker.is_zero():
        return False
    return cokernel_is_zero(h)


def _invariant_mismatch(M: FPModule, N: FPModule) -> Optional[str]:
    hs_m, hs_n = hilbert_series(M), hilbert_series(N)
    if not hs_m.equals(hs_n):
        return (f"Hilbert series differ: ({hs_m.numerator_str()}) vs "
                f"({hs_n.numerator_str()}) over (1-q^2)^{M.rank}")
    dm, dn = dimension(M), dimension(N)
    if dm != dn:
        return f"dimension {dm} vs {dn}"
    pm, pn = depth(M), depth(N)
    if pm != pn:
        return f"depth {pm} vs {pn}"
    tm, tn = ext_table(M), ext_table(N)
    for p in range(M.rank + 1):
        em, en = hilbert_series(tm.entries[p]), hilbert_series(tn.entries[p])
        if not em.equals(en):
            return (f"Ext^{p} Hilbert series differ: ({em.numerator_str()}) "
                    f"vs ({en.numerator_str()})")
    return None


def iso_probe(M: FPModule, N: FPModule, seed: int = 0) -> IsoVerdict:
    """Three-stage graded isomorphism verdict.

    Invariant comparison first (any mismatch certifies non-isomorphism),
    then a search through degree-zero homs: every -1/0/1 combination of up
    to four basis homs, then seeded random draws over the whole basis.  A
    witness is only accepted if its kernel and cokernel are certified zero
    by the Groebner machinery.  Budget exhaustion returns "unknown", never
    a guess.
    """
    if M.rank != N.rank:
        return IsoVerdict("noniso", reason=f"ring rank {M.rank} vs {N.rank}")
    if M.is_zero() and N.is_zero():
        return IsoVerdict("iso", witness=FPHom.zero(M, N), reason="both zero")
    mismatch = _invariant_mismatch(M, N)
    if mismatch:
        return IsoVerdict("noniso", reason=mismatch)

    from .module import hom_space_degree0
    basis = hom_space_degree0(M, N)
    if not basis:
        return IsoVerdict(
            "noniso", reason="degree-0 hom space M -> N is zero")

    def combine(coeffs) -> Optional[FPHom]:
        h = None
        for c, b in zip(coeffs, basis):
            if not c:
                continue
            part = b.scaled(c)
            h = part if h is None else h.plus(part)
        return h

    def quick_reject(h: FPHom) -> bool:
        # bijectivity on a couple of slices is necessary; cheap to test
        from . import slices as sl
        from .linalg import rank as mat_rank
        probe_degrees = sorted(set(M.gen_degrees) | set(N.gen_degrees))[:3]
        for d in probe_degrees:
            src = M.slice(d)
            tgt = N.slice(d)
            if src.dim != tgt.dim:
                return True
            if src.dim == 0:
                continue
            mat = sl.hom_slice_matrix(h.matrix, src, tgt)
            if mat_rank(mat) != src.dim:
                return True
        return False

    tried = set()
    k = min(len(basis), ISO_EXHAUSTIVE_BASIS)

    def attempt(coeffs) -> Optional[IsoVerdict]:
        key = tuple(coeffs)
        if key in tried:
            return None
        tried.add(key)
        h = combine(coeffs)
        if h is None:
            return None
        if quick_reject(h):
            return None
        if _certify_iso(h):
            return IsoVerdict("iso", witness=h)
        return None

    from itertools import product
    for signs in product((-1, 0, 1), repeat=k):
        coeffs = list(signs) + [0] * (len(basis) - k)
        out = attempt(coeffs)
        if out:
            return out
    rng = random.Random(seed)
    for _ in range(ISO_RANDOM_DRAWS):
        coeffs = [rng.randint(-9, 9) for _ in basis]
        out = attempt(coeffs)
        if out:
            return out
    return IsoVerdict("unknown",
                      reason="isomorphism search budget exhausted")
