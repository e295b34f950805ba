"""Moment graphs and the filtration data they determine.

A moment graph records fixed points and the weights of the connecting
invariant 2-spheres.  It mechanically produces the bottom of the orbit
filtration: the fixed-point stratum, the edge stratum, the
difference-modulo-weight differential, and the total module as its kernel
(the Chang-Skjelbred presentation).  Higher strata are not determined by
this combinatorics and stay zero unless the fixture supplies them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .atiyah_bredon import LocalizationFixture, OrbitFiltrationData
from .errors import FixtureError
from .module import (FPHom, FPModule, FreeModule, GradedHom, cokernel,
                     direct_sum, kernel)
from .ring import GradedPoly


@dataclass(frozen=True)
class Edge:
    v: str
    w: str
    weight: GradedPoly


@dataclass
class MomentGraph:
    rank: int
    vertices: List[str]
    edges: List[Edge]

    def __post_init__(self):
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise FixtureError("duplicate vertex labels")
        for e in self.edges:
            if e.v not in seen or e.w not in seen:
                raise FixtureError(f"edge {e.v}--{e.w} references unknown vertex")
            if e.v == e.w:
                raise FixtureError("loops are not allowed")
            if e.weight.rank != self.rank:
                raise FixtureError("weight over wrong ring rank")
            if e.weight.is_zero() or not e.weight.is_homogeneous(2):
                raise FixtureError(
                    f"weight {e.weight} on {e.v}--{e.w} must be non-zero of degree 2")
        if self.vertices and not self._connected():
            raise FixtureError("moment graph must be connected")

    def _connected(self) -> bool:
        adj: Dict[str, set] = {v: set() for v in self.vertices}
        for e in self.edges:
            adj[e.v].add(e.w)
            adj[e.w].add(e.v)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for n in adj[stack.pop()]:
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        return len(seen) == len(self.vertices)


def fixed_point_stratum(g: MomentGraph) -> FPModule:
    """One polynomial-ring summand per fixed point, generators in degree 0."""
    return FPModule.free(g.rank, [0] * len(g.vertices))


def edge_stratum(g: MomentGraph) -> FPModule:
    """One R/(weight) summand per edge.

    Generators sit in internal degree 0 of the shifted grading: that is the
    unique normalization making the difference map from the fixed-point
    stratum degree-preserving.
    """
    if not g.edges:
        return FPModule.zero(g.rank)
    return direct_sum([FPModule.cyclic(g.rank, 0, [e.weight]) for e in g.edges])


def difference_map(g: MomentGraph, ab0: FPModule, ab1: FPModule) -> FPHom:
    """f |-> (f(v_e) - f(w_e) mod weight_e) over the edges."""
    zero = GradedPoly.zero(g.rank)
    one = GradedPoly.one(g.rank)
    vindex = {v: i for i, v in enumerate(g.vertices)}
    matrix = [[zero] * len(g.vertices) for _ in g.edges]
    for row, e in enumerate(g.edges):
        matrix[row][vindex[e.v]] = one
        matrix[row][vindex[e.w]] = -one
    return FPHom(ab0, ab1, matrix)


def gkm_cohomology(g: MomentGraph) -> Tuple[FPModule, FPHom]:
    """Total module as the kernel of the difference map, with its inclusion.

    This is the Chang-Skjelbred presentation: tuples of polynomials over
    the fixed points agreeing modulo the weight along every edge.
    """
    ab0 = fixed_point_stratum(g)
    ab1 = edge_stratum(g)
    d0 = difference_map(g, ab0, ab1)
    return kernel(d0)


def gkm_to_filtration(g: MomentGraph, name: str = "gkm") -> OrbitFiltrationData:
    """Filtration data with levels 0 and 1 filled in from the graph.

    Positions at and above 2 are zero and the bundle is flagged truncated
    for rank >= 2; the graph does not determine them.
    """
    ab0 = fixed_point_stratum(g)
    ab1 = edge_stratum(g)
    d0 = difference_map(g, ab0, ab1)
    total, inclusion = kernel(d0)
    strata = {0: ab0, 1: ab1}
    for i in range(2, g.rank + 1):
        strata[i] = FPModule.zero(g.rank)
    return OrbitFiltrationData(
        name=name,
        rank=g.rank,
        strata=strata,
        differentials={0: d0},
        total=total,
        augmentation=inclusion,
        truncated=g.rank >= 2,
    )


def complete_exact_filtration(data: OrbitFiltrationData) -> OrbitFiltrationData:
    """Fill position 2 of a rank-2 truncated bundle by the cokernel of d_0.

    Valid exactly when the augmented sequence of the underlying space is
    exact (the free-total-module fixtures bundled here), in which case the
    top stratum is forced to be coker(d_0) with the projection as d_1.
    """
    if data.rank != 2 or not data.truncated:
        raise FixtureError("completion only applies to truncated rank-2 bundles")
    d0 = data.differentials[0]
    coker, proj = cokernel(d0)
    strata = dict(data.strata)
    strata[2] = coker
    diffs = dict(data.differentials)
    diffs[1] = proj
    return OrbitFiltrationData(
        name=data.name,
        rank=data.rank,
        strata=strata,
        differentials=diffs,
        total=data.total,
        augmentation=data.augmentation,
        homology=data.homology,
        pd=data.pd,
        ses_fixtures=data.ses_fixtures,
        localization=data.localization,
        locally_free=data.locally_free,
        segments=data.segments,
        pal_pairs=data.pal_pairs,
        truncated=False,
    )
