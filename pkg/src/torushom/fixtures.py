"""Bundled fixture library.

Each builder returns a complete OrbitFiltrationData bundle for one standard
example; the hand-derived modules and maps are spelled out explicitly, and
every claim baked in here is re-checked at runtime by the verification
suites (a fixture that fails them is a broken fixture, not a skipped one).

Bundled spaces: a point (ranks 1..3), the projective line and plane, a
product of two projective lines, the rotation 2-sphere, the free circle
action on the 3-sphere, and the rank-r torus acting on itself.
"""

from __future__ import annotations

from typing import Dict, List

from .atiyah_bredon import (LocalizationFixture, LocallyFreeFixture,
                            OrbitFiltrationData, PALPair, PDMetadata,
                            SegmentFixture, SESFixture)
from .gkm import (Edge, MomentGraph, complete_exact_filtration,
                  gkm_to_filtration)
from .module import FPHom, FPModule
from .ring import GradedPoly


def _t(rank: int, i: int) -> GradedPoly:
    return GradedPoly.variable(rank, i)


def _const(rank: int, c) -> GradedPoly:
    return GradedPoly.constant(rank, c)


# --------------------------------------------------------------------------
# moment graphs
# --------------------------------------------------------------------------

def graph_cp1() -> MomentGraph:
    t = _t(1, 0)
    return MomentGraph(1, ["north", "south"], [Edge("north", "south", t)])


def graph_s2_rotation() -> MomentGraph:
    # same combinatorics as the projective line: two fixed points, weight t
    t = _t(1, 0)
    return MomentGraph(1, ["north", "south"], [Edge("north", "south", t)])


def graph_cp2() -> MomentGraph:
    t1, t2 = _t(2, 0), _t(2, 1)
    return MomentGraph(2, ["p0", "p1", "p2"], [
        Edge("p0", "p1", t1),
        Edge("p0", "p2", t2),
        Edge("p1", "p2", t1 - t2),
    ])


def graph_cp1xcp1() -> MomentGraph:
    t1, t2 = _t(2, 0), _t(2, 1)
    return MomentGraph(2, ["v00", "v10", "v01", "v11"], [
        Edge("v00", "v10", t1),
        Edge("v01", "v11", t1),
        Edge("v00", "v01", t2),
        Edge("v10", "v11", t2),
    ])


# --------------------------------------------------------------------------
# hand-built short exact sequences for the two-fixed-point sphere
# --------------------------------------------------------------------------

def _sphere_duflot_ses(rank1: int = 1) -> SESFixture:
    """0 -> H(X, X minus fixed points) -> H(X) -> H(X minus fixed points) -> 0.

    The middle module is written on the Chang-Skjelbred generators
    u = (1,1), v = (t,0); the submodule is spanned by the two Thom classes
    (t,0) = v and (0,t) = t*u - v; the quotient is the free-orbit collar
    with trivial t-action.
    """
    t = _t(1, 0)
    one = _const(1, 1)
    zero = GradedPoly.zero(1)
    A = FPModule.free(1, [2, 2])
    B = FPModule.free(1, [0, 2])
    C = FPModule.cyclic(1, 0, [t])
    f = FPHom(A, B, [[zero, t], [one, -one]])       # e1 -> v, e2 -> t*u - v
    g = FPHom(B, C, [[one, zero]])                  # u -> 1, v -> 0
    return SESFixture(tag="cohomology-fixed-point-sequence", f=f, g=g)


def _sphere_homology_ses() -> SESFixture:
    """0 -> (homology of fixed points) -> (homology of X) -> (relative) -> 0.

    Homology of the sphere written on generators u = (1,1)[-2], v = (t,0)[-2];
    the fixed points map in by their dual classes (t,0), (0,t); the cokernel
    is one torsion class in degree -2.
    """
    t = _t(1, 0)
    one = _const(1, 1)
    zero = GradedPoly.zero(1)
    A = FPModule.free(1, [0, 0])
    B = FPModule.free(1, [-2, 0])
    C = FPModule.cyclic(1, -2, [t])
    f = FPHom(A, B, [[zero, t], [one, -one]])       # e1 -> v, e2 -> t*u - v
    g = FPHom(B, C, [[one, zero]])
    return SESFixture(tag="homology-fixed-point-sequence", f=f, g=g)


def _sphere_pal_pairs() -> List[PALPair]:
    t = _t(1, 0)
    return [
        PALPair(
            name="complement-of-fixed-points vs relative homology",
            n=2,
            lhs=FPModule.cyclic(1, 0, [t]),      # cohomology of the free part
            rhs=FPModule.cyclic(1, -2, [t]),     # homology of (X, fixed points)
        ),
        PALPair(
            name="relative cohomology vs fixed-point homology",
            n=2,
            lhs=FPModule.free(1, [2, 2]),        # cohomology of (X, free part)
            rhs=FPModule.free(1, [0, 0]),        # homology of the fixed points
        ),
    ]


# --------------------------------------------------------------------------
# bundles
# --------------------------------------------------------------------------

def point(rank: int) -> OrbitFiltrationData:
    R = FPModule.free(rank, [0])
    strata: Dict[int, FPModule] = {0: R}
    for i in range(1, rank + 1):
        strata[i] = FPModule.zero(rank)
    aug = FPHom.identity(R)
    return OrbitFiltrationData(
        name=f"point-r{rank}",
        rank=rank,
        strata=strata,
        differentials={},
        total=R,
        augmentation=aug,
        homology=FPModule.free(rank, [0]),
        pd=PDMetadata(orientable=True, n=0),
        localization=LocalizationFixture(elements=[_t(rank, 0)]),
        locally_free=LocallyFreeFixture(p=0, quotient=FPModule.free(rank, [0])),
    )


def cp1() -> OrbitFiltrationData:
    data = gkm_to_filtration(graph_cp1(), name="cp1")
    data.pd = PDMetadata(orientable=True, n=2)
    data.homology = FPModule.free(1, [-2, 0])
    data.ses_fixtures = [_sphere_homology_ses()]
    data.localization = LocalizationFixture(elements=[_t(1, 0)])
    data.segments = [
        # homology of (whole space, fixed points): one class in degree -2
        SegmentFixture(i=0, j=1, module=FPModule.cyclic(1, -2, [_t(1, 0)])),
    ]
    data.pal_pairs = _sphere_pal_pairs()
    return data


def s2_rotation() -> OrbitFiltrationData:
    data = gkm_to_filtration(graph_s2_rotation(), name="s2-rotation")
    data.pd = PDMetadata(orientable=True, n=2)
    data.homology = FPModule.free(1, [-2, 0])
    data.ses_fixtures = [_sphere_duflot_ses(), _sphere_homology_ses()]
    data.localization = LocalizationFixture(elements=[_t(1, 0)])
    data.segments = [
        SegmentFixture(i=0, j=1, module=FPModule.cyclic(1, -2, [_t(1, 0)])),
    ]
    data.pal_pairs = _sphere_pal_pairs()
    return data


def cp2() -> OrbitFiltrationData:
    data = gkm_to_filtration(graph_cp2(), name="cp2")
    data = complete_exact_filtration(data)
    data.pd = PDMetadata(orientable=True, n=4)
    data.localization = LocalizationFixture(
        elements=[_t(2, 0), _t(2, 1), _t(2, 0) - _t(2, 1)])
    return data


def cp1xcp1() -> OrbitFiltrationData:
    data = gkm_to_filtration(graph_cp1xcp1(), name="cp1xcp1")
    data = complete_exact_filtration(data)
    data.pd = PDMetadata(orientable=True, n=4)
    data.localization = LocalizationFixture(elements=[_t(2, 0), _t(2, 1)])
    return data


def s3_free() -> OrbitFiltrationData:
    """Free circle action on the 3-sphere: no fixed points, torsion total.

    The total module is the truncated polynomial ring on the quotient
    2-sphere's generator; the single stratum sits in shifted degree -1.
    """
    t = _t(1, 0)
    total = FPModule.cyclic(1, 0, [t * t])
    ab1 = FPModule.cyclic(1, -1, [t * t])
    ab0 = FPModule.zero(1)
    return OrbitFiltrationData(
        name="s3-free",
        rank=1,
        strata={0: ab0, 1: ab1},
        differentials={0: FPHom.zero(ab0, ab1)},
        total=total,
        augmentation=FPHom.zero(total, ab0),
        homology=FPModule.cyclic(1, -3, [t * t]),
        pd=PDMetadata(orientable=True, n=3),
        localization=LocalizationFixture(elements=[t]),
        locally_free=LocallyFreeFixture(
            p=1, quotient=FPModule.free(0, [0, -2])),  # homology of the 2-sphere
        segments=[
            SegmentFixture(i=0, j=1, module=FPModule.cyclic(1, -3, [t * t])),
        ],
    )


def torus_on_itself(rank: int) -> OrbitFiltrationData:
    """The rank-r torus acting on itself: one free orbit, everything torsion."""
    variables = [_t(rank, i) for i in range(rank)]
    total = FPModule.cyclic(rank, 0, variables)
    strata: Dict[int, FPModule] = {i: FPModule.zero(rank) for i in range(rank)}
    strata[rank] = FPModule.cyclic(rank, -rank, variables)
    ab0 = strata[0]
    return OrbitFiltrationData(
        name=f"torus-r{rank}",
        rank=rank,
        strata=strata,
        differentials={},
        total=total,
        augmentation=FPHom.zero(total, ab0),
        homology=FPModule.cyclic(rank, -rank, variables),
        pd=PDMetadata(orientable=True, n=rank),
        localization=LocalizationFixture(elements=variables),
        locally_free=LocallyFreeFixture(
            p=rank, quotient=FPModule.free(0, [0])),  # homology of a point
    )


BUNDLED_BUILDERS = {
    "point-r1": lambda: point(1),
    "point-r2": lambda: point(2),
    "point-r3": lambda: point(3),
    "cp1": cp1,
    "cp2": cp2,
    "cp1xcp1": cp1xcp1,
    "s2-rotation": s2_rotation,
    "s3-free": s3_free,
    "torus-r1": lambda: torus_on_itself(1),
    "torus-r2": lambda: torus_on_itself(2),
}

BUNDLED_GRAPHS = {
    "cp1": graph_cp1,
    "cp2": graph_cp2,
    "cp1xcp1": graph_cp1xcp1,
    "s2-rotation": graph_s2_rotation,
}


def all_bundles() -> Dict[str, OrbitFiltrationData]:
    return {name: build() for name, build in BUNDLED_BUILDERS.items()}
