"""Moment graphs: cohomology kernels, filtration data, invariances."""

import pytest

from torushom.errors import FixtureError
from torushom.complexes import iso_probe
from torushom.gkm import (Edge, MomentGraph, complete_exact_filtration,
                          gkm_cohomology, gkm_to_filtration)
from torushom.invariants import hilbert_series, syzygy_order
from torushom.module import FPModule, minimal_resolution
from torushom.ring import GradedPoly
from torushom import fixtures
from fractions import Fraction


def t(rank, i):
    return GradedPoly.variable(rank, i)


class TestCohomology:
    def test_single_vertex(self):
        g = MomentGraph(1, ["pt"], [])
        module, _ = gkm_cohomology(g)
        assert iso_probe(module, FPModule.free(1, [0])).status == "iso"

    def test_projective_line(self):
        module, _ = gkm_cohomology(fixtures.graph_cp1())
        assert sorted(module.gen_degrees) == [0, 2]
        assert minimal_resolution(module).length == 0

    def test_projective_plane(self):
        module, _ = gkm_cohomology(fixtures.graph_cp2())
        assert sorted(module.gen_degrees) == [0, 2, 4]
        assert minimal_resolution(module).length == 0
        hs = hilbert_series(module)
        expected = {0: 1, 2: 1, 4: 1}
        assert hs.num_dict() == expected

    def test_diagonal_constants_and_torsion_freeness(self):
        for graph in (fixtures.graph_cp1(), fixtures.graph_cp2(),
                      fixtures.graph_cp1xcp1()):
            module, inclusion = gkm_cohomology(graph)
            assert syzygy_order(module) >= 1
            # the all-ones tuple lies in the kernel of the difference map
            nverts = len(graph.vertices)
            rank = graph.rank
            diag = {(pos, (0,) * rank): Fraction(1) for pos in range(nverts)}
            from torushom.module import lift_through
            assert lift_through(inclusion, diag) is not None

    def test_weight_sign_flip_invariance(self):
        g1 = fixtures.graph_cp2()
        flipped = MomentGraph(2, list(g1.vertices), [
            Edge(e.v, e.w, -e.weight) for e in g1.edges])
        m1, _ = gkm_cohomology(g1)
        m2, _ = gkm_cohomology(flipped)
        assert iso_probe(m1, m2).status == "iso"


class TestFiltration:
    def test_point_bundle(self):
        g = MomentGraph(1, ["pt"], [])
        data = gkm_to_filtration(g, name="pt")
        assert not data.truncated
        assert data.strata[1].is_zero()

    def test_cp1_bundle_used_downstream(self):
        data = gkm_to_filtration(fixtures.graph_cp1(), name="cp1")
        assert not data.truncated
        from torushom.atiyah_bredon import build_ab_complex
        from torushom.complexes import exactness_positions
        cx = build_ab_complex(data, augmented=True)
        report = exactness_positions(cx)
        assert report.exact_through == 1

    def test_rank2_truncated_exact_at_bottom(self):
        for graph in (fixtures.graph_cp2(), fixtures.graph_cp1xcp1()):
            data = gkm_to_filtration(graph)
            assert data.truncated
            from torushom.atiyah_bredon import build_ab_complex
            from torushom.complexes import exactness_positions
            cx = build_ab_complex(data, augmented=True)
            report = exactness_positions(cx)
            assert report.per_position[-1] and report.per_position[0]

    def test_completion_requires_rank2_truncated(self):
        data = gkm_to_filtration(fixtures.graph_cp1())
        with pytest.raises(FixtureError):
            complete_exact_filtration(data)

    def test_edge_stratum_generators_in_degree_zero(self):
        data = gkm_to_filtration(fixtures.graph_cp2())
        assert set(data.strata[1].gen_degrees) == {0}


class TestValidation:
    def test_disconnected_rejected(self):
        with pytest.raises(FixtureError):
            MomentGraph(1, ["a", "b"], [])

    def test_zero_weight_rejected(self):
        with pytest.raises(FixtureError):
            MomentGraph(1, ["a", "b"], [Edge("a", "b", GradedPoly.zero(1))])

    def test_wrong_degree_weight_rejected(self):
        w = t(1, 0) * t(1, 0)
        with pytest.raises(FixtureError):
            MomentGraph(1, ["a", "b"], [Edge("a", "b", w)])

    def test_loop_rejected(self):
        with pytest.raises(FixtureError):
            MomentGraph(1, ["a"], [Edge("a", "a", t(1, 0))])
