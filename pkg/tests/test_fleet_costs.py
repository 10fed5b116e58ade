import math

import pytest

from trivisit.fleet_costs import (
    ClosedFormDomainError,
    fleet_costs,
    h1,
    h2,
    largest_angle_vertex,
    mid_altitude_point,
    r1,
    r1_incenter_closed,
    r1_mid_altitude_closed,
    r2,
    r2_incenter_closed,
    r2_vertex_heuristic,
    r3,
)
from trivisit.geom_core import Point2, Similarity, Triangle, incenter, triangle_from_angles, VertexId
from trivisit.visitation import EdgeId, StrategyKind, VisitOrder

from conftest import random_interior_point, random_triangle

EQ = triangle_from_angles(math.pi / 3, math.pi / 3)
RI = triangle_from_angles(math.pi / 4, math.pi / 4)


class TestR3:
    def test_equilateral_incenter_triple_tie(self):
        res = r3(EQ, incenter(EQ))
        assert res.cost == pytest.approx(0.28867513459481287, abs=1e-9)
        assert set(res.edges) == {EdgeId.L, EdgeId.D, EdgeId.R}

    def test_vertex_distance_to_opposite_edge(self):
        res = r3(EQ, EQ.a)
        assert res.cost == pytest.approx(math.sqrt(3) / 2, abs=1e-12)
        assert res.edges == (EdgeId.D,)

    def test_right_isosceles_mid_altitude(self):
        res = r3(RI, Point2(0.5, 0.25))
        assert res.cost == pytest.approx(0.25, abs=1e-12)
        assert res.edges == (EdgeId.D,)

    def test_matches_direct_recomputation(self, rng):
        from trivisit.geom_core import Segment, dist_point_segment

        for _ in range(100):
            t = random_triangle(rng)
            p = random_interior_point(rng, t)
            res = r3(t, p)
            direct = max(
                dist_point_segment(p, Segment(t.a, t.b)),
                dist_point_segment(p, Segment(t.b, t.c)),
                dist_point_segment(p, Segment(t.c, t.a)),
            )
            assert res.cost == pytest.approx(direct, abs=1e-12)


class TestR2:
    def test_equilateral_incenter(self):
        res = r2(EQ, incenter(EQ))
        assert res.cost == pytest.approx(0.5773502691896258, abs=1e-9)

    def test_right_isosceles_mid_altitude(self):
        res = r2(RI, Point2(0.5, 0.25))
        assert res.cost == pytest.approx(0.25, abs=1e-9)

    def test_witness_costs_reproduce_value(self, rng):
        for _ in range(100):
            t = random_triangle(rng)
            p = random_interior_point(rng, t)
            res = r2(t, p)
            for w in res.witnesses:
                assert max(w.single.cost, w.pair.cost) <= res.cost + 1e-9 * t.base_length


class TestR1:
    def test_equilateral_incenter(self):
        res = r1(EQ, incenter(EQ))
        assert res.cost == pytest.approx(1.1547005383792515, abs=1e-9)
        assert {VisitOrder.DLR, VisitOrder.DRL} <= set(res.orders)

    def test_right_isosceles_mid_altitude(self):
        res = r1(RI, Point2(0.5, 0.25))
        assert res.cost == pytest.approx(0.75, abs=1e-9)
        assert {VisitOrder.LRD, VisitOrder.RLD} <= set(res.orders)

    def test_trajectory_cost_matches(self, rng):
        for _ in range(60):
            t = random_triangle(rng, posed=True)
            p = random_interior_point(rng, t)
            res = r1(t, p)
            assert res.trajectory.cost == pytest.approx(res.cost, abs=1e-12 * max(1.0, res.cost))


class TestChain:
    def test_r3_le_r2_le_r1(self, rng):
        for _ in range(300):
            t = random_triangle(rng)
            p = random_interior_point(rng, t)
            rep = fleet_costs(t, p)
            assert rep.r3.cost <= rep.r2.cost + 1e-12
            assert rep.r2.cost <= rep.r1.cost + 1e-12


class TestClosedForms:
    def test_r2_incenter_examples(self):
        assert r2_incenter_closed(EQ) == pytest.approx(0.5773502691896258, abs=1e-9)
        assert r2_incenter_closed(RI) == pytest.approx(1 - 1 / math.sqrt(2), abs=1e-9)

    def test_r2_incenter_relabeling(self):
        # right angle at B: the nearest-vertex distance follows the label
        t = triangle_from_angles(math.pi / 2, math.pi / 4)
        assert largest_angle_vertex(t) is VertexId.B
        assert r2_incenter_closed(t) == pytest.approx(incenter(t).dist(t.b), abs=1e-15)

    def test_r1_incenter_examples(self):
        assert r1_incenter_closed(EQ) == pytest.approx(1.1547005383792515, abs=1e-9)
        assert r1_incenter_closed(RI) == pytest.approx(1 / math.sqrt(2), abs=1e-9)
        ratio = r1_incenter_closed(RI) / r3(RI, incenter(RI)).cost
        assert ratio == pytest.approx(2 + math.sqrt(2), abs=1e-9)
        # same number as 4*sqrt(1-p) + 4*sqrt(p) + 6 under the root at p = 1/2
        assert ratio == pytest.approx(math.sqrt(8 * math.sqrt(0.5) + 6), abs=1e-9)

    def test_r1_mid_altitude_examples(self):
        assert r1_mid_altitude_closed(RI) == pytest.approx(0.75, abs=1e-12)
        assert r1_mid_altitude_closed(EQ) == pytest.approx(1.0825317547305484, abs=1e-9)

    def test_mid_altitude_ratio_identity(self, rng):
        # cost over half the altitude equals 2 - cos(2A) for the top angle
        for _ in range(200):
            t = random_triangle(rng)
            top = max(t.angle_a, t.angle_b, t.angle_c)
            tpt = mid_altitude_point(t)
            half_alt = tpt.dist(t.vertex(largest_angle_vertex(t)))
            ratio = r1_mid_altitude_closed(t) / half_alt
            assert ratio == pytest.approx(2.0 - math.cos(2.0 * top), rel=1e-9)

    def test_closed_forms_match_general(self, rng):
        for _ in range(1000):
            t = random_triangle(rng)
            i = incenter(t)
            assert abs(r1_incenter_closed(t) - r1(t, i).cost) < 1e-9
            assert abs(r2_incenter_closed(t) - r2(t, i).cost) < 1e-9
            tpt = mid_altitude_point(t)
            assert abs(r1_mid_altitude_closed(t) - r1(t, tpt).cost) < 1e-9

    def test_closed_forms_scale(self, rng):
        for _ in range(50):
            t = random_triangle(rng)
            sim = Similarity(1.1, 2.7, Point2(3, -4))
            t2 = Triangle(sim.apply(t.a), sim.apply(t.b), sim.apply(t.c))
            assert r1_incenter_closed(t2) == pytest.approx(2.7 * r1_incenter_closed(t), rel=1e-12)
            assert r1_mid_altitude_closed(t2) == pytest.approx(
                2.7 * r1_mid_altitude_closed(t), rel=1e-12
            )


class TestVertexHeuristic:
    def test_never_below_r2(self, rng):
        for _ in range(150):
            t = random_triangle(rng)
            p = random_interior_point(rng, t)
            assert r2_vertex_heuristic(t, p) >= r2(t, p).cost - 1e-12

    def test_bounded_by_twice_r3(self, rng):
        for _ in range(150):
            t = random_triangle(rng)
            p = random_interior_point(rng, t)
            assert r2_vertex_heuristic(t, p) <= 2.0 * r3(t, p).cost + 1e-9


class TestH1H2:
    def test_equilateral_values(self):
        assert h1(math.pi / 3, math.pi / 3) == pytest.approx(1.0, abs=1e-12)
        assert h2(math.pi / 3, math.pi / 3) == pytest.approx(1.0, abs=1e-12)

    def test_h1_boundary_value(self):
        b = 3 * math.pi / 7
        assert h1(b, math.pi - 2 * b) == pytest.approx(1.32715, abs=5e-5)

    def test_at_least_one_inside_domain(self):
        # interior sample of the constrained angle region
        assert h1(1.1, 0.6) >= 1.0 - 1e-9
        assert h2(1.1, 0.6) >= 1.0 - 1e-9

    def test_domain_errors(self):
        with pytest.raises(ClosedFormDomainError):
            h1(0.2, 0.2)  # far outside: apex angle would dominate
        with pytest.raises(ClosedFormDomainError):
            h1(3.5, 0.5)
        with pytest.raises(ClosedFormDomainError):
            h2(0.2, 0.2)


class TestReportWitnesses:
    def test_tied_partitions_all_reported(self):
        res = r2(EQ, incenter(EQ))
        assert len(res.witnesses) == 3  # full symmetry at the center

    def test_drop_witness_kind(self):
        res = r2(EQ, Point2(0.5, 0.6))
        assert res.witnesses[0].single.kind is StrategyKind.PERPENDICULAR_DROP
