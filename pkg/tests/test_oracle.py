import math

import pytest

from trivisit.fleet_costs import r1, r2, r3
from trivisit.geom_core import Point2, incenter, triangle_from_angles
from trivisit.oracle import (
    OracleConfig,
    OracleMismatchError,
    certify_instance,
    oracle_ordered3,
    oracle_r1,
    oracle_r2,
    oracle_r3,
    oracle_two_ordered,
    ordered3_objective,
)
from trivisit.visitation import EdgeId, VisitOrder, visit_three_ordered, visit_two_ordered

from conftest import random_interior_point, random_triangle

EQ = triangle_from_angles(math.pi / 3, math.pi / 3)
RI = triangle_from_angles(math.pi / 4, math.pi / 4)
FAST = OracleConfig(coarse_resolution=24, tol=1e-11)


class TestConfig:
    def test_rejects_tiny_grid(self):
        with pytest.raises(ValueError):
            OracleConfig(coarse_resolution=4)

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            OracleConfig(tol=0.0)


class TestOrdered3:
    def test_equilateral_incenter_dlr(self):
        val = oracle_ordered3(EQ, incenter(EQ), VisitOrder.DLR)
        assert val == pytest.approx(1.1547005383792515, abs=1e-6)

    def test_right_isosceles_lrd(self):
        val = oracle_ordered3(RI, Point2(0.5, 0.25), VisitOrder.LRD)
        assert val == pytest.approx(0.75, abs=1e-6)

    def test_point_on_first_edge_reduces_to_two(self):
        p = Point2(0.4, 0.0)
        val = oracle_ordered3(EQ, p, VisitOrder.DLR, FAST)
        two = visit_two_ordered(EQ, p, EdgeId.L, EdgeId.R).cost
        assert val == pytest.approx(two, abs=1e-6)

    def test_convexity_certificate(self, rng):
        # midpoint value never above the average of the endpoints
        for _ in range(100):
            t = random_triangle(rng)
            p = random_interior_point(rng, t)
            order = VisitOrder.LRD
            f = ordered3_objective(t, p, order)
            a = (rng.uniform(0, 1), rng.uniform(0, 1))
            b = (rng.uniform(0, 1), rng.uniform(0, 1))
            mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            assert f(*mid) <= (f(*a) + f(*b)) / 2 + 1e-12

    def test_never_below_closed_form(self, rng):
        # The search is an upper bound that converges down onto the optimum.
        for _ in range(40):
            t = random_triangle(rng)
            p = random_interior_point(rng, t)
            for order in VisitOrder:
                closed = visit_three_ordered(t, p, order).cost
                assert oracle_ordered3(t, p, order, FAST) >= closed - 1e-10


class TestFleetOracles:
    def test_r3_identical(self, rng):
        for _ in range(50):
            t = random_triangle(rng)
            p = random_interior_point(rng, t)
            assert oracle_r3(t, p) == pytest.approx(r3(t, p).cost, abs=1e-12)

    def test_equilateral_incenter_r2(self):
        assert oracle_r2(EQ, incenter(EQ)) == pytest.approx(0.5773502691896258, abs=1e-6)

    def test_random_agreement(self, rng):
        for _ in range(25):
            t = random_triangle(rng)
            p = random_interior_point(rng, t)
            assert abs(oracle_r1(t, p, FAST) - r1(t, p).cost) < 1e-6
            assert abs(oracle_r2(t, p, FAST) - r2(t, p).cost) < 1e-6


class TestCertify:
    def test_passes_on_consistent_instance(self):
        p = incenter(EQ)
        deltas = certify_instance(
            EQ,
            p,
            {
                "r1": r1(EQ, p).cost,
                "r2": r2(EQ, p).cost,
                "r3": r3(EQ, p).cost,
                "DLR": visit_three_ordered(EQ, p, VisitOrder.DLR).cost,
            },
        )
        assert max(abs(d) for d in deltas.values()) < 1e-6

    def test_raises_loudly_on_gap(self):
        p = incenter(EQ)
        with pytest.raises(OracleMismatchError) as err:
            certify_instance(EQ, p, {"r1": 0.5})
        assert "r1" in str(err.value)


class TestTwoOrderedOracle:
    def test_matches_closed_form(self, rng):
        for _ in range(60):
            t = random_triangle(rng)
            p = random_interior_point(rng, t)
            closed = visit_two_ordered(t, p, EdgeId.D, EdgeId.R).cost
            assert abs(oracle_two_ordered(t, p, EdgeId.D, EdgeId.R, FAST) - closed) < 1e-6
