"""Makespans R1, R2, R3 for fleets of one to three unit-speed robots.

R3 is the largest point-to-edge distance, R2 the best split of one edge vs.
the other two, R1 the best of the six ordered three-edge visits.  Closed
forms for the incenter and the mid-altitude starting points are provided
separately; they must agree with the general evaluators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geom_core import (
    Line,
    Point2,
    Triangle,
    VertexId,
    closest_point_on_segment,
    incenter,
    reflect,
)
from .visitation import (
    BOUNDARY_TOL,
    EdgeId,
    StrategyKind,
    Trajectory,
    VisitOrder,
    edge_segment,
    visit_three_ordered,
    visit_two_set,
)

CHAIN_TOL = 1e-12  # slack for the R3 <= R2 <= R1 chain, standard scale

_ANGLE_TIE = 1e-12
_VERTEX_PRIORITY = (VertexId.A, VertexId.B, VertexId.C)


class ClosedFormDomainError(ValueError):
    """Arguments outside the validity domain of a closed-form expression."""


@dataclass(frozen=True)
class R3Result:
    cost: float
    edges: tuple[EdgeId, ...]   # every farthest edge within tolerance

    @property
    def tie(self) -> bool:
        return len(self.edges) > 1


@dataclass(frozen=True)
class R2Witness:
    single_edge: EdgeId
    single: Trajectory          # one robot dropping to the lone edge
    pair: Trajectory            # the other robot visiting the remaining two
    determined_by: str          # 'single', 'pair' or 'tie'

    @property
    def cost(self) -> float:
        return max(self.single.cost, self.pair.cost)


@dataclass(frozen=True)
class R2Result:
    cost: float
    witnesses: tuple[R2Witness, ...]   # every optimal partition within tolerance

    @property
    def best(self) -> R2Witness:
        return self.witnesses[0]

    @property
    def tie(self) -> bool:
        return len(self.witnesses) > 1


@dataclass(frozen=True)
class R1Result:
    cost: float
    orders: tuple[VisitOrder, ...]   # every optimal order within tolerance
    trajectory: Trajectory

    @property
    def tie(self) -> bool:
        return len(self.orders) > 1


@dataclass(frozen=True)
class FleetCostReport:
    triangle: Triangle
    point: Point2
    r3: R3Result
    r2: R2Result
    r1: R1Result

    def __post_init__(self):
        scale = self.triangle.base_length
        slack = CHAIN_TOL * max(1.0, scale)
        if not (self.r3.cost <= self.r2.cost + slack and self.r2.cost <= self.r1.cost + slack):
            raise AssertionError(
                f"cost chain violated: R3={self.r3.cost!r} R2={self.r2.cost!r} R1={self.r1.cost!r}"
            )


def _drop_trajectory(t: Triangle, p: Point2, e: EdgeId) -> Trajectory:
    target = closest_point_on_segment(p, edge_segment(t, e))
    wps = (p,) if p.dist(target) <= 1e-15 else (p, target)
    return Trajectory(
        waypoints=wps,
        cost=p.dist(target),
        kind=StrategyKind.PERPENDICULAR_DROP,
        edge_sequence=(e,),
    )


def r3(t: Triangle, p: Point2) -> R3Result:
    """Largest of the three point-to-edge distances, with every argmax edge."""
    p = t.require_inside(p)
    scale = t.base_length
    dists = {e: p.dist(closest_point_on_segment(p, edge_segment(t, e))) for e in EdgeId}
    worst = max(dists.values())
    edges = tuple(e for e in EdgeId if worst - dists[e] <= BOUNDARY_TOL * scale)
    return R3Result(worst, edges)


def r2(t: Triangle, p: Point2) -> R2Result:
    """Best partition of the edges into a singleton and a pair."""
    p = t.require_inside(p)
    scale = t.base_length
    witnesses = []
    for single in EdgeId:
        pair = tuple(e for e in EdgeId if e is not single)
        lone = _drop_trajectory(t, p, single)
        duo = visit_two_set(t, p, pair)  # type: ignore[arg-type]
        gap = lone.cost - duo.cost
        if abs(gap) <= BOUNDARY_TOL * scale:
            det = "tie"
        else:
            det = "single" if gap > 0 else "pair"
        witnesses.append(R2Witness(single, lone, duo, det))
    best = min(w.cost for w in witnesses)
    keep = tuple(
        sorted(
            (w for w in witnesses if w.cost - best <= BOUNDARY_TOL * scale),
            key=lambda w: (w.cost, w.single_edge.value),
        )
    )
    return R2Result(best, keep)


def r1(t: Triangle, p: Point2) -> R1Result:
    """Cheapest of the six ordered visits; ties collected."""
    p = t.require_inside(p)
    scale = t.base_length
    trajs = {order: visit_three_ordered(t, p, order) for order in VisitOrder}
    best_order = min(VisitOrder, key=lambda o: trajs[o].cost)
    best = trajs[best_order].cost
    orders = tuple(o for o in VisitOrder if trajs[o].cost - best <= BOUNDARY_TOL * scale)
    return R1Result(best, orders, trajs[best_order])


def fleet_costs(t: Triangle, p: Point2) -> FleetCostReport:
    return FleetCostReport(t, p, r3(t, p), r2(t, p), r1(t, p))


def largest_angle_vertex(t: Triangle) -> VertexId:
    """Vertex of the largest angle; ties resolve by label priority A > B > C."""
    best = max(t.angle(v) for v in _VERTEX_PRIORITY)
    for v in _VERTEX_PRIORITY:
        if best - t.angle(v) <= _ANGLE_TIE:
            return v
    raise AssertionError("unreachable")


def r2_incenter_closed(t: Triangle) -> float:
    """R2 at the incenter: distance from the incenter to the largest-angle vertex."""
    return incenter(t).dist(t.vertex(largest_angle_vertex(t)))


def r1_incenter_closed(t: Triangle) -> float:
    """R1 at the incenter: distance to the reflection of the largest-angle
    vertex across its opposite edge."""
    v = largest_angle_vertex(t)
    opposite = _opposite_edge(v)
    mirrored = reflect(t.vertex(v), edge_segment(t, opposite).line())
    return incenter(t).dist(mirrored)


def _opposite_edge(v: VertexId) -> EdgeId:
    return {VertexId.A: EdgeId.D, VertexId.B: EdgeId.R, VertexId.C: EdgeId.L}[v]


def mid_altitude_point(t: Triangle) -> Point2:
    """Midpoint of the altitude dropped from the largest angle (shortest altitude)."""
    v = t.vertex(largest_angle_vertex(t))
    line = edge_segment(t, _opposite_edge(largest_angle_vertex(t))).line()
    foot = Point2(v.x - line.signed_dist(v) * line.a, v.y - line.signed_dist(v) * line.b)
    return Point2((v.x + foot.x) / 2, (v.y + foot.y) / 2)


def r1_mid_altitude_closed(t: Triangle) -> float:
    """R1 at the mid-altitude point: (2 - cos 2A) sin B sin C csc(B+C) / 2,
    scaled by the largest edge length."""
    va = largest_angle_vertex(t)
    ang_a = t.angle(va)
    others = [t.angle(v) for v in _VERTEX_PRIORITY if v is not va]
    ang_b, ang_c = others
    base = edge_segment(t, _opposite_edge(va)).length
    return base * 0.5 * (2.0 - math.cos(2.0 * ang_a)) * math.sin(ang_b) * math.sin(ang_c) / math.sin(ang_b + ang_c)


def r2_vertex_heuristic(t: Triangle, p: Point2) -> float:
    """Diagnostic upper bound on R2: one robot runs to the largest-angle
    vertex, the other drops onto the opposite edge.  Never below R2."""
    p = t.require_inside(p)
    v = largest_angle_vertex(t)
    drop = _drop_trajectory(t, p, _opposite_edge(v))
    return max(p.dist(t.vertex(v)), drop.cost)


_DOMAIN_TOL = 1e-9


def _check_h_domain(ang_b: float, ang_c: float, extra_lower: float, label: str) -> None:
    if not (0.0 <= ang_b <= 3.0 * math.pi / 7.0 + _DOMAIN_TOL):
        raise ClosedFormDomainError(f"{label}: B out of range")
    lower = max(math.pi / 2.0 - ang_b, extra_lower)
    upper = min(
        2.0 * math.pi / 3.0 - ang_b,
        math.pi / 2.0 - ang_b / 2.0,
        math.pi - 2.0 * ang_b,
    )
    if not (lower - _DOMAIN_TOL <= ang_c <= upper + _DOMAIN_TOL):
        raise ClosedFormDomainError(
            f"{label}: C={ang_c!r} outside [{lower!r}, {upper!r}] for B={ang_b!r}"
        )


def h1(ang_b: float, ang_c: float) -> float:
    """Squared ratio of the straight three-bounce cost to the degenerate
    corner cost at the incenter, for the order keeping the left edge first."""
    _check_h_domain(ang_b, ang_c, (2.0 * math.pi - 3.0 * ang_b) / 5.0, "h1")
    num = math.cos((ang_b + ang_c) / 2.0) ** 2 * (
        -2.0 * math.cos(ang_b + 2.0 * ang_c) + 2.0 * math.cos(ang_c) + 1.0
    ) ** 2
    den = 2.0 * math.cos(ang_b + ang_c) + 2.0 * math.cos(ang_b) + 2.0 * math.cos(ang_c) + 3.0
    return num / den


def h2(ang_b: float, ang_c: float) -> float:
    """Companion squared cost ratio for the order visiting the bottom edge
    second."""
    _check_h_domain(ang_b, ang_c, (3.0 * ang_b - math.pi) / 2.0, "h2")
    num = (
        2.0 * math.cos(ang_b - ang_c) + 2.0 * math.cos(ang_c) + 1.0
    ) ** 2 * math.cos((ang_b + ang_c) / 2.0) ** 2
    den = 2.0 * math.cos(ang_b + ang_c) + 2.0 * math.cos(ang_b) + 2.0 * math.cos(ang_c) + 3.0
    return num / den
