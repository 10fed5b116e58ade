"""Vectorized cost evaluation over arrays of points for one fixed triangle.

Mirrors the scalar evaluators in ``visitation`` and ``fleet_costs`` exactly
(same constructions, same tolerance bands) but without witnesses, for raster
classification and ratio maximization.  Costs are in the triangle's own
scale; classification slacks scale with the base edge like the scalar path.
"""

from __future__ import annotations

import math

import numpy as np

from .geom_core import Point2, Triangle, reflect
from .visitation import BOUNDARY_TOL, EdgeId, VisitOrder, _unfold3, edge_segment, shared_vertex

_ORDERS = tuple(VisitOrder)
_EDGES = tuple(EdgeId)


class TriangleKernel:
    """Precomputed unfolding constants plus array evaluators."""

    def __init__(self, t: Triangle):
        self.triangle = t
        self.scale = t.base_length
        self.tol = BOUNDARY_TOL * self.scale
        self._segs = {}
        for e in _EDGES:
            seg = edge_segment(t, e)
            p0 = np.asarray(seg.p0, dtype=float)
            d = np.asarray(seg.p1, dtype=float) - p0
            self._segs[e] = (p0, d, float(d @ d))
        # Reflected target segment for each ordered pair (first, second).
        self._pair_targets = {}
        for first in _EDGES:
            line1 = edge_segment(t, first).line()
            for second in _EDGES:
                if second is first:
                    continue
                pivot = t.vertex(shared_vertex(first, second))
                far = t.vertex((set(second.endpoints) - {shared_vertex(first, second)}).pop())
                q0 = np.asarray(pivot, dtype=float)
                q1 = np.asarray(reflect(far, line1), dtype=float)
                d = q1 - q0
                self._pair_targets[(first, second)] = (q0, d, float(d @ d))
        # Ordered three-edge visit constants.
        self._unfolds = {}
        for order in _ORDERS:
            uf = _unfold3(t, order)
            self._unfolds[order] = (
                np.asarray(uf.corner_img, dtype=float),
                np.asarray(uf.u, dtype=float),
                np.asarray([-uf.u.y, uf.u.x], dtype=float),
                np.asarray(uf.apex, dtype=float),
                uf.sigma_z,
                np.asarray(uf.corner, dtype=float),
                float(uf.apex.dist(uf.alt_foot)),
            )

    # -- primitives ----------------------------------------------------

    def _seg_dist(self, pts: np.ndarray, key) -> np.ndarray:
        p0, d, dd = key
        t = ((pts - p0) @ d) / dd
        np.clip(t, 0.0, 1.0, out=t)
        closest = p0 + t[:, None] * d
        return np.hypot(pts[:, 0] - closest[:, 0], pts[:, 1] - closest[:, 1])

    def edge_dist(self, pts: np.ndarray, e: EdgeId) -> np.ndarray:
        return self._seg_dist(pts, self._segs[e])

    def ordered2(self, pts: np.ndarray, first: EdgeId, second: EdgeId) -> np.ndarray:
        return self._seg_dist(pts, self._pair_targets[(first, second)])

    def pair(self, pts: np.ndarray, e1: EdgeId, e2: EdgeId) -> np.ndarray:
        return np.minimum(self.ordered2(pts, e1, e2), self.ordered2(pts, e2, e1))

    def ordered3(self, pts: np.ndarray, order: VisitOrder) -> np.ndarray:
        corner_img, u, n, apex, sigma_z, corner, alt = self._unfolds[order]
        rel = pts - corner_img
        s_b = rel @ u
        s_z = sigma_z * ((pts - apex) @ u)
        cost_a = np.abs(rel @ n)
        cost_b = np.hypot(rel[:, 0], rel[:, 1])
        cost_c = np.hypot(pts[:, 0] - apex[0], pts[:, 1] - apex[1]) + alt
        tol = self.tol
        cost = np.where(s_z < -tol, cost_c, np.where(s_b < -tol, cost_b, cost_a))
        near_z = np.abs(s_z) <= tol
        if near_z.any():
            cost = np.where(near_z, np.minimum(cost, cost_c), cost)
        near_b = (np.abs(s_b) <= tol) & (s_z >= -tol)
        if near_b.any():
            cost = np.where(near_b, np.minimum(cost, np.minimum(cost_a, cost_b)), cost)
        return cost

    # -- fleet costs ----------------------------------------------------

    def r3(self, pts: np.ndarray) -> np.ndarray:
        return np.maximum.reduce([self.edge_dist(pts, e) for e in _EDGES])

    def r3_all(self, pts: np.ndarray) -> np.ndarray:
        """(3, N) distances in EdgeId declaration order."""
        return np.stack([self.edge_dist(pts, e) for e in _EDGES])

    def r2_partitions(self, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(singles, pairs, costs), each (3, N), indexed by the lone edge."""
        singles, pairs = [], []
        for lone in _EDGES:
            rest = [e for e in _EDGES if e is not lone]
            singles.append(self.edge_dist(pts, lone))
            pairs.append(self.pair(pts, rest[0], rest[1]))
        s = np.stack(singles)
        d = np.stack(pairs)
        return s, d, np.maximum(s, d)

    def r2(self, pts: np.ndarray) -> np.ndarray:
        return self.r2_partitions(pts)[2].min(axis=0)

    def r1_all(self, pts: np.ndarray) -> np.ndarray:
        """(6, N) ordered-visit costs in VisitOrder declaration order."""
        return np.stack([self.ordered3(pts, o) for o in _ORDERS])

    def r1(self, pts: np.ndarray) -> np.ndarray:
        return self.r1_all(pts).min(axis=0)

    def ratio(self, pts: np.ndarray, n: int, m: int) -> np.ndarray:
        return self.cost(pts, n) / self.cost(pts, m)

    def cost(self, pts: np.ndarray, robots: int) -> np.ndarray:
        if robots == 1:
            return self.r1(pts)
        if robots == 2:
            return self.r2(pts)
        if robots == 3:
            return self.r3(pts)
        raise ValueError(f"fleet size must be 1, 2 or 3, got {robots!r}")


def barycentric_grid(t: Triangle, n: int, include_vertices: bool = True) -> np.ndarray:
    """(N, 2) Cartesian points of the n-per-side barycentric lattice."""
    if n < 2:
        raise ValueError("grid needs at least 2 points per side")
    a = np.asarray(t.a, dtype=float)
    b = np.asarray(t.b, dtype=float)
    c = np.asarray(t.c, dtype=float)
    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    keep = ii + jj <= n - 1
    i = ii[keep].astype(float)
    j = jj[keep].astype(float)
    wa = i / (n - 1)
    wb = j / (n - 1)
    wc = 1.0 - wa - wb
    pts = wa[:, None] * a + wb[:, None] * b + wc[:, None] * c
    if not include_vertices:
        at_vertex = (wa > 1.0 - 1e-12) | (wb > 1.0 - 1e-12) | (wc > 1.0 - 1e-12)
        pts = pts[~at_vertex]
    return pts


def points_array(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    return arr


def project_into(t: Triangle, p: Point2) -> Point2:
    """Clamp a point into the closed triangle via barycentric truncation."""
    a, b, c = (np.asarray(v, dtype=float) for v in t.vertices)
    m = np.column_stack([b - a, c - a])
    try:
        lam = np.linalg.solve(m, np.asarray(p, dtype=float) - a)
    except np.linalg.LinAlgError:
        return Point2(*((a + b + c) / 3.0))
    w = np.array([1.0 - lam[0] - lam[1], lam[0], lam[1]])
    if (w >= 0.0).all():
        return Point2(float(p[0]), float(p[1]))
    w = np.clip(w, 0.0, None)
    s = w.sum()
    if s <= 0:
        return Point2(*((a + b + c) / 3.0))
    w /= s
    out = w[0] * a + w[1] * b + w[2] * c
    return Point2(float(out[0]), float(out[1]))
