"""Worst-case fleet-size ratio maximization and triangle-space sweeps.

For one triangle, ``max_ratio`` maximizes R_n/R_m over starting points with
a barycentric grid plus derivative-free pattern refinement, always seeding
the incenter and the three altitude midpoints (the extremal points for the
three ratio pairs).  ``sweep_triangles`` repeats that over an angle grid and
tracks the running infimum and supremum; infima are limits over degenerating
shapes, so they are reported as approached, never attained.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._kernels import TriangleKernel, barycentric_grid, points_array, project_into
from .fleet_costs import fleet_costs
from .geom_core import Point2, Triangle, incenter, triangle_from_angles
from .visitation import EdgeId, edge_segment

_PAIRS = ((1, 2), (1, 3), (2, 3))
_VERTEX_EPS = 1e-7  # candidates this close to a vertex are discarded


def ratio_at(t: Triangle, p: Point2, n: int, m: int) -> float:
    """R_n / R_m at one starting point."""
    _check_pair(n, m)
    k = TriangleKernel(t)
    pts = points_array([t.require_inside(p)])
    return float(k.cost(pts, n)[0] / k.cost(pts, m)[0])


def _check_pair(n: int, m: int) -> None:
    if (n, m) not in _PAIRS:
        raise ValueError(f"ratio pair must be one of {_PAIRS}, got ({n}, {m})")


@dataclass(frozen=True)
class RatioReport:
    pair: tuple[int, int]
    ratio: float
    argmax: Point2              # standard-form coordinates
    rn: float
    rm: float
    grid: int
    refinement_steps: int
    witnesses: object = field(default=None, repr=False, compare=False)

    def with_witnesses(self, report) -> "RatioReport":
        return RatioReport(
            self.pair, self.ratio, self.argmax, self.rn, self.rm,
            self.grid, self.refinement_steps, report,
        )


def _altitude_midpoints(t: Triangle) -> list[Point2]:
    out = []
    for v, opp in ((t.a, EdgeId.D), (t.b, EdgeId.R), (t.c, EdgeId.L)):
        line = edge_segment(t, opp).line()
        d = line.signed_dist(v)
        foot = Point2(v.x - d * line.a, v.y - d * line.b)
        out.append(Point2((v.x + foot.x) / 2, (v.y + foot.y) / 2))
    return out


def _near_vertex(t: Triangle, p: Point2) -> bool:
    slack = _VERTEX_EPS * t.base_length
    return any(p.dist(v) < slack for v in t.vertices)


def max_ratio(
    t: Triangle,
    n: int,
    m: int,
    grid: int = 256,
    refine_tol: float = 1e-10,
    with_witnesses: bool = False,
) -> RatioReport:
    """Maximize R_n/R_m over the closed triangle (vertices excluded).

    The returned ratio is at least every sampled value; the argmax prefers a
    seeded witness whenever one ties the maximum within 1e-9, so non-unique
    maxima land on the canonical extremal points.
    """
    _check_pair(n, m)
    std, _ = t.standard()
    k = TriangleKernel(std)

    def values(pts: np.ndarray) -> np.ndarray:
        return k.cost(pts, n) / k.cost(pts, m)

    seeds = [incenter(std)] + _altitude_midpoints(std)
    seed_pts = points_array([tuple(p) for p in seeds])
    seed_vals = values(seed_pts)

    gpts = barycentric_grid(std, grid, include_vertices=False)
    gvals = values(gpts)
    gi = int(np.argmax(gvals))

    best_seed_i = int(np.argmax(seed_vals))
    if float(seed_vals[best_seed_i]) >= float(gvals[gi]):
        start, start_val = seeds[best_seed_i], float(seed_vals[best_seed_i])
    else:
        start, start_val = Point2(*gpts[gi]), float(gvals[gi])

    argmax, best, steps = _pattern_search(std, k, n, m, start, start_val, grid, refine_tol)

    # Prefer a seeded witness when it ties the maximum: argmax sets can be
    # whole segments, and the canonical extremal points lie on them.
    if float(seed_vals[best_seed_i]) >= best - 1e-9:
        argmax = seeds[best_seed_i]

    at = points_array([tuple(argmax)])
    rn = float(k.cost(at, n)[0])
    rm = float(k.cost(at, m)[0])
    report = RatioReport((n, m), rn / rm, argmax, rn, rm, grid, steps)
    if with_witnesses:
        report = report.with_witnesses(fleet_costs(std, argmax))
    return report


def _pattern_search(
    std: Triangle,
    k: TriangleKernel,
    n: int,
    m: int,
    start: Point2,
    start_val: float,
    grid: int,
    tol: float,
) -> tuple[Point2, float, int]:
    """Compass pattern search clipped to the triangle; deterministic."""
    step = max(std.base_length / max(grid - 1, 1), 1e-6)
    best_p, best_v = start, start_val
    steps = 0
    dirs = ((1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0))
    while step > tol:
        cand = []
        for dx, dy in dirs:
            q = project_into(std, Point2(best_p.x + dx * step, best_p.y + dy * step))
            if not _near_vertex(std, q):
                cand.append(q)
        if cand:
            pts = points_array([tuple(q) for q in cand])
            vals = k.cost(pts, n) / k.cost(pts, m)
            j = int(np.argmax(vals))
            steps += 1
            if float(vals[j]) > best_v:
                best_p, best_v = cand[j], float(vals[j])
                continue
        step /= 2.0
    return best_p, best_v, steps


def describe_shape(angles_deg: tuple[float, float, float], tol: float = 0.51) -> str:
    """Coarse shape classification of an angle triple, in degrees."""
    s = sorted(angles_deg, reverse=True)
    if all(abs(a - 60.0) <= tol for a in s):
        return "equilateral"
    if abs(s[0] - 90.0) <= tol and abs(s[1] - 45.0) <= tol:
        return "right isosceles"
    two_equal = abs(s[0] - s[1]) <= tol or abs(s[1] - s[2]) <= tol
    if two_equal and s[2] <= 15.0:
        return "thin isosceles"
    if abs(s[0] - 90.0) <= tol:
        return "right"
    if two_equal:
        return "isosceles"
    return "scalene"


@dataclass(frozen=True)
class SweepRow:
    b_deg: float
    c_deg: float
    ratio: float
    argmax: Point2
    rn: float
    rm: float

    @property
    def angles_deg(self) -> tuple[float, float, float]:
        return (180.0 - self.b_deg - self.c_deg, self.b_deg, self.c_deg)


_SHAPE_PRIORITY = {
    "equilateral": 0,
    "right isosceles": 1,
    "thin isosceles": 2,
    "right": 3,
    "isosceles": 4,
    "scalene": 5,
}

_EXTREME_TIE = 1e-9


def _canonical_extreme(rows, value: float) -> SweepRow:
    # Extreme ratios sit on plateaus (every right triangle attains the
    # (1,2) sup and the (2,3) inf), so among tied cells report the most
    # symmetric witness shape deterministically.
    tied = [r for r in rows if abs(r.ratio - value) <= _EXTREME_TIE]
    return min(tied, key=lambda r: (_SHAPE_PRIORITY[describe_shape(r.angles_deg)], r.b_deg, r.c_deg))


@dataclass(frozen=True)
class SweepResult:
    pair: tuple[int, int]
    step_deg: float
    eps_apex_deg: float
    rows: tuple[SweepRow, ...]

    @property
    def sup_row(self) -> SweepRow:
        return _canonical_extreme(self.rows, max(r.ratio for r in self.rows))

    @property
    def inf_row(self) -> SweepRow:
        return _canonical_extreme(self.rows, min(r.ratio for r in self.rows))

    def summary(self) -> dict:
        sup, inf = self.sup_row, self.inf_row
        return {
            "pair": list(self.pair),
            "step_deg": self.step_deg,
            "eps_apex_deg": self.eps_apex_deg,
            "cells": len(self.rows),
            "sup": {
                "value": sup.ratio,
                "b_deg": sup.b_deg,
                "c_deg": sup.c_deg,
                "shape": describe_shape(sup.angles_deg),
            },
            "inf": {
                "value": inf.ratio,
                "b_deg": inf.b_deg,
                "c_deg": inf.c_deg,
                "shape": describe_shape(inf.angles_deg),
                "attained": False,
            },
        }


def _sweep_cells(step_deg: float, eps_apex_deg: float) -> list[tuple[float, float]]:
    cells = []
    nb = int(math.floor(90.0 / step_deg))
    for i in range(1, nb + 1):
        b = i * step_deg
        if b <= eps_apex_deg or b > 90.0:
            continue
        for j in range(1, nb + 1):
            c = j * step_deg
            if c <= eps_apex_deg or c > 90.0:
                continue
            a = 180.0 - b - c
            if a <= eps_apex_deg or a > 90.0:
                continue
            cells.append((b, c))
    return cells


def _thread_count() -> int:
    raw = os.environ.get("TRIVISIT_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = min(8, os.cpu_count() or 1)
    return n


def sweep_triangles(
    n: int,
    m: int,
    step_deg: float = 1.0,
    eps_apex_deg: float = 0.5,
    grid: int = 24,
    refine_tol: float = 1e-6,
) -> SweepResult:
    """Per-triangle max_ratio over the (angle B, angle C) grid.

    Cells are independent; evaluation may run on a thread pool capped by
    TRIVISIT_THREADS, and the reduction is by fixed cell order, so results
    do not depend on scheduling.  The default per-cell budget is light on
    purpose: the extremal values come from the seeded witnesses inside
    max_ratio, and coarser grids are subsets of finer ones, so running
    inf/sup values stay monotone in the step size regardless of refinement
    quality.
    """
    _check_pair(n, m)
    cells = _sweep_cells(step_deg, eps_apex_deg)

    def evaluate(cell: tuple[float, float]) -> SweepRow:
        b, c = cell
        t = triangle_from_angles(math.radians(b), math.radians(c))
        rep = max_ratio(t, n, m, grid=grid, refine_tol=refine_tol)
        return SweepRow(b, c, rep.ratio, rep.argmax, rep.rn, rep.rm)

    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(evaluate, cells))
    else:
        rows = tuple(evaluate(cell) for cell in cells)
    return SweepResult((n, m), step_deg, eps_apex_deg, rows)
