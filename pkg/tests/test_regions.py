import math

import pytest

from trivisit.fleet_costs import r3
from trivisit.geom_core import (
    Point2,
    closest_point_on_segment,
    dist_point_segment,
    incenter,
    triangle_from_angles,
    VertexId,
)
from trivisit.regions import (
    ParabolaArcPiece,
    SegmentPiece,
    bisector_separator_point,
    r1_lrd_rld_locus,
    r2_separator,
    r3_regions,
    raster_region_map,
)
from trivisit.visitation import (
    EdgeId,
    VisitOrder,
    edge_segment,
    visit_three_ordered,
    visit_two_set,
)

from conftest import random_triangle

EQ = triangle_from_angles(math.pi / 3, math.pi / 3)
RI = triangle_from_angles(math.pi / 4, math.pi / 4)
THIN = triangle_from_angles(math.radians(85), math.radians(85))
OPPOSITE = {VertexId.A: EdgeId.D, VertexId.B: EdgeId.R, VertexId.C: EdgeId.L}


def chain_pair_gap(t, chain):
    worst = 0.0
    for p, label in chain.sample(150):
        v = VertexId(label.split("-")[1])
        opp = OPPOSITE[v]
        pair = tuple(e for e in EdgeId if e is not opp)
        d_opp = p.dist(closest_point_on_segment(p, edge_segment(t, opp)))
        worst = max(worst, abs(d_opp - visit_two_set(t, p, pair).cost))
    return worst


class TestR3Regions:
    def test_classification_matches_argmax(self, rng):
        import numpy as np

        regions = r3_regions(EQ)
        gen = np.random.default_rng(5)
        for _ in range(100):
            w = gen.dirichlet((1, 1, 1))
            p = Point2(
                float(w[0] * EQ.a.x + w[1] * EQ.b.x + w[2] * EQ.c.x),
                float(w[0] * EQ.a.y + w[1] * EQ.b.y + w[2] * EQ.c.y),
            )
            assert set(regions.classify(p)) == set(r3(EQ, p).edges)

    def test_incenter_triple_tie(self):
        regions = r3_regions(EQ)
        assert set(regions.classify(regions.center)) == {EdgeId.L, EdgeId.D, EdgeId.R}

    def test_feet_live_on_edges(self, rng):
        for _ in range(50):
            t = random_triangle(rng)
            regions = r3_regions(t)
            from trivisit.geom_core import Segment

            assert dist_point_segment(regions.foot_a, Segment(t.b, t.c)) < 1e-12
            assert dist_point_segment(regions.foot_b, Segment(t.c, t.a)) < 1e-12
            assert dist_point_segment(regions.foot_c, Segment(t.a, t.b)) < 1e-12


class TestBisectorSeparatorPoint:
    def test_equilateral_hexagon_corner(self):
        f = bisector_separator_point(EQ, VertexId.B)
        assert f.dist(Point2(0.375, 0.21650635094610965)) < 1e-9

    def test_right_isosceles_apex_separator_is_incenter(self):
        f = bisector_separator_point(RI, VertexId.A)
        assert f.dist(incenter(RI)) < 1e-9

    def test_on_vertex_to_incenter_segment(self, rng):
        for _ in range(1000):
            t = random_triangle(rng)
            for v in VertexId:
                f = bisector_separator_point(t, v)
                a = t.vertex(v)
                i = incenter(t)
                d = i - a
                s = (f - a).dot(d) / d.dot(d)
                assert -1e-9 <= s <= 1.0 + 1e-6
                assert abs(d.cross(f - a)) < 1e-9


class TestR2Separator:
    def test_equilateral_degenerates_to_inner_triangle(self):
        chain = r2_separator(EQ)
        assert all(isinstance(p, SegmentPiece) for p in chain.pieces)
        feet = [Point2(0.5, 0.0), Point2(0.75, math.sqrt(3) / 4), Point2(0.25, math.sqrt(3) / 4)]
        # every chain point lies on the triangle through the bisector feet
        from trivisit.geom_core import Line

        sides = [Line.from_points(feet[i], feet[(i + 1) % 3]) for i in range(3)]
        for p, _ in chain.sample(60):
            assert min(abs(s.signed_dist(p)) for s in sides) < 1e-9

    def test_right_isosceles_has_apex_arc(self):
        chain = r2_separator(RI)
        arcs = [p for p in chain.pieces if isinstance(p, ParabolaArcPiece)]
        assert len(arcs) == 1
        arc = arcs[0]
        assert arc.label == "corner-A"
        # the arc passes through both adjacent bisector feet and its apex
        m = Point2(1 - 1 / math.sqrt(2), 1 - 1 / math.sqrt(2))
        l = Point2(1 / math.sqrt(2), 1 - 1 / math.sqrt(2))
        assert min(arc.start.dist(m), arc.end.dist(m)) < 1e-9
        assert min(arc.start.dist(l), arc.end.dist(l)) < 1e-9
        assert abs(arc.parabola.gap(Point2(0.5, 0.25))) < 1e-12

    def test_chain_is_closed(self, rng):
        for t in (EQ, RI, THIN):
            assert r2_separator(t).max_endpoint_gap() < 1e-9
        for _ in range(50):
            t = random_triangle(rng, min_angle=math.radians(5))
            assert r2_separator(t).max_endpoint_gap() < 1e-9

    def test_boundary_ties(self, rng):
        for t in (EQ, RI, THIN):
            assert chain_pair_gap(t, r2_separator(t)) < 1e-8
        for _ in range(12):
            t = random_triangle(rng, min_angle=math.radians(10))
            assert chain_pair_gap(t, r2_separator(t)) < 1e-8

    def test_outside_chain_cost_is_opposite_edge(self):
        # landmark from the construction: inside the corner pocket the
        # two-robot cost equals the plain distance to the far edge
        from trivisit.fleet_costs import r2

        p = Point2(0.15, 0.05)
        res = r2(RI, p)
        far = p.dist(closest_point_on_segment(p, edge_segment(RI, EdgeId.R)))
        assert res.cost == pytest.approx(far, abs=1e-12)


class TestR1Locus:
    def test_right_apex_gives_full_altitude(self):
        chain = r1_lrd_rld_locus(RI)
        assert len(chain.pieces) == 1
        piece = chain.pieces[0]
        assert piece.start.dist(RI.a) < 1e-12
        assert piece.end.dist(Point2(0.5, 0.0)) < 1e-12

    def test_equilateral_runs_down_the_bisector(self):
        chain = r1_lrd_rld_locus(EQ)
        for p, _ in chain.sample(40):
            assert abs(p.x - 0.5) < 1e-9

    def test_label_names_both_orders(self):
        assert r1_lrd_rld_locus(EQ).label == "LRD=RLD"
        assert r1_lrd_rld_locus(THIN).label in ("DLR=LDR", "LDR=DLR")

    def test_costs_tie_along_locus(self, rng):
        for t in (EQ, RI, THIN):
            chain = r1_lrd_rld_locus(t)
            o1, o2 = (VisitOrder(s) for s in chain.label.split("="))
            for p, _ in chain.sample(120):
                c1 = visit_three_ordered(t, p, o1).cost
                c2 = visit_three_ordered(t, p, o2).cost
                assert abs(c1 - c2) < 1e-8
        for _ in range(10):
            t = random_triangle(rng, min_angle=math.radians(15))
            chain = r1_lrd_rld_locus(t)
            o1, o2 = (VisitOrder(s) for s in chain.label.split("="))
            for p, _ in chain.sample(60):
                c1 = visit_three_ordered(t, p, o1).cost
                c2 = visit_three_ordered(t, p, o2).cost
                assert abs(c1 - c2) < 1e-8


class TestRasterMap:
    def test_rejects_small_grid(self):
        with pytest.raises(ValueError):
            raster_region_map(EQ, 8, "r1")

    def test_rejects_bad_mode(self):
        with pytest.raises(ValueError):
            raster_region_map(EQ, 32, "r9")

    def test_r1_probe_label(self):
        rm = raster_region_map(EQ, 64, "r1")
        cell = min(rm.cells, key=lambda c: c.point.dist(Point2(0.45, 0.6)))
        assert cell.labels == ("LRD",)

    def test_mirror_symmetry_swaps_left_right(self):
        swap = str.maketrans("LR", "RL")
        for t in (EQ, RI, THIN):
            rm = raster_region_map(t, 48, "r1")
            cells = list(rm.cells)
            for cell in cells:
                mirrored = Point2(1.0 - cell.point.x, cell.point.y)
                twin = min(cells, key=lambda c: c.point.dist(mirrored))
                if twin.point.dist(mirrored) > 1e-9 * t.base_length:
                    continue
                expect = {lab.translate(swap) for lab in cell.labels}
                assert set(twin.labels) == expect, (cell, twin)

    def test_tie_cells_near_constructed_chains(self):
        # ties between the two altitude-last orders hug the constructed locus
        for t in (EQ, RI, THIN):
            rm = raster_region_map(t, 48, "r1")
            chain = r1_lrd_rld_locus(t)
            o1, o2 = chain.label.split("=")
            chain_pts = [p for p, _ in chain.sample(400)]
            pitch = rm.pitch
            for cell in rm.cells:
                if {o1, o2} <= set(cell.labels):
                    d = min(cell.point.dist(q) for q in chain_pts)
                    assert d <= 2.0 * pitch, (cell.point, d, pitch)

    def test_r2_tie_cells_near_separators(self):
        # Partition ties occur either on the mixed hexagon (one robot vs two
        # robots determine) or on the angle bisectors (two partitions swap);
        # every tie cell must hug one of those constructed curves.
        from trivisit.geom_core import Segment
        from trivisit.fleet_costs import largest_angle_vertex  # noqa: F401

        for t in (EQ, RI):
            rm = raster_region_map(t, 48, "r2")
            chain = r2_separator(t)
            chain_pts = [p for p, _ in chain.sample(600)]
            feet = {
                VertexId.A: r3_regions(t).foot_a,
                VertexId.B: r3_regions(t).foot_b,
                VertexId.C: r3_regions(t).foot_c,
            }
            bisectors = [Segment(t.vertex(v), feet[v]) for v in VertexId]
            edges = [Segment(t.a, t.b), Segment(t.b, t.c), Segment(t.c, t.a)]
            pitch = rm.pitch
            for cell in rm.cells:
                if not cell.tie:
                    continue
                if min(dist_point_segment(cell.point, e) for e in edges) < 1e-9:
                    # starting on an edge makes its visit free, collapsing two
                    # partitions identically; the boundary is not a separator
                    continue
                d = min(cell.point.dist(q) for q in chain_pts)
                d = min(d, min(dist_point_segment(cell.point, s) for s in bisectors))
                assert d <= 2.0 * pitch, (cell.point, cell.labels, d)

    def test_r3_tie_cells_near_bisectors(self):
        for t in (EQ, RI, THIN):
            rm = raster_region_map(t, 48, "r3")
            segs = r3_regions(t).separators
            pitch = rm.pitch
            for cell in rm.cells:
                if not cell.tie:
                    continue
                d = min(dist_point_segment(cell.point, s) for s in segs)
                assert d <= 2.0 * pitch, (cell.point, d)

    def test_csv_and_svg_emission(self, tmp_path):
        rm = raster_region_map(EQ, 32, "r1")
        csv_path = tmp_path / "map.csv"
        svg_path = tmp_path / "map.svg"
        rm.to_csv(csv_path)
        rm.to_svg(svg_path, [r2_separator(EQ)])
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "i,j,x,y,label"
        assert len(lines) == len(rm.cells) + 1
        svg = svg_path.read_text()
        assert svg.startswith("<?xml")
        assert "<svg" in svg and "</svg>" in svg
        assert "<polygon" in svg  # triangle outline
