import math

import numpy as np
import pytest

from hexweb.errors import AtLimitingPoint, AtVertex, CoincidentCircles, InvalidConfig, MissesSphere
from hexweb.geom import Circle, Line, Point, circle_through, dist, intersect, same_curve
from hexweb.pencils import (
    ApollonianSet,
    DarbouxConfig,
    Pencil,
    TangencyLabel,
    classify,
    darboux_image_of_line,
    darboux_transform,
    member_through,
)


def orthogonal(g1, g2, tol=1e-9):
    """Two circles meet at right angles when d^2 = r1^2 + r2^2."""
    d2 = dist(g1.center, g2.center) ** 2
    return abs(d2 - g1.radius ** 2 - g2.radius ** 2) <= tol * max(1.0, d2)


class TestClassify:
    def test_elliptic_two_vertices(self):
        p = classify(Circle(Point(0, 0), 1.0), Circle(Point(1, 0), 1.0))
        assert p.kind == "elliptic"
        vs = p.vertices
        assert len(vs) == 2
        assert sorted((round(v.x, 12), round(v.y, 12)) for v in vs) == [
            (0.5, round(-math.sqrt(3) / 2, 12)), (0.5, round(math.sqrt(3) / 2, 12))]

    def test_parabolic_touch_point(self):
        p = classify(Circle(Point(0, 0), 1.0), Circle(Point(2, 0), 1.0))
        assert p.kind == "parabolic"
        (v,) = p.vertices
        assert dist(v, (1.0, 0.0)) <= 1e-12

    def test_hyperbolic_limiting_points(self):
        p = classify(Circle(Point(0, 0), 1.0), Circle(Point(4, 0), 1.0))
        assert p.kind == "hyperbolic"
        f1, f2 = sorted(p.limiting_points)
        # symmetric about the radical axis x = 2, with f1 * f2 measured from it equal to the power
        assert f1.x + f2.x == pytest.approx(4.0, abs=1e-12)
        assert abs(f1.y) <= 1e-12 and abs(f2.y) <= 1e-12
        assert (2.0 - f1.x) ** 2 == pytest.approx(3.0, rel=1e-12)

    def test_concentric_is_hyperbolic(self):
        p = classify(Circle(Point(1, 1), 1.0), Circle(Point(1, 1), 2.0))
        assert p.kind == "hyperbolic" and p.concentric

    def test_coincident_raises(self):
        with pytest.raises(CoincidentCircles):
            classify(Circle(Point(0, 0), 1.0), Circle(Point(0, 0), 1.0))

    def test_two_lines(self):
        p = classify(Line.through((0, 0), (1, 1)), Line.through((0, 0), (1, -1)))
        assert p.kind == "elliptic"


class TestMembers:
    def test_elliptic_member_example(self):
        g = Pencil.from_vertices((0, 0), (0, 2)).member_through((1, 1))
        assert isinstance(g, Circle)
        assert dist(g.center, (0.0, 1.0)) <= 1e-14 and g.radius == pytest.approx(1.0, abs=1e-14)

    def test_equal_ratio_member_is_bisector(self):
        g = Pencil.from_limiting_points((-1, 0), (1, 0)).member_through((0, 5))
        assert isinstance(g, Line)
        assert same_curve(g, Line(Point(1.0, 0.0), 0.0))

    def test_member_in_span_and_through_point(self):
        rng = np.random.default_rng(4)
        pencils = [Pencil.from_vertices((-1, 0.3), (0.5, 1.2)),
                   Pencil.from_limiting_points((0, 0), (2, 1)),
                   Pencil.parabolic((1, 1), (1, 2)),
                   Pencil.of_lines_through((0.5, -0.5))]
        for p in pencils:
            for _ in range(50):
                a = Point(*rng.uniform(-3, 3, 2))
                g = p.member_through(a)
                assert abs(g.distance(a)) <= 1e-10 * max(1.0, getattr(g, "radius", 1.0))
                assert p.residual(g) <= 1e-12

    def test_vertex_and_limiting_point_raise(self):
        with pytest.raises(AtVertex):
            Pencil.from_vertices((0, 0), (0, 2)).member_through((0, 2))
        with pytest.raises(AtLimitingPoint):
            member_through(Pencil.from_limiting_points((-1, 0), (1, 0)), (1.0, 0.0))

    def test_hyperbolic_members_orthogonal_to_circles_through_limiting_points(self):
        f1, f2 = (-1.0, 0.0), (1.0, 0.0)
        p = Pencil.from_limiting_points(f1, f2)
        rng = np.random.default_rng(9)
        for _ in range(30):
            g = p.member_through(Point(*rng.uniform(-3, 3, 2)))
            h = circle_through(f1, f2, Point(*rng.uniform(-3, 3, 2)))
            if isinstance(g, Circle) and isinstance(h, Circle):
                assert orthogonal(g, h)

    def test_elliptic_members_share_vertices(self):
        p = Pencil.from_vertices((0.2, -0.4), (1.1, 0.9))
        rng = np.random.default_rng(10)
        for _ in range(20):
            g = p.member_through(Point(*rng.uniform(-2, 2, 2)))
            for v in ((0.2, -0.4), (1.1, 0.9)):
                assert abs(g.distance(v)) <= 1e-10 * max(1.0, getattr(g, "radius", 1.0))


class TestDarboux:
    def test_lines_map_to_circles(self):
        cfg = DarbouxConfig()
        rng = np.random.default_rng(12)
        fitted = 0
        for _ in range(50):
            # lines crossing the sphere's shadow, centred near (0.13, -0.1)
            line = Line.through(Point(*rng.uniform(-0.2, 0.4, 2)), Point(*rng.uniform(-1, 1, 2)))
            try:
                img = darboux_image_of_line(cfg, line)
            except MissesSphere:
                continue
            p0 = line.foot((0.13, -0.1))
            worst, hits = 0.0, 0
            for s in np.linspace(-0.4, 0.4, 11):
                try:
                    q = darboux_transform(cfg, p0 + line.direction * float(s))
                except MissesSphere:
                    continue
                worst = max(worst, abs(img.distance(q)))
                hits += 1
            assert worst <= 1e-9 * max(1.0, getattr(img, "radius", 1.0))
            fitted += hits >= 5
        assert fitted >= 40

    def test_nonconformal_second_center_rejected(self):
        with pytest.raises(InvalidConfig):
            DarbouxConfig(sphere_center=(0.0, 0.0, 1.0), sphere_radius=1.0, e2=(1.0, 0.0, 1.0))
        with pytest.raises(InvalidConfig):
            DarbouxConfig(e2=(0.0, 0.0, 2.5))

    def test_round_trip(self):
        cfg = DarbouxConfig(e1=(0.1, 0.2, -3.0))
        assert DarbouxConfig.from_dict(cfg.to_dict()) == cfg


class TestApollonianSets:
    def test_tangent_set_members_touch_fixed_circles(self):
        pencil = Pencil.from_limiting_points((-1, 0), (1, 0))
        f1 = Circle(Point(5 / 3, 0), 4 / 3)
        f2 = Circle(Point(1.25, 0), 0.75)
        for orient in (1, -1):
            fn = ApollonianSet("tangent", f1, f2, TangencyLabel(-1, 1, orient)).bind(pencil)
            for a in [(2.5, 0.6), (2.6, 0.8), (2.4, 0.5)]:
                s = fn(a)
                assert abs(s.distance(a)) <= 1e-10
                for f in (f1, f2):
                    assert len(intersect(s, f, band=1e-8)) == 1

    def test_tangent_set_rejects_non_member(self):
        pencil = Pencil.from_limiting_points((-1, 0), (1, 0))
        bad = ApollonianSet("tangent", Circle(Point(0, 3), 1.0), Circle(Point(1.25, 0), 0.75), TangencyLabel(1, 1, 1))
        with pytest.raises(InvalidConfig):
            bad.bind(pencil)

    def test_vertex_sets(self):
        pencil = Pencil.from_vertices((-1, 0), (1, 0))
        par = ApollonianSet("parabolic", vertex=0, direction=(0.6, 0.8)).bind(pencil)
        hyp = ApollonianSet("hyperbolic").bind(pencil)
        a = (0.2, 0.7)
        g = par(a)
        assert abs(g.distance(a)) <= 1e-12 and abs(g.distance((-1.0, 0.0))) <= 1e-12
        h = hyp(a)
        k = dist(a, (-1, 0)) / dist(a, (1, 0))
        assert isinstance(h, Circle)
        for t in np.linspace(0, 6, 7):
            x = h.point_at(float(t))
            assert dist(x, (-1, 0)) / dist(x, (1, 0)) == pytest.approx(k, rel=1e-10)
        with pytest.raises(InvalidConfig):
            ApollonianSet("hyperbolic").bind(Pencil.from_limiting_points((-1, 0), (1, 0)))
