import math

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hexweb.catalog import build, preset
from hexweb.config import WebConfig
from hexweb.geom import Circle, Domain, Line, Point, intersect, on_curve, oriented_angle, same_curve, solve_cubic
from hexweb.hexagon import trace_hexagon
from hexweb.pencils import Pencil

coord = st.floats(-5.0, 5.0, allow_nan=False)
radius = st.floats(0.1, 5.0)
angle = st.floats(0.0, 2 * math.pi)

points = st.builds(Point, coord, coord)
circles = st.builds(Circle, points, radius)
lines = st.builds(lambda t, c: Line(Point(math.cos(t), math.sin(t)), c), angle, coord)
curves = st.one_of(circles, lines)


@settings(max_examples=200, deadline=None)
@given(curves, curves)
def test_intersect_symmetric_and_on_both(g1, g2):
    assume(not same_curve(g1, g2, 1e-9))
    p12 = sorted(intersect(g1, g2))
    p21 = sorted(intersect(g2, g1))
    assert len(p12) == len(p21)
    for a, b in zip(p12, p21):
        assert math.dist(a, b) <= 1e-9
    for p in p12:
        assert on_curve(g1, p, 1e-9) and on_curve(g2, p, 1e-9)


def _direction(t):
    return Point(math.cos(t), math.sin(t))


@settings(max_examples=300, deadline=None)
@given(angle, angle, angle)
def test_oriented_angle_additive_mod_pi(a, b, c):
    u, v, w = _direction(a), _direction(b), _direction(c)
    total = oriented_angle(u, v) + oriented_angle(v, w) - oriented_angle(u, w)
    r = math.remainder(total, math.pi)
    assert abs(r) <= 1e-12


@settings(max_examples=300, deadline=None)
@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10), st.floats(0.1, 10))
def test_cubic_roots_have_small_residual(b, c, d, a):
    coeffs = (a, b, c, d)
    for r in solve_cubic(*coeffs):
        if r.multiplicity > 1:
            continue
        x = r.value
        val = ((a * x + b) * x + c) * x + d
        scale = max(abs(a * x ** 3), abs(b * x * x), abs(c * x), abs(d), 1e-300)
        assert abs(val) <= 1e-9 * scale


@settings(max_examples=200, deadline=None)
@given(angle, coord)
def test_line_canonical_under_negation(t, c):
    n = Point(math.cos(t), math.sin(t))
    l1, l2 = Line(n, c), Line(Point(-n.x, -n.y), -c)
    assert same_curve(l1, l2, 1e-12)
    assert l1.offset >= 0.0


@settings(max_examples=100, deadline=None)
@given(points, points, points)
def test_member_through_passes_through(v1, v2, a):
    assume(math.dist(v1, v2) > 0.1 and math.dist(a, v1) > 0.1 and math.dist(a, v2) > 0.1)
    g = Pencil.from_vertices(v1, v2).member_through(a)
    s = max(1.0, getattr(g, "radius", 1.0))
    for p in (a, v1, v2):
        assert abs(g.distance(p)) <= 1e-9 * s


@settings(max_examples=100, deadline=None)
@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6), st.floats(1e-6, 1e6))
def test_domain_round_trip(x, y, r):
    cfg = WebConfig("pappus", {"R": [x, y]}, Domain(Point(x, y), r))
    assert WebConfig.loads(cfg.dumps()) == cfg


_PAPPUS = build(preset("pappus"))


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.0, 2 * math.pi), st.floats(0.02, 0.3))
def test_pappus_closes_everywhere(rho, th, frac):
    w = _PAPPUS
    r = w.domain.radius * 0.5 * math.sqrt(rho)
    o = Point(w.domain.center.x + r * math.cos(th), w.domain.center.y + r * math.sin(th))
    h = frac * w.domain.radius
    tr = trace_hexagon(w, o, w.red(o).move_along(o, h), check_domain=False)
    assert tr.defect <= 1e-10 * h
