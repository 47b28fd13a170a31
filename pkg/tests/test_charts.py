import math

import numpy as np
import pytest

from hexweb import charts
from hexweb.catalog import _conic, build, preset
from hexweb.conics import Conic
from hexweb.errors import InvalidConfig, MisalignedChart
from hexweb.geom import Point, dist
from hexweb.hexagon import sample_centers
from hexweb.webs import leaf_samples

ELL = Conic.ellipse(math.sqrt(2.0), 1.0)


def leaf_points(w, color, a, n=20):
    return leaf_samples(w.foliation(color)(a), a, w.domain, n, span=w.domain.radius)


def test_chart_b_sum_is_log_focal_ratio():
    w = build(preset("main-b"))
    ch = charts.make_chart_b(ELL)
    f1, f2 = ELL.foci
    # the ratio-2 member of the focal pencil through (3, 0)
    for t in np.linspace(0.1, 6.0, 20):
        a = Point(5 / 3 + 4 / 3 * math.cos(t), 4 / 3 * math.sin(t))
        if dist(a, (0, 0)) < 1.5:
            continue
        u, v = ch(a)
        assert u + v == pytest.approx(math.log(dist(a, f1) / dist(a, f2)), abs=1e-12)
        assert abs(u + v) == pytest.approx(math.log(2.0), abs=1e-12)
    for p in sample_centers(w, 10, np.random.default_rng(0)):
        u, v = ch(p)
        assert u + v == pytest.approx(math.log(dist(p, f1) / dist(p, f2)), abs=1e-12)


def test_chart_b_u_constant_on_left_tangent():
    w = build(preset("main-b"))
    ch = charts.make_chart_b(ELL)
    a = w.domain.center
    u0 = ch(a)[0]
    for p in leaf_points(w, "green", a):
        assert ch(p)[0] == pytest.approx(u0, abs=1e-10)


def test_chart_c_sum_constant_mod_pi_on_blue_leaf():
    cfg = preset("main-c")
    w = build(cfg)
    ch = charts.make_chart_c(_conic(cfg.params), 0)
    for a in sample_centers(w, 5, np.random.default_rng(1)):
        s0 = ch.functional("blue", a)
        for p in leaf_points(w, "blue", a):
            assert abs(ch.difference(ch.functional("blue", p), s0)) <= 1e-9


def test_chart_d_sum_on_pencil_circle():
    cfg = preset("main-d")
    w = build(cfg)
    par, l = _conic(cfg.params), Point(*cfg.params["L"])
    ch = charts.make_chart_d(par, l)
    for a in sample_centers(w, 5, np.random.default_rng(2)):
        rho = dist(a, l) / dist(a, par.focus)
        for p in [a] + leaf_points(w, "red", a):
            u, v = ch(p)
            assert u + v == pytest.approx(math.log(0.25 * (1.0 - rho * rho)), abs=1e-9)


def test_chart_d_symmetric_point():
    par = Conic.parabola(1.0)
    f = par.focus
    l = par.directrix().foot(f)
    ch = charts.make_chart_d(par, l)
    a = Point(l.x - 1.0, l.y)  # on the axis, outside the parabola
    u, v = ch(a)
    assert u == pytest.approx(v, abs=1e-12)


def test_chart_e_sum_on_pencil_leaf():
    """u + v = -2 ln|cos F1AF2|: the exact value of the focal-angle identity."""
    w = build(preset("main-e"))
    ch = charts.make_chart_e(ELL)
    f1, f2 = ELL.foci
    for a in sample_centers(w, 5, np.random.default_rng(3)):
        for p in [a] + leaf_points(w, "red", a):
            cosang = (f1 - p).dot(f2 - p) / (dist(p, f1) * dist(p, f2))
            u, v = ch(p)
            assert u + v == pytest.approx(-2.0 * math.log(abs(cosang)), abs=1e-9)


def test_chart_e_on_minor_axis():
    ch = charts.make_chart_e(ELL)
    y = 0.5
    s2 = (1 - y * y) / 2
    u, v = ch((0.0, y))
    assert u == pytest.approx(v, abs=1e-12)
    assert u == pytest.approx(math.log((1 - s2) / s2), abs=1e-12)


def test_chart_e_auxiliary_distances():
    w = build(preset("main-e"))
    for a in sample_centers(w, 20, np.random.default_rng(4)):
        tl, tr = charts.major_centers(ELL, a)
        s, t = -tl, tr
        r = Point(a.x, 0.0)
        assert abs(dist(r, (tl, 0.0)) - t) <= 1e-10
        assert abs(dist(r, (tr, 0.0)) - s) <= 1e-10
        assert abs(dist(a, r) - math.sqrt(1 - s * s - t * t)) <= 1e-10


@pytest.mark.parametrize("name", ["main-b", "main-c", "main-d", "main-e", "main-e-rotated", "main-b-hyperbola"])
def test_verify_chart_on_own_web(name):
    w = build(preset(name))
    rep = charts.verify_chart(w, charts.chart_for(w), samples=20)
    assert rep.max_deviation <= 1e-8
    assert rep.min_jacobian >= 1e-6
    assert rep.passes()


@pytest.mark.parametrize("chart", ["b", "c", "d", "e"])
def test_mismatched_control_detected(chart):
    w, ch = charts.mismatched_control(chart)
    try:
        rep = charts.verify_chart(w, ch, samples=20)
    except MisalignedChart:
        return
    assert rep.max_deviation > 1e-4
    assert not rep.passes()


def test_alignment_validation():
    with pytest.raises(MisalignedChart):
        charts.Chart("x", lambda a: (0.0, 0.0), {"red": "u", "green": "u", "blue": "v"})
    with pytest.raises(MisalignedChart):
        charts.chart_for(build(preset("pappus")))
    with pytest.raises(InvalidConfig):
        charts.mismatched_control("z")
