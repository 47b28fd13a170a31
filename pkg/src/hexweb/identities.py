"""Executable checks of the conic and circle identities behind the straightening charts.

Each function draws ``n`` seeded random samples and returns the largest
relative residual of its identity.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from . import conics
from .charts import major_centers, parabola_feet
from .conics import Conic
from .errors import GeometryError
from .geom import Point, dist, oriented_angle, wrap_half_turn

SQRT2 = math.sqrt(2.0)


def _outside_points(conic: Conic, n: int, rng: np.random.Generator, spread: float = 2.0) -> list[Point]:
    """Points off the conic reached by moving out along the normal from random conic points."""
    out: list[Point] = []
    tries = 0
    while len(out) < n:
        tries += 1
        if tries > 1000 * n:
            raise RuntimeError("could not sample points with real tangents")
        t = rng.uniform(-math.pi, math.pi) if conic.kind != "parabola" else rng.uniform(-2.5, 2.5)
        branch = int(rng.integers(0, 2)) if conic.kind == "hyperbola" else 0
        if conic.kind == "hyperbola":
            t = rng.uniform(-1.5, 1.5)
        p = conic.point_at(t, branch)
        nrm = conic.normal_at(p).unit() * (1.0 if rng.random() < 0.5 else -1.0)
        q = p + nrm * (rng.uniform(0.05, spread) * conic.scale)
        try:
            conics.tangent_lines_from_point(conic, q)
        except GeometryError:
            continue
        out.append(q)
    return out


def _angle_at(a: Point, p: Point, q: Point) -> float:
    """Unsigned angle PAQ."""
    u, v = p - a, q - a
    return math.atan2(abs(u.cross(v)), u.dot(v))


def isogonal_residual(conic: Conic, n: int = 100, seed: int = 0) -> float:
    """Angle PAF1 equals angle F2AQ, P and Q the feet from F1, F2 on the left and right tangents."""
    rng = np.random.default_rng(seed)
    f1, f2 = conic.foci
    worst = 0.0
    for a in _outside_points(conic, n, rng):
        pair = conics.tangent_lines_from_point(conic, a)
        p, q = pair.left.foot(f1), pair.right.foot(f2)
        worst = max(worst, abs(_angle_at(a, p, f1) - _angle_at(a, f2, q)) / math.pi)
    return worst


def optical_residual(conic: Conic, n: int = 100, seed: int = 0) -> float:
    """oriented_angle(TF1, tangent) = oriented_angle(tangent, TF2) at conic points T.

    For a parabola the second focal line is the parallel to the axis through T.
    """
    rng = np.random.default_rng(seed)
    f1, f2 = conic.foci
    worst = 0.0
    for _ in range(n):
        if conic.kind == "hyperbola":
            t = conic.point_at(rng.uniform(-1.5, 1.5), int(rng.integers(0, 2)))
        elif conic.kind == "parabola":
            t = conic.point_at(rng.uniform(-2.5, 2.5))
        else:
            t = conic.point_at(rng.uniform(-math.pi, math.pi))
        tan = conic.tangent_at(t)
        lhs = oriented_angle(f1 - t, tan)
        if conic.kind == "parabola":
            rhs = oriented_angle(tan, conic.focus - conic.center)
        else:
            rhs = oriented_angle(tan, f2 - t)
        worst = max(worst, abs(wrap_half_turn(lhs - rhs)) / math.pi)
    return worst


def pedal_residual(conic: Conic, n: int = 100, seed: int = 0, focus_index: int = 0) -> float:
    """Feet of perpendiculars from a focus to tangents lie on the circle about the center of radius a."""
    rng = np.random.default_rng(seed)
    f = conic.foci[focus_index]
    circle = conics.pedal_circle(conic, f)
    worst = 0.0
    for _ in range(n):
        if conic.kind == "hyperbola":
            t = conic.point_at(rng.uniform(-1.5, 1.5), int(rng.integers(0, 2)))
        else:
            t = conic.point_at(rng.uniform(-math.pi, math.pi))
        foot = conic.tangent_line_at(t).foot(f)
        worst = max(worst, abs(dist(foot, circle.center) - circle.radius) / circle.radius)
    return worst


def _parabola_samples(parabola: Conic, l: Sequence[float], n: int, rng: np.random.Generator,
                      need_inside: bool) -> list[Point]:
    l = Point(*l)
    f = parabola.focus
    out: list[Point] = []
    while len(out) < n:
        a = Point(*rng.uniform(-4.0, 4.0, size=2)) * parabola.b
        if need_inside and not dist(a, l) < dist(a, f):
            continue
        try:
            parabola_feet(parabola, a)
        except GeometryError:
            continue
        out.append(a)
    return out


def circumcenter_residual(parabola: Conic, n: int = 100, seed: int = 0) -> float:
    """A is the circumcenter of F, P, Q: |AF| = |AP| = |AQ|."""
    rng = np.random.default_rng(seed)
    f = parabola.focus
    worst = 0.0
    for a in _parabola_samples(parabola, f, n, rng, need_inside=False):
        p, q, _, _ = parabola_feet(parabola, a)
        r = dist(a, f)
        worst = max(worst, abs(dist(a, p) - r) / r, abs(dist(a, q) - r) / r)
    return worst


def power_of_point_residual(parabola: Conic, l: Sequence[float], n: int = 100, seed: int = 0) -> float:
    """|AL|^2 = R^2 - |PL| |QL| for L on the directrix inside the circle FPQ."""
    rng = np.random.default_rng(seed)
    l = Point(*l)
    worst = 0.0
    for a in _parabola_samples(parabola, l, n, rng, need_inside=True):
        p, q, _, _ = parabola_feet(parabola, a)
        r2 = dist(a, parabola.focus) ** 2
        worst = max(worst, abs(dist(a, l) ** 2 - (r2 - dist(p, l) * dist(q, l))) / r2)
    return worst


def _normalized_e707_samples(n: int, rng: np.random.Generator) -> list[tuple[Point, float, float]]:
    """Points with x < 0 inside the unit circle and the circle centers (t_left, t_right) through them."""
    ell = Conic.ellipse(SQRT2, 1.0)
    out = []
    while len(out) < n:
        r = math.sqrt(rng.uniform(0.0, 1.0)) * 0.95
        th = rng.uniform(math.pi / 2 + 0.05, 3 * math.pi / 2 - 0.05)
        a = Point(r * math.cos(th), r * math.sin(th))
        try:
            tl, tr = major_centers(ell, a)
        except GeometryError:
            continue
        if abs(a.y) < 1e-3 or not (tl < 0.0 < tr):
            continue
        out.append((a, tl, tr))
    return out


def major_circle_identities_residual(n: int = 100, seed: int = 0) -> float:
    """With R the foot of A on the major axis: |RO_left| = t, |RO_right| = s and |AR| = sqrt(1 - s^2 - t^2)."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for a, tl, tr in _normalized_e707_samples(n, rng):
        s, t = -tl, tr
        r = Point(a.x, 0.0)
        worst = max(worst,
                    abs(abs(r.x - tl) - t),
                    abs(abs(tr - r.x) - s),
                    abs(dist(a, r) - math.sqrt(1.0 - s * s - t * t)))
    return worst


def envelope_residual(n: int = 100, seed: int = 0) -> float:
    """Each circle (x-a)^2 + y^2 = 1 - a^2, |a| < 1/sqrt(2), touches x^2/2 + y^2 = 1 at (2a, +-sqrt(1 - 2a^2))."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        a = rng.uniform(-1.0, 1.0) / SQRT2
        for sign in (1.0, -1.0):
            x, y = 2.0 * a, sign * math.sqrt(1.0 - 2.0 * a * a)
            on_circle = (x - a) ** 2 + y * y - (1.0 - a * a)
            on_ellipse = x * x / 2.0 + y * y - 1.0
            gc = Point(2.0 * (x - a), 2.0 * y)
            ge = Point(x, 2.0 * y)
            parallel = abs(gc.unit().cross(ge.unit()))
            worst = max(worst, abs(on_circle), abs(on_ellipse), parallel)
    return worst


def focal_ratio_residual(conic: Conic, n: int = 100, seed: int = 0) -> float:
    """d(F1, left)/d(F2, right) = |F1A|/|F2A|."""
    rng = np.random.default_rng(seed)
    f1, f2 = conic.foci
    worst = 0.0
    for a in _outside_points(conic, n, rng):
        pair = conics.tangent_lines_from_point(conic, a)
        lhs = pair.left.distance(f1) / pair.right.distance(f2)
        rhs = dist(f1, a) / dist(f2, a)
        worst = max(worst, abs(lhs - rhs) / rhs)
    return worst
