"""Explicit straightening charts for the main webs (b)-(e) and their verification.

A chart maps A to (u, v) so that u, v and u + v are constant along the
leaves of three foliations.  ``Chart.alignment`` says which of the three
functionals belongs to which foliation color.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import conics
from .conics import Conic, doubly_tangent_circles_major
from .errors import DegenerateFoot, GeometryError, InvalidConfig, MisalignedChart, OutsideDomain
from .geom import Line, Point, dist, oriented_angle, wrap_half_turn
from .webs import COLORS, Web3, leaf_samples

FUNCTIONALS = ("u", "v", "u+v")


@dataclass(frozen=True)
class Chart:
    name: str
    fn: Callable[[Point], tuple[float, float]]
    alignment: dict  # color -> functional name
    period: Optional[float] = None  # functionals are taken modulo this (angle charts)

    def __post_init__(self):
        if sorted(self.alignment) != sorted(COLORS) or sorted(self.alignment.values()) != sorted(FUNCTIONALS):
            raise MisalignedChart(f"chart {self.name}: alignment must pair each color with one of u, v, u+v")

    def __call__(self, a: Sequence[float]) -> tuple[float, float]:
        return self.fn(Point(*a))

    def functional(self, color: str, a: Sequence[float]) -> float:
        u, v = self(a)
        return {"u": u, "v": v, "u+v": u + v}[self.alignment[color]]

    def difference(self, x: float, y: float) -> float:
        if self.period is None:
            return x - y
        return self.period / math.pi * wrap_half_turn((x - y) * math.pi / self.period)


# ---------------------------------------------------------------------------
# The four chart maps


def chart_b(conic: Conic, a: Sequence[float]) -> tuple[float, float]:
    """(ln d(F1, left tangent), -ln d(F2, right tangent)) with F1 the focus at -x in the conic frame."""
    f1, f2 = conic.foci
    try:
        pair = conics.tangent_lines_from_point(conic, a)
    except GeometryError as exc:
        raise OutsideDomain(str(exc)) from exc
    d1, d2 = pair.left.distance(f1), pair.right.distance(f2)
    if d1 <= 0.0 or d2 <= 0.0:
        raise OutsideDomain("a tangent passes through a focus")
    return math.log(d1), -math.log(d2)


def chart_c(conic: Conic, focus_index: int, a: Sequence[float]) -> tuple[float, float]:
    """(angle from the focal line to the major axis, angle from the major axis to the left tangent)."""
    f = conic.foci[focus_index]
    a = Point(*a)
    if dist(a, f) == 0.0:
        raise OutsideDomain("A is the focus")
    try:
        left = conics.left_tangent(conic, a)
    except GeometryError as exc:
        raise OutsideDomain(str(exc)) from exc
    axis = conic.major_axis.direction
    return oriented_angle(a - f, axis), oriented_angle(axis, left.direction)


def _directrix_foot(parabola: Conic, tangent: Line) -> Point:
    """Where the line through F perpendicular to ``tangent`` meets the directrix."""
    f = parabola.focus
    delta = parabola.directrix()
    perp = Line.from_point_direction(f, tangent.normal)
    den = perp.normal.cross(delta.normal)
    if abs(den) <= 1e-14:
        raise DegenerateFoot("the perpendicular from F is parallel to the directrix")
    x = (perp.offset * delta.normal.y - delta.offset * perp.normal.y) / den
    y = (perp.normal.x * delta.offset - delta.normal.x * perp.offset) / den
    return Point(x, y)


def parabola_feet(parabola: Conic, a: Sequence[float]) -> tuple[Point, Point, Line, Line]:
    """(P, Q, left tangent, right tangent) for the point ``a``."""
    try:
        pair = conics.tangent_lines_from_point(parabola, a)
    except GeometryError as exc:
        raise OutsideDomain(str(exc)) from exc
    return _directrix_foot(parabola, pair.left), _directrix_foot(parabola, pair.right), pair.left, pair.right


def chart_d(parabola: Conic, l: Sequence[float], a: Sequence[float]) -> tuple[float, float]:
    """(ln s, ln t) with s = |PL| |cos(left, directrix)| / |FP| and t likewise for Q and the right tangent."""
    l = Point(*l)
    f = parabola.focus
    delta = parabola.directrix().direction
    p, q, left, right = parabola_feet(parabola, a)
    s = dist(p, l) * abs(left.direction.dot(delta)) / dist(f, p)
    t = dist(q, l) * abs(right.direction.dot(delta)) / dist(f, q)
    if s <= 0.0 or t <= 0.0:
        raise OutsideDomain("L coincides with a directrix foot")
    return math.log(s), math.log(t)


def major_centers(conic: Conic, a: Sequence[float]) -> tuple[float, float]:
    """Signed centers (t_left, t_right) of the two major-axis circles through ``a`` in the normalized frame."""
    fwd, _, _ = conics.normalize_ellipse_e707(conic)
    try:
        pair = doubly_tangent_circles_major(fwd.apply(a))
    except GeometryError as exc:
        raise OutsideDomain(str(exc)) from exc
    return pair.left.center.x, pair.right.center.x


def chart_e(conic: Conic, a: Sequence[float]) -> tuple[float, float]:
    """(ln((1-s^2)/s^2), ln((1-t^2)/t^2)) with s, t the distances of the two circle centers from the ellipse center."""
    tl, tr = major_centers(conic, a)
    if not (tl < 0.0 < tr):
        raise OutsideDomain("the two circle centers are not on opposite sides of the center")
    s, t = -tl, tr
    if s >= 1.0 or t >= 1.0:
        raise OutsideDomain("circle center outside the minor-axis circle")
    return math.log((1.0 - s * s) / (s * s)), math.log((1.0 - t * t) / (t * t))


def make_chart_b(conic: Conic) -> Chart:
    return Chart("b", lambda a: chart_b(conic, a), {"green": "u", "blue": "v", "red": "u+v"})


def make_chart_c(conic: Conic, focus_index: int = 0) -> Chart:
    return Chart("c", lambda a: chart_c(conic, focus_index, a), {"red": "u", "green": "v", "blue": "u+v"},
                 period=math.pi)


def make_chart_d(parabola: Conic, l: Sequence[float]) -> Chart:
    return Chart("d", lambda a: chart_d(parabola, l, a), {"green": "u", "blue": "v", "red": "u+v"})


def make_chart_e(conic: Conic) -> Chart:
    return Chart("e", lambda a: chart_e(conic, a), {"green": "u", "blue": "v", "red": "u+v"})


def chart_for(w: Web3) -> Chart:
    """The chart of a main web built from a catalog config."""
    from .catalog import _conic

    cfg = w.info.get("config")
    if cfg is None:
        raise MisalignedChart("web carries no config to build a chart from")
    p = cfg.params
    if cfg.web == "main-b":
        return make_chart_b(_conic(p))
    if cfg.web == "main-c":
        return make_chart_c(_conic(p), int(p.get("focus_index", 0)))
    if cfg.web == "main-d":
        return make_chart_d(_conic(p), p["L"])
    if cfg.web == "main-e":
        return make_chart_e(_conic(p))
    raise MisalignedChart(f"no straightening chart for {cfg.web!r}")


# ---------------------------------------------------------------------------
# Verification


@dataclass
class ChartReport:
    web: str
    chart: str
    seed: int
    leaves: int
    per_leaf: int
    deviation: dict = field(default_factory=dict)  # color -> range-normalized max deviation
    ranges: dict = field(default_factory=dict)
    min_jacobian: float = math.nan  # |det J| * R^2 / (range_u * range_v)
    skipped: int = 0

    @property
    def max_deviation(self) -> float:
        return max(self.deviation.values())

    def passes(self, tol: float = 1e-8, min_jacobian: float = 1e-6) -> bool:
        return self.max_deviation <= tol and self.min_jacobian >= min_jacobian

    def to_dict(self) -> dict:
        d = asdict(self)
        d["max_deviation"] = self.max_deviation
        return d


def _uniform_points(w: Web3, n: int, rng: np.random.Generator) -> list[Point]:
    c, r = w.domain.center, w.domain.radius
    out: list[Point] = []
    tries = 0
    while len(out) < n and tries < 1000 * n:
        tries += 1
        rho = r * math.sqrt(rng.random())
        th = 2.0 * math.pi * rng.random()
        p = Point(c.x + rho * math.cos(th), c.y + rho * math.sin(th))
        if w.domain.contains(p):
            out.append(p)
    return out


def _spread(chart: Chart, values: Sequence[float]) -> float:
    ref = values[0]
    offs = [chart.difference(v, ref) for v in values]
    return max(offs) - min(offs)


def verify_chart(w: Web3, chart: Chart, samples: int = 50, seed: int = 0, per_leaf: int = 20) -> ChartReport:
    """Range-normalized deviation of each aligned functional along sampled leaves, and a Jacobian bound."""
    rng = np.random.default_rng(seed)
    pts = _uniform_points(w, max(4 * samples, 100), rng)
    uv = []
    for p in pts:
        try:
            uv.append((p, chart(p)))
        except GeometryError:
            continue
    if len(uv) < len(pts) / 2:
        raise MisalignedChart(f"chart {chart.name} is undefined on most of the domain of {w.name}")
    report = ChartReport(w.name, chart.name, seed, samples, per_leaf)
    skipped = len(pts) - len(uv)
    vals = {"u": [u for _, (u, v) in uv], "v": [v for _, (u, v) in uv], "u+v": [u + v for _, (u, v) in uv]}
    for name, vs in vals.items():
        report.ranges[name] = _spread(chart, vs)
    for color in COLORS:
        fname = chart.alignment[color]
        rng_f = report.ranges[fname]
        if rng_f <= 0.0:
            raise MisalignedChart(f"functional {fname} is constant over the domain")
        worst = 0.0
        for a in _uniform_points(w, samples, rng):
            try:
                leaf = w.foliation(color)(a)
                f0 = chart.functional(color, a)
            except GeometryError:
                skipped += 1
                continue
            for p in leaf_samples(leaf, a, w.domain, per_leaf, span=w.domain.radius):
                try:
                    worst = max(worst, abs(chart.difference(chart.functional(color, p), f0)))
                except GeometryError:
                    skipped += 1
        report.deviation[color] = worst / rng_f
    h = 1e-5 * w.domain.radius
    jmin = math.inf
    for p, _ in uv[:samples]:
        try:
            ux1, vx1 = chart(p + Point(h, 0.0))
            ux0, vx0 = chart(p - Point(h, 0.0))
            uy1, vy1 = chart(p + Point(0.0, h))
            uy0, vy0 = chart(p - Point(0.0, h))
        except GeometryError:
            skipped += 1
            continue
        dux, dvx = chart.difference(ux1, ux0) / (2 * h), chart.difference(vx1, vx0) / (2 * h)
        duy, dvy = chart.difference(uy1, uy0) / (2 * h), chart.difference(vy1, vy0) / (2 * h)
        jmin = min(jmin, abs(dux * dvy - duy * dvx))
    scale = w.domain.radius ** 2 / (report.ranges["u"] * report.ranges["v"])
    report.min_jacobian = float(jmin * scale)
    report.skipped = skipped
    return report


def mismatched_control(chart_name: str) -> tuple[Web3, Chart]:
    """A web that shares most structure with the chart's own web but is not straightened by it.

    b: the main-b chart on the elliptic-replacement web; c: the main-c chart on
    the main-b web of the same ellipse; d: the main-d chart on the
    parabola-control web; e: the e = 1/sqrt(2) chart on the e = 0.72 web.
    """
    from .catalog import _conic, build, preset
    from .config import WebConfig

    if chart_name == "b":
        own, other = preset("main-b"), preset("problem41")
        return build(other), make_chart_b(_conic(own.params))
    if chart_name == "c":
        own = preset("main-c")
        other = WebConfig("main-b", {"conic": own.params["conic"]}, own.domain)
        return build(other), make_chart_c(_conic(own.params), int(own.params.get("focus_index", 0)))
    if chart_name == "d":
        own = preset("main-d")
        return build(preset("problem41-parabola")), make_chart_d(_conic(own.params), own.params["L"])
    if chart_name == "e":
        own = preset("main-e")
        return build(preset("main-e-ecc072")), make_chart_e(_conic(own.params))
    raise InvalidConfig(f"unknown chart {chart_name!r}")
