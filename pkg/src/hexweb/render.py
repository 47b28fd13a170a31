"""Hand-written SVG 1.1 figures of 3-webs.

The math frame is y-up; one global ``scale(1,-1)`` maps it onto SVG's y-down
frame.  Circles are emitted as ``<circle>`` elements (or exact arc paths for
very large radii) and lines as clipped segments, so no leaf is ever a
polyline approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union
from xml.sax.saxutils import escape

from .catalog import build
from .config import WebConfig
from .errors import GeometryError, InvalidConfig
from .geom import Circle, GenCircle, Line, Point, dist, intersect
from .hexagon import HexTrace, trace_hexagon
from .webs import COLORS, Web3

DEFAULT_COLORS = {"red": "#d62728", "green": "#2ca02c", "blue": "#1f77b4"}
SUBSCRIPTS = "₀₁₂₃₄₅₆₇₈₉"
HUGE_RADIUS = 50.0  # in units of the viewport half-width


@dataclass(frozen=True)
class RenderSpec:
    config: WebConfig
    center: Optional[Point] = None
    half_width: Optional[float] = None
    leaves: tuple[int, int, int] = (9, 9, 9)
    colors: dict = field(default_factory=lambda: dict(DEFAULT_COLORS))
    hexagon: Optional[tuple[Point, Point]] = None
    size_px: int = 600
    clip_to_domain: bool = True

    def viewport(self) -> tuple[Point, float]:
        c = self.center if self.center is not None else self.config.domain.center
        hw = self.half_width if self.half_width is not None else 1.25 * self.config.domain.radius
        return Point(float(c[0]), float(c[1])), float(hw)


def _f(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _label(k: int) -> str:
    return "A" + "".join(SUBSCRIPTS[int(d)] for d in str(k))


def leaf_seeds(w: Web3, color: str, n: int) -> list[Point]:
    """``n`` points across the domain along the normal of the leaf through its centre."""
    if n <= 0:
        return []
    c, r = w.domain.center, w.domain.radius
    try:
        normal = w.foliation(color)(c).normal_at(c).unit()
    except GeometryError:
        normal = Point(1.0, 0.0)
    if n == 1:
        return [c]
    return [c + normal * (0.9 * r * (2.0 * i / (n - 1) - 1.0)) for i in range(n)]


def _segment_in_box(line: Line, c: Point, hw: float) -> Optional[tuple[Point, Point]]:
    """Clip ``line`` to the square of half-width ``hw`` about ``c``."""
    foot = line.foot(c)
    d = line.direction
    lo, hi = -math.inf, math.inf
    for dc, fc, cc in ((d.x, foot.x, c.x), (d.y, foot.y, c.y)):
        if abs(dc) < 1e-15:
            if abs(fc - cc) > hw:
                return None
            continue
        t1, t2 = (cc - hw - fc) / dc, (cc + hw - fc) / dc
        lo, hi = max(lo, min(t1, t2)), min(hi, max(t1, t2))
    if lo >= hi:
        return None
    return foot + d * lo, foot + d * hi


def _arc_path(circle: Circle, view: Circle) -> Optional[str]:
    """The arc of a huge circle inside the viewing disk as an exact SVG arc."""
    pts = intersect(circle, view)
    if len(pts) < 2:
        return None
    p1, p2 = pts
    ctr, r = circle.center, circle.radius
    mid = (p1 + p2) * 0.5
    m = ctr + (mid - ctr).unit() * r
    large = 0 if dist(m, view.center) < view.radius else 1
    if large:
        m = ctr - (mid - ctr).unit() * r
    sweep = 1 if (p1 - ctr).cross(m - ctr) > 0.0 else 0
    return (f"M {_f(p1.x)} {_f(p1.y)} A {_f(r)} {_f(r)} 0 {large} {sweep} "
            f"{_f(p2.x)} {_f(p2.y)}")


def curve_element(g: GenCircle, c: Point, hw: float, attrs: str) -> Optional[str]:
    if isinstance(g, Line):
        seg = _segment_in_box(g, c, hw)
        if seg is None:
            return None
        p, q = seg
        return f'<line x1="{_f(p.x)}" y1="{_f(p.y)}" x2="{_f(q.x)}" y2="{_f(q.y)}" {attrs}/>'
    if g.radius > HUGE_RADIUS * hw:
        path = _arc_path(g, Circle(c, hw * math.sqrt(2.0)))
        return None if path is None else f'<path d="{path}" {attrs}/>'
    return f'<circle cx="{_f(g.center.x)}" cy="{_f(g.center.y)}" r="{_f(g.radius)}" {attrs}/>'


def _edge_element(g: GenCircle, p: Point, q: Point, attrs: str) -> str:
    """The short arc (or segment) of ``g`` from ``p`` to ``q``."""
    if isinstance(g, Line):
        return f'<line x1="{_f(p.x)}" y1="{_f(p.y)}" x2="{_f(q.x)}" y2="{_f(q.y)}" {attrs}/>'
    ctr, r = g.center, g.radius
    sweep = 1 if (p - ctr).cross(q - ctr) > 0.0 else 0
    return (f'<path d="M {_f(p.x)} {_f(p.y)} A {_f(r)} {_f(r)} 0 0 {sweep} {_f(q.x)} {_f(q.y)}" '
            f'{attrs}/>')


def _text(p: Point, s: str, size: float, extra: str = "") -> str:
    # Text is un-flipped locally so glyphs read upright under the global y-flip.
    return (f'<text transform="translate({_f(p.x)} {_f(p.y)}) scale(1 -1)" font-size="{_f(size)}" '
            f'font-family="sans-serif"{extra}>{escape(s)}</text>')


def render_svg(spec: RenderSpec, w: Optional[Web3] = None) -> str:
    """SVG text for ``spec``; deterministic for identical specs."""
    if w is None:
        w = build(spec.config)
    c, hw = spec.viewport()
    if not hw > 0.0:
        raise InvalidConfig("viewport half-width must be positive")
    if dist(c, w.domain.center) > hw * math.sqrt(2.0) + w.domain.radius:
        raise InvalidConfig("viewport does not meet the web's domain")
    if any(n < 0 for n in spec.leaves):
        raise InvalidConfig("leaf counts must be non-negative")
    sw = hw / 300.0
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.size_px}" height="{spec.size_px}" '
        f'viewBox="{_f(c.x - hw)} {_f(-c.y - hw)} {_f(2 * hw)} {_f(2 * hw)}">',
        f"<title>{escape(w.name)}</title>",
        "<defs>",
        f'<clipPath id="domain"><circle cx="{_f(w.domain.center.x)}" cy="{_f(w.domain.center.y)}" '
        f'r="{_f(w.domain.radius)}"/></clipPath>',
        "</defs>",
        '<g transform="scale(1,-1)">',
        f'<rect x="{_f(c.x - hw)}" y="{_f(c.y - hw)}" width="{_f(2 * hw)}" height="{_f(2 * hw)}" fill="white"/>',
    ]
    out.append(f'<g id="axes" stroke="#999999" stroke-width="{_f(sw)}">')
    if abs(c.y) <= hw:
        out.append(f'<line x1="{_f(c.x - hw)}" y1="0" x2="{_f(c.x + hw)}" y2="0"/>')
    if abs(c.x) <= hw:
        out.append(f'<line x1="0" y1="{_f(c.y - hw)}" x2="0" y2="{_f(c.y + hw)}"/>')
    out.append("</g>")
    out.append(f'<circle id="domain-outline" cx="{_f(w.domain.center.x)}" cy="{_f(w.domain.center.y)}" '
               f'r="{_f(w.domain.radius)}" fill="none" stroke="black" stroke-width="{_f(sw)}" '
               f'stroke-dasharray="{_f(4 * sw)} {_f(3 * sw)}"/>')
    clip = ' clip-path="url(#domain)"' if spec.clip_to_domain else ""
    for color, n in zip(COLORS, spec.leaves):
        out.append(f'<g id="{color}" fill="none" stroke="{escape(spec.colors[color])}" '
                   f'stroke-width="{_f(1.5 * sw)}"{clip}>')
        fol = w.foliation(color)
        for p in leaf_seeds(w, color, n):
            if not w.domain.contains(p):
                continue
            try:
                el = curve_element(fol(p), c, hw, "")
            except GeometryError:
                continue
            if el is not None:
                out.append(el.replace(" />", "/>").replace("  ", " "))
        out.append("</g>")
    if spec.hexagon is not None:
        out.extend(_hexagon_overlay(w, spec, sw))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _hexagon_overlay(w: Web3, spec: RenderSpec, sw: float) -> list[str]:
    o, a1 = spec.hexagon
    try:
        tr: HexTrace = trace_hexagon(w, o, a1)
    except GeometryError as exc:
        raise InvalidConfig(f"hexagon overlay cannot be traced: {exc}") from exc
    out = ['<g id="hexagon">']
    verts = tr.A
    for step in tr.steps:
        p, q = verts[step.k - 2], verts[step.k - 1]
        leaf = w.foliation(step.moving)(p)
        out.append(_edge_element(leaf, p, q, f'fill="none" stroke="{escape(spec.colors[step.moving])}" '
                                             f'stroke-width="{_f(3 * sw)}"'))
    r = 3 * sw
    out.append(f'<circle cx="{_f(tr.O.x)}" cy="{_f(tr.O.y)}" r="{_f(r)}" fill="black"/>')
    out.append(_text(tr.O + Point(2 * r, 2 * r), "O", 14 * sw))
    for k, v in enumerate(verts, start=1):
        out.append(f'<circle cx="{_f(v.x)}" cy="{_f(v.y)}" r="{_f(r)}" fill="black"/>')
        out.append(_text(v + Point(2 * r, -5 * r if k == 7 else 2 * r), _label(k), 12 * sw))
    out.append("</g>")
    return out


def write_svg(spec: RenderSpec, path: Union[str, Path], w: Optional[Web3] = None) -> Path:
    path = Path(path)
    text = render_svg(spec, w)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc}") from exc
    return path
