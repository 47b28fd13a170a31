"""Points, generalized circles, intersections, angles and the Apollonius solver.

A generalized circle is either a proper :class:`Circle` or a :class:`Line`.
Every value here is immutable; all functions are pure.  Tolerances are relative
to a per-call scale ``max(1, radii, |coordinates|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import (
    CoincidentCurves,
    DegenerateConfiguration,
    IdenticallyZero,
    NoRealSolution,
    ZeroDirection,
)

REL_EPS = 1e-12
TANGENCY_BAND = 1e-12


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def __mul__(self, k):  # type: ignore[override]
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return Point(self.x / k, self.y / k)

    def __neg__(self):
        return Point(-self.x, -self.y)

    def dot(self, other) -> float:
        return self.x * other[0] + self.y * other[1]

    def cross(self, other) -> float:
        return self.x * other[1] - self.y * other[0]

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def unit(self) -> "Point":
        n = self.norm()
        if n == 0.0:
            raise ZeroDirection("cannot normalize the zero vector")
        return Point(self.x / n, self.y / n)

    def perp(self) -> "Point":
        """Counterclockwise quarter turn."""
        return Point(-self.y, self.x)

    def rotate(self, angle: float) -> "Point":
        c, s = math.cos(angle), math.sin(angle)
        return Point(c * self.x - s * self.y, s * self.x + c * self.y)


def dist(p: Sequence[float], q: Sequence[float]) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _scale(*values: float) -> float:
    return max([1.0] + [abs(v) for v in values])


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", Point(float(self.center[0]), float(self.center[1])))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError(f"circle radius must be positive and finite, got {self.radius}")
        if not all(math.isfinite(v) for v in self.center):
            raise ValueError("circle center must be finite")

    @property
    def scale(self) -> float:
        return _scale(self.center.x, self.center.y, self.radius)

    def value(self, p: Sequence[float]) -> float:
        """Signed power of ``p``; negative inside."""
        dx, dy = p[0] - self.center.x, p[1] - self.center.y
        return dx * dx + dy * dy - self.radius * self.radius

    def distance(self, p: Sequence[float]) -> float:
        """Unsigned distance from ``p`` to the curve."""
        return abs(dist(p, self.center) - self.radius)

    def coeffs(self) -> tuple[float, float, float, float]:
        cx, cy = self.center
        return (1.0, -2.0 * cx, -2.0 * cy, cx * cx + cy * cy - self.radius ** 2)

    def normal_at(self, p: Sequence[float]) -> Point:
        return (Point(*p) - self.center).unit()

    def tangent_at(self, p: Sequence[float]) -> Point:
        return self.normal_at(p).perp()

    def point_at(self, t: float) -> Point:
        """Point at polar angle ``t`` about the center."""
        return Point(self.center.x + self.radius * math.cos(t), self.center.y + self.radius * math.sin(t))

    def param_of(self, p: Sequence[float]) -> float:
        return math.atan2(p[1] - self.center.y, p[0] - self.center.x)

    def move_along(self, p: Sequence[float], s: float) -> Point:
        """Move ``p`` by arc length ``s`` counterclockwise."""
        return self.point_at(self.param_of(p) + s / self.radius)


@dataclass(frozen=True)
class Line:
    """The line ``normal . X = offset`` with a unit normal.

    Canonical form: ``offset > 0``, or ``offset == 0`` with the normal in the
    upper half-plane (``ny > 0`` or ``ny == 0 and nx > 0``).
    """

    normal: Point
    offset: float

    def __post_init__(self):
        nx, ny = float(self.normal[0]), float(self.normal[1])
        n = math.hypot(nx, ny)
        if n == 0.0 or not math.isfinite(n):
            raise ZeroDirection("line normal must be nonzero")
        nx, ny, off = nx / n, ny / n, float(self.offset) / n
        if off < 0.0 or (off == 0.0 and (ny < 0.0 or (ny == 0.0 and nx < 0.0))):
            nx, ny, off = -nx, -ny, -off
        object.__setattr__(self, "normal", Point(nx + 0.0, ny + 0.0))
        object.__setattr__(self, "offset", off + 0.0)

    @classmethod
    def through(cls, p: Sequence[float], q: Sequence[float]) -> "Line":
        d = Point(q[0] - p[0], q[1] - p[1])
        if d.norm() == 0.0:
            raise ZeroDirection("line through coincident points")
        n = d.perp().unit()
        return cls(n, n.dot(p))

    @classmethod
    def from_point_direction(cls, p: Sequence[float], d: Sequence[float]) -> "Line":
        n = Point(*d).perp().unit()
        return cls(n, n.dot(p))

    @property
    def direction(self) -> Point:
        return self.normal.perp()

    @property
    def scale(self) -> float:
        return _scale(self.offset)

    def value(self, p: Sequence[float]) -> float:
        return self.normal.dot(p) - self.offset

    def distance(self, p: Sequence[float]) -> float:
        return abs(self.value(p))

    def coeffs(self) -> tuple[float, float, float, float]:
        return (0.0, self.normal.x, self.normal.y, -self.offset)

    def normal_at(self, p: Sequence[float]) -> Point:
        return self.normal

    def tangent_at(self, p: Sequence[float]) -> Point:
        return self.direction

    def foot(self, p: Sequence[float]) -> Point:
        return Point(*p) - self.normal * self.value(p)

    def point_at(self, t: float) -> Point:
        return self.normal * self.offset + self.direction * t

    def param_of(self, p: Sequence[float]) -> float:
        return self.direction.dot(p)

    def move_along(self, p: Sequence[float], s: float) -> Point:
        return Point(*p) + self.direction * s


GenCircle = Union[Circle, Line]


def from_coeffs(a: float, b: float, c: float, d: float) -> GenCircle:
    """Generalized circle ``a(x^2+y^2) + b x + c y + d = 0``."""
    s = max(abs(a), abs(b), abs(c), abs(d))
    if s == 0.0:
        raise IdenticallyZero("all circle coefficients vanish")
    a, b, c, d = a / s, b / s, c / s, d / s
    if abs(a) <= 1e-15 * max(abs(b), abs(c), abs(d), 1e-300) and (b or c):
        return Line(Point(b, c), -d)
    cx, cy = -b / (2 * a), -c / (2 * a)
    r2 = cx * cx + cy * cy - d / a
    if not r2 > 0.0:
        raise DegenerateConfiguration(f"coefficients describe an imaginary or point circle (r^2={r2:g})")
    return Circle(Point(cx, cy), math.sqrt(r2))


def circle_through(p: Sequence[float], q: Sequence[float], r: Sequence[float]) -> GenCircle:
    """Generalized circle through three distinct points (a line if collinear)."""
    p, q, r = Point(*p), Point(*q), Point(*r)
    u, v = q - p, r - p
    den = 2.0 * u.cross(v)
    s = max(u.norm(), v.norm())
    if s == 0.0 or dist(q, r) == 0.0:
        raise DegenerateConfiguration("circle through coincident points")
    if abs(den) <= 1e-14 * s * s:
        return Line.through(p, q if u.norm() >= v.norm() else r)
    uu, vv = u.dot(u), v.dot(v)
    cx = (v.y * uu - u.y * vv) / den
    cy = (u.x * vv - v.x * uu) / den
    c = Point(cx, cy)
    return Circle(p + c, c.norm())


def curve_scale(g: GenCircle) -> float:
    return g.scale


def same_curve(g1: GenCircle, g2: GenCircle, tol: float = 1e-10) -> bool:
    """Point-set equality up to ``tol`` relative to the curves' scale."""
    if isinstance(g1, Circle) and isinstance(g2, Circle):
        s = max(g1.scale, g2.scale)
        return dist(g1.center, g2.center) <= tol * s and abs(g1.radius - g2.radius) <= tol * s
    if isinstance(g1, Line) and isinstance(g2, Line):
        s = max(g1.scale, g2.scale)
        if abs(g1.offset - g2.offset) > tol * s:
            return False
        n1, n2 = g1.normal, g2.normal
        if g1.offset <= tol * s and g2.offset <= tol * s:
            return abs(n1.cross(n2)) <= tol
        return dist(n1, n2) <= tol
    return False


def on_curve(g: GenCircle, p: Sequence[float], tol: float = REL_EPS) -> bool:
    return g.distance(p) <= tol * max(g.scale, _scale(p[0], p[1]))


def _intersect_lines(l1: Line, l2: Line) -> list[Point]:
    det = l1.normal.cross(l2.normal)
    if abs(det) <= 1e-15:
        if same_curve(l1, l2, 1e-13):
            raise CoincidentCurves("lines coincide")
        return []
    x = (l1.offset * l2.normal.y - l2.offset * l1.normal.y) / det
    y = (l1.normal.x * l2.offset - l2.normal.x * l1.offset) / det
    return [Point(x, y)]


def _intersect_line_circle(l: Line, c: Circle, band: float) -> list[Point]:
    delta = l.value(c.center)
    foot = c.center - l.normal * delta
    h2 = (c.radius - abs(delta)) * (c.radius + abs(delta))
    s = max(c.scale, l.scale)
    if abs(h2) <= band * c.radius * s:  # h2 carries round-off of order eps * r * scale
        return [foot]
    if h2 < 0.0:
        return []
    h = math.sqrt(h2)
    d = l.direction
    return [foot - d * h, foot + d * h]


def _intersect_circles(c1: Circle, c2: Circle, band: float) -> list[Point]:
    swap = c1.radius > c2.radius
    if swap:  # work from the smaller circle; avoids cancellation for huge radii
        c1, c2 = c2, c1
    u = c2.center - c1.center
    D = u.norm()
    s = max(c1.scale, c2.scale)
    if D <= 1e-15 * s:
        if abs(c1.radius - c2.radius) <= 1e-13 * s:
            raise CoincidentCurves("circles coincide")
        return []
    a = ((D - c2.radius) * (D + c2.radius) + c1.radius ** 2) / (2.0 * D)
    h2 = (c1.radius - a) * (c1.radius + a)
    e = u / D
    base = c1.center + e * a
    if abs(h2) <= band * c1.radius * s:
        return [base]
    if h2 < 0.0:
        return []
    h = math.sqrt(h2)
    w = e.perp()
    pts = [base - w * h, base + w * h]
    return pts[::-1] if swap else pts


def intersect(g1: GenCircle, g2: GenCircle, band: float = TANGENCY_BAND) -> list[Point]:
    """Common points of two generalized circles (0, 1 or 2 points).

    Raises CoincidentCurves when the point sets coincide.  A discriminant inside
    the tangency band returns the single tangency point.
    """
    if isinstance(g1, Line):
        if isinstance(g2, Line):
            return _intersect_lines(g1, g2)
        return _intersect_line_circle(g1, g2, band)
    if isinstance(g2, Line):
        return _intersect_line_circle(g2, g1, band)
    return _intersect_circles(g1, g2, band)


def oriented_angle(d1: Sequence[float], d2: Sequence[float]) -> float:
    """Angle in [0, pi) turning the line along ``d1`` counterclockwise onto ``d2``."""
    if (d1[0] == 0.0 and d1[1] == 0.0) or (d2[0] == 0.0 and d2[1] == 0.0):
        raise ZeroDirection("oriented angle of a zero direction")
    a = math.atan2(d1[0] * d2[1] - d1[1] * d2[0], d1[0] * d2[0] + d1[1] * d2[1])
    a = a % math.pi
    return 0.0 if a >= math.pi else a


def wrap_half_turn(a: float) -> float:
    """Representative of ``a`` modulo pi in (-pi/2, pi/2]."""
    a = math.fmod(a, math.pi)
    if a <= -math.pi / 2:
        a += math.pi
    elif a > math.pi / 2:
        a -= math.pi
    return a


def distance_point_line(p: Sequence[float], line: Line) -> float:
    return line.distance(p)


def crossing_angle(g1: GenCircle, g2: GenCircle, p: Sequence[float]) -> float:
    """Angle in [0, pi/2] between the two curves' tangents at ``p``."""
    a = oriented_angle(g1.tangent_at(p), g2.tangent_at(p))
    return min(a, math.pi - a)


class Root(NamedTuple):
    value: float
    multiplicity: int


def solve_quadratic(a: float, b: float, c: float, band: float = 1e-12) -> list[Root]:
    if a == 0.0:
        if b == 0.0:
            if c == 0.0:
                raise IdenticallyZero("zero polynomial")
            return []
        return [Root(-c / b, 1)]
    disc = b * b - 4.0 * a * c
    if abs(disc) <= band * max(b * b, abs(4.0 * a * c)):
        return [Root(-b / (2.0 * a), 2)]
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(sq, b))
    r1, r2 = q / a, (c / q if q != 0.0 else -q / a)
    return [Root(v, 1) for v in sorted((r1, r2))]


def _polish(coeffs: Sequence[float], r: float, steps: int = 8) -> float:
    """Newton steps while the residual keeps shrinking (seeds near 0 may carry cancellation error)."""
    c3, c2, c1, c0 = coeffs
    for _ in range(steps):
        p = ((c3 * r + c2) * r + c1) * r + c0
        if p == 0.0:
            break
        dp = (3.0 * c3 * r + 2.0 * c2) * r + c1
        if dp == 0.0:
            break
        step = p / dp
        if not math.isfinite(step):
            break
        r_new = r - step
        p_new = ((c3 * r_new + c2) * r_new + c1) * r_new + c0
        if abs(p_new) >= abs(p):
            break
        r = r_new
    return r


def solve_cubic(c3: float, c2: float, c1: float, c0: float, band: float = 1e-12) -> list[Root]:
    """Real roots of ``c3 t^3 + c2 t^2 + c1 t + c0`` in ascending order.

    Closed-form trigonometric/Cardano seed, then Newton polishing of simple roots.
    """
    cs = (float(c3), float(c2), float(c1), float(c0))
    if all(v == 0.0 for v in cs):
        raise IdenticallyZero("zero polynomial")
    if c3 == 0.0:
        return solve_quadratic(c2, c1, c0, band)
    a, b, c = c2 / c3, c1 / c3, c0 / c3
    # t = mag * s keeps the depressed-cubic arithmetic at unit scale
    mag = max(abs(a), abs(b) ** 0.5, abs(c) ** (1.0 / 3.0))
    if mag == 0.0:
        return [Root(0.0, 3)]
    a, b, c = a / mag, b / mag / mag, c / mag / mag / mag
    shift = a / 3.0
    p = b - a * a / 3.0
    q = 2.0 * a ** 3 / 27.0 - a * b / 3.0 + c
    if abs(p) <= 1e-14 and abs(q) <= 1e-14:
        return [Root(-shift * mag, 3)]
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    ref = (q / 2.0) ** 2 + abs(p / 3.0) ** 3
    roots: list[Root]
    if abs(disc) <= band * ref:
        # double root at -3q/(2p), simple root at 3q/p
        simple, double = 3.0 * q / p - shift, -1.5 * q / p - shift
        roots = [Root(_polish(cs, simple * mag), 1), Root(double * mag, 2)]
    elif disc > 0.0:
        s = math.sqrt(disc)
        u = -math.copysign(abs(abs(q) / 2.0 + s) ** (1.0 / 3.0), q)
        t = u - p / (3.0 * u) if u != 0.0 else 0.0
        roots = [Root(_polish(cs, (t - shift) * mag), 1)]
    else:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        theta = math.acos(max(-1.0, min(1.0, arg))) / 3.0
        roots = [
            Root(_polish(cs, (m * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift) * mag), 1)
            for k in range(3)
        ]
    return sorted(roots, key=lambda r: r.value)


def cubic_residual_ok(coeffs: Sequence[float], r: float, tol: float = 1e-10) -> bool:
    c3, c2, c1, c0 = coeffs
    p = ((c3 * r + c2) * r + c1) * r + c0
    return abs(p) <= tol * max(abs(v) for v in coeffs) * max(1.0, abs(r)) ** 3


# ---------------------------------------------------------------------------
# Inversion and the point-circle-circle Apollonius problem


def invert_point(p: Sequence[float], center: Sequence[float], k2: float = 1.0) -> Point:
    v = Point(p[0] - center[0], p[1] - center[1])
    n2 = v.dot(v)
    if n2 == 0.0:
        raise DegenerateConfiguration("cannot invert the inversion center")
    return Point(*center) + v * (k2 / n2)


def invert_curve(g: GenCircle, center: Sequence[float], k2: float = 1.0) -> GenCircle:
    """Image of a generalized circle under inversion in the circle (center, sqrt(k2))."""
    o = Point(*center)
    if isinstance(g, Line):
        delta = g.offset - g.normal.dot(o)
        if abs(delta) <= REL_EPS * _scale(g.offset, o.x, o.y):
            return g
        return Circle(o + g.normal * (k2 / (2.0 * delta)), k2 / (2.0 * abs(delta)))
    v = g.center - o
    pw = v.dot(v) - g.radius ** 2
    if abs(pw) <= REL_EPS * g.scale ** 2:
        n = v.unit()
        return Line(n, n.dot(o) + k2 / (2.0 * g.radius))
    return Circle(o + v * (k2 / pw), g.radius * k2 / abs(pw))


def _common_tangents(g1: GenCircle, g2: GenCircle) -> list[Line]:
    if isinstance(g1, Line) and isinstance(g2, Line):
        raise DegenerateConfiguration("point lies on both circles")
    if isinstance(g1, Line) or isinstance(g2, Line):
        line, circ = (g1, g2) if isinstance(g1, Line) else (g2, g1)
        n = line.normal
        out = []
        for sgn in (1.0, -1.0):
            cand = Line(n, n.dot(circ.center) + sgn * circ.radius)
            if not same_curve(cand, line, 1e-12):
                out.append(cand)
        return out
    u = g1.center - g2.center
    D2 = u.dot(u)
    out = []
    if D2 == 0.0:
        return out
    for s2 in (1.0, -1.0):
        k = g1.radius - s2 * g2.radius
        h2 = D2 - k * k
        if abs(h2) <= 1e-14 * D2:
            h2 = 0.0
        if h2 < 0.0:
            continue
        h = math.sqrt(h2)
        for sg in ((1.0, -1.0) if h > 0.0 else (1.0,)):
            n = (u * k + u.perp() * (sg * h)) / D2
            out.append(Line(n, n.dot(g1.center) - g1.radius))
    return out


def apollonius_pcc(a: Sequence[float], c1: GenCircle, c2: GenCircle) -> list[GenCircle]:
    """Generalized circles through ``a`` tangent to both ``c1`` and ``c2`` (at most 4).

    Inversion centered at ``a`` turns the problem into common tangent lines of
    the two image curves; the tangents are inverted back.
    """
    if same_curve(c1, c2, 1e-13):
        raise CoincidentCurves("the two circles coincide")
    a = Point(*a)
    s = max(c1.scale, c2.scale, _scale(a.x, a.y))
    if c1.distance(a) <= REL_EPS * s and c2.distance(a) <= REL_EPS * s:
        raise DegenerateConfiguration("point lies on both circles")
    k2 = s * s
    i1 = invert_curve(c1, a, k2)
    i2 = invert_curve(c2, a, k2)
    out: list[GenCircle] = []
    for t in _common_tangents(i1, i2):
        img = invert_curve(t, a, k2)
        if same_curve(img, c1, 1e-10) or same_curve(img, c2, 1e-10):
            continue
        if not any(same_curve(img, o, 1e-10) for o in out):
            out.append(img)
    if not out:
        raise NoRealSolution("no real circle through the point tangent to both circles")
    return out


def tangency_sign(s: GenCircle, c: GenCircle) -> int:
    """+1 for external tangency (or a line on the outside), -1 for internal."""
    if isinstance(s, Circle) and isinstance(c, Circle):
        d = dist(s.center, c.center)
        return 1 if abs(d - (s.radius + c.radius)) <= abs(d - abs(s.radius - c.radius)) else -1
    if isinstance(s, Line) and isinstance(c, Line):
        return 1
    line, circ = (s, c) if isinstance(s, Line) else (c, s)
    return 1 if line.value(circ.center) >= 0.0 else -1


def tangency_residual(s: GenCircle, c: GenCircle) -> float:
    """Distance from exact tangency of two generalized circles."""
    if isinstance(s, Circle) and isinstance(c, Circle):
        d = dist(s.center, c.center)
        return min(abs(d - (s.radius + c.radius)), abs(d - abs(s.radius - c.radius)))
    if isinstance(s, Line) and isinstance(c, Line):
        return abs(s.normal.cross(c.normal))
    line, circ = (s, c) if isinstance(s, Line) else (c, s)
    return abs(line.distance(circ.center) - circ.radius)


# ---------------------------------------------------------------------------
# Domains


@dataclass(frozen=True)
class Predicate:
    """A named strict inequality on points.

    kinds: ``halfplane`` (nx, ny, c): nx*x + ny*y < c;
    ``inside_circle`` / ``outside_circle`` (cx, cy, r).
    """

    kind: str
    params: tuple[float, ...]

    def __call__(self, p: Sequence[float]) -> bool:
        if self.kind == "halfplane":
            nx, ny, c = self.params
            return nx * p[0] + ny * p[1] < c
        if self.kind in ("inside_circle", "outside_circle"):
            cx, cy, r = self.params
            d = math.hypot(p[0] - cx, p[1] - cy)
            return d < r if self.kind == "inside_circle" else d > r
        raise ValueError(f"unknown predicate kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": list(self.params)}

    @classmethod
    def from_dict(cls, d: dict) -> "Predicate":
        p = cls(str(d["kind"]), tuple(float(v) for v in d["params"]))
        if p.kind not in ("halfplane", "inside_circle", "outside_circle"):
            raise ValueError(f"unknown predicate kind {p.kind!r}")
        return p


@dataclass(frozen=True)
class Domain:
    center: Point
    radius: float
    predicates: tuple[Predicate, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "center", Point(float(self.center[0]), float(self.center[1])))
        object.__setattr__(self, "predicates", tuple(self.predicates))

    def contains(self, p: Sequence[float]) -> bool:
        if dist(p, self.center) >= self.radius:
            return False
        return all(pred(p) for pred in self.predicates)

    __contains__ = contains

    def to_dict(self) -> dict:
        return {
            "center": [self.center.x, self.center.y],
            "radius": self.radius,
            "predicates": [p.to_dict() for p in self.predicates],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Domain":
        return cls(
            Point(float(d["center"][0]), float(d["center"][1])),
            float(d["radius"]),
            tuple(Predicate.from_dict(p) for p in d.get("predicates", [])),
        )


def points_in(iterable: Iterable[Sequence[float]]) -> list[Point]:
    return [Point(float(p[0]), float(p[1])) for p in iterable]
