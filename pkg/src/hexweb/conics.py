"""Conics in general position and their focal apparatus.

A :class:`Conic` is stored in a canonical frame (center or vertex at the
origin, axis along +x) plus a rigid placement.  All tangency computations run in
the canonical frame and are mapped back.

Canonical equations:

* ellipse ``x^2/a^2 + y^2/b^2 = 1`` (a >= b > 0), foci ``(+-c, 0)``
* hyperbola ``x^2/a^2 - y^2/b^2 = 1``, foci ``(+-c, 0)``
* parabola ``y^2 = 4 b x`` with ``b`` the vertex-to-focus distance, focus ``(b, 0)``
* circle ``x^2 + y^2 = a^2`` (a == b)
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    AmbiguousOrder,
    AngleOutOfRange,
    DegenerateRoots,
    NoRealTangent,
    NotCentralConic,
    OutsideDomain,
    WrongEccentricity,
)
from .geom import Circle, GenCircle, Line, Point, dist, oriented_angle, solve_quadratic

KINDS = ("ellipse", "hyperbola", "parabola", "circle")
ON_CONIC_TOL = 1e-12


@dataclass(frozen=True)
class Conic:
    kind: str
    a: float
    b: float
    center: Point = Point(0.0, 0.0)
    angle: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", Point(float(self.center[0]), float(self.center[1])))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "angle", float(self.angle))
        if self.kind not in KINDS:
            raise ValueError(f"unknown conic kind {self.kind!r}")
        if self.kind == "ellipse" and not (self.a >= self.b > 0.0):
            raise ValueError("ellipse needs a >= b > 0")
        if self.kind == "hyperbola" and not (self.a > 0.0 and self.b > 0.0):
            raise ValueError("hyperbola needs a, b > 0")
        if self.kind == "parabola" and not self.b > 0.0:
            raise ValueError("parabola needs a positive focal distance b")
        if self.kind == "circle" and not (self.a > 0.0 and self.a == self.b):
            raise ValueError("circle needs a == b > 0")

    # -- constructors -----------------------------------------------------
    @classmethod
    def ellipse(cls, a, b, center=(0.0, 0.0), angle=0.0) -> "Conic":
        return cls("ellipse", a, b, Point(*center), angle)

    @classmethod
    def hyperbola(cls, a, b, center=(0.0, 0.0), angle=0.0) -> "Conic":
        return cls("hyperbola", a, b, Point(*center), angle)

    @classmethod
    def parabola(cls, focal, vertex=(0.0, 0.0), angle=0.0) -> "Conic":
        return cls("parabola", 0.0, focal, Point(*vertex), angle)

    @classmethod
    def circle(cls, r, center=(0.0, 0.0)) -> "Conic":
        return cls("circle", r, r, Point(*center), 0.0)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "a": self.a, "b": self.b,
                "center": [self.center.x, self.center.y], "angle": self.angle}

    @classmethod
    def from_dict(cls, d: dict) -> "Conic":
        return cls(d["kind"], float(d.get("a", 0.0)), float(d["b"]),
                   Point(*map(float, d.get("center", (0.0, 0.0)))), float(d.get("angle", 0.0)))

    # -- frames -----------------------------------------------------------
    def to_canonical(self, p: Sequence[float]) -> Point:
        return (Point(*p) - self.center).rotate(-self.angle)

    def from_canonical(self, p: Sequence[float]) -> Point:
        return Point(*p).rotate(self.angle) + self.center

    def dir_to_canonical(self, d: Sequence[float]) -> Point:
        return Point(*d).rotate(-self.angle)

    def dir_from_canonical(self, d: Sequence[float]) -> Point:
        return Point(*d).rotate(self.angle)

    @property
    def scale(self) -> float:
        return max(self.a, self.b)

    @property
    def is_central(self) -> bool:
        return self.kind != "parabola"

    @property
    def focal_distance(self) -> float:
        """Center-to-focus distance c (vertex-to-focus for a parabola)."""
        if self.kind == "ellipse":
            return math.sqrt(max(self.a * self.a - self.b * self.b, 0.0))
        if self.kind == "hyperbola":
            return math.hypot(self.a, self.b)
        if self.kind == "parabola":
            return self.b
        return 0.0

    @property
    def eccentricity(self) -> float:
        if self.kind == "parabola":
            return 1.0
        return self.focal_distance / self.a

    @property
    def foci(self) -> tuple[Point, Point]:
        c = self.focal_distance
        if self.kind == "parabola":
            f = self.from_canonical((c, 0.0))
            return (f, f)
        return (self.from_canonical((-c, 0.0)), self.from_canonical((c, 0.0)))

    @property
    def focus(self) -> Point:
        return self.foci[0]

    def directrix(self, index: int = 0) -> Line:
        """Directrix belonging to focus ``index`` (0 = the -x focus)."""
        if self.kind == "parabola":
            x0 = -self.b
        elif self.kind == "circle":
            raise NotCentralConic("a circle has no directrix")
        else:
            x0 = self.a / self.eccentricity * (-1.0 if index == 0 else 1.0)
        return Line(self.dir_from_canonical((1.0, 0.0)),
                    self.dir_from_canonical((1.0, 0.0)).dot(self.from_canonical((x0, 0.0))))

    @property
    def major_axis(self) -> Line:
        return Line.from_point_direction(self.center, self.dir_from_canonical((1.0, 0.0)))

    @property
    def minor_axis(self) -> Line:
        return Line.from_point_direction(self.center, self.dir_from_canonical((0.0, 1.0)))

    # -- algebra ----------------------------------------------------------
    @functools.cached_property
    def matrix(self) -> np.ndarray:
        """Symmetric 3x3 matrix of the canonical equation X^T M X = 0, X = (x, y, 1)."""
        a, b = self.a, self.b
        if self.kind in ("ellipse", "circle"):
            return np.diag([1.0 / a ** 2, 1.0 / b ** 2, -1.0])
        if self.kind == "hyperbola":
            return np.diag([1.0 / a ** 2, -1.0 / b ** 2, -1.0])
        return np.array([[0.0, 0.0, -2.0 * b], [0.0, 1.0, 0.0], [-2.0 * b, 0.0, 0.0]])

    def _q(self, p: Point) -> float:
        m = self.matrix
        x, y = p
        return (m[0, 0] * x * x + 2 * m[0, 1] * x * y + m[1, 1] * y * y
                + 2 * m[0, 2] * x + 2 * m[1, 2] * y + m[2, 2])

    def value(self, p: Sequence[float]) -> float:
        """Canonical equation evaluated at ``p`` (negative inside an ellipse)."""
        return self._q(self.to_canonical(p))

    def _grad_half(self, p: Point) -> Point:
        m = self.matrix
        return Point(m[0, 0] * p.x + m[0, 1] * p.y + m[0, 2], m[0, 1] * p.x + m[1, 1] * p.y + m[1, 2])

    def normal_at(self, p: Sequence[float]) -> Point:
        return self.dir_from_canonical(self._grad_half(self.to_canonical(p)).unit())

    def tangent_at(self, p: Sequence[float]) -> Point:
        return self.normal_at(p).perp()

    def tangent_line_at(self, p: Sequence[float]) -> Line:
        return Line.from_point_direction(p, self.tangent_at(p))

    def point_at(self, t: float, branch: int = 0) -> Point:
        """Parametrized point (branch selects the hyperbola branch: 0 right, 1 left)."""
        a, b = self.a, self.b
        if self.kind in ("ellipse", "circle"):
            q = (a * math.cos(t), b * math.sin(t))
        elif self.kind == "hyperbola":
            q = ((1 if branch == 0 else -1) * a * math.cosh(t), b * math.sinh(t))
        else:
            q = (b * t * t, 2.0 * b * t)
        return self.from_canonical(q)

    def on_conic(self, p: Sequence[float], tol: float = ON_CONIC_TOL) -> bool:
        return abs(self.value(p)) <= tol * max(1.0, abs(self._q_scale(p)))

    def _q_scale(self, p: Sequence[float]) -> float:
        q = self.to_canonical(p)
        if self.kind == "parabola":
            return max(q.y * q.y, 4 * self.b * abs(q.x)) / max(self.b * self.b, 1e-300)
        return 1.0

    def line_intersections(self, p: Sequence[float], d: Sequence[float]) -> list[Point]:
        """Real intersections of the line through ``p`` with direction ``d``."""
        P = self.to_canonical(p)
        D = self.dir_to_canonical(d)
        m = self.matrix
        g = self._grad_half(P)
        qa = m[0, 0] * D.x * D.x + 2 * m[0, 1] * D.x * D.y + m[1, 1] * D.y * D.y
        qb = 2.0 * D.dot(g)
        qc = self._q(P)
        return [self.from_canonical(P + D * r.value) for r in solve_quadratic(qa, qb, qc, 0.0)]


class TangentPair(NamedTuple):
    left: Line
    right: Line


def _direction_form(conic: Conic, P: Point) -> tuple[float, float, float]:
    """Coefficients (p, q, r) of the form D(d) = p dx^2 + 2q dx dy + r dy^2.

    D(d) > 0 iff the line through P with direction d is a secant.
    """
    m = conic.matrix
    g = conic._grad_half(P)
    qa = conic._q(P)
    p = g.x * g.x - qa * m[0, 0]
    q = g.x * g.y - qa * m[0, 1]
    r = g.y * g.y - qa * m[1, 1]
    return p, q, r


def _null_directions(p: float, q: float, r: float) -> list[Point]:
    disc = q * q - p * r
    s = max(abs(p), abs(q), abs(r))
    if s == 0.0:
        return []
    if disc < -1e-13 * s * s:
        return []
    disc = max(disc, 0.0)
    sq = math.sqrt(disc)
    # roots of p x^2 + 2 q x + r (d = (x, 1)) in product form: x = m / p and x = r / m
    m = -(q + math.copysign(sq, q))
    if m == 0.0:
        return [Point(1.0, 0.0) if p == 0.0 else Point(0.0, 1.0)]
    dirs = [Point(m, p).unit(), Point(r, m).unit()]
    if sq <= 1e-7 * s:
        return dirs[:1]
    return dirs


def tangent_lines_from_point(conic: Conic, a: Sequence[float]) -> TangentPair:
    """Left and right tangent lines from ``a`` to ``conic``.

    Rotating a non-secant line through ``a`` counterclockwise, the left tangent
    is met first.  Equivalently, the left tangent is the tangent direction at
    which a further counterclockwise turn makes the line a secant.
    """
    a = Point(*a)
    P = conic.to_canonical(a)
    if conic.on_conic(a):
        t = conic.tangent_line_at(a)
        return TangentPair(t, t)
    p, q, r = _direction_form(conic, P)
    dirs = _null_directions(p, q, r)
    if not dirs:
        raise NoRealTangent(f"no real tangent from {tuple(a)}")
    if len(dirs) == 1:
        raise AmbiguousOrder("tangent directions coincide")
    left = right = None
    for d in dirs:
        e = d.perp()
        slope = e.x * (p * d.x + q * d.y) + e.y * (q * d.x + r * d.y)
        if slope > 0.0:
            left = d
        elif slope < 0.0:
            right = d
    if left is None or right is None:
        raise AmbiguousOrder("could not separate left and right tangents")
    return TangentPair(
        Line.from_point_direction(a, conic.dir_from_canonical(left)),
        Line.from_point_direction(a, conic.dir_from_canonical(right)),
    )


def left_tangent(conic: Conic, a: Sequence[float]) -> Line:
    return tangent_lines_from_point(conic, a).left


def right_tangent(conic: Conic, a: Sequence[float]) -> Line:
    return tangent_lines_from_point(conic, a).right


def _meets(conic: Conic, a: Point, theta: float) -> bool:
    return bool(conic.line_intersections(a, (math.cos(theta), math.sin(theta))))


def tangent_order_by_sweep(conic: Conic, a: Sequence[float], samples: int = 720) -> TangentPair:
    """Left/right tangents found by literally rotating a line about ``a``.

    A reference implementation of the sweep definition: find a non-secant start
    direction, rotate counterclockwise through a half-turn in ``samples`` steps,
    refine the two moments where the line starts/stops meeting the conic by
    bisection, and report them in order of occurrence.
    """
    a = Point(*a)
    step = math.pi / samples
    start = None
    for k in range(samples):
        if not _meets(conic, a, k * step):
            start = k * step
            break
    if start is None:
        raise NoRealTangent("every line through the point meets the conic")
    # a start direction that is itself (almost) tangent gets nudged
    if _meets(conic, a, start + 1e-6) != _meets(conic, a, start - 1e-6):
        start += 1e-6
    moments = []
    prev = False
    for k in range(1, samples + 1):
        th = start + k * step
        cur = _meets(conic, a, th)
        if cur != prev:
            lo, hi = th - step, th
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if _meets(conic, a, mid) == prev:
                    lo = mid
                else:
                    hi = mid
            moments.append(0.5 * (lo + hi))
        prev = cur
    if len(moments) != 2:
        raise AmbiguousOrder(f"sweep found {len(moments)} tangency moments")
    lines = [Line.from_point_direction(a, (math.cos(t), math.sin(t))) for t in moments]
    return TangentPair(lines[0], lines[1])


# ---------------------------------------------------------------------------
# Pedal circle and doubly tangent circles


def pedal_circle(conic: Conic, focus: Sequence[float]) -> Circle:
    """Circle carrying the feet of perpendiculars from ``focus`` to all tangents."""
    if not conic.is_central:
        raise NotCentralConic("pedal circle needs an ellipse, hyperbola or circle")
    f = Point(*focus)
    candidates = (conic.center,) if conic.kind == "circle" else conic.foci
    if min(dist(f, c) for c in candidates) > 1e-9 * conic.scale:
        raise ValueError(f"{tuple(f)} is not a focus of the conic")
    return Circle(conic.center, conic.a)


def focal_tangent_angle(conic: Conic, a: Sequence[float], focus: Sequence[float]) -> float:
    """Oriented angle from the line (focus, a) to the left tangent from ``a``."""
    a = Point(*a)
    return oriented_angle(a - Point(*focus), left_tangent(conic, a).direction)


@functools.lru_cache(maxsize=64)
def admissible_angles(conic: Conic, focus_index: int = 0, samples: int = 4000) -> tuple[float, float]:
    """Range of the focal-line/tangent angle attained at points of the conic."""
    f = conic.foci[focus_index]
    vals = []
    if conic.kind == "hyperbola":
        ts = [(t, br) for br in (0, 1) for t in np.linspace(-4.0, 4.0, samples)]
    elif conic.kind == "parabola":
        ts = [(t, 0) for t in np.linspace(-20.0, 20.0, samples)]
    else:
        ts = [(t, 0) for t in np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)]
    for t, br in ts:
        p = conic.point_at(float(t), br)
        if dist(p, f) == 0.0:
            continue
        vals.append(oriented_angle(p - f, conic.tangent_at(p)))
    return (min(vals), max(vals))


def doubly_tangent_circle_minor(conic: Conic, phi: float, focus_index: int = 0,
                                check_range: bool = True) -> Circle:
    """Circle of points whose focal line meets the left tangent at angle ``phi``.

    It is the pedal circle rotated about the focus by ``pi/2 - phi`` and scaled
    from the focus by ``1/|sin phi|``; it touches the conic twice, symmetrically
    about the minor axis, and its center lies on that axis.
    """
    if conic.kind not in ("ellipse", "hyperbola"):
        raise NotCentralConic("doubly tangent minor-axis circles need a general conic")
    s = abs(math.sin(phi))
    if s < 1e-9:
        raise AngleOutOfRange(f"sin(phi) vanishes at phi={phi}")
    if check_range:
        lo, hi = admissible_angles(conic, focus_index)
        if not lo < phi < hi:
            raise AngleOutOfRange(f"phi={phi:.6g} outside admissible ({lo:.6g}, {hi:.6g})")
    f = conic.foci[focus_index]
    w0 = pedal_circle(conic, f)
    c = f + (w0.center - f).rotate(math.pi / 2 - phi) / s
    return Circle(c, w0.radius / s)


def minor_circle_tangency_points(conic: Conic, phi: float, focus_index: int = 0,
                                 samples: int = 4000) -> list[Point]:
    """Points T of the conic where the focal-line/tangent angle equals ``phi``."""
    f = conic.foci[focus_index]

    def g(t: float) -> float:
        p = conic.point_at(t)
        return oriented_angle(p - f, conic.tangent_at(p)) - phi

    ts = np.linspace(0.0, 2.0 * math.pi, samples + 1)
    vals = [g(float(t)) for t in ts]
    out = []
    for i in range(samples):
        v0, v1 = vals[i], vals[i + 1]
        if v0 == 0.0:
            out.append(conic.point_at(float(ts[i])))
        elif v0 * v1 < 0.0 and abs(v0 - v1) < 1.0:
            lo, hi = float(ts[i]), float(ts[i + 1])
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if g(lo) * g(mid) <= 0.0:
                    hi = mid
                else:
                    lo = mid
            out.append(conic.point_at(0.5 * (lo + hi)))
    return out


class MajorCirclePair(NamedTuple):
    left: Circle
    right: Circle


def major_axis_family_kappa(eccentricity: float) -> float:
    """Coefficient k in r^2 = b^2 - k a^2 for doubly tangent circles centered at (a, 0)."""
    e2 = eccentricity * eccentricity
    return (1.0 - e2) / e2


def doubly_tangent_circles_major(a: Sequence[float], kappa: float = 1.0, b: float = 1.0) -> MajorCirclePair:
    """The two major-axis doubly tangent circles through ``a`` (normalized frame).

    For an ellipse centered at the origin with semi-minor axis ``b`` the circles
    centered at (t, 0) touching it twice have ``r^2 = b^2 - kappa t^2``;
    ``kappa = 1, b = 1`` is the ellipse ``x^2/2 + y^2 = 1``.  Members through
    ``a`` solve ``(1 + kappa) t^2 - 2 x t + (x^2 + y^2 - b^2) = 0``.  The root
    with negative center is returned as ``left``.
    """
    x, y = a
    qa, qb, qc = 1.0 + kappa, -2.0 * x, x * x + y * y - b * b
    disc = qb * qb - 4.0 * qa * qc
    if disc <= 1e-12 * max(qb * qb, abs(4.0 * qa * qc), 1e-300):
        if disc < 0.0 and abs(disc) > 1e-12 * max(qb * qb, abs(4 * qa * qc), 1e-300):
            raise OutsideDomain(f"no doubly tangent circle through {tuple(a)}")
        raise DegenerateRoots(f"double root at {tuple(a)}")
    roots = [r.value for r in solve_quadratic(qa, qb, qc)]
    if len(roots) != 2:
        raise DegenerateRoots(f"double root at {tuple(a)}")
    lo, hi = roots
    if not (lo < 0.0 < hi):
        raise OutsideDomain("centers are not on opposite sides of the ellipse center")
    circles = []
    for t in (lo, hi):
        r2 = b * b - kappa * t * t
        if r2 <= 0.0:
            raise OutsideDomain("imaginary doubly tangent circle")
        circles.append(Circle(Point(t, 0.0), math.sqrt(r2)))
    return MajorCirclePair(circles[0], circles[1])


# ---------------------------------------------------------------------------
# Similarities and normalization of the e = 1/sqrt(2) ellipse


@dataclass(frozen=True)
class Similarity:
    """p -> scale * R(angle) p + shift."""

    scale: float = 1.0
    angle: float = 0.0
    shift: Point = Point(0.0, 0.0)

    def apply(self, p: Sequence[float]) -> Point:
        return Point(*p).rotate(self.angle) * self.scale + self.shift

    def apply_dir(self, d: Sequence[float]) -> Point:
        return Point(*d).rotate(self.angle)

    def apply_curve(self, g: GenCircle) -> GenCircle:
        if isinstance(g, Circle):
            return Circle(self.apply(g.center), g.radius * self.scale)
        p = g.normal * g.offset
        return Line.from_point_direction(self.apply(p), self.apply_dir(g.direction))

    def inverse(self) -> "Similarity":
        inv_shift = (-self.shift).rotate(-self.angle) / self.scale
        return Similarity(1.0 / self.scale, -self.angle, inv_shift)


E707 = 1.0 / math.sqrt(2.0)


def normalize_ellipse_e707(conic: Conic, tol: float = 1e-9) -> tuple[Similarity, Similarity, Conic]:
    """Similarity taking an e = 1/sqrt(2) ellipse to ``x^2/2 + y^2 = 1``.

    Returns (forward, inverse, normalized ellipse).
    """
    if conic.kind != "ellipse" or abs(conic.eccentricity - E707) > tol:
        raise WrongEccentricity(f"eccentricity {conic.eccentricity:.12g} is not 1/sqrt(2)")
    return normalize_ellipse(conic)


def normalize_ellipse(conic: Conic) -> tuple[Similarity, Similarity, Conic]:
    """Similarity taking an ellipse to its canonical position with semi-minor axis 1."""
    k = 1.0 / conic.b
    fwd = Similarity(k, -conic.angle, (-conic.center).rotate(-conic.angle) * k)
    return fwd, fwd.inverse(), Conic.ellipse(conic.a * k, 1.0)
