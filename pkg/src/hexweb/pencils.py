"""Pencils and bundles of circles, Apollonian sets and the Darboux transformation.

Circle equations are handled as coefficient vectors ``(a, b, c, d)`` of
``a(x^2+y^2) + b x + c y + d``.  Point circles (zero radius) are allowed as
pencil generators, which is how hyperbolic pencils are built from their
limiting points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    AtLimitingPoint,
    AtVertex,
    BranchJump,
    CoincidentCircles,
    DegenerateConfiguration,
    InvalidConfig,
    MissesSphere,
    NoRealSolution,
    OutsideDomain,
    ProjectsToInfinity,
)
from .geom import (
    Circle,
    GenCircle,
    Line,
    Point,
    apollonius_pcc,
    circle_through,
    dist,
    from_coeffs,
    intersect,
    same_curve,
    tangency_sign,
)

KIND_BAND = 1e-12


class CircleEq(NamedTuple):
    a: float
    b: float
    c: float
    d: float

    def __call__(self, p: Sequence[float]) -> float:
        x, y = p
        return self.a * (x * x + y * y) + self.b * x + self.c * y + self.d

    def grad(self, p: Sequence[float]) -> Point:
        x, y = p
        return Point(2.0 * self.a * x + self.b, 2.0 * self.a * y + self.c)

    def combine(self, alpha: float, other: "CircleEq", beta: float) -> "CircleEq":
        return CircleEq(*(alpha * u + beta * v for u, v in zip(self, other)))

    def normalized(self) -> "CircleEq":
        s = max(abs(v) for v in self)
        return CircleEq(*(v / s for v in self)) if s else self

    def radius2(self) -> Optional[float]:
        """Squared radius, or None for a line / the line at infinity."""
        if self.a == 0.0:
            return None
        return (self.b * self.b + self.c * self.c) / (4.0 * self.a * self.a) - self.d / self.a

    def center(self) -> Point:
        return Point(-self.b / (2.0 * self.a), -self.c / (2.0 * self.a))


def eq_of(g: GenCircle) -> CircleEq:
    return CircleEq(*g.coeffs())


def point_circle(p: Sequence[float]) -> CircleEq:
    x, y = p
    return CircleEq(1.0, -2.0 * x, -2.0 * y, x * x + y * y)


def _delta(u: CircleEq, v: CircleEq) -> float:
    """Polar form of b^2 + c^2 - 4ad (zero exactly on point circles)."""
    return u.b * v.b + u.c * v.c - 2.0 * (u.a * v.d + u.d * v.a)


@dataclass(frozen=True)
class Pencil:
    """Linear family spanned by two circle equations."""

    e1: CircleEq
    e2: CircleEq

    def __post_init__(self):
        e1, e2 = CircleEq(*map(float, self.e1)).normalized(), CircleEq(*map(float, self.e2)).normalized()
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)
        m = np.array([e1, e2])
        if np.linalg.matrix_rank(m, tol=1e-12) < 2:
            raise CoincidentCircles("pencil generators are proportional")

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_vertices(cls, v1: Sequence[float], v2: Sequence[float]) -> "Pencil":
        if dist(v1, v2) == 0.0:
            raise DegenerateConfiguration("elliptic pencil needs two distinct vertices")
        mid = Point((v1[0] + v2[0]) / 2.0, (v1[1] + v2[1]) / 2.0)
        return cls(eq_of(Line.through(v1, v2)), eq_of(Circle(mid, dist(v1, v2) / 2.0)))

    @classmethod
    def from_limiting_points(cls, f1: Sequence[float], f2: Sequence[float]) -> "Pencil":
        if dist(f1, f2) == 0.0:
            raise DegenerateConfiguration("hyperbolic pencil needs two distinct limiting points")
        return cls(point_circle(f1), point_circle(f2))

    @classmethod
    def parabolic(cls, vertex: Sequence[float], tangent: Sequence[float]) -> "Pencil":
        """Circles tangent at ``vertex`` to the line with direction ``tangent``."""
        return cls(eq_of(Line.from_point_direction(vertex, tangent)), point_circle(vertex))

    @classmethod
    def of_lines_through(cls, p: Sequence[float]) -> "Pencil":
        return cls(eq_of(Line(Point(1.0, 0.0), p[0])), eq_of(Line(Point(0.0, 1.0), p[1])))

    # -- derived data -----------------------------------------------------
    def _point_members(self) -> list[CircleEq]:
        e1, e2 = self.e1, self.e2
        d11, d12, d22 = _delta(e1, e1), _delta(e1, e2), _delta(e2, e2)
        # roots (alpha : beta) of d11 a^2 + 2 d12 a b + d22 b^2
        disc = d12 * d12 - d11 * d22
        ref = d12 * d12 + abs(d11 * d22)
        if disc < -KIND_BAND * ref:
            return []
        if abs(disc) <= KIND_BAND * ref:
            ab = [(-d12, d11) if abs(d11) >= abs(d22) else (d22, -d12)]
        else:
            s = math.sqrt(disc)
            if abs(d11) >= abs(d22) and d11 != 0.0:
                ab = [((-d12 + s), d11), ((-d12 - s), d11)]
            elif d22 != 0.0:
                ab = [(d22, (-d12 + s)), (d22, (-d12 - s))]
            else:
                ab = [(1.0, 0.0), (0.0, 1.0)]
        return [e1.combine(al, e2, be).normalized() for al, be in ab]

    @property
    def kind(self) -> str:
        n = len(self._point_members())
        return {0: "elliptic", 1: "parabolic", 2: "hyperbolic"}[n]

    @property
    def concentric(self) -> bool:
        return any(abs(m.a) <= 1e-14 for m in self._point_members()) and self.kind == "hyperbolic"

    @property
    def limiting_points(self) -> list[Point]:
        if self.kind != "hyperbolic":
            return []
        return [m.center() for m in self._point_members() if abs(m.a) > 1e-14]

    @property
    def vertices(self) -> list[Point]:
        kind = self.kind
        if kind == "parabolic":
            m = self._point_members()[0]
            return [m.center()] if abs(m.a) > 1e-14 else []
        if kind == "elliptic":
            g1, g2 = self.two_curves()
            return sorted(intersect(g1, g2, band=0.0))
        return []

    def two_curves(self) -> tuple[GenCircle, GenCircle]:
        """Two distinct real members of the pencil."""
        out: list[GenCircle] = []
        for al, be in ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0), (1.0, 2.0), (2.0, -1.0)):
            try:
                g = from_coeffs(*self.e1.combine(al, self.e2, be))
            except (DegenerateConfiguration, ValueError):
                continue
            if not any(same_curve(g, o, 1e-12) for o in out):
                out.append(g)
            if len(out) == 2:
                return out[0], out[1]
        raise DegenerateConfiguration("pencil has fewer than two real members")

    @property
    def tangent_line(self) -> Optional[Line]:
        """The line member (radical axis / common tangent), if any."""
        e1, e2 = self.e1, self.e2
        if e1.a == 0.0 and e2.a == 0.0:
            return None
        g = from_coeffs(*e1.combine(e2.a, e2, -e1.a))
        return g if isinstance(g, Line) else None

    def residual(self, g: GenCircle) -> float:
        """Relative least-squares distance of ``g``'s equation from the span."""
        v = np.array(eq_of(g).normalized())
        m = np.array([self.e1, self.e2]).T
        coef, *_ = np.linalg.lstsq(m, v, rcond=None)
        return float(np.linalg.norm(m @ coef - v) / np.linalg.norm(v))

    def contains(self, g: GenCircle, tol: float = 1e-9) -> bool:
        return self.residual(g) <= tol

    def member_through(self, a: Sequence[float]) -> GenCircle:
        return member_through(self, a)

    def normal_field(self, a: Sequence[float]) -> Point:
        """Smooth normal to the member through ``a`` (gradient of e1/e2 up to a factor)."""
        return self.e1.grad(a) * self.e2(a) - self.e2.grad(a) * self.e1(a)


def classify(c1: GenCircle, c2: GenCircle) -> Pencil:
    """Pencil spanned by two generalized circles."""
    if same_curve(c1, c2, 1e-13):
        raise CoincidentCircles("pencil generators coincide")
    return Pencil(eq_of(c1), eq_of(c2))


def member_through(pencil: Pencil, a: Sequence[float]) -> GenCircle:
    """The member of ``pencil`` passing through ``a``."""
    v1, v2 = pencil.e1(a), pencil.e2(a)
    s = max(1.0, abs(a[0]), abs(a[1])) ** 2
    if abs(v1) <= 1e-13 * s and abs(v2) <= 1e-13 * s:
        raise AtVertex(f"{tuple(a)} is a vertex of the pencil")
    eq = pencil.e1.combine(v2, pencil.e2, -v1)
    if abs(eq.a) > 1e-15 * max(abs(eq.b), abs(eq.c), abs(eq.d), 1e-300):
        r2 = eq.radius2()
        c = eq.center()
        if r2 is not None and r2 <= 1e-20 * max(1.0, c.x * c.x + c.y * c.y):
            raise AtLimitingPoint(f"{tuple(a)} is a limiting point of the pencil")
    return from_coeffs(*eq)


@dataclass(frozen=True)
class Bundle:
    """Three-dimensional family spanned by three circle equations."""

    e1: CircleEq
    e2: CircleEq
    e3: CircleEq

    def __post_init__(self):
        m = np.array([CircleEq(*e).normalized() for e in (self.e1, self.e2, self.e3)])
        if np.linalg.matrix_rank(m, tol=1e-10) < 3:
            raise DegenerateConfiguration("bundle generators lie in one pencil")

    @classmethod
    def of(cls, c1: GenCircle, c2: GenCircle, c3: GenCircle) -> "Bundle":
        return cls(eq_of(c1), eq_of(c2), eq_of(c3))

    def residual(self, g: GenCircle) -> float:
        v = np.array(eq_of(g).normalized())
        m = np.array([CircleEq(*e).normalized() for e in (self.e1, self.e2, self.e3)]).T
        coef, *_ = np.linalg.lstsq(m, v, rcond=None)
        return float(np.linalg.norm(m @ coef - v) / np.linalg.norm(v))


def bundle_rank(curves: Sequence[GenCircle], tol: float = 1e-9) -> int:
    """Rank of the span of several circle equations (3 means one bundle)."""
    m = np.array([eq_of(g).normalized() for g in curves])
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol * s[0]))


# ---------------------------------------------------------------------------
# Apollonian sets


class TangencyLabel(NamedTuple):
    """Tangency signs to the two fixed circles and the side relative to the pencil."""

    s1: int
    s2: int
    orient: int


def orientation(pencil: Pencil, s: GenCircle, a: Sequence[float]) -> int:
    n_p = pencil.normal_field(a)
    n_s = s.normal_at(a)
    return 1 if n_p.cross(n_s) >= 0.0 else -1


def label_of(pencil: Pencil, fixed1: GenCircle, fixed2: GenCircle, s: GenCircle, a: Sequence[float]) -> TangencyLabel:
    return TangencyLabel(tangency_sign(s, fixed1), tangency_sign(s, fixed2), orientation(pencil, s, a))


def apollonian_member_through(pencil: Pencil, fixed1: GenCircle, fixed2: GenCircle,
                              a: Sequence[float], label: TangencyLabel) -> GenCircle:
    """Circle through ``a`` tangent to ``fixed1`` and ``fixed2`` in tangency class ``label``."""
    cands = [s for s in apollonius_pcc(a, fixed1, fixed2)
             if label_of(pencil, fixed1, fixed2, s, a) == tuple(label)]
    if not cands:
        raise NoRealSolution(f"no tangent circle of class {tuple(label)} through {tuple(a)}")
    if len(cands) > 1:
        raise BranchJump(f"{len(cands)} tangent circles of class {tuple(label)} through {tuple(a)}")
    return cands[0]


@dataclass(frozen=True)
class ApollonianSet:
    """One Apollonian set of a pencil.

    kind ``tangent``: circles tangent to ``fixed1`` and ``fixed2`` (pencil
    members), selected by ``label``; ``parabolic``: the parabolic pencil at
    vertex ``vertex`` with tangent direction ``direction``; ``hyperbolic``: the
    hyperbolic pencil with limiting points at the two vertices.
    """

    kind: str
    fixed1: Optional[GenCircle] = None
    fixed2: Optional[GenCircle] = None
    label: Optional[TangencyLabel] = None
    vertex: int = 0
    direction: tuple[float, float] = (1.0, 0.0)

    def bind(self, pencil: Pencil):
        """Return a point -> curve map for this set within ``pencil``."""
        if self.kind == "tangent":
            if self.fixed1 is None or self.fixed2 is None or self.label is None:
                raise InvalidConfig("tangent Apollonian set needs two fixed circles and a label")
            for f in (self.fixed1, self.fixed2):
                if not pencil.contains(f, 1e-9):
                    raise InvalidConfig("fixed circle is not a member of the pencil")
            f1, f2, lab = self.fixed1, self.fixed2, self.label
            return lambda a: apollonian_member_through(pencil, f1, f2, a, lab)
        verts = pencil.vertices
        if self.kind == "parabolic":
            if not verts:
                raise InvalidConfig("parabolic Apollonian set needs a pencil vertex")
            sub = Pencil.parabolic(verts[self.vertex], self.direction)
            return sub.member_through
        if self.kind == "hyperbolic":
            if len(verts) != 2:
                raise InvalidConfig("hyperbolic Apollonian set needs an elliptic pencil")
            sub = Pencil.from_limiting_points(*verts)
            return sub.member_through
        raise InvalidConfig(f"unknown Apollonian set kind {self.kind!r}")


# ---------------------------------------------------------------------------
# Darboux transformation


@dataclass(frozen=True)
class DarbouxConfig:
    """Sphere plus two projection centers; plane is z = 0; ``e2`` lies on the sphere."""

    sphere_center: tuple[float, float, float] = (0.0, 0.0, 1.0)
    sphere_radius: float = 1.0
    e1: tuple[float, float, float] = (0.4, -0.3, -2.0)
    e2: tuple[float, float, float] = (0.0, 0.0, 2.0)

    def __post_init__(self):
        for name in ("sphere_center", "e1", "e2"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        object.__setattr__(self, "sphere_radius", float(self.sphere_radius))
        r = np.linalg.norm(np.subtract(self.e2, self.sphere_center))
        if abs(r - self.sphere_radius) > 1e-12 * max(1.0, self.sphere_radius):
            raise InvalidConfig("second projection center must lie on the sphere")
        off = np.subtract(self.e2, self.sphere_center)
        if math.hypot(off[0], off[1]) > 1e-12 * max(1.0, self.sphere_radius):
            # otherwise the second projection is not conformal and lines map to conics
            raise InvalidConfig("the sphere diameter through the second center must be perpendicular to the plane")
        if abs(self.e1[2]) < 1e-12:
            raise InvalidConfig("first projection center must not lie in the plane")

    def to_dict(self) -> dict:
        return {"sphere_center": list(self.sphere_center), "sphere_radius": self.sphere_radius,
                "e1": list(self.e1), "e2": list(self.e2)}

    @classmethod
    def from_dict(cls, d: dict) -> "DarbouxConfig":
        return cls(tuple(d["sphere_center"]), d["sphere_radius"], tuple(d["e1"]), tuple(d["e2"]))


def _sphere_hits(cfg: DarbouxConfig, origin: np.ndarray, direction: np.ndarray) -> list[float]:
    oc = origin - np.asarray(cfg.sphere_center)
    qa = direction @ direction
    qb = 2.0 * direction @ oc
    qc = oc @ oc - cfg.sphere_radius ** 2
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0:
        return []
    s = math.sqrt(disc)
    q = -0.5 * (qb + math.copysign(s, qb))
    roots = [q / qa, qc / q] if q != 0.0 else [-qb / (2 * qa)]
    return sorted(roots)


def _to_sphere(cfg: DarbouxConfig, a: Sequence[float]) -> np.ndarray:
    e1 = np.asarray(cfg.e1)
    w = np.array([a[0], a[1], 0.0]) - e1
    hits = [t for t in _sphere_hits(cfg, e1, w) if t > 0.0]
    if not hits:
        raise MissesSphere(f"the ray from the first center through {tuple(a)} misses the sphere")
    return e1 + hits[0] * w


def _from_sphere(cfg: DarbouxConfig, q: np.ndarray) -> Point:
    e2 = np.asarray(cfg.e2)
    dz = q[2] - e2[2]
    if abs(dz) <= 1e-14 * max(1.0, abs(e2[2])):
        raise ProjectsToInfinity("second projection is parallel to the plane")
    s = -e2[2] / dz
    p = e2 + s * (q - e2)
    return Point(float(p[0]), float(p[1]))


def darboux_transform(cfg: DarbouxConfig, a: Sequence[float]) -> Point:
    """Project ``a`` to the sphere from ``e1`` (first hit), then back to the plane from ``e2``."""
    return _from_sphere(cfg, _to_sphere(cfg, a))


def darboux_inverse(cfg: DarbouxConfig, p: Sequence[float], check: bool = True) -> Point:
    e2 = np.asarray(cfg.e2)
    w = np.array([p[0], p[1], 0.0]) - e2
    c = np.asarray(cfg.sphere_center)
    s = -2.0 * (w @ (e2 - c)) / (w @ w)
    q = e2 + s * w
    e1 = np.asarray(cfg.e1)
    dz = q[2] - e1[2]
    if abs(dz) < 1e-14:
        raise ProjectsToInfinity("first projection is parallel to the plane")
    a = e1 + (-e1[2] / dz) * (q - e1)
    pre = Point(float(a[0]), float(a[1]))
    if check:
        back = _to_sphere(cfg, pre)
        if np.linalg.norm(back - q) > 1e-9 * max(1.0, cfg.sphere_radius):
            raise OutsideDomain(f"{tuple(p)} is not in the image of the first-hit branch")
    return pre


def darboux_image_of_line(cfg: DarbouxConfig, line: Line) -> GenCircle:
    """Generalized circle containing the image of ``line`` under the transformation.

    The plane through ``e1`` and the line cuts the sphere in a circle
    {X : n.X = k}; its projection from ``e2`` satisfies, with w = (p, 0) - e2,
    (n.e2 - k)|w|^2 + 2 ((c - e2).w)(n.w) = 0, where (c - e2).w is constant
    because c - e2 is vertical.
    """
    e1 = np.asarray(cfg.e1)
    p0 = np.array([line.normal.x * line.offset, line.normal.y * line.offset, 0.0])
    d = np.array([line.direction.x, line.direction.y, 0.0])
    n = np.cross(d, e1 - p0)
    n /= np.linalg.norm(n)
    c = np.asarray(cfg.sphere_center)
    k = float(n @ p0)
    if abs(n @ c - k) >= cfg.sphere_radius:
        raise MissesSphere("plane through the line misses the sphere")
    ex, ey, ez = cfg.e2
    amp = float(n @ (np.asarray(cfg.e2) - p0))
    kap = (c[2] - ez) * (-ez)
    nx, ny, nz = n
    a = amp
    b = 2.0 * kap * nx - 2.0 * amp * ex
    cc = 2.0 * kap * ny - 2.0 * amp * ey
    dd = amp * (ex * ex + ey * ey + ez * ez) - 2.0 * kap * (nx * ex + ny * ey + nz * ez)
    return from_coeffs(a, b, cc, dd)
