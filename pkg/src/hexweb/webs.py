"""Foliations, 3-webs and the catalog of concrete webs of circular arcs.

Every constructor returns a :class:`Web3` whose three foliations are pure
functions ``Point -> GenCircle``.  Foliations whose leaves come from a root
ordering (class-3 line webs, the cubic series) order roots by a fixed rule
that is continuous on the validated domain, so no mutable tracking state is
needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Optional, Sequence

from . import conics
from .conics import Conic, E707, doubly_tangent_circle_minor, doubly_tangent_circles_major
from .errors import AtVertex, GeometryError, InvalidConfig, OutsideDomain, WrongEccentricity
from .geom import (
    Circle,
    Domain,
    GenCircle,
    Line,
    Point,
    circle_through,
    crossing_angle,
    dist,
    from_coeffs,
    oriented_angle,
    solve_cubic,
)
from .pencils import (
    ApollonianSet,
    DarbouxConfig,
    Pencil,
    TangencyLabel,
    bundle_rank,
    darboux_image_of_line,
    darboux_inverse,
    eq_of,
    member_through,
)

COLORS = ("red", "green", "blue")


@dataclass(frozen=True)
class Foliation:
    curve_through: Callable[[Point], GenCircle]
    label: str
    note: str = ""

    def __call__(self, p: Sequence[float]) -> GenCircle:
        return self.curve_through(Point(*p))


@dataclass(frozen=True)
class Web3:
    name: str
    red: Foliation
    green: Foliation
    blue: Foliation
    domain: Domain
    expected_hexagonal: Any = True  # True, False (control) or "experimental"
    info: Mapping[str, Any] = field(default_factory=dict)

    def foliation(self, color: str) -> Foliation:
        return {"red": self.red, "green": self.green, "blue": self.blue}[color]

    @property
    def foliations(self) -> tuple[Foliation, Foliation, Foliation]:
        return (self.red, self.green, self.blue)

    def leaves_at(self, p: Sequence[float]) -> tuple[GenCircle, GenCircle, GenCircle]:
        return (self.red(p), self.green(p), self.blue(p))


def _pt(v) -> Point:
    return Point(float(v[0]), float(v[1]))


def _fol(fn, label, note="") -> Foliation:
    return Foliation(fn, label, note)


# ---------------------------------------------------------------------------
# Classical webs


def lines_through(p: Sequence[float]):
    p = _pt(p)

    def curve(a: Point) -> GenCircle:
        if dist(a, p) <= 1e-14 * max(1.0, abs(p.x), abs(p.y)):
            raise AtVertex(f"{tuple(a)} is the pencil vertex")
        return Line.through(p, a)

    return curve


def pappus_web(r, g, b, domain: Domain, name: str = "pappus") -> Web3:
    """Three pencils of lines through R, G and B."""
    r, g, b = _pt(r), _pt(g), _pt(b)
    if min(dist(r, g), dist(g, b), dist(b, r)) == 0.0:
        raise InvalidConfig("pencil vertices must be distinct")
    if abs((g - r).cross(b - r)) <= 1e-12 * max(1.0, dist(r, g), dist(r, b)) ** 2:
        raise InvalidConfig("collinear vertices: the foliations coincide along their common line")
    return Web3(name, _fol(lines_through(r), "red", "lines through R"),
                _fol(lines_through(g), "green", "lines through G"),
                _fol(lines_through(b), "blue", "lines through B"), domain)


def brianchon_web(conic: Conic, v, domain: Domain, name: str = "brianchon") -> Web3:
    """Lines through V plus the conic's tangent lines counted twice."""
    return Web3(name, _fol(lines_through(v), "red", "lines through V"),
                _fol(lambda a: conics.left_tangent(conic, a), "green", "left tangents"),
                _fol(lambda a: conics.right_tangent(conic, a), "blue", "right tangents"), domain)


def blaschke_web(a, b, c, domain: Domain, perturb: Sequence[float] = (0.0, 0.0),
                 name: str = "blaschke") -> Web3:
    """Elliptic pencils with vertex pairs (A,B), (B,C), (C,A).

    ``perturb`` shifts A in the red pencil only (a non-hexagonal control).
    """
    a, b, c = _pt(a), _pt(b), _pt(c)
    if min(dist(a, b), dist(b, c), dist(c, a)) == 0.0:
        raise InvalidConfig("vertices must be distinct")
    pa = a + _pt(perturb)
    p1, p2, p3 = Pencil.from_vertices(pa, b), Pencil.from_vertices(b, c), Pencil.from_vertices(c, a)
    hexagonal = perturb[0] == 0.0 and perturb[1] == 0.0
    return Web3(name, _fol(p1.member_through, "red", "circles through A, B"),
                _fol(p2.member_through, "green", "circles through B, C"),
                _fol(p3.member_through, "blue", "circles through C, A"), domain,
                expected_hexagonal=hexagonal)


# ---------------------------------------------------------------------------
# Class-3 line webs


def cubic_form_through(coeffs: Mapping[tuple[int, int, int], float], x: float, y: float) -> list[float]:
    """Binary cubic G(a, b) = F(a, b, -(a x + b y)) as coefficients of a^p b^(3-p), p = 0..3."""
    g = [0.0, 0.0, 0.0, 0.0]
    for (i, j, k), coef in coeffs.items():
        if coef == 0.0:
            continue
        for m in range(k + 1):
            term = coef * math.comb(k, m) * (-x) ** m * (-y) ** (k - m)
            g[i + m] += term
    return g


def line_roots(coeffs, x: float, y: float) -> list[Point]:
    """Unit normals (a, b) of the class-3 lines through (x, y)."""
    g = cubic_form_through(coeffs, x, y)
    if abs(g[3]) >= abs(g[0]):
        roots = solve_cubic(g[3], g[2], g[1], g[0])
        normals = [Point(r.value, 1.0).unit() for r in roots if r.multiplicity == 1]
    else:
        roots = solve_cubic(g[0], g[1], g[2], g[3])
        normals = [Point(1.0, r.value).unit() for r in roots if r.multiplicity == 1]
    if len(normals) != 3:
        raise OutsideDomain(f"fewer than three distinct class-3 lines through ({x}, {y})")
    return normals


def _ordered_normals(coeffs, cut: float, a: Point) -> list[Point]:
    def key(n: Point) -> float:
        return (math.atan2(n.y, n.x) - cut) % math.pi

    return sorted(line_roots(coeffs, a.x, a.y), key=key)


DELTOID = {(3, 0, 0): -1.0, (1, 2, 0): 3.0, (2, 0, 1): 1.0, (0, 2, 1): 1.0}


def point_pencils_form(points: Sequence[Sequence[float]]) -> dict:
    """F(a,b,c) = prod (a x_i + b y_i + c): lines through any of the points."""
    poly = {(0, 0, 0): 1.0}
    for px, py in points:
        nxt: dict = {}
        for (i, j, k), cf in poly.items():
            for (di, dj, dk), f in (((1, 0, 0), px), ((0, 1, 0), py), ((0, 0, 1), 1.0)):
                key = (i + di, j + dj, k + dk)
                nxt[key] = nxt.get(key, 0.0) + cf * f
        poly = nxt
    return poly


def graf_sauer_web(coeffs: Mapping[tuple[int, int, int], float], domain: Domain, cut: float = 0.0,
                   name: str = "graf-sauer") -> Web3:
    """Lines a x + b y + c = 0 with F(a, b, c) = 0, counted triply.

    Through each point the three lines are ordered by the angle of their normal
    measured from ``cut`` (mod pi).
    """
    coeffs = {tuple(k): float(v) for k, v in coeffs.items()}
    if any(sum(k) != 3 for k in coeffs):
        raise InvalidConfig("F must be a homogeneous cubic")

    def make(idx: int):
        def curve(a: Point) -> GenCircle:
            n = _ordered_normals(coeffs, cut, a)[idx]
            return Line(n, n.dot(a))

        return curve

    return Web3(name, *(_fol(make(i), c, f"class-3 line #{i}") for i, c in enumerate(COLORS)), domain)


# ---------------------------------------------------------------------------
# Webs from pencils


def pencil_web(pencils: Sequence[Pencil], domain: Domain, name: str, notes=("", "", "")) -> Web3:
    return Web3(name, *(_fol(p.member_through, c, n) for p, c, n in zip(pencils, COLORS, notes)), domain)


def volk_strubecker_web(base: Web3, cfg: DarbouxConfig, domain: Domain,
                        name: str = "volk-strubecker") -> Web3:
    """Image of a web of lines under a Darboux transformation."""

    def make(fol: Foliation):
        def curve(a: Point) -> GenCircle:
            pre = darboux_inverse(cfg, a)
            line = fol(pre)
            if not isinstance(line, Line):
                raise InvalidConfig("the base web must consist of lines")
            return darboux_image_of_line(cfg, line)

        return curve

    return Web3(name, *(_fol(make(f), c, "Darboux image of " + (f.note or c))
                        for f, c in zip(base.foliations, COLORS)), domain,
                info={"base": base.name})


def apollonian_web(pencil: Pencil, set1: ApollonianSet, set2: ApollonianSet, domain: Domain,
                   name: str = "apollonian") -> Web3:
    """A pencil and two of its Apollonian sets."""
    return Web3(name, _fol(pencil.member_through, "red", "pencil"),
                _fol(set1.bind(pencil), "green", f"Apollonian set ({set1.kind})"),
                _fol(set2.bind(pencil), "blue", f"Apollonian set ({set2.kind})"), domain)


# ---------------------------------------------------------------------------
# The five new webs


def main_a_web(center, radius: float, direction, domain: Domain, name: str = "main-a") -> Web3:
    """Tangents to a circle counted twice plus the parabolic pencil at its center."""
    c = _pt(center)
    d = _pt(direction).unit()
    circle = Conic.circle(radius, c)
    pencil = Pencil.parabolic(c, d.perp())
    return Web3(name, _fol(pencil.member_through, "red", "parabolic pencil at the center"),
                _fol(lambda a: conics.left_tangent(circle, a), "green", "left tangents"),
                _fol(lambda a: conics.right_tangent(circle, a), "blue", "right tangents"), domain)


def _check_general(conic: Conic):
    if conic.kind not in ("ellipse", "hyperbola") or conic.a == conic.b and conic.kind == "ellipse":
        raise InvalidConfig("a general conic (non-circular ellipse or hyperbola) is required")


def main_b_web(conic: Conic, domain: Domain, name: str = "main-b") -> Web3:
    """Tangents counted twice plus the hyperbolic pencil with limiting points at the foci."""
    _check_general(conic)
    pencil = Pencil.from_limiting_points(*conic.foci)
    return Web3(name, _fol(pencil.member_through, "red", "hyperbolic pencil at the foci"),
                _fol(lambda a: conics.left_tangent(conic, a), "green", "left tangents"),
                _fol(lambda a: conics.right_tangent(conic, a), "blue", "right tangents"), domain)


def main_c_web(conic: Conic, domain: Domain, focus_index: int = 0, name: str = "main-c") -> Web3:
    """Focal lines, left tangents and doubly tangent circles centered on the minor axis."""
    _check_general(conic)
    f = conic.foci[focus_index]
    focal = lines_through(f)

    def blue(a: Point) -> GenCircle:
        phi = oriented_angle(focal(a).direction, conics.left_tangent(conic, a).direction)
        return doubly_tangent_circle_minor(conic, phi, focus_index)

    return Web3(name, _fol(focal, "red", "lines through the focus"),
                _fol(lambda a: conics.left_tangent(conic, a), "green", "left tangents"),
                _fol(blue, "blue", "doubly tangent circles, centers on the minor axis"), domain)


def main_d_web(parabola: Conic, l, domain: Domain, name: str = "main-d") -> Web3:
    """Parabola tangents counted twice plus the hyperbolic pencil with limiting points F and L."""
    if parabola.kind != "parabola":
        raise InvalidConfig("main-d needs a parabola")
    l = _pt(l)
    if parabola.directrix().distance(l) > 1e-9 * max(1.0, parabola.b):
        raise InvalidConfig("L must lie on the directrix")
    pencil = Pencil.from_limiting_points(parabola.focus, l)
    return Web3(name, _fol(pencil.member_through, "red", "hyperbolic pencil (F, L)"),
                _fol(lambda a: conics.left_tangent(parabola, a), "green", "left tangents"),
                _fol(lambda a: conics.right_tangent(parabola, a), "blue", "right tangents"), domain)


def main_e_web(conic: Conic, domain: Domain, bypass_validation: bool = False, name: str = "main-e") -> Web3:
    """Major-axis doubly tangent circles counted twice plus the elliptic pencil through the foci.

    Requires eccentricity 1/sqrt(2) unless ``bypass_validation`` (used for the
    non-hexagonal control).
    """
    if bypass_validation:
        if conic.kind != "ellipse":
            raise InvalidConfig("main-e needs an ellipse")
        fwd, inv, norm = conics.normalize_ellipse(conic)
    else:
        try:
            fwd, inv, norm = conics.normalize_ellipse_e707(conic)
        except WrongEccentricity as exc:
            raise InvalidConfig(str(exc)) from exc
    kappa = conics.major_axis_family_kappa(conic.eccentricity)
    pencil = Pencil.from_vertices(*conic.foci)

    def side(idx: int):
        def curve(a: Point) -> GenCircle:
            pair = doubly_tangent_circles_major(fwd.apply(a), kappa=kappa)
            return inv.apply_curve(pair[idx])

        return curve

    hexagonal = abs(conic.eccentricity - E707) <= 1e-9
    return Web3(name, _fol(pencil.member_through, "red", "elliptic pencil through the foci"),
                _fol(side(0), "green", "left doubly tangent circles"),
                _fol(side(1), "blue", "right doubly tangent circles"), domain,
                expected_hexagonal=hexagonal, info={"eccentricity": conic.eccentricity})


# ---------------------------------------------------------------------------
# Experimental webs


def problem41_web(conic: Conic, variant: str, domain: Domain, l=None, name: str = "problem41") -> Web3:
    """Replace the hyperbolic pencil by the elliptic pencil on the same two points.

    ``elliptic-replacement``: the main-b web of a general conic with the pencil
    of circles through both foci.  ``parabola-control``: the main-d web with the
    pencil of circles through F and L.
    """
    if variant == "elliptic-replacement":
        _check_general(conic)
        pencil = Pencil.from_vertices(*conic.foci)
        status: Any = "experimental"
    elif variant == "parabola-control":
        if conic.kind != "parabola" or l is None:
            raise InvalidConfig("parabola-control needs a parabola and a directrix point L")
        pencil = Pencil.from_vertices(conic.focus, _pt(l))
        status = False
    else:
        raise InvalidConfig(f"unknown web-transformation variant {variant!r}")
    return Web3(name, _fol(pencil.member_through, "red", "elliptic pencil"),
                _fol(lambda a: conics.left_tangent(conic, a), "green", "left tangents"),
                _fol(lambda a: conics.right_tangent(conic, a), "blue", "right tangents"), domain,
                expected_hexagonal=status, info={"variant": variant})


def cubic_series_coeffs(t: float) -> tuple[float, float, float, float]:
    """Member t of (1-t^3)(x^2+y^2) + 2(1+t)x + 2(t^2+t^3)y - 1 - t^3 = 0."""
    t3 = t ** 3
    return (1.0 - t3, 2.0 * (1.0 + t), 2.0 * (t * t + t3), -1.0 - t3)


def cubic_series_params(x: float, y: float) -> list[float]:
    """Real parameters t of the series members through (x, y), ascending."""
    rho = x * x + y * y
    roots = solve_cubic(-rho + 2.0 * y - 1.0, 2.0 * y, 2.0 * x, rho + 2.0 * x - 1.0)
    return [r.value for r in roots if r.multiplicity == 1]


def three_real_roots(x: float, y: float) -> bool:
    try:
        return len(cubic_series_params(x, y)) == 3
    except GeometryError:
        return False


def cubic_series_web(domain: Domain, name: str = "cubic-series") -> Web3:
    """The cubic series counted triply; leaf k through A is the member with the k-th smallest t."""

    def make(idx: int):
        def curve(a: Point) -> GenCircle:
            ts = cubic_series_params(a.x, a.y)
            if len(ts) != 3:
                raise OutsideDomain(f"fewer than three real series members through {tuple(a)}")
            return from_coeffs(*cubic_series_coeffs(ts[idx]))

        return curve

    return Web3(name, *(_fol(make(i), c, f"series root #{i}") for i, c in enumerate(COLORS)), domain,
                expected_hexagonal="experimental")


# ---------------------------------------------------------------------------
# Triples of pencils


def _orthogonality_residual(g1: GenCircle, g2: GenCircle) -> float:
    if isinstance(g1, Circle) and isinstance(g2, Circle):
        d2 = (g1.center - g2.center).dot(g1.center - g2.center)
        return abs(d2 - g1.radius ** 2 - g2.radius ** 2) / max(1.0, g1.radius ** 2 + g2.radius ** 2)
    if isinstance(g1, Line) and isinstance(g2, Line):
        return abs(g1.normal.dot(g2.normal))
    line, circ = (g1, g2) if isinstance(g1, Line) else (g2, g1)
    return line.distance(circ.center) / max(1.0, circ.radius)


def orthogonality_residual(g1: GenCircle, g2: GenCircle) -> float:
    return _orthogonality_residual(g1, g2)


def _pencils_orthogonal(p1: Pencil, p2: Pencil) -> float:
    worst = 0.0
    for g1 in p1.two_curves():
        for g2 in p2.two_curves():
            worst = max(worst, _orthogonality_residual(g1, g2))
    return worst


SHELEKHOV_ITEMS = ("a", "d", "e", "f", "g", "h", "j")


def shelekhov_pencils(item: str, params: Mapping[str, Any], tol: float = 1e-9) -> list[Pencil]:
    """Build and validate the three pencils of one item of the pencil-triple classification."""
    P = {k: _pt(v) for k, v in params.items() if isinstance(v, (list, tuple)) and len(v) == 2
         and all(isinstance(x, (int, float)) for x in v)}
    try:
        if item == "f":
            a, b, c = P["A"], P["B"], P["C"]
            return [Pencil.from_vertices(a, b), Pencil.from_vertices(b, c), Pencil.from_vertices(c, a)]
        if item == "g":
            a, b, c = P["A"], P["B"], P["C"]
            return [Pencil.from_vertices(a, b), Pencil.from_vertices(b, c), Pencil.from_limiting_points(c, a)]
        if item == "h":
            p1, p2 = P["P1"], P["P2"]
            return [Pencil.parabolic(p1, P["t1"]), Pencil.parabolic(p2, P["t2"]), Pencil.from_vertices(p1, p2)]
        if item == "e":
            v, w, t = P["V"], P["W"], P["t"].unit()
            pencils = [Pencil.parabolic(v, t), Pencil.parabolic(v, t.perp()), Pencil.from_limiting_points(v, w)]
            if _pencils_orthogonal(pencils[0], pencils[1]) > tol:
                raise InvalidConfig("parabolic pencils are not orthogonal")
            return pencils
        if item == "d":
            v1, v2 = P["V1"], P["V2"]
            p1, p2 = Pencil.from_vertices(v1, v2), Pencil.from_limiting_points(v1, v2)
            c1 = p1.member_through(P["through1"])
            c2 = p2.member_through(P["through2"])
            p3 = Pencil(eq_of(c1), eq_of(c2))
            if _pencils_orthogonal(p1, p2) > tol:
                raise InvalidConfig("first two pencils are not orthogonal")
            if not (p3.contains(c1, tol) and p1.contains(c1, tol) and p3.contains(c2, tol) and p2.contains(c2, tol)):
                raise InvalidConfig("third pencil does not share a circle with each orthogonal pencil")
            return [p1, p2, p3]
        if item == "j":
            a, b, c = P["A"], P["B"], P["C"]
            abc = circle_through(a, b, c)
            if "t" in P:
                t = P["t"]
            elif isinstance(abc, Circle):
                t = abc.center - a
            else:
                t = abc.normal
            p_ell, p_hyp, p_par = Pencil.from_vertices(a, b), Pencil.from_limiting_points(b, c), Pencil.parabolic(a, t)
            common = _tangent_circle_through(a, t, b)
            if not (p_ell.contains(common, tol) and p_par.contains(common, tol)):
                raise InvalidConfig("could not form the common circle of the elliptic and parabolic pencils")
            if _orthogonality_residual(common, abc) > tol:
                raise InvalidConfig("common circle is not orthogonal to the circle through A, B, C")
            return [p_ell, p_hyp, p_par]
    except KeyError as exc:
        raise InvalidConfig(f"shelekhov item {item!r} is missing parameter {exc}") from exc
    raise InvalidConfig(f"unsupported shelekhov item {item!r}")


def _tangent_circle_through(a: Point, t: Point, b: Point) -> GenCircle:
    """Generalized circle tangent at ``a`` to direction ``t`` and passing through ``b``."""
    n = t.unit().perp()
    w = b - a
    den = 2.0 * n.dot(w)
    if abs(den) <= 1e-15 * w.dot(w):
        return Line.from_point_direction(a, t)
    s = w.dot(w) / den
    return Circle(a + n * s, abs(s))


def shelekhov_web(item: str, params: Mapping[str, Any], domain: Domain) -> Web3:
    """Web of three pencils from the pencil-triple classification.

    Item ``a`` (three pencils of one bundle) is realized as the Darboux image of
    a Pappus web; the remaining items use member-through-point foliations.
    """
    name = f"shelekhov-{item}"
    if item == "a":
        base = pappus_web(params["R"], params["G"], params["B"], domain)
        cfg = DarbouxConfig.from_dict(params["darboux"]) if "darboux" in params else DarbouxConfig()
        return volk_strubecker_web(base, cfg, domain, name=name)
    return pencil_web(shelekhov_pencils(item, params), domain, name)


# ---------------------------------------------------------------------------
# Local validation helpers


def leaf_samples(leaf: GenCircle, a: Sequence[float], domain: Domain, n: int = 20,
                 span: Optional[float] = None) -> list[Point]:
    """Up to ``n`` points of ``leaf`` within ``domain``, spread around ``a``."""
    span = span if span is not None else domain.radius
    out = []
    for k in range(n):
        s = span * (2.0 * (k + 0.5) / n - 1.0)
        if isinstance(leaf, Circle):
            s = max(-math.pi * leaf.radius * 0.999, min(math.pi * leaf.radius * 0.999, s))
        p = leaf.move_along(a, s)
        if domain.contains(p):
            out.append(p)
    return out


def leaf_property_violation(web: Web3, color: str, a: Sequence[float], n: int = 20,
                            tol: float = 1e-10, span: Optional[float] = None) -> int:
    """Number of sampled points on the leaf through ``a`` whose own leaf differs."""
    fol = web.foliation(color)
    leaf = fol(a)
    bad = 0
    for p in leaf_samples(leaf, a, web.domain, n, span):
        try:
            if not same_leaf_locally(fol(p), leaf, p, web.domain, tol):
                bad += 1
        except GeometryError:
            bad += 1
    return bad


def same_leaf_locally(g: GenCircle, leaf: GenCircle, p: Sequence[float], domain: Domain,
                      tol: float = 1e-10, n: int = 9) -> bool:
    """Whether ``g`` stays within ``tol`` x domain scale of ``leaf`` along a domain-sized arc about ``p``.

    Comparing centres and radii is ill-conditioned for nearly straight leaves;
    pointwise distances inside the domain are not.
    """
    scale = max(1.0, domain.radius)
    span = domain.radius
    for k in range(n):
        s = span * (2.0 * k / (n - 1) - 1.0)
        if isinstance(g, Circle):
            s = max(-math.pi * g.radius * 0.999, min(math.pi * g.radius * 0.999, s))
        if abs(leaf.distance(g.move_along(p, s))) > tol * scale:
            return False
    return True


def min_crossing_angle(web: Web3, a: Sequence[float]) -> float:
    r, g, b = web.leaves_at(a)
    return min(crossing_angle(r, g, a), crossing_angle(g, b, a), crossing_angle(b, r, a))
