"""Catalog registry: keys, schemas, builders from WebConfig, and shipped presets.

Preset domains were found with :func:`hexweb.domains.find_disk` (crossing
angle >= 0.1 rad on a grid, radius shrunk to 80%) and frozen here; see
``scripts/find_domains.py``.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass
from typing import Any, Callable, Mapping

from . import webs
from .conics import Conic
from .config import WebConfig
from .errors import GeometryError, InvalidConfig
from .geom import Circle, Domain, GenCircle, Line, Point, Predicate
from .pencils import ApollonianSet, DarbouxConfig, Pencil, TangencyLabel, eq_of
from .webs import Web3

# ---------------------------------------------------------------------------
# Parameter parsing


def _point(v, name: str = "point") -> Point:
    try:
        x, y = v
        return Point(float(x), float(y))
    except (TypeError, ValueError) as exc:
        raise InvalidConfig(f"{name} must be a pair of numbers, got {v!r}") from exc


def parse_curve(d: Mapping) -> GenCircle:
    """``{"circle": {"center": [x, y], "radius": r}}`` or ``{"line": {"normal": [nx, ny], "offset": c}}``."""
    if "circle" in d:
        c = d["circle"]
        return Circle(_point(c["center"], "circle center"), float(c["radius"]))
    if "line" in d:
        ln = d["line"]
        return Line(_point(ln["normal"], "line normal").unit(), float(ln["offset"]))
    raise InvalidConfig(f"unknown curve spec {d!r}")


def curve_spec(g: GenCircle) -> dict:
    if isinstance(g, Circle):
        return {"circle": {"center": [g.center.x, g.center.y], "radius": g.radius}}
    return {"line": {"normal": [g.normal.x, g.normal.y], "offset": g.offset}}


def parse_pencil(d: Mapping) -> Pencil:
    kind = d.get("type")
    if kind == "elliptic":
        return Pencil.from_vertices(*(_point(p) for p in d["points"]))
    if kind == "hyperbolic":
        return Pencil.from_limiting_points(*(_point(p) for p in d["points"]))
    if kind == "parabolic":
        return Pencil.parabolic(_point(d["vertex"]), _point(d["tangent"]))
    if kind == "curves":
        g1, g2 = (parse_curve(c) for c in d["curves"])
        return Pencil(eq_of(g1), eq_of(g2))
    raise InvalidConfig(f"unknown pencil type {kind!r}")


def parse_apollonian_set(d: Mapping) -> ApollonianSet:
    kind = d.get("kind")
    if kind == "tangent":
        s1, s2, o = (int(v) for v in d["label"])
        return ApollonianSet("tangent", parse_curve(d["fixed1"]), parse_curve(d["fixed2"]), TangencyLabel(s1, s2, o))
    if kind == "parabolic":
        return ApollonianSet("parabolic", vertex=int(d.get("vertex", 0)),
                             direction=tuple(_point(d.get("direction", (1.0, 0.0)))))
    if kind == "hyperbolic":
        return ApollonianSet("hyperbolic")
    raise InvalidConfig(f"unknown Apollonian set kind {kind!r}")


def parse_cubic(coeffs) -> dict:
    """``[[i, j, k, coef], ...]`` with i + j + k = 3 (powers of a, b, c)."""
    out: dict = {}
    for row in coeffs:
        i, j, k, c = row
        key = (int(i), int(j), int(k))
        if sum(key) != 3 or min(key) < 0:
            raise InvalidConfig(f"monomial {key} is not of degree 3")
        out[key] = out.get(key, 0.0) + float(c)
    if not any(out.values()):
        raise InvalidConfig("the cubic is identically zero")
    return out


def cubic_spec(coeffs: Mapping) -> list:
    return [[i, j, k, float(c)] for (i, j, k), c in sorted(coeffs.items())]


def _conic(params) -> Conic:
    try:
        return Conic.from_dict(params["conic"])
    except (KeyError, TypeError) as exc:
        raise InvalidConfig(f"missing or malformed conic: {exc}") from exc
    except ValueError as exc:
        raise InvalidConfig(str(exc)) from exc


# ---------------------------------------------------------------------------
# Builders


def _b_pappus(p, dom):
    return webs.pappus_web(_point(p["R"]), _point(p["G"]), _point(p["B"]), dom)


def _b_brianchon(p, dom):
    return webs.brianchon_web(_conic(p), _point(p["V"]), dom)


def _b_blaschke(p, dom):
    return webs.blaschke_web(_point(p["A"]), _point(p["B"]), _point(p["C"]), dom,
                             perturb=tuple(_point(p.get("perturb", (0.0, 0.0)))))


def _b_graf_sauer(p, dom):
    return webs.graf_sauer_web(parse_cubic(p["cubic"]), dom, cut=float(p.get("cut", 0.0)))


def _b_volk(p, dom):
    base_cfg = p["base"]
    key = base_cfg["web"]
    if key not in ("pappus", "graf-sauer"):
        raise InvalidConfig("the base web must be a web of lines (pappus or graf-sauer)")
    base = CATALOG[key].builder(base_cfg["params"], Domain((0.0, 0.0), math.inf))
    cfg = DarbouxConfig.from_dict(p["darboux"])
    return webs.volk_strubecker_web(base, cfg, dom)


def _b_apollonian(p, dom):
    pencil = parse_pencil(p["pencil"])
    return webs.apollonian_web(pencil, parse_apollonian_set(p["set1"]), parse_apollonian_set(p["set2"]), dom)


def _b_main_a(p, dom):
    return webs.main_a_web(_point(p["center"]), float(p["radius"]), _point(p["direction"]), dom)


def _b_main_b(p, dom):
    return webs.main_b_web(_conic(p), dom)


def _b_main_c(p, dom):
    return webs.main_c_web(_conic(p), dom, focus_index=int(p.get("focus_index", 0)))


def _b_main_d(p, dom):
    return webs.main_d_web(_conic(p), _point(p["L"]), dom)


def _b_main_e(p, dom):
    return webs.main_e_web(_conic(p), dom, bypass_validation=bool(p.get("bypass_validation", False)))


def _b_problem41(p, dom):
    l = _point(p["L"]) if "L" in p else None
    return webs.problem41_web(_conic(p), str(p["variant"]), dom, l=l)


def _b_cubic_series(p, dom):
    return webs.cubic_series_web(dom)


def _shelekhov_builder(item: str):
    def build(p, dom):
        if item == "a":
            q = dict(p)
            q["R"], q["G"], q["B"] = (_point(p[k]) for k in ("R", "G", "B"))
            return webs.shelekhov_web("a", q, dom)
        return webs.shelekhov_web(item, p, dom)

    return build


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    reference: str
    description: str
    schema: Mapping[str, str]
    builder: Callable[[Mapping, Domain], Web3]
    expected: Any = True


_CONIC = "conic: {kind, a, b, center, angle}"

_ENTRIES = [
    CatalogEntry("pappus", "Pappus web", "three pencils of lines",
                 {"R": "point", "G": "point", "B": "point"}, _b_pappus),
    CatalogEntry("brianchon", "Brianchon web", "conic tangents counted twice and lines through a point",
                 {"conic": _CONIC, "V": "point"}, _b_brianchon),
    CatalogEntry("blaschke", "Blaschke web", "three elliptic pencils on vertex pairs (A,B), (B,C), (C,A)",
                 {"A": "point", "B": "point", "C": "point", "perturb": "offset of A in the red pencil (control)"},
                 _b_blaschke),
    CatalogEntry("graf-sauer", "Graf-Sauer theorem", "tangent lines of a class-3 curve counted triply",
                 {"cubic": "[[i, j, k, coef], ...] monomials a^i b^j c^k", "cut": "angle origin for root order"},
                 _b_graf_sauer),
    CatalogEntry("volk-strubecker", "Volk-Strubecker theorem", "Darboux image of a web of lines",
                 {"base": "web config of a line web", "darboux": "{sphere_center, sphere_radius, e1, e2}"},
                 _b_volk),
    CatalogEntry("apollonian", "pencil and two Apollonian sets", "a pencil with two of its Apollonian sets",
                 {"pencil": "pencil spec", "set1": "Apollonian set spec", "set2": "Apollonian set spec"},
                 _b_apollonian),
    CatalogEntry("main-a", "circle tangents with a parabolic pencil", "circle tangents counted twice and the parabolic pencil at the center",
                 {"center": "point", "radius": "length", "direction": "pencil normal direction"}, _b_main_a),
    CatalogEntry("main-b", "conic tangents with the focal pencil", "conic tangents counted twice and the hyperbolic pencil at the foci",
                 {"conic": _CONIC}, _b_main_b),
    CatalogEntry("main-c", "focal lines with minor-axis circles", "focal lines, left tangents, doubly tangent circles on the minor axis",
                 {"conic": _CONIC, "focus_index": "0 or 1"}, _b_main_c),
    CatalogEntry("main-d", "parabola tangents with a directrix pencil", "parabola tangents counted twice and the hyperbolic pencil (F, L)",
                 {"conic": "parabola", "L": "point on the directrix"}, _b_main_d),
    CatalogEntry("main-e", "major-axis circles with the focal elliptic pencil",
                 "major-axis doubly tangent circles counted twice and the elliptic pencil through the foci",
                 {"conic": "ellipse with eccentricity 1/sqrt(2)", "bypass_validation": "allow other eccentricities"},
                 _b_main_e),
    CatalogEntry("problem41", "elliptic replacement (conjectural)", "main-b or main-d with the elliptic pencil on the same two points",
                 {"conic": _CONIC, "variant": "elliptic-replacement | parabola-control", "L": "point (control)"},
                 _b_problem41, expected="experimental"),
    CatalogEntry("cubic-series", "cubic series of circles (conjectural)", "a cubic series of circles counted triply", {}, _b_cubic_series,
                 expected="experimental"),
]

_SHELEKHOV_DOC = {
    "a": ("three pencils in one bundle (Darboux image of a Pappus web)",
          {"R": "point", "G": "point", "B": "point", "darboux": "Darboux configuration"}),
    "d": ("two orthogonal pencils and a third sharing a circle with each",
          {"V1": "point", "V2": "point", "through1": "point", "through2": "point"}),
    "e": ("two orthogonal parabolic pencils and a hyperbolic pencil",
          {"V": "point", "W": "point", "t": "direction"}),
    "f": ("elliptic pencils (A,B), (B,C), (C,A)", {"A": "point", "B": "point", "C": "point"}),
    "g": ("elliptic (A,B), elliptic (B,C), hyperbolic with limiting points C, A",
          {"A": "point", "B": "point", "C": "point"}),
    "h": ("two parabolic pencils and the elliptic pencil through their vertices",
          {"P1": "point", "P2": "point", "t1": "direction", "t2": "direction"}),
    "j": ("elliptic (A,B), hyperbolic (B,C), parabolic at A whose common circle with (A,B) is orthogonal to circle ABC",
          {"A": "point", "B": "point", "C": "point", "t": "optional tangent direction at A (validated)"}),
}

for _item, (_desc, _schema) in _SHELEKHOV_DOC.items():
    _ENTRIES.append(CatalogEntry(f"shelekhov-{_item}", f"Shelekhov pencil triples, item ({_item})", _desc, _schema,
                                 _shelekhov_builder(_item)))

CATALOG: dict[str, CatalogEntry] = {e.key: e for e in _ENTRIES}


def build(cfg: WebConfig) -> Web3:
    """Validate ``cfg`` and construct its web."""
    entry = CATALOG.get(cfg.web)
    if entry is None:
        raise InvalidConfig(f"unknown catalog key {cfg.web!r}")
    if not (cfg.domain.radius > 0.0 and math.isfinite(cfg.domain.radius)):
        raise InvalidConfig("domain radius must be positive and finite")
    try:
        w = entry.builder(cfg.params, cfg.domain)
    except KeyError as exc:
        raise InvalidConfig(f"{cfg.web}: missing parameter {exc}") from exc
    except InvalidConfig:
        raise
    except (GeometryError, TypeError, ValueError) as exc:
        raise InvalidConfig(f"{cfg.web}: {exc}") from exc
    info = dict(w.info)
    info["config"] = cfg
    return Web3(cfg.web, w.red, w.green, w.blue, cfg.domain, w.expected_hexagonal, info)


# ---------------------------------------------------------------------------
# Presets

SQRT2 = math.sqrt(2.0)


def _dom(cx, cy, r, preds=()) -> Domain:
    return Domain(Point(cx, cy), r, tuple(preds))


def _ellipse(a, b, center=(0.0, 0.0), angle=0.0) -> dict:
    return {"kind": "ellipse", "a": a, "b": b, "center": list(center), "angle": angle}


def _ecc072_ellipse() -> dict:
    # b = 1 and eccentricity 0.72
    return _ellipse(1.0 / math.sqrt(1.0 - 0.72 ** 2), 1.0)


_DARBOUX = DarbouxConfig().to_dict()
_PARABOLA = {"kind": "parabola", "a": 0.0, "b": 1.0, "center": [0.0, 0.0], "angle": 0.0}
_HYP_FIXED1 = Circle(Point(5.0 / 3.0, 0.0), 4.0 / 3.0)
_HYP_FIXED2 = Circle(Point(1.25, 0.0), 0.75)

PRESET_PARAMS: dict[str, tuple[str, dict]] = {
    "pappus": ("pappus", {"R": [0.0, 0.0], "G": [1.0, 0.0], "B": [0.0, 1.0]}),
    "brianchon": ("brianchon", {"conic": {"kind": "circle", "a": 1.0, "b": 1.0, "center": [0.0, 0.0], "angle": 0.0},
                                "V": [3.0, 0.0]}),
    "blaschke": ("blaschke", {"A": [0.0, 0.0], "B": [1.0, 0.0], "C": [0.3, 0.8]}),
    "blaschke-perturbed": ("blaschke", {"A": [0.0, 0.0], "B": [1.0, 0.0], "C": [0.3, 0.8],
                                        "perturb": [0.031, -0.017]}),
    "graf-sauer": ("graf-sauer", {"cubic": cubic_spec(webs.DELTOID), "cut": 0.0}),
    "volk-strubecker": ("volk-strubecker", {"base": {"web": "pappus", "params": {"R": [0.0, 0.0], "G": [1.0, 0.0],
                                                                                 "B": [0.0, 1.0]}},
                                            "darboux": _DARBOUX}),
    "apollonian": ("apollonian", {"pencil": {"type": "hyperbolic", "points": [[-1.0, 0.0], [1.0, 0.0]]},
                                  "set1": {"kind": "tangent", "fixed1": curve_spec(_HYP_FIXED1),
                                           "fixed2": curve_spec(_HYP_FIXED2), "label": [-1, 1, 1]},
                                  "set2": {"kind": "tangent", "fixed1": curve_spec(_HYP_FIXED1),
                                           "fixed2": curve_spec(_HYP_FIXED2), "label": [-1, 1, -1]}}),
    "apollonian-vertex": ("apollonian", {"pencil": {"type": "elliptic", "points": [[-1.0, 0.0], [1.0, 0.0]]},
                                         "set1": {"kind": "parabolic", "vertex": 0, "direction": [0.6, 0.8]},
                                         "set2": {"kind": "hyperbolic"}}),
    "main-a": ("main-a", {"center": [0.0, 0.0], "radius": 1.0, "direction": [1.0, 0.0]}),
    "main-b": ("main-b", {"conic": _ellipse(SQRT2, 1.0)}),
    "main-b-hyperbola": ("main-b", {"conic": {"kind": "hyperbola", "a": 1.0, "b": 0.75, "center": [0.0, 0.0],
                                              "angle": 0.0}}),
    "main-c": ("main-c", {"conic": _ellipse(SQRT2, 1.0), "focus_index": 0}),
    "main-d": ("main-d", {"conic": _PARABOLA, "L": [-1.0, 0.7]}),
    "main-e": ("main-e", {"conic": _ellipse(SQRT2, 1.0)}),
    "main-e-rotated": ("main-e", {"conic": _ellipse(1.5 * SQRT2, 1.5, (0.4, -0.3), 0.5)}),
    "main-e-ecc072": ("main-e", {"conic": _ecc072_ellipse(), "bypass_validation": True}),
    "problem41": ("problem41", {"conic": _ellipse(SQRT2, 1.0), "variant": "elliptic-replacement"}),
    "problem41-parabola": ("problem41", {"conic": _PARABOLA, "variant": "parabola-control", "L": [-1.0, 0.7]}),
    "cubic-series": ("cubic-series", {}),
    "shelekhov-a": ("shelekhov-a", {"R": [0.0, 0.0], "G": [1.0, 0.0], "B": [0.0, 1.0], "darboux": _DARBOUX}),
    "shelekhov-d": ("shelekhov-d", {"V1": [-1.0, 0.0], "V2": [1.0, 0.0], "through1": [0.0, 2.0],
                                    "through2": [3.0, 0.0]}),
    "shelekhov-e": ("shelekhov-e", {"V": [0.0, 0.0], "W": [2.0, 1.0], "t": [1.0, 0.0]}),
    "shelekhov-f": ("shelekhov-f", {"A": [0.0, 0.0], "B": [1.0, 0.0], "C": [0.3, 0.8]}),
    "shelekhov-g": ("shelekhov-g", {"A": [0.0, 0.0], "B": [1.0, 0.0], "C": [0.3, 0.8]}),
    "shelekhov-h": ("shelekhov-h", {"P1": [-1.0, 0.0], "P2": [1.0, 0.0], "t1": [0.0, 1.0], "t2": [1.0, 1.0]}),
    "shelekhov-j": ("shelekhov-j", {"A": [0.0, 0.0], "B": [1.0, 0.0], "C": [0.3, 0.8]}),
}

_MAIN_E_PREDICATES = (Predicate("halfplane", (1.0, 0.0, 0.0)), Predicate("inside_circle", (0.0, 0.0, 1.0)))


def _transported(dom: Domain, conic_params: dict) -> Domain:
    """Carry a domain given in the normalized ellipse frame to the frame of ``conic_params``."""
    from .conics import normalize_ellipse

    _, inv, _ = normalize_ellipse(Conic.from_dict(conic_params))
    preds = []
    for pr in dom.predicates:
        if pr.kind == "halfplane":
            nx, ny, c = pr.params
            n = inv.apply_dir((nx, ny))
            base = inv.apply(Point(nx * c, ny * c))
            preds.append(Predicate("halfplane", (n.x, n.y, n.dot(base))))
        else:
            cx, cy, r = pr.params
            q = inv.apply((cx, cy))
            preds.append(Predicate(pr.kind, (q.x, q.y, r * inv.scale)))
    return Domain(inv.apply(dom.center), dom.radius * inv.scale, tuple(preds))


# Domain disks (center x, center y, radius) from the scan; controls reuse their partner's domain.
PRESET_DOMAINS: dict[str, Domain] = {
    "pappus": _dom(1.15, 1.15, 0.68),
    "brianchon": _dom(2.8667, -2.1333, 1.446),
    "blaschke": _dom(-0.35, -0.85, 0.52),
    "graf-sauer": _dom(0.0, 0.0, 0.72),
    "volk-strubecker": _dom(0.6, -0.6, 0.32),
    "apollonian": _dom(2.6667, -0.2667, 0.206),
    "apollonian-vertex": _dom(0.0, 1.35, 0.466),
    "main-a": _dom(-2.1, -1.5, 0.72),
    "main-b": _dom(-2.8, -1.2, 0.96),
    "main-b-hyperbola": _dom(0.0, -0.1333, 0.746),
    "main-c": _dom(-0.2, -2.0, 0.72),
    "main-d": _dom(-2.8, -2.5333, 0.943),
    "main-e": _dom(-0.2667, -0.48, 0.1875, _MAIN_E_PREDICATES),
    "problem41": _dom(0.0, -2.5333, 1.173),
    "cubic-series": _dom(-0.4354, 1.03, 0.18),
    "shelekhov-a": _dom(0.6, -0.6, 0.32),
    "shelekhov-d": _dom(-0.4375, -1.125, 0.362),
    "shelekhov-e": _dom(0.0, 2.0625, 0.688),
    "shelekhov-f": _dom(-0.35, -0.85, 0.52),
    "shelekhov-g": _dom(0.3, -0.95, 0.44),
    "shelekhov-h": _dom(-1.2667, -1.2667, 0.55),
    "shelekhov-j": _dom(0.25, -0.9, 0.441),
}
PRESET_DOMAINS["blaschke-perturbed"] = PRESET_DOMAINS["blaschke"]
PRESET_DOMAINS["main-e-ecc072"] = PRESET_DOMAINS["main-e"]
PRESET_DOMAINS["problem41-parabola"] = PRESET_DOMAINS["main-d"]
PRESET_DOMAINS["main-e-rotated"] = _transported(PRESET_DOMAINS["main-e"], PRESET_PARAMS["main-e-rotated"][1]["conic"])


def preset(name: str) -> WebConfig:
    if name not in PRESET_PARAMS:
        raise InvalidConfig(f"unknown preset {name!r}")
    key, params = PRESET_PARAMS[name]
    dom = PRESET_DOMAINS[name]
    return WebConfig(key, copy.deepcopy(params), dom)


def preset_names() -> list[str]:
    return list(PRESET_PARAMS)


# Presets covered by the closure suite (expected hexagonal) and the negative controls.
CLOSURE_PRESETS = (
    "pappus", "brianchon", "blaschke", "graf-sauer", "volk-strubecker", "apollonian",
    "shelekhov-a", "shelekhov-d", "shelekhov-e", "shelekhov-f", "shelekhov-g", "shelekhov-h", "shelekhov-j",
    "main-a", "main-b", "main-c", "main-d", "main-e",
)
CONTROL_PAIRS = (
    ("main-e-ecc072", "main-e"),
    ("problem41-parabola", "main-d"),
    ("blaschke-perturbed", "blaschke"),
)
