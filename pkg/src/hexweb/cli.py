"""``hexweb`` command line: catalog, render, verify, scan-experimental.

Reports are canonical JSON and carry no timestamps, so reruns with the same
config, flags and seed are byte-identical.  A tab-delimited summary goes to
stdout; report figures are written next to the report file.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__, charts, webs
from .catalog import CATALOG, build, preset, preset_names
from .config import WebConfig, dumps
from .errors import GeometryError, InsufficientValidTraces, InvalidConfig, MisalignedChart
from .geom import Point
from .hexagon import DefectReport, defect_scan, standard_radii
from .render import RenderSpec, write_svg

SIZE_FRACTIONS = (0.05, 0.1, 0.2)
EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_TRACES, EXIT_IO = 0, 1, 2, 3, 4

# Experimental problems: (row name, preset, role, statistic, relation, threshold)
EXPERIMENTS = {
    "4.1": [
        ("elliptic-replacement", "problem41", "experimental", "max_relative", "<=", 1e-6),
        ("parabola-control", "problem41-parabola", "control", "median_relative", ">", 1e-4),
    ],
    "4.2": [
        ("cubic-series", "cubic-series", "experimental", "max_relative", "<=", 1e-6),
    ],
}
ROOT_MAP_XLIM = (-1.5, 1.0)
ROOT_MAP_YLIM = (-1.5, 2.0)
ROOT_MAP_N = 101


def resolve_config(ref: str) -> WebConfig:
    """A config file path, or the name of a built-in preset."""
    path = Path(ref)
    if path.is_file():
        return WebConfig.load(path)
    if ref in preset_names():
        return preset(ref)
    raise InvalidConfig(f"{ref!r} is neither a config file nor a preset ({', '.join(preset_names())})")


def _header(kind: str, **extra) -> dict:
    return {"tool": "hexweb", "version": __version__, "kind": kind, **extra}


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return "nan" if math.isnan(x) else f"{x:.3e}"
    return str(x)


def _row(*cells) -> None:
    print("\t".join(_fmt(c) for c in cells))


def _write_report(path: Path, data: dict) -> None:
    try:
        path.write_text(dumps(data), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write report {path}: {exc}") from exc


def _figure_path(report: Path, tag: str) -> Path:
    return report.with_name(f"{report.stem}.{tag}.svg")


# ---------------------------------------------------------------------------
# catalog


def cmd_catalog(args) -> int:
    if args.json:
        entries = [{"key": e.key, "reference": e.reference, "description": e.description,
                    "status": "experimental" if e.expected == "experimental" else "hexagonal",
                    "schema": dict(e.schema)} for e in CATALOG.values()]
        sys.stdout.write(dumps({"catalog": entries, "presets": {n: preset(n).web for n in preset_names()}}))
        return EXIT_OK
    _row("key", "reference", "status", "schema")
    for e in CATALOG.values():
        status = "experimental" if e.expected == "experimental" else "hexagonal"
        _row(e.key, e.reference, status, json.dumps(dict(e.schema), sort_keys=True))
    if args.presets:
        print()
        _row("preset", "key")
        for n in preset_names():
            _row(n, preset(n).web)
    return EXIT_OK


# ---------------------------------------------------------------------------
# render


def _floats(text: str, n: int, what: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise InvalidConfig(f"{what} must be {n} comma-separated numbers") from exc
    if len(vals) != n or not all(math.isfinite(v) for v in vals):
        raise InvalidConfig(f"{what} must be {n} comma-separated finite numbers")
    return vals


def cmd_render(args) -> int:
    cfg = resolve_config(args.config)
    hexagon = None
    if args.hexagon:
        ox, oy, ax, ay = _floats(args.hexagon, 4, "--hexagon")
        hexagon = (Point(ox, oy), Point(ax, ay))
    leaves = tuple(int(v) for v in _floats(args.leaves, 3, "--leaves"))
    center = Point(*_floats(args.center, 2, "--center")) if args.center else None
    spec = RenderSpec(cfg, center=center, half_width=args.half_width, leaves=leaves, hexagon=hexagon)
    out = write_svg(spec, args.out)
    _row("web", "leaves", "hexagon", "svg")
    _row(cfg.web, ",".join(str(n) for n in leaves), "yes" if hexagon else "no", str(out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def verify_report(cfg: WebConfig, samples: int, seed: int, tol: float) -> tuple[dict, Optional[DefectReport]]:
    """Run the closure scan and, where the web has one, the chart check."""
    w = build(cfg)
    data = {
        "header": _header("verify"),
        "config": cfg.to_dict(),
        "expected_hexagonal": w.expected_hexagonal,
        "flags": {"samples": samples, "seed": seed, "tol": tol, "size_fractions": list(SIZE_FRACTIONS)},
    }
    rep: Optional[DefectReport] = None
    try:
        rep = defect_scan(w, samples, standard_radii(w, SIZE_FRACTIONS), seed)
        closure = rep.to_dict()
        closure["pass"] = rep.passes(tol)
    except InsufficientValidTraces as exc:
        closure = {"error": f"InsufficientValidTraces: {exc}", "pass": False}
    data["closure"] = closure
    try:
        chart = charts.chart_for(w)
    except MisalignedChart:
        chart = None
    if chart is None:
        data["chart"] = None
    else:
        try:
            crep = charts.verify_chart(w, chart, samples=min(samples, 50), seed=seed)
            cd = crep.to_dict()
            cd["pass"] = crep.passes(tol)
        except GeometryError as exc:
            cd = {"error": f"{type(exc).__name__}: {exc}", "pass": False}
        data["chart"] = cd
    data["pass"] = bool(closure["pass"] and (data["chart"] is None or data["chart"]["pass"]))
    return data, rep


def cmd_verify(args) -> int:
    cfg = resolve_config(args.config)
    out = Path(args.out) if args.out else Path(f"{cfg.web}.verify.json")
    data, rep = verify_report(cfg, args.samples, args.seed, args.tol)
    figures = []
    if rep is not None and not args.no_figures:
        from . import plotting

        fig = plotting.defect_figure([rep], _figure_path(out, "defect"), title=cfg.web)
        figures.append(fig.name)
    data["figures"] = figures
    _write_report(out, data)

    status = lambda ok: "PASS" if ok else "FAIL"  # noqa: E731
    _row("web", "check", "observed", "tolerance", "result")
    c = data["closure"]
    if "error" in c:
        _row(cfg.web, "closure", c["error"], args.tol, "FAIL")
    else:
        _row(cfg.web, "closure.max_relative_defect", c["max_relative_defect"], args.tol, status(c["pass"]))
    ch = data["chart"]
    if ch is not None:
        if "error" in ch:
            _row(cfg.web, "chart", ch["error"], args.tol, "FAIL")
        else:
            _row(cfg.web, f"chart_{ch['chart']}.max_deviation", ch["max_deviation"], args.tol,
                 status(ch["max_deviation"] <= args.tol))
            _row(cfg.web, f"chart_{ch['chart']}.min_jacobian", ch["min_jacobian"], 1e-6,
                 status(ch["min_jacobian"] >= 1e-6))
    _row(cfg.web, "overall", "", "", status(data["pass"]))
    _row("report", str(out))
    for f in figures:
        _row("figure", str(out.with_name(f)))
    if "error" in c:
        return EXIT_TRACES
    return EXIT_OK if data["pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# scan-experimental


def root_region_map(xlim=ROOT_MAP_XLIM, ylim=ROOT_MAP_YLIM, n: int = ROOT_MAP_N) -> np.ndarray:
    """Boolean grid (rows = y ascending) of points with three distinct real series parameters."""
    xs, ys = np.linspace(*xlim, n), np.linspace(*ylim, n)
    return np.array([[webs.three_real_roots(float(x), float(y)) for x in xs] for y in ys])


def _claim_met(value: float, relation: str, threshold: float) -> bool:
    if math.isnan(value):
        return False
    return value <= threshold if relation == "<=" else value > threshold


def cmd_scan_experimental(args) -> int:
    out = Path(args.out)
    rows, reports = [], []
    for name, preset_name, role, stat, relation, threshold in EXPERIMENTS[args.problem]:
        cfg = preset(preset_name)
        w = build(cfg)
        rep = defect_scan(w, args.samples, standard_radii(w, SIZE_FRACTIONS), args.seed)
        reports.append(rep)
        if stat == "max_relative":
            value = rep.max_relative
        else:
            value = rep.stat_for(0.1 * w.domain.radius).median_relative
        rows.append({
            "name": name,
            "role": role,
            "config": cfg.to_dict(),
            "scan": rep.to_dict(),
            "claim": {"statistic": stat if stat == "max_relative" else "median_relative at h = 0.1 R",
                      "relation": relation, "threshold": threshold, "observed": value,
                      "met": _claim_met(value, relation, threshold)},
        })
    data = {
        "header": _header("scan-experimental", problem=args.problem),
        "experimental": True,
        "gated": False,
        "flags": {"samples": args.samples, "seed": args.seed, "size_fractions": list(SIZE_FRACTIONS)},
        "rows": rows,
    }
    from . import plotting

    figures = [plotting.defect_figure(reports, _figure_path(out, "defect"),
                                      title=f"experimental scan {args.problem}").name]
    if args.problem == "4.2":
        mask = root_region_map()
        dom = preset("cubic-series").domain
        data["domain_map"] = {
            "xlim": list(ROOT_MAP_XLIM), "ylim": list(ROOT_MAP_YLIM), "n": ROOT_MAP_N,
            "fraction_three_real": float(mask.mean()),
            "legend": "# three distinct real members, . fewer; top row is the largest y",
            "rows": ["".join("#" if v else "." for v in row) for row in mask[::-1]],
            "scan_domain": dom.to_dict(),
        }
        figures.append(plotting.root_region_figure(mask, ROOT_MAP_XLIM, ROOT_MAP_YLIM,
                                                   ((dom.center.x, dom.center.y), dom.radius),
                                                   _figure_path(out, "roots"),
                                                   title="three-real-root region").name)
    data["figures"] = figures
    _write_report(out, data)

    _row("problem", "row", "role", "statistic", "observed", "relation", "threshold", "claim", "label")
    for r in rows:
        cl = r["claim"]
        _row(args.problem, r["name"], r["role"], cl["statistic"], cl["observed"], cl["relation"],
             cl["threshold"], "met" if cl["met"] else "not-met", "EXPERIMENTAL")
    _row("report", str(out))
    for f in figures:
        _row("figure", str(out.with_name(f)))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hexweb", description="Hexagonal 3-webs of circular arcs.")
    p.add_argument("--version", action="version", version=f"hexweb {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="list catalog keys, references and parameter schemas")
    c.add_argument("--presets", action="store_true", help="also list the built-in presets")
    c.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    c.set_defaults(func=cmd_catalog)

    r = sub.add_parser("render", help="render a web as SVG")
    r.add_argument("config", help="config file or preset name")
    r.add_argument("--out", required=True)
    r.add_argument("--hexagon", help="Ox,Oy,A1x,A1y (write --hexagon=... when a value is negative)")
    r.add_argument("--leaves", default="9,9,9", help="leaf counts red,green,blue")
    r.add_argument("--center", help="viewport centre x,y (default: domain centre)")
    r.add_argument("--half-width", type=float, default=None, help="viewport half-width")
    r.set_defaults(func=cmd_render)

    v = sub.add_parser("verify", help="closure scan and chart check; exit 0 iff all pass")
    v.add_argument("config", help="config file or preset name")
    v.add_argument("--samples", type=int, default=100, help="number of hexagon centres")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-8, help="relative tolerance")
    v.add_argument("--out", help="report path (default <web>.verify.json)")
    v.add_argument("--no-figures", action="store_true", help="skip the defect figure")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan-experimental", help="defect statistics for the conjectural webs (not gated)")
    s.add_argument("problem", choices=sorted(EXPERIMENTS))
    s.add_argument("--out", required=True)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_scan_experimental)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        print("hexweb: error: --samples must be positive", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except InvalidConfig as exc:
        print(f"hexweb: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InsufficientValidTraces as exc:
        print(f"hexweb: {exc}", file=sys.stderr)
        return EXIT_TRACES
    except OSError as exc:
        print(f"hexweb: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
