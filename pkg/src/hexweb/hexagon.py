"""Closure hexagon tracing and defect statistics."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import BranchAmbiguous, GeometryError, InsufficientValidTraces, StepFailed, TraceError
from .geom import Point, dist, intersect
from .webs import Web3

# (foliation moving from the previous vertex, foliation of the leaf through O)
SCHEDULE = (
    ("green", "blue"),
    ("red", "green"),
    ("blue", "red"),
    ("green", "blue"),
    ("red", "green"),
    ("blue", "red"),
)

AMBIGUITY_RATIO = 0.1
MAX_H_FRACTION = 0.3


@dataclass(frozen=True)
class Step:
    k: int
    moving: str
    fixed: str
    chosen: Point
    rejected: Optional[Point]


@dataclass(frozen=True)
class HexTrace:
    O: Point
    A: tuple  # A1..A7
    steps: tuple

    @property
    def defect(self) -> float:
        return dist(self.A[6], self.A[0])

    @property
    def size(self) -> float:
        return dist(self.A[0], self.O)

    @property
    def relative_defect(self) -> float:
        return self.defect / self.size if self.size > 0.0 else 0.0


def _choose(cands: Sequence[Point], prev: Point, k: int) -> tuple[Point, Optional[Point]]:
    if not cands:
        raise StepFailed(k, "the two leaves do not meet")
    if len(cands) == 1:
        return cands[0], None
    d = sorted((dist(c, prev), i) for i, c in enumerate(cands))
    (d0, i0), (d1, i1) = d[0], d[1]
    if d1 - d0 <= AMBIGUITY_RATIO * d1:
        raise BranchAmbiguous(k, f"candidates at distances {d0:.3g} and {d1:.3g}")
    return cands[i0], cands[i1]


def trace_hexagon(w: Web3, O: Sequence[float], A1: Sequence[float], check_domain: bool = True) -> HexTrace:
    """Trace A1 -> A7 around the centre O, alternating leaves through the last vertex and through O."""
    O, A1 = Point(*O), Point(*A1)
    try:
        through_o = {c: w.foliation(c)(O) for c in ("red", "green", "blue")}
    except GeometryError as exc:
        raise StepFailed(0, f"no leaf through the centre: {exc}") from exc
    verts = [A1]
    steps = []
    for k, (moving, fixed) in enumerate(SCHEDULE, start=2):
        prev = verts[-1]
        if prev == O:
            verts.append(O)
            steps.append(Step(k, moving, fixed, O, None))
            continue
        try:
            leaf = w.foliation(moving)(prev)
            cands = intersect(leaf, through_o[fixed])
        except TraceError:
            raise
        except GeometryError as exc:
            raise StepFailed(k, str(exc)) from exc
        chosen, rejected = _choose(cands, prev, k)
        if check_domain and not w.domain.contains(chosen):
            raise StepFailed(k, f"A{k} leaves the domain")
        verts.append(chosen)
        steps.append(Step(k, moving, fixed, chosen, rejected))
    return HexTrace(O, tuple(verts), tuple(steps))


def sample_centers(w: Web3, n: int, rng: np.random.Generator, reach: float = 0.5,
                   max_tries: int = 200000) -> list[Point]:
    """``n`` points uniform in the disk of radius reach*R about the domain centre, inside the domain."""
    c, r = w.domain.center, w.domain.radius * reach
    out: list[Point] = []
    tries = 0
    while len(out) < n:
        tries += 1
        if tries > max_tries:
            raise InsufficientValidTraces(len(out), tries)
        rho = r * math.sqrt(rng.random())
        th = 2.0 * math.pi * rng.random()
        p = Point(c.x + rho * math.cos(th), c.y + rho * math.sin(th))
        if w.domain.contains(p):
            out.append(p)
    return out


@dataclass
class RadiusStats:
    h: float
    attempted: int
    succeeded: int
    max_defect: float
    median_defect: float
    max_relative: float
    median_relative: float


@dataclass
class DefectReport:
    web: str
    seed: int
    n_centers: int
    radii: list
    stats: list = field(default_factory=list)
    slope: Optional[float] = None
    failures: dict = field(default_factory=dict)

    @property
    def attempted(self) -> int:
        return sum(s.attempted for s in self.stats)

    @property
    def succeeded(self) -> int:
        return sum(s.succeeded for s in self.stats)

    @property
    def max_relative(self) -> float:
        return max(s.max_relative for s in self.stats)

    def passes(self, tol: float = 1e-8) -> bool:
        return self.max_relative <= tol

    def stat_for(self, h: float) -> RadiusStats:
        return min(self.stats, key=lambda s: abs(s.h - h))

    def to_dict(self) -> dict:
        return {
            "web": self.web,
            "seed": self.seed,
            "n_centers": self.n_centers,
            "radii": list(self.radii),
            "stats": [asdict(s) for s in self.stats],
            "slope": self.slope,
            "failures": dict(sorted(self.failures.items())),
            "attempted": self.attempted,
            "succeeded": self.succeeded,
            "max_relative_defect": self.max_relative,
        }


def loglog_slope(hs: Sequence[float], defects: Sequence[float]) -> Optional[float]:
    pts = [(math.log(h), math.log(d)) for h, d in zip(hs, defects) if h > 0.0 and d > 0.0]
    if len(pts) < 2:
        return None
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


def defect_scan(w: Web3, n_centers: int, radii: Sequence[float], seed: int,
                direction_sign: float = 1.0) -> DefectReport:
    """Trace hexagons of sizes ``radii`` about ``n_centers`` seeded random centres.

    A1 sits at arc distance h from O along the red leaf through O.
    """
    if n_centers < 1:
        raise ValueError("n_centers must be positive")
    if any(h <= 0.0 for h in radii):
        raise ValueError("hexagon sizes must be positive")
    if any(h > MAX_H_FRACTION * w.domain.radius * (1.0 + 1e-12) for h in radii):
        raise ValueError(f"hexagon sizes are capped at {MAX_H_FRACTION} x domain radius")
    rng = np.random.default_rng(seed)
    centers = sample_centers(w, n_centers, rng)
    report = DefectReport(w.name, seed, n_centers, [float(h) for h in radii])
    for h in radii:
        defects, rel = [], []
        for o in centers:
            try:
                leaf = w.red(o)
                a1 = leaf.move_along(o, direction_sign * h)
                tr = trace_hexagon(w, o, a1)
            except GeometryError as exc:
                key = type(exc).__name__
                report.failures[key] = report.failures.get(key, 0) + 1
                continue
            defects.append(tr.defect)
            rel.append(tr.defect / h)
        if defects:
            st = RadiusStats(float(h), len(centers), len(defects), float(max(defects)),
                             float(np.median(defects)), float(max(rel)), float(np.median(rel)))
        else:
            st = RadiusStats(float(h), len(centers), 0, math.nan, math.nan, math.nan, math.nan)
        report.stats.append(st)
    if 2 * report.succeeded < report.attempted:
        raise InsufficientValidTraces(report.succeeded, report.attempted)
    report.slope = loglog_slope([s.h for s in report.stats], [s.median_defect for s in report.stats])
    return report


def standard_radii(w: Web3, fractions: Sequence[float] = (0.05, 0.1, 0.2)) -> list[float]:
    return [f * w.domain.radius for f in fractions]
