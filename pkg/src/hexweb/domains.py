"""Domain validation: leaf existence, transversality and the leaf property.

``find_disk`` locates a large disk of well-behaved points on a grid; catalog
presets store disks found this way (shrunk by a safety margin).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import ndimage

from .errors import GeometryError
from .geom import Domain, Point
from .webs import COLORS, Web3, leaf_property_violation, min_crossing_angle

MIN_ANGLE = 1e-3


def point_quality(w: Web3, p: Sequence[float]) -> float:
    """Smallest pairwise crossing angle at ``p`` (0 where a leaf is missing)."""
    try:
        return min_crossing_angle(w, p)
    except GeometryError:
        return 0.0


@dataclass
class DomainReport:
    web: str
    seed: int
    samples: int
    missing: int
    min_angle: float
    leaf_checks: int
    leaf_violations: int

    @property
    def ok(self) -> bool:
        return self.missing == 0 and self.min_angle >= MIN_ANGLE and self.leaf_violations == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def _uniform_in(domain: Domain, n: int, rng: np.random.Generator) -> list[Point]:
    out: list[Point] = []
    c, r = domain.center, domain.radius
    tries = 0
    while len(out) < n and tries < 1000 * n:
        tries += 1
        rho = r * math.sqrt(rng.random())
        th = 2.0 * math.pi * rng.random()
        p = Point(c.x + rho * math.cos(th), c.y + rho * math.sin(th))
        if domain.contains(p):
            out.append(p)
    return out


def validate_domain(w: Web3, samples: int = 200, leaves: int = 50, per_leaf: int = 20,
                    seed: int = 0, tol: float = 1e-10) -> DomainReport:
    """Transversality at ``samples`` points and the leaf property on ``leaves`` leaves per foliation."""
    rng = np.random.default_rng(seed)
    pts = _uniform_in(w.domain, samples, rng)
    missing, angle = 0, math.inf
    for p in pts:
        q = point_quality(w, p)
        if q == 0.0:
            missing += 1
        angle = min(angle, q)
    checks = violations = 0
    for color in COLORS:
        for p in _uniform_in(w.domain, leaves, rng):
            checks += 1
            try:
                if leaf_property_violation(w, color, p, per_leaf, tol, span=w.domain.radius):
                    violations += 1
            except GeometryError:
                violations += 1
    return DomainReport(w.name, seed, len(pts), missing, float(angle), checks, violations)


def quality_grid(w: Web3, xlim: tuple[float, float], ylim: tuple[float, float], n: int = 121,
                 predicates: Sequence = ()) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    xs = np.linspace(xlim[0], xlim[1], n)
    ys = np.linspace(ylim[0], ylim[1], n)
    q = np.zeros((n, n))
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            p = Point(float(x), float(y))
            if all(pr(p) for pr in predicates):
                q[i, j] = point_quality(w, p)
    return xs, ys, q


def find_disk(w: Web3, xlim, ylim, n: int = 121, min_angle: float = 0.1,
              predicates: Sequence = (), margin: float = 0.8) -> Optional[Domain]:
    """Largest grid disk whose points all have crossing angle >= ``min_angle``.

    The returned radius is ``margin`` times the clearance to the nearest bad
    grid point (or the grid border).
    """
    xs, ys, q = quality_grid(w, xlim, ylim, n, predicates)
    good = q >= min_angle
    if not good.any():
        return None
    padded = np.pad(good, 1, constant_values=False)
    clearance = ndimage.distance_transform_edt(padded)[1:-1, 1:-1]
    i, j = np.unravel_index(int(np.argmax(clearance)), clearance.shape)
    step = min(xs[1] - xs[0], ys[1] - ys[0])
    radius = margin * (clearance[i, j] - 1.0) * step
    if radius <= 0.0:
        return None
    return Domain(Point(float(xs[j]), float(ys[i])), float(radius), tuple(predicates))
