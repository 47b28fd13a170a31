import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from hexweb import identities
from hexweb.conics import Conic

CENTRAL = [
    Conic.ellipse(math.sqrt(2.0), 1.0),
    Conic.ellipse(2.0, 0.7, center=(0.5, 1.0), angle=1.1),
    Conic.hyperbola(1.0, 0.75),
    Conic.hyperbola(1.5, 1.0, center=(-1.0, 0.5), angle=0.3),
]
PARABOLAS = [Conic.parabola(1.0), Conic.parabola(0.5, vertex=(1.0, -1.0), angle=0.6)]


@pytest.mark.parametrize("conic", CENTRAL)
def test_isogonal(conic):
    assert identities.isogonal_residual(conic, n=100, seed=1) <= 1e-9


@pytest.mark.parametrize("conic", CENTRAL + PARABOLAS)
def test_optical(conic):
    assert identities.optical_residual(conic, n=100, seed=2) <= 1e-9


@pytest.mark.parametrize("conic", CENTRAL)
@pytest.mark.parametrize("focus", [0, 1])
def test_pedal(conic, focus):
    assert identities.pedal_residual(conic, n=100, seed=3, focus_index=focus) <= 1e-9


@pytest.mark.parametrize("parabola", PARABOLAS)
def test_circumcenter(parabola):
    assert identities.circumcenter_residual(parabola, n=100, seed=4) <= 1e-9


@pytest.mark.parametrize("parabola", PARABOLAS)
def test_power_of_point(parabola):
    delta = parabola.directrix()
    l = delta.foot(parabola.focus) + delta.direction * 0.7
    assert identities.power_of_point_residual(parabola, l, n=100, seed=5) <= 1e-9


def test_major_circle_identities():
    assert identities.major_circle_identities_residual(n=100, seed=6) <= 1e-9


def test_envelope():
    assert identities.envelope_residual(n=100, seed=7) <= 1e-9


def test_envelope_by_maximization():
    """Independent check: each circle lies inside the ellipse and reaches it."""
    for a in np.linspace(-0.69, 0.69, 25):
        r = math.sqrt(1.0 - a * a)
        f = lambda th: -((a + r * math.cos(th)) ** 2 / 2.0 + (r * math.sin(th)) ** 2 - 1.0)
        best = minimize_scalar(f, bounds=(0.0, math.pi), method="bounded", options={"xatol": 1e-12})
        assert abs(best.fun) <= 1e-9


@pytest.mark.parametrize("conic", CENTRAL)
def test_focal_ratio(conic):
    assert identities.focal_ratio_residual(conic, n=100, seed=8) <= 1e-9
