import math

import numpy as np
import pytest

from hexweb.catalog import build, preset
from hexweb.domains import find_disk, point_quality, quality_grid, validate_domain
from hexweb.geom import Domain, Point
from hexweb.webs import Web3, pappus_web


def test_point_quality_zero_where_leaf_missing():
    w = build(preset("main-b"))
    assert point_quality(w, (0.0, 0.0)) == 0.0  # inside the ellipse: no tangents
    assert point_quality(w, w.domain.center) > 0.1


def test_pappus_quality_is_min_angle():
    w = pappus_web((0, 0), (1, 0), (0, 1), Domain(Point(2, 2), 0.5))
    # at (2, 2) the lines to the three vertices
    dirs = [math.atan2(2 - y, 2 - x) for x, y in ((0, 0), (1, 0), (0, 1))]
    angs = []
    for i in range(3):
        d = abs(dirs[i] - dirs[(i + 1) % 3]) % math.pi
        angs.append(min(d, math.pi - d))
    assert point_quality(w, (2.0, 2.0)) == pytest.approx(min(angs), abs=1e-12)


def test_find_disk_avoids_bad_region():
    w = build(preset("main-b"))
    d = find_disk(w, (-4.0, 4.0), (-3.0, 3.0), n=41, min_angle=0.1)
    assert d is not None and d.radius > 0.1
    probe = Web3(w.name, w.red, w.green, w.blue, d)
    rep = validate_domain(probe, samples=50, leaves=10, per_leaf=10)
    assert rep.missing == 0 and rep.min_angle >= 0.1 * 0.5


def test_quality_grid_shape():
    w = build(preset("pappus"))
    xs, ys, q = quality_grid(w, (-1.0, 1.0), (-1.0, 1.0), n=11)
    assert q.shape == (11, 11) and len(xs) == 11 and len(ys) == 11
    assert np.all(q >= 0.0)


def test_report_dict():
    rep = validate_domain(build(preset("pappus")), samples=20, leaves=5, per_leaf=5)
    d = rep.to_dict()
    assert d["ok"] is True and d["samples"] == 20 and d["leaf_checks"] == 15
