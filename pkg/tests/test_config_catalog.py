import json
import math

import pytest

from hexweb.catalog import CATALOG, CLOSURE_PRESETS, CONTROL_PAIRS, build, preset, preset_names
from hexweb.config import WebConfig
from hexweb.errors import InvalidConfig
from hexweb.geom import Domain, Point, Predicate


@pytest.mark.parametrize("name", preset_names())
def test_preset_round_trip_bit_exact(name, tmp_path):
    cfg = preset(name)
    path = tmp_path / "cfg.json"
    cfg.save(path)
    back = WebConfig.load(path)
    assert back == cfg
    assert back.dumps() == cfg.dumps()
    assert path.read_text() == cfg.dumps()


def test_awkward_floats_round_trip():
    vals = [0.1, 1 / 3, math.sqrt(2.0), 5e-324, 1.7976931348623157e308, -0.0]
    cfg = WebConfig("pappus", {"R": [vals[0], vals[1]], "G": [vals[2], 1.0], "B": [0.0, 1.0], "extra": vals},
                    Domain(Point(1 / 3, -2 / 7), math.pi / 10, (Predicate("halfplane", (1.0, 0.0, 0.1)),)))
    back = WebConfig.loads(cfg.dumps())
    assert back == cfg
    for a, b in zip(back.params["extra"], vals):
        assert a.hex() == b.hex()


def test_unknown_key_and_malformed():
    with pytest.raises(InvalidConfig):
        build(WebConfig("no-such-web", {}, Domain(Point(0, 0), 1.0)))
    with pytest.raises(InvalidConfig):
        WebConfig.loads("[1, 2]")
    with pytest.raises(InvalidConfig):
        WebConfig.loads("{not json")
    with pytest.raises(InvalidConfig):
        WebConfig.loads(json.dumps({"web": "pappus", "params": {}}))
    with pytest.raises(InvalidConfig):
        build(WebConfig("pappus", {"R": [0, 0]}, Domain(Point(0, 0), 1.0)))
    with pytest.raises(InvalidConfig):
        preset("nope")


def test_nonpositive_domain_rejected():
    cfg = preset("pappus")
    with pytest.raises((InvalidConfig, ValueError)):
        build(WebConfig(cfg.web, cfg.params, Domain(Point(0, 0), 0.0)))


@pytest.mark.parametrize("name", preset_names())
def test_every_preset_builds(name):
    w = build(preset(name))
    assert w.name == preset(name).web
    assert w.info["config"] == preset(name)


def test_catalog_contents():
    keys = set(CATALOG)
    for k in ["pappus", "brianchon", "blaschke", "graf-sauer", "volk-strubecker", "apollonian",
              "main-a", "main-b", "main-c", "main-d", "main-e", "problem41", "cubic-series"]:
        assert k in keys
    assert {f"shelekhov-{i}" for i in "adefghj"} <= keys
    assert CATALOG["cubic-series"].expected == "experimental"
    assert all(e.reference and e.description for e in CATALOG.values())


def test_closure_and_control_lists_are_presets():
    names = set(preset_names())
    assert set(CLOSURE_PRESETS) <= names
    for bad, good in CONTROL_PAIRS:
        assert bad in names and good in names
        assert not build(preset(bad)).expected_hexagonal
        assert build(preset(good)).expected_hexagonal is True


def test_with_params_does_not_mutate():
    cfg = preset("main-d")
    other = cfg.with_params(L=[-1.0, 0.0])
    assert cfg.params["L"] == [-1.0, 0.7]
    assert other.params["L"] == [-1.0, 0.0]
