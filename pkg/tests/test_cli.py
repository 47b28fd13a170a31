import json
import subprocess
import sys
import time

import pytest

from hexweb.catalog import preset
from hexweb.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_table(capsys):
    code, out, _ = run(["catalog"], capsys)
    assert code == EXIT_OK
    keys = [line.split("\t")[0] for line in out.splitlines()[1:]]
    assert {"main-a", "main-b", "main-c", "main-d", "main-e"} <= set(keys)
    assert {"pappus", "brianchon", "blaschke"} <= set(keys)
    row = next(line for line in out.splitlines() if line.startswith("cubic-series\t"))
    assert row.split("\t")[2] == "experimental"


def test_catalog_json(capsys):
    code, out, _ = run(["catalog", "--json"], capsys)
    data = json.loads(out)
    assert code == EXIT_OK
    assert any(e["key"] == "main-e" for e in data["catalog"])
    assert data["presets"]["main-e-ecc072"] == "main-e"


def test_verify_main_b_passes(tmp_path, capsys):
    out = tmp_path / "b.json"
    code, stdout, _ = run(["verify", "main-b", "--samples", "20", "--out", str(out)], capsys)
    assert code == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["pass"] is True
    assert rep["closure"]["max_relative_defect"] <= 1e-8
    assert rep["chart"]["max_deviation"] <= 1e-8
    assert (tmp_path / rep["figures"][0]).exists()
    assert "overall\t\t\tPASS" in stdout


def test_verify_control_fails(tmp_path, capsys):
    out = tmp_path / "e.json"
    code, stdout, _ = run(["verify", "main-e-ecc072", "--samples", "20", "--out", str(out), "--no-figures"],
                          capsys)
    rep = json.loads(out.read_text())
    assert code == EXIT_FAIL
    assert rep["pass"] is False
    assert rep["closure"]["pass"] is False
    assert "FAIL" in stdout


def test_verify_config_file(tmp_path, capsys):
    cfg = tmp_path / "pappus.json"
    preset("pappus").save(cfg)
    code, _, _ = run(["verify", str(cfg), "--samples", "10", "--no-figures", "--out", str(tmp_path / "p.json")],
                     capsys)
    assert code == EXIT_OK


def test_verify_byte_identical(tmp_path, capsys):
    out = tmp_path / "r.json"
    run(["verify", "main-c", "--samples", "15", "--seed", "3", "--out", str(out)], capsys)
    first = out.read_bytes()
    fig1 = (tmp_path / "r.defect.svg").read_bytes()
    run(["verify", "main-c", "--samples", "15", "--seed", "3", "--out", str(out)], capsys)
    assert out.read_bytes() == first
    assert (tmp_path / "r.defect.svg").read_bytes() == fig1


def test_verify_small_run_is_fast(tmp_path, capsys):
    main(["verify", "main-b", "--samples", "2", "--no-figures", "--out", str(tmp_path / "warm.json")])
    t0 = time.perf_counter()
    code = main(["verify", "main-b", "--samples", "10", "--no-figures", "--out", str(tmp_path / "t.json")])
    elapsed = time.perf_counter() - t0
    capsys.readouterr()
    assert code == EXIT_OK
    assert elapsed < 1.0


def test_bad_inputs(tmp_path, capsys):
    code, _, err = run(["verify", "no-such-thing"], capsys)
    assert code == EXIT_CONFIG and "invalid config" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, _ = run(["verify", str(bad)], capsys)
    assert code == EXIT_CONFIG
    code, _, _ = run(["verify", "main-b", "--samples", "0"], capsys)
    assert code == EXIT_CONFIG
    code, _, _ = run(["render", "pappus", "--out", str(tmp_path / "x.svg"), "--hexagon=1,2,3"], capsys)
    assert code == EXIT_CONFIG


def test_render_command(tmp_path, capsys):
    out = tmp_path / "w.svg"
    w = preset("main-b")
    c = w.domain.center
    hexagon = f"--hexagon={c.x},{c.y},{c.x + 0.1},{c.y}"
    code, stdout, _ = run(["render", "main-b", "--out", str(out), hexagon, "--leaves", "4,4,4"], capsys)
    assert code == EXIT_OK
    assert out.read_text().startswith("<?xml")
    assert "\tyes\t" in stdout


def test_scan_experimental_41(tmp_path, capsys):
    out = tmp_path / "s41.json"
    code, stdout, _ = run(["scan-experimental", "4.1", "--samples", "20", "--out", str(out)], capsys)
    assert code == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["experimental"] is True and rep["gated"] is False
    names = [r["name"] for r in rep["rows"]]
    assert names == ["elliptic-replacement", "parabola-control"]
    assert rep["rows"][0]["claim"]["met"] is True
    assert rep["rows"][1]["claim"]["met"] is True
    lines = [l for l in stdout.splitlines() if l.startswith("4.1\t")]
    assert len(lines) == 2 and all(l.endswith("EXPERIMENTAL") for l in lines)


def test_scan_experimental_42_domain_map(tmp_path, capsys):
    out = tmp_path / "s42.json"
    code, stdout, _ = run(["scan-experimental", "4.2", "--samples", "10", "--out", str(out)], capsys)
    assert code == EXIT_OK
    rep = json.loads(out.read_text())
    dm = rep["domain_map"]
    assert len(dm["rows"]) == dm["n"] and all(len(r) == dm["n"] for r in dm["rows"])
    assert 0.0 < dm["fraction_three_real"] < 1.0
    assert set(rep["figures"]) == {"s42.defect.svg", "s42.roots.svg"}
    assert "EXPERIMENTAL" in stdout


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "hexweb.cli", "catalog", "--presets"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "main-e-ecc072\tmain-e" in proc.stdout
