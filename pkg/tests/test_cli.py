import math

import numpy as np
import pytest

from ccsfa1d.cli import (ScanSpec, SpecError, main, _parse_range,
                         _parse_variants, _read_config, _fmt)


def test_parse_range():
    assert _parse_range("0.01:0.05:5") == (0.01, 0.05, 5, "lin")
    assert _parse_range("0.01:0.05:5:log") == (0.01, 0.05, 5, "log")
    with pytest.raises(SpecError):
        _parse_range("0.01:0.05")
    with pytest.raises(SpecError):
        _parse_range("a:b:c")


def test_parse_variants_canonical_order():
    assert _parse_variants("S2qc,S0") == ("S0", "S2qc")
    with pytest.raises(SpecError):
        _parse_variants("S0,S9")


def test_scan_spec_validation():
    with pytest.raises(SpecError):
        ScanSpec(kind="scan-field", kappa=1.0, charge=1.0,
                 start=0.05, stop=0.01, points=5)
    with pytest.raises(SpecError):
        ScanSpec(kind="scan-field", kappa=1.0, charge=1.0,
                 start=0.01, stop=0.05, points=1)
    with pytest.raises(SpecError):
        ScanSpec(kind="scan-field", kappa=1.0, charge=1.0,
                 start=0.01, stop=0.05, points=5, variants=())
    spec = ScanSpec(kind="scan-field", kappa=1.0, charge=1.0,
                    start=0.01, stop=0.05, points=5, spacing="log")
    grid = spec.grid()
    assert len(grid) == 5
    assert grid[0] == pytest.approx(0.01) and grid[-1] == pytest.approx(0.05)
    # log spacing: constant ratio
    assert grid[1] / grid[0] == pytest.approx(grid[2] / grid[1])


def test_config_parsing(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nkappa=2.0\n\nZ = 1\nvariants=S0,S1\n")
    values = _read_config(str(cfg))
    assert values == {"kappa": "2.0", "Z": "1", "variants": "S0,S1"}
    with pytest.raises(SpecError):
        _read_config(str(tmp_path / "missing.cfg"))
    bad = tmp_path / "bad.cfg"
    bad.write_text("kappa 2.0\n")
    with pytest.raises(SpecError):
        _read_config(str(bad))


def test_fmt_locale_independent():
    assert _fmt(0.1) == "0.1"
    assert _fmt(1234567.25) == "1234567.25"
    assert _fmt(float("nan")) == "nan"
    assert _fmt(None) == ""
    assert _fmt("msg") == "msg"


def test_exit_code_spec_error(capsys):
    assert main(["scan-field", "--kappa", "1"]) == 1
    assert "error" in capsys.readouterr().err


def test_exit_code_unknown_flag():
    assert main(["pmd", "--bogus", "1"]) == 1


def test_pmd_csv_roundtrip(tmp_path):
    out = tmp_path / "pmd.csv"
    args = ["pmd", "--kappa", "1", "--Z", "0", "--gamma", "0.1",
            "--E0", "0.02", "--variants", "S0", "--out", str(out)]
    assert main(args) == 0
    text = out.read_text()
    lines = text.splitlines()
    assert lines[0] == "# schema=1"
    assert lines[1] == "p,probability_S0,normalized_S0,error"
    assert len(lines) == 2 + 201
    # normalized column peaks at exactly 1
    norms = [float(l.split(",")[2]) for l in lines[2:]]
    assert max(norms) == pytest.approx(1.0)
    # companion plot script exists and references the csv
    gp = out.with_suffix(".gp")
    assert gp.is_file() and out.name in gp.read_text()


def test_byte_identical_reruns(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    base = ["pmd", "--kappa", "1", "--Z", "1", "--gamma", "0.1",
            "--E0", "0.02", "--variants", "S0,S1"]
    assert main(base + ["--out", str(a)]) == 0
    assert main(base + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_flag_override(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("kappa=1\nZ=0\ngamma=0.1\nE0=0.05\nvariants=S0\n")
    out1 = tmp_path / "one.csv"
    assert main(["pmd", "--config", str(cfg), "--out", str(out1)]) == 0
    out2 = tmp_path / "two.csv"
    assert main(["pmd", "--config", str(cfg), "--E0", "0.02",
                 "--out", str(out2)]) == 0
    # stronger field: wider distribution, different grid
    p1 = float(out1.read_text().splitlines()[2].split(",")[0])
    p2 = float(out2.read_text().splitlines()[2].split(",")[0])
    assert p1 != p2


def test_scan_field_columns(tmp_path):
    out = tmp_path / "scan.csv"
    args = ["scan-field", "--kappa", "1", "--Z", "1", "--gamma", "0.1",
            "--f-range", "0.02:0.03:2", "--variants", "S1",
            "--out", str(out)]
    assert main(args) == 0
    lines = out.read_text().splitlines()
    assert lines[1] == ("f,gamma,E0,omega,shift_S1,peak_probability_S1,"
                        "ratio_to_arm_S1,estimate_static,error")
    row = lines[2].split(",")
    assert float(row[0]) == pytest.approx(0.02)
    shift, est = float(row[4]), float(row[7])
    assert shift == pytest.approx(est, rel=0.15)


def test_check_subcommand_exit_zero(capsys):
    assert main(["check"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out and "FAIL" not in out
