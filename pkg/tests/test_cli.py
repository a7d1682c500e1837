import subprocess
import sys

import pytest

from pseudoherm.cli import main

BASE = ["--m1sq", "2", "--m2sq", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, dict(line.split("=", 1) for line in out.splitlines() if "=" in line), out, err


def test_classify_regimes(capsys):
    code, kv, _, _ = run(capsys, "classify", *BASE, "--m5sq", "0.3")
    assert code == 0
    assert kv == {"regime": "Unbroken", "zeta": "0.6", "discriminant": "0.16", "m_plus_sq": "1.9", "m_minus_sq": "1.1"}
    assert run(capsys, "classify", *BASE, "--m5sq", "0.5")[1]["regime"] == "Exceptional"
    code, kv, _, _ = run(capsys, "classify", *BASE, "--m5sq", "0.75")
    assert code == 0 and kv["regime"] == "Broken" and kv["zeta"] == "1.5"
    assert kv["m_plus_sq"].startswith("1.5+") and kv["m_minus_sq"].startswith("1.5-")


def test_spectrum(capsys):
    code, kv, _, _ = run(capsys, "spectrum", *BASE, "--m5sq", "0.3")
    assert code == 0
    assert float(kv["delta_omega"]) == pytest.approx(0.32959602703887063, abs=1e-15)
    assert kv["S"].startswith("[[")
    _, kv, _, _ = run(capsys, "spectrum", *BASE, "--m5sq", "0.75")
    assert "delta_omega" not in kv


def test_probs(capsys):
    code, kv, _, _ = run(capsys, "probs", *BASE, "--m5sq", "0.3", "--t", "1", "--t0", "0", "--naive", "--hermitian")
    assert code == 0
    assert float(kv["p12"]) == pytest.approx(0.009688829228594655, abs=1e-12)
    assert float(kv["p11"]) + float(kv["p12"]) == pytest.approx(1, abs=1e-12)
    assert {f"naive_{e}_p{i}{j}" for e in ("P", "PA") for i in (1, 2) for j in (1, 2)} <= kv.keys()
    assert float(kv["p11_herm"]) + float(kv["p12_herm"]) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("m5sq", ["0.5", "0.75"])
def test_probs_outside_unbroken_regime_exits_3(capsys, m5sq):
    code, _, out, err = run(capsys, "probs", *BASE, "--m5sq", m5sq, "--t", "1", "--t0", "0")
    assert code == 3 and out == "" and "regime" in err


def test_tachyonic_hermitian_analogue_exits_3(capsys):
    # zeta = 0.3 here, but the symmetric analogue has m_minus^2 < 0
    code, _, _, err = run(capsys, "probs", "--m1sq", "20", "--m2sq", "0.1", "--m5sq", "3", "--t", "1", "--t0", "0", "--hermitian")
    assert code == 3 and "imaginary" in err


def test_metrics(capsys):
    code, kv, _, _ = run(capsys, "metrics", *BASE, "--m5sq", "0.3")
    assert code == 0
    assert int(kv["dimension"]) >= 2 and kv["positive_definite"] == "yes" and kv["identity_in_span"] == "no"
    _, kv, _, _ = run(capsys, "metrics", *BASE, "--m5sq", "0.3", "--hermitian")
    assert kv["identity_in_span"] == "yes" and kv["hamiltonian"] == "hermitian"
    _, kv, _, _ = run(capsys, "metrics", *BASE, "--m5sq", "0.75")
    assert kv["positive_definite"] == "no"


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--m1sq", "1", "--m2sq", "2", "--m5sq", "0.3"],
        ["classify", *BASE, "--m5sq", "-0.3"],
        ["classify", *BASE, "--m5sq", "nan"],
        ["classify", *BASE],
        ["scan", "--out", "x.csv", "--zeta-min", "-1.5"],
        ["scan", "--out", "x.csv", "--state-based"],
        ["scan", "--out", "x.csv", "--zeta-steps", "0"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_2(capsys, tmp_path, monkeypatch, argv):
    monkeypatch.chdir(tmp_path)
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse rejections
        code = exc.code
    assert code == 2
    assert not (tmp_path / "x.csv").exists()


def test_scan_default_grid(capsys, tmp_path):
    out = tmp_path / "grid.csv"
    code, kv, _, _ = run(capsys, "scan", "--out", str(out))
    assert code == 0 and kv["records"] == "1681"
    data = out.read_bytes()
    assert data.count(b"\n") == 1682 and int(kv["bytes"]) == len(data)


def test_scan_is_byte_identical_across_runs_and_threads(capsys, tmp_path):
    paths = []
    for k, workers in enumerate(["1", "1", "4"]):
        p = tmp_path / f"{k}.csv"
        assert main(["scan", "--out", str(p), "--workers", workers, "--state-based", "--zeta-min", "-0.9", "--zeta-max", "0.9"]) == 0
        paths.append(p.read_bytes())
    assert paths[0] == paths[1] == paths[2]


def test_scan_unwritable_destination_exits_2(capsys, tmp_path):
    code, _, _, err = run(capsys, "scan", "--out", str(tmp_path / "nope" / "g.csv"))
    assert code == 2 and "nope" in err


def test_verify(capsys):
    code, _, out, _ = run(capsys, "verify")
    lines = out.splitlines()
    assert code == 0 and lines and all(line.startswith("PASS ") for line in lines)
    code, _, out, _ = run(capsys, "verify", "--tol", "1e-30")
    assert code == 1 and any(line.startswith("FAIL ") for line in out.splitlines())


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "pseudoherm", "probs", *BASE, "--m5sq", "0.3", "--t", "2.5", "--t0", "0.5", "--naive"]
    first = subprocess.run(argv, capture_output=True, check=True)
    second = subprocess.run(argv, capture_output=True, check=True)
    assert first.stdout == second.stdout and first.stdout
