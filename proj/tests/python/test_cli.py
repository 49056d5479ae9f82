"""End-to-end checks of the command-line tool."""

import os
import subprocess

import pytest

CLI = os.environ.get("ENTFB_CLI", "entfb")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_steady_known_point():
    result = run("steady", "--chi", "0.25", "--eta", "1", "--lambda", "0")
    assert result.returncode == 0
    header, row = result.stdout.strip().splitlines()
    fields = dict(zip(header.split(","), row.split(",")))
    assert fields["log_negativity"] == "0.584962500721"
    assert fields["epr_variance"] == "0.666666666667"
    assert fields["zeta"] == "0.333333333333"
    assert fields["physical"] == "1"


def test_steady_trivial_point():
    result = run("steady", "--chi", "0", "--eta", "1", "--lambda", "0")
    assert result.returncode == 0
    header, row = result.stdout.strip().splitlines()
    fields = dict(zip(header.split(","), row.split(",")))
    assert fields["log_negativity"] == "0"
    assert fields["g_x1x1"] == "0.5"
    assert fields["g_x1x2"] == "0"


def test_steady_json():
    result = run("steady", "--chi", "0.25", "--eta", "1", "--format", "json")
    assert result.returncode == 0
    import json

    doc = json.loads(result.stdout)
    assert doc["log_negativity"] == pytest.approx(0.5849625007211563)
    assert len(doc["gamma"]) == 4


def test_exit_codes():
    unstable = run("steady", "--chi", "0.6", "--eta", "1", "--lambda", "0")
    assert unstable.returncode == 3
    assert "Unstable" in unstable.stderr

    bad_eta = run("steady", "--chi", "0.3", "--eta", "1.2")
    assert bad_eta.returncode == 2

    bad_flag = run("steady", "--nonsense", "1")
    assert bad_flag.returncode == 2

    no_feedback_current = run("simulate", "--chi", "0.2", "--eta", "0", "--lambda=-0.1",
                              "--trajectories", "5", "--horizon", "1")
    assert no_feedback_current.returncode == 2  # lambda without detection


def test_optimize_baseline_and_gain():
    base = run("optimize", "--chi", "0.25", "--eta", "0")
    assert base.returncode == 0
    row = base.stdout.strip().splitlines()[1].split(",")
    assert row[2] == "0"  # lambda_star
    assert abs(float(row[3]) - 0.5849625007) < 1e-9

    gain = run("optimize", "--chi", "0.25", "--eta", "0.99")
    row = gain.stdout.strip().splitlines()[1].split(",")
    assert -0.5 < float(row[2]) < 0.0
    assert float(row[3]) > float(row[4])

    zero = run("optimize", "--chi", "0", "--eta", "0.99")
    row = zero.stdout.strip().splitlines()[1].split(",")
    assert row[3] == "0"


def test_sweep_deterministic_and_consistent(tmp_path):
    args = ("sweep", "--chi-min", "0.2", "--chi-max", "0.4", "--chi-steps", "3",
            "--eta-list", "0,0.7")
    first = run(*args)
    second = run(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    lines = first.stdout.strip().splitlines()
    assert lines[0] == "chi,eta,lambda_star,l_fb,l_nofb,epr_variance_nofb,zeta"
    assert len(lines) == 1 + 3 * 2

    out_file = tmp_path / "sweep.csv"
    to_file = run(*args, "--out", str(out_file))
    assert to_file.returncode == 0
    assert out_file.read_text() == first.stdout


def test_sweep_eta_zero_collapses_to_baseline():
    result = run("sweep", "--chi-min", "0.1", "--chi-max", "0.3", "--chi-steps", "3",
                 "--eta-list", "0")
    for line in result.stdout.strip().splitlines()[1:]:
        fields = line.split(",")
        assert fields[3] == fields[4]


def test_sweep_single_row_near_threshold():
    result = run("sweep", "--chi-min", "0.49", "--chi-max", "0.49", "--chi-steps", "1",
                 "--eta-list", "0")
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 2
    l_fb = float(lines[1].split(",")[3])
    assert abs(l_fb - 0.985500430305) < 1e-9


def test_simulate_deterministic_and_validated(tmp_path):
    args = ("simulate", "--chi", "0.25", "--eta", "1", "--lambda", "0", "--seed", "42",
            "--trajectories", "200", "--horizon", "20")
    first = run(*args)
    second = run(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert "result,PASS" in first.stdout

    prefix = tmp_path / "series"
    dumped = run(*args, "--dump-series", str(prefix))
    assert dumped.returncode == 0
    current = (tmp_path / "series.current.dat").read_text().splitlines()
    assert len(current) == 20000
    assert all(len(line.split(" ")) == 2 for line in current[:10])
    for obs in ("x1", "y1", "x2", "y2"):
        assert (tmp_path / f"series.{obs}.dat").exists()


def test_simulate_needs_two_trajectories():
    result = run("simulate", "--chi", "0.2", "--eta", "1", "--trajectories", "1",
                 "--horizon", "1")
    assert result.returncode == 2


def test_simulate_flags_statistical_disagreement():
    # skipping the burn-in leaves the transient in the average; the estimate
    # sits far below the stationary covariance and the z-check must trip
    result = run("simulate", "--chi", "0.25", "--eta", "1", "--burn-in", "0",
                 "--horizon", "0.1", "--trajectories", "2000", "--seed", "3")
    assert result.returncode == 4
    assert "result,FAIL" in result.stdout
