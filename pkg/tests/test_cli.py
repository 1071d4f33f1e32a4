import json

import numpy as np
import pandas as pd
import pytest
from typer.testing import CliRunner

from malcevap.cli import app
from malcevap.dynamics import Trajectory
from malcevap.harmonics import LaplacianTable
from malcevap.report import VerificationReport
from malcevap.spectral import SpectrumReport
from malcevap.verification import Verifier
from malcevap.verification.checks import MalcevIdentityCheck, ResolventCheck

runner = CliRunner()

SILENT = ["--verbosity", "SILENT"]


def invoke(*args: str):
    return runner.invoke(app, [*args, *SILENT])


def test_verify_octonions(tmp_path):
    path = str(tmp_path / "report.json")
    result = invoke("verify", "--reproducible", "--output", path)
    assert result.exit_code == 0, result.output

    report = VerificationReport.from_json(path)
    assert report.passed
    assert report.time_stamp is None
    assert report.algebra == "octonion"

    assert invoke("verify", "--check", path).exit_code == 0


def test_verify_split_algebra(tmp_path):
    path = str(tmp_path / "report.json")
    assert invoke("verify", "--algebra", "sl2", "--output", path).exit_code == 0
    results = {r.name: r for r in VerificationReport.from_json(path).results}
    assert results["almost_periodicity"].measured["almost_periodic"] is False


def test_verify_with_config(tmp_path):
    config = str(tmp_path / "suite.json")
    Verifier(checks=[MalcevIdentityCheck()]).to_json(config)
    path = str(tmp_path / "report.json")
    assert invoke("verify", "--config", config, "--algebra", "su2", "--output", path).exit_code == 0
    report = VerificationReport.from_json(path)
    assert [section.title for section in report.sections] == ["malcev_identity"]
    assert report.algebra == "su2"

    failing = str(tmp_path / "failing.json")
    Verifier(checks=[ResolventCheck(sample_count=2, threshold=0.0)]).to_json(failing)
    assert invoke("verify", "--config", failing, "--output", path).exit_code == 1


def test_saved_suite_runs_as_saved(tmp_path):
    config = str(tmp_path / "suite.json")
    Verifier(checks=[MalcevIdentityCheck()], algebra="su2", seed=7, reproducible=True, tol=1e-6).to_json(config)
    path = str(tmp_path / "report.json")

    assert invoke("verify", "--config", config, "--output", path).exit_code == 0
    report = VerificationReport.from_json(path)
    assert report.algebra == "su2"
    assert report.seed == 7
    assert report.time_stamp is None

    assert invoke("verify", "--config", config, "--seed", "11", "--no-reproducible", "--output", path).exit_code == 0
    report = VerificationReport.from_json(path)
    assert report.algebra == "su2"
    assert report.seed == 11
    assert report.time_stamp is not None


def test_usage_errors(tmp_path, broken_algebra_path):
    assert invoke("verify", "--algebra", broken_algebra_path).exit_code == 2

    garbage = tmp_path / "garbage.json"
    garbage.write_text("[1, 2")
    assert invoke("verify", "--algebra", str(garbage)).exit_code == 2
    assert invoke("verify", "--algebra", "e8").exit_code == 2
    assert invoke("verify", "--format", "csv").exit_code == 2
    assert runner.invoke(app, ["verify", "--verbosity", "LOUD"]).exit_code == 2

    assert invoke("spectrum", "--x", "1,0,0").exit_code == 2
    assert invoke("spectrum", "--x", "1,zero,0,0,0,0,0").exit_code == 2
    assert invoke("spectrum").exit_code == 2


def test_spectrum(tmp_path):
    path = str(tmp_path / "spectrum.json")
    assert invoke("spectrum", "--x", "1,0,0,0,0,0,0", "--output", path).exit_code == 0
    with open(path) as fd:
        report = SpectrumReport.model_validate_json(fd.read())
    assert report.multiplicity(0) == 1
    assert report.multiplicity(1j) == 3
    assert report.multiplicity(-1j) == 3
    assert invoke("spectrum", "--check", path).exit_code == 0

    csv = str(tmp_path / "spectrum.csv")
    assert invoke("spectrum", "--x", "0,2,0,0,0,0,0", "--format", "csv", "--output", csv).exit_code == 0
    df = pd.read_csv(csv)
    assert list(df.columns) == ["re", "im", "mult"]
    assert sorted(df["mult"].tolist()) == [1, 3, 3]
    assert sorted(df["im"].round(12).tolist()) == [-2.0, 0.0, 2.0]
    assert invoke("spectrum", "--check", csv, "--format", "csv").exit_code == 0


def test_spectrum_of_split_algebra(tmp_path):
    path = str(tmp_path / "spectrum.json")
    assert invoke("spectrum", "--algebra", "sl2", "--x", "1,0,0", "--output", path).exit_code == 0
    data = json.loads(open(path).read())
    assert not data["purely_imaginary"]


def test_orbit(tmp_path):
    path = str(tmp_path / "orbit.csv")
    args = ["orbit", "--x", "1,0,0,0,0,0,0", "--p0", "1,0,0,0,0,0,0,0", "--t-max", "6.283185307179586", "--steps", "1000"]
    assert invoke(*args, "--output", path).exit_code == 0

    traj = Trajectory.from_csv(path)
    assert len(traj) == 1001
    assert np.linalg.norm(traj.points[-1] - traj.points[0]) <= 1e-6
    assert invoke("orbit", "--check", path).exit_code == 0

    json_path = str(tmp_path / "orbit.json")
    assert invoke(*args, "--convention", "right", "--format", "json", "--output", json_path).exit_code == 0
    assert invoke("orbit", "--check", json_path, "--format", "json").exit_code == 0

    assert invoke("orbit", "--algebra", "su2").exit_code == 2
    assert invoke("orbit", "--p0", "2,0,0,0,0,0,0,0").exit_code == 2


def test_defect(tmp_path):
    path = str(tmp_path / "defect.json")
    assert invoke("defect", "--sample-count", "100", "--output", path).exit_code == 0
    data = json.loads(open(path).read())
    assert data["defect"]["basis_sup"] == pytest.approx(3.0, abs=1e-10)
    assert data["associator_norm"] == pytest.approx(2.0, abs=1e-10)
    assert invoke("defect", "--check", path).exit_code == 0

    assert invoke("defect", "--algebra", "su2", "--sample-count", "100", "--output", path).exit_code == 0
    data = json.loads(open(path).read())
    assert data["defect"]["basis_sup"] <= 1e-12
    assert data["associator_norm"] is None


def test_bch(tmp_path):
    path = str(tmp_path / "bch.json")
    assert invoke("bch", "--order", "6", "--output", path).exit_code == 0
    data = json.loads(open(path).read())
    assert set(data) == {"order", "error", "radius_ok", "bound"}
    assert data["order"] == 6
    assert data["radius_ok"] is True
    assert data["bound"] == 0.25
    assert data["error"] <= 1e-8
    assert invoke("bch", "--check", path).exit_code == 0

    assert invoke("bch", "--order", "3", "--scales", "0.1", "--output", path).exit_code == 0
    data = json.loads(open(path).read())
    assert data["slopes"][0] >= 3.8

    assert invoke("bch", "--order", "7").exit_code == 2
    assert invoke("bch", "--format", "csv").exit_code == 2


def test_laplacian(tmp_path):
    path = str(tmp_path / "laplacian.csv")
    assert invoke("laplacian", "--k-max", "3", "--output", path).exit_code == 0
    table = LaplacianTable.from_csv(path)
    assert [row.lam for row in table.rows] == [0, 7, 16, 27]
    assert [row.mult_oracle for row in table.rows] == [1, 8, 35, 112]
    assert invoke("laplacian", "--check", path).exit_code == 0

    assert invoke("laplacian", "--k-max=-1").exit_code == 2
