import csv
import json

import pytest

from src.cli.main import main
from tests.conftest import problem_payload


@pytest.fixture
def zero_file(write_json):
    return write_json("zero.json", problem_payload())


@pytest.fixture
def linear_file(write_json):
    return write_json("linear.json", problem_payload(p=((0.3, 0.0), (0.5, 0.0)), q=((0.2, 0.0), (-0.4, 0.0))))


def error_report(capsys) -> dict:
    lines = [line for line in capsys.readouterr().err.splitlines() if line.startswith("{")]
    return json.loads(lines[-1])


def test_forward_strip(zero_file, tmp_path):
    output = tmp_path / "L.json"
    code = main(["forward", "--problem", zero_file, "--region", "-50", "50", "-1", "1", "--oracle", "--output", str(output)])
    assert code == 0
    data = json.loads(output.read_text())
    assert data["variant"] == "L"
    assert len(data["eigenvalues"]) == 4


def test_forward_is_byte_identical(zero_file, tmp_path):
    outputs = [tmp_path / "a.json", tmp_path / "b.json"]
    for output in outputs:
        assert main(["forward", "--problem", zero_file, "--count", "3", "--output", str(output)]) == 0
    assert outputs[0].read_bytes() == outputs[1].read_bytes()


def test_forward_several_variants(zero_file, tmp_path):
    output = tmp_path / "spectrum.json"
    args = ["forward", "--problem", zero_file, "--count", "2", "--variant", "L11", "--variant", "L12"]
    assert main(args + ["--output", str(output)]) == 0
    assert json.loads((tmp_path / "spectrum_L12.json").read_text())["variant"] == "L12"
    assert (tmp_path / "spectrum_L11.json").exists()


def test_malformed_problem(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{", encoding="utf-8")
    assert main(["forward", "--problem", str(path), "--count", "2"]) == 1
    assert error_report(capsys)["error"] == "ParseError"


def test_inadmissible_alpha(write_json, capsys):
    path = write_json("alpha.json", problem_payload(alpha=1.5))
    assert main(["forward", "--problem", path, "--count", "2"]) == 2
    assert error_report(capsys)["error"] == "AdmissibilityError"


def test_usage_errors(zero_file, capsys):
    assert main(["forward", "--problem", zero_file]) == 1
    assert main(["nonsense"]) == 1
    assert main(["verify", "--suite", "spectra"]) == 1
    assert error_report(capsys)["error"] == "UsageError"


def test_oracle_requires_free_problem(linear_file):
    assert main(["forward", "--problem", linear_file, "--count", "2", "--oracle"]) == 1


def test_verify_wronskian(linear_file, tmp_path):
    output = tmp_path / "report.json"
    assert main(["verify", "--suite", "wronskian", "--problem", linear_file, "--output", str(output)]) == 0
    report = json.loads(output.read_text())
    assert report["passed"] and all(check["passed"] for check in report["checks"])


def test_verify_asymptotics_on_ray(zero_file, tmp_path):
    output = tmp_path / "report.json"
    args = ["verify", "--suite", "asymptotics", "--ray", "0", "--problem", zero_file]
    assert main(args + ["--output", str(output)]) == 0


def test_weyl_command(linear_file, tmp_path):
    output, samples = tmp_path / "weyl.json", tmp_path / "phi.csv"
    args = ["weyl", "--problem", linear_file, "--lambda", "3", "1", "--grid", "9"]
    assert main(args + ["--output", str(output), "--samples", str(samples)]) == 0
    data = json.loads(output.read_text())
    assert len(data["M"]) == 4 and len(data["M_adjoint"]) == 4
    assert data["consistency"] < 1e-8
    with samples.open() as handle:
        assert len(list(csv.DictReader(handle))) == 9


def test_charscan_command(zero_file, tmp_path):
    output = tmp_path / "scan.csv"
    args = ["charscan", "--problem", zero_file, "--start", "-10", "0", "--stop", "10", "0", "--points", "5"]
    assert main(args + ["--output", str(output)]) == 0
    with output.open() as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == 5
    assert float(rows[2]["lambda_re"]) == 0.0
    assert float(rows[2]["delta_re"]) == pytest.approx(-1.0, abs=1e-9)


def test_reduce_matrix(zero_file, tmp_path):
    output, header = tmp_path / "q.csv", tmp_path / "header.json"
    args = ["reduce", "--problem", zero_file, "--grid", "5", "--output", str(output), "--header", str(header)]
    assert main(args) == 0
    data = json.loads(header.read_text())
    assert data["W"] == [{"re": 1.0, "im": 0.0}, {"re": -1.0, "im": 0.0}]
    assert output.read_text().splitlines()[0].startswith("x,q11_re,q11_im")


def test_reduce_firstorder(linear_file, tmp_path):
    output, header = tmp_path / "u.csv", tmp_path / "header.json"
    args = ["reduce", "--problem", linear_file, "--form", "firstorder", "--grid", "33"]
    assert main(args + ["--output", str(output), "--header", str(header)]) == 0
    data = json.loads(header.read_text())
    assert data["riccati_residual"] < 1e-6
    assert data["anchor_ratio"] > 1e-3


@pytest.mark.slow
def test_reconstruct_and_invert(zero_file, tmp_path):
    spectrum = tmp_path / "L.json"
    assert main(["forward", "--problem", zero_file, "--count", "120", "--output", str(spectrum)]) == 0
    scan, constants = tmp_path / "scan.csv", tmp_path / "constants.json"
    args = ["reconstruct", "--spectra", str(spectrum), "--alpha", "0", "0", "--points", "3"]
    assert main(args + ["--output", str(scan), "--constants", str(constants)]) == 0
    data = json.loads(constants.read_text())
    assert data["constants"][0]["value"]["re"] == pytest.approx(-1.0, abs=1e-2)

    spectra = []
    for variant in ("L", "L11", "L12", "L21", "L22"):
        path = tmp_path / f"small_{variant}.json"
        assert main(["forward", "--problem", zero_file, "--count", "3", "--variant", variant, "--output", str(path)]) == 0
        spectra.append(str(path))
    config = tmp_path / "fit.json"
    config.write_text(json.dumps({"basis": "poly:0", "N": 3, "starts": 1, "alpha": {"re": 0.0, "im": 0.0}}))
    report = tmp_path / "report.json"
    assert main(["invert", "--spectra", *spectra, "--config", str(config), "--output", str(report)]) == 0
    assert json.loads(report.read_text())["converged"]
