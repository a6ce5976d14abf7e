"""Command-line interface: exit codes, payload shapes, output files."""

import json

import pytest

from rayleighmt.cli import main

from conftest import MATERIALS

REF = str(MATERIALS / "reference.json")
CASE_I = str(MATERIALS / "case_i.json")
CASE_III = str(MATERIALS / "case_iii.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_reference(capsys):
    code, out, _ = run(capsys, "check", "--material", REF)
    payload = json.loads(out)
    assert code == 0
    assert payload["strong_ellipticity"]["passed"] is True
    assert payload["coupling"]["case"] == "general"
    assert payload["distinct_cubic_roots"] is True


def test_check_rejects_inadmissible(capsys, tmp_path):
    raw = json.loads((MATERIALS / "reference.json").read_text())
    raw["mu"] = -1.0
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(raw))
    code, out, _ = run(capsys, "check", "--material", str(path))
    assert code == 1
    payload = json.loads(out)
    assert payload["strong_ellipticity"]["passed"] is False


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "check", "--material", "no/such/file.json")
    assert code == 2
    assert "error" in err


def test_malformed_json_is_input_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{oops")
    code, _, err = run(capsys, "check", "--material", str(path))
    assert code == 2


def test_missing_field_is_input_error(capsys, tmp_path):
    raw = json.loads((MATERIALS / "reference.json").read_text())
    del raw["beta"]
    path = tmp_path / "partial.json"
    path.write_text(json.dumps(raw))
    code, _, err = run(capsys, "check", "--material", str(path))
    assert code == 2
    assert "beta" in err


def test_roots_payload(capsys):
    code, out, _ = run(capsys, "roots", "--material", REF)
    payload = json.loads(out)
    assert code == 0
    ts = [row["t"] for row in payload["roots"]]
    assert ts == pytest.approx([1.5, 0.5, 5.674979913874906,
                                1.9389289511629555, 0.8860911349621419])
    assert all(abs(row["residual"]) < 1e-12 for row in payload["roots"])
    assert payload["pairwise_min_gap"] == pytest.approx(0.38609113496214187)


def test_roots_case_labels(capsys):
    code, out, _ = run(capsys, "roots", "--material", CASE_I, "--case")
    payload = json.loads(out)
    assert code == 0
    assert [row["label"] for row in payload["roots"]] == [
        "mu/rho", "d2/b", "(lambda+2mu)/rho", "radical+", "radical-"]


def test_scan_csv_shape(capsys, tmp_path):
    out_path = tmp_path / "grid.csv"
    code, out, _ = run(capsys, "scan", "--material", REF,
                       "--re-min", "0.1", "--re-max", "0.5",
                       "--im-min", "-0.2", "--im-max", "0",
                       "--nx", "5", "--ny", "3", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "re_v,im_v,F"
    assert len(lines) == 1 + 5 * 3
    first = lines[1].split(",")
    assert float(first[0]) == 0.1 and float(first[1]) == -0.2
    # re varies in the outer loop
    assert float(lines[1 + 3].split(",")[0]) == 0.2


def test_scan_nan_for_failed_points(capsys):
    code, out, _ = run(capsys, "scan", "--material", REF,
                       "--re-min", "0.8", "--re-max", "0.9",
                       "--im-min", "-0.01", "--im-max", "0",
                       "--nx", "2", "--ny", "2")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    cells = [line.split(",")[2] for line in rows]
    assert cells.count("nan") == 2


def test_solve_finds_reference_root(capsys):
    code, out, _ = run(capsys, "solve", "--material", REF,
                       "--re-min", "0.8", "--re-max", "1.3",
                       "--im-min", "-0.4", "--im-max", "0",
                       "--nx", "48", "--ny", "24", "--verify")
    payload = json.loads(out)
    assert code == 0
    best = payload["roots"][0]
    assert best["classification"] == "converged"
    assert best["v_re"] == pytest.approx(1.038454844666989, abs=1e-6)
    assert best["v_im"] == pytest.approx(-0.02631077604792278, abs=1e-6)
    assert len(best["gamma"]) == 5
    for residual in payload["boundary_residuals"].values():
        assert residual <= 1e-8


def test_solve_without_root_fails(capsys):
    code, out, _ = run(capsys, "solve", "--material", REF,
                       "--re-min", "0.1", "--re-max", "0.35",
                       "--im-min", "-0.1", "--im-max", "0",
                       "--nx", "12", "--ny", "6")
    assert code == 1


def test_case_summary(capsys):
    code, out, _ = run(capsys, "case", "--material", CASE_I)
    payload = json.loads(out)
    assert code == 0
    assert payload["case"] == "case_i"
    assert payload["cross_check"]["agreements"] == 200
    assert payload["reduced_cubic_max_rel_err"] <= 1e-12
    assert payload["kernel_max_residual"] <= 1e-10


def test_case_det_only_route(capsys):
    code, out, _ = run(capsys, "case", "--material", CASE_III)
    payload = json.loads(out)
    assert code == 0
    assert payload["case"] == "case_iii"
    assert "cross_check" not in payload or "agreements" not in payload.get(
        "cross_check", {})


def test_case_rejects_general_material(capsys):
    code, _, err = run(capsys, "case", "--material", REF)
    assert code == 1


def test_text_format(capsys):
    code, out, _ = run(capsys, "check", "--material", REF, "--format", "text")
    assert code == 0
    assert "passed: True" in out
    assert not out.lstrip().startswith("{")
