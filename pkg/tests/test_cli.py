import json
import math
from pathlib import Path

import numpy as np
import pytest

import curvkit as ck
from curvkit.cli import main

try:
    import jsonschema
except ImportError:
    jsonschema = None

SCHEMA = json.loads(
    (Path(ck.__file__).parent / "schemas" / "report.schema.json").read_text()
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def report_of(capsys, *argv):
    code, out = run(capsys, *argv)
    rep = json.loads(out)
    if jsonschema is not None:
        jsonschema.validate(rep, SCHEMA)
    return code, rep


def write_sphere(tmp_path, capsys, name="sph.csv", fmt="csv", n=10, seed=4):
    path = tmp_path / name
    code, _ = run(
        capsys, "gen", "--kind", "sphere_sample", "--n", str(n), "--dim", "2",
        "--kappa", "1", "--seed", str(seed), "--format", fmt,
        "--output", str(path),
    )
    assert code == 0
    return path


def test_gen_certify_roundtrip_csv(tmp_path, capsys):
    path = write_sphere(tmp_path, capsys)
    code, rep = report_of(capsys, "certify", str(path), "--kappa", "1")
    assert code == 0
    assert rep["status"] == "pass"
    assert rep["result"]["worst_defect"] >= -1e-9
    assert rep["command"] == "certify"
    assert len(rep["input_digest"]) == 64


def test_gen_roundtrip_lossless(tmp_path, capsys):
    csv_path = write_sphere(tmp_path, capsys, "a.csv", "csv")
    json_path = write_sphere(tmp_path, capsys, "a.json", "json")
    from curvkit.cli import _load_space

    sp_csv, _ = _load_space(str(csv_path), 1e-9)
    sp_json, _ = _load_space(str(json_path), 1e-9)
    direct = ck.sphere_sample(10, 2, 1.0, seed=4).space
    assert np.array_equal(sp_csv.d, direct.d)
    assert np.array_equal(sp_json.d, direct.d)
    assert sp_csv.labels == direct.labels


def test_certify_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "tri.csv"
    code, _ = run(capsys, "gen", "--kind", "tripod", "--output", str(path), "--format", "csv")
    assert code == 0
    code, rep = report_of(capsys, "certify", str(path), "--kappa", "0")
    assert code == 1
    assert rep["status"] == "fail"
    assert rep["result"]["witness_labels"] == ["center", "tip1", "tip2", "tip3"]
    assert rep["result"]["worst_defect"] == pytest.approx(-math.pi)


def test_non_square_input_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,1,2\n1,0\n")
    code, _ = run(capsys, "certify", str(bad), "--kappa", "0")
    assert code == 2


def test_invalid_metric_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,1\n2,0\n")
    code, _ = run(capsys, "certify", str(bad), "--kappa", "0")
    assert code == 2


def test_maxk_report(tmp_path, capsys):
    path = tmp_path / "pole.json"
    d = [[0, math.pi / 2, math.pi / 2, math.pi / 2],
         [math.pi / 2, 0, 2 * math.pi / 3, 2 * math.pi / 3],
         [math.pi / 2, 2 * math.pi / 3, 0, 2 * math.pi / 3],
         [math.pi / 2, 2 * math.pi / 3, 2 * math.pi / 3, 0]]
    path.write_text(json.dumps({"d": d}))
    code, rep = report_of(capsys, "maxk", str(path))
    assert code == 0
    assert abs(rep["result"]["kappa_max"] - 1.0) <= 1e-6


def test_quad_with_labels(tmp_path, capsys):
    path = tmp_path / "tri.csv"
    run(capsys, "gen", "--kind", "tripod", "--output", str(path), "--format", "csv")
    code, rep = report_of(
        capsys, "quad", str(path), "--kappa", "0",
        "--indices", "center", "tip1", "tip2", "tip3",
    )
    assert code == 1
    assert rep["result"]["defect"] == pytest.approx(-math.pi)
    assert rep["result"]["size"] == pytest.approx(6.0)


def test_lss_and_embed_star_file(tmp_path, capsys):
    mat = tmp_path / "pole.json"
    d = [[0, math.pi / 2, math.pi / 2, math.pi / 2],
         [math.pi / 2, 0, 2 * math.pi / 3, 2 * math.pi / 3],
         [math.pi / 2, 2 * math.pi / 3, 0, 2 * math.pi / 3],
         [math.pi / 2, 2 * math.pi / 3, 2 * math.pi / 3, 0]]
    mat.write_text(json.dumps({"labels": ["pole", "e1", "e2", "e3"], "d": d}))
    star = tmp_path / "star.json"
    star.write_text(json.dumps({"p": "pole", "points": ["e1", "e2", "e3"],
                                "lambda": [1, 1, 1]}))
    code, rep = report_of(capsys, "lss", str(mat), "--kappa", "1",
                          "--weights", str(star))
    assert code == 0
    assert abs(rep["result"]["lss_form"]) < 1e-12
    code, rep = report_of(capsys, "embed", str(mat), "--kappa", "1",
                          "--weights", str(star))
    assert code == 0
    assert rep["result"]["model_dim"] == 2
    assert rep["result"]["max_residual"] < 1e-9


def test_flat_and_gap_commands(tmp_path, capsys):
    pts = np.array([[0.0, 1.0], [0.0, 0.0], [2.0, 0.0], [1.0, 0.0]])
    d = ck.distance_matrix(ck.ModelConfig(0.0, 2, pts))
    mat = tmp_path / "sq.json"
    mat.write_text(json.dumps({"d": d.tolist()}))
    code, rep = report_of(capsys, "gap", str(mat), "--kappa", "0",
                          "--indices", "0", "1", "2", "3")
    assert code == 0
    assert abs(rep["result"]["gap"]) < 1e-12

    tri = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    quad = np.vstack([tri.mean(axis=0), tri])
    d2 = ck.distance_matrix(ck.ModelConfig(0.0, 2, quad))
    mat2 = tmp_path / "cen.json"
    mat2.write_text(json.dumps({"d": d2.tolist()}))
    code, rep = report_of(capsys, "flat", str(mat2), "--kappa", "0",
                          "--indices", "0", "1", "2", "3")
    assert code == 0
    assert rep["result"]["inside"] is True


def test_pack_command(tmp_path, capsys):
    mat = tmp_path / "simp.csv"
    run(capsys, "gen", "--kind", "simplex_on_sphere", "--q", "4",
        "--output", str(mat), "--format", "csv")
    code, rep = report_of(capsys, "pack", str(mat), "--q", "4")
    assert code == 0
    assert rep["result"]["attains_bound"] is True
    assert rep["result"]["is_certified_max"] is True


def test_villani_command(tmp_path, capsys):
    pts = np.array([
        [0.0, 0.0], [1.0, 0.0], [2.0, 0.0],
        [1.0, 1.0], [2.0, 1.0], [3.0, 1.0],
        [1.5, 0.5],
    ])
    d = ck.distance_matrix(ck.ModelConfig(0.0, 2, pts))
    mat = tmp_path / "para.json"
    mat.write_text(json.dumps({"d": d.tolist()}))
    code, rep = report_of(capsys, "villani", str(mat), "--gamma", "0,1,2",
                          "--eta", "3,4,5", "--t", "0.5")
    assert code == 0
    assert abs(rep["result"]["gap"]) < 1e-12
    assert rep["result"]["midpoint_available"] is True
    assert rep["result"]["midpoints"] == [6]


def test_transform_command_roundtrip(tmp_path, capsys):
    src = write_sphere(tmp_path, capsys, "m.csv", n=8, seed=9)
    out = tmp_path / "t.csv"
    code, _ = run(capsys, "transform", str(src), "--kappa", "1",
                  "--alpha", "0.5", "--format", "csv", "--output", str(out))
    assert code == 0
    code, rep = report_of(capsys, "certify", str(out), "--kappa", "1")
    assert code == 0


def test_text_format_rounds(tmp_path, capsys):
    path = write_sphere(tmp_path, capsys)
    code, out = run(capsys, "certify", str(path), "--kappa", "1",
                    "--format", "text")
    assert code == 0
    assert "status: pass" in out


def test_csv_report_format(tmp_path, capsys):
    path = write_sphere(tmp_path, capsys)
    code, out = run(capsys, "certify", str(path), "--kappa", "1",
                    "--format", "csv")
    assert code == 0
    assert any(line.startswith("status,") for line in out.splitlines())


def test_threads_env_fallback(tmp_path, capsys, monkeypatch):
    path = write_sphere(tmp_path, capsys)
    monkeypatch.setenv("CURVKIT_THREADS", "2")
    code, rep = report_of(capsys, "certify", str(path), "--kappa", "1")
    assert code == 0
    monkeypatch.setenv("CURVKIT_THREADS", "1")
    code1, rep1 = report_of(capsys, "certify", str(path), "--kappa", "1")
    assert rep["result"] == rep1["result"]


def test_lss_negative_form_fails(tmp_path, capsys):
    mat = tmp_path / "tri.csv"
    run(capsys, "gen", "--kind", "tripod", "--output", str(mat), "--format", "csv")
    star = tmp_path / "star.json"
    star.write_text(json.dumps({"p": "center", "points": ["tip1", "tip2", "tip3"],
                                "lambda": [1, 1, 1]}))
    code, rep = report_of(capsys, "lss", str(mat), "--kappa", "0",
                          "--weights", str(star))
    assert code == 1
    assert rep["result"]["lss_form"] < 0
    assert rep["result"]["sturm_slack"] < 0


def test_embed_rejects_nonzero_form(tmp_path, capsys):
    # the full tripod star has strictly negative form, so it cannot embed
    mat = tmp_path / "tri.csv"
    run(capsys, "gen", "--kind", "tripod", "--output", str(mat), "--format", "csv")
    star = tmp_path / "star.json"
    star.write_text(json.dumps({"p": "center", "points": ["tip1", "tip2", "tip3"],
                                "lambda": [1, 1, 1]}))
    code, rep = report_of(capsys, "embed", str(mat), "--kappa", "0",
                          "--weights", str(star))
    assert code == 1
    assert rep["result"]["embedded"] is False


def test_quad_undefined_reports_vacuous(tmp_path, capsys):
    mat = tmp_path / "pole.json"
    d = [[0, math.pi / 2, math.pi / 2, math.pi / 2],
         [math.pi / 2, 0, 2 * math.pi / 3, 2 * math.pi / 3],
         [math.pi / 2, 2 * math.pi / 3, 0, 2 * math.pi / 3],
         [math.pi / 2, 2 * math.pi / 3, 2 * math.pi / 3, 0]]
    mat.write_text(json.dumps({"d": d}))
    code, rep = report_of(capsys, "quad", str(mat), "--kappa", "1",
                          "--indices", "1", "0", "2", "3")
    assert code == 0
    assert rep["result"]["undefined"] is True


def test_schema_rejects_malformed():
    if jsonschema is None:
        pytest.skip("jsonschema not installed")
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"tool": "other"}, SCHEMA)
