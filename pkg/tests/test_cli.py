import json
import subprocess
import sys

import pytest

from torus_xray.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def summary(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    lines = out.strip().splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


def test_invert_pipeline(tmp_path, capsys):
    f, data, g = tmp_path / "f.json", tmp_path / "data.json", tmp_path / "g.json"
    summary(capsys, "phantom", "--n", 3, "--K", 2, "--seed", 5, "--out", f)
    fw = summary(capsys, "forward", "--in", f, "--d", 2, "--out", data)
    assert fw["tuples"] > 0
    inv = summary(capsys, "invert", "--in", data, "--ref", f, "--out", g)
    assert inv["max_coeff_error"] < 1e-12
    assert inv["config"]["command"] == "invert"


def test_validate_untouched_data(tmp_path, capsys):
    f, data, rep = tmp_path / "f.json", tmp_path / "data.json", tmp_path / "r.json"
    summary(capsys, "phantom", "--n", 2, "--K", 2, "--out", f)
    summary(capsys, "forward", "--in", f, "--out", data)
    out = summary(capsys, "validate", "--in", data, "--out", rep)
    assert out["consistent"] is True
    assert json.loads(rep.read_text())["consistent"] is True


def test_stability_matches_phantom_norm(tmp_path, capsys):
    f, data = tmp_path / "f.json", tmp_path / "data.json"
    ph = summary(capsys, "phantom", "--n", 2, "--K", 2, "--seed", 1, "--out", f)
    summary(capsys, "forward", "--in", f, "--out", data)
    st = summary(capsys, "stability", "--in", data, "--s", 0)
    assert st["stability_norm"] == pytest.approx(ph["l2_norm"], rel=1e-12)


def test_tensor_commands(tmp_path, capsys):
    f, h = tmp_path / "f.json", tmp_path / "h.json"
    summary(capsys, "phantom", "--n", 2, "--m", 2, "--K", 2, "--kind", "gradient",
            "--seed", 3, "--out", f)
    fw = summary(capsys, "tensor-forward", "--in", f, "--max-norm", 3)
    assert fw["max_abs_coeff"] < 1e-10
    dec = summary(capsys, "tensor-decompose", "--in", f, "--out", h)
    assert dec["residual"] < 1e-8


def test_broken_ray_pipeline(tmp_path, capsys):
    f, rows, g, box = (tmp_path / p for p in ("f.json", "rows.csv", "g.json", "box.json"))
    box.write_text(json.dumps({"L": [1.0, 2.0]}))
    summary(capsys, "phantom", "--n", 2, "--K", 2, "--even", "--seed", 2, "--out", f)
    fw = summary(capsys, "broken-forward", "--in", f, "--N", 6, "--box", box, "--out", rows)
    assert fw["rows"] > 0
    inv = summary(capsys, "broken-invert", "--in", rows, "--K", 2, "--N", 6, "--box", box,
                  "--ref", f, "--out", g)
    assert inv["max_box_error"] < 1e-8


def test_broken_forward_rejects_non_even(tmp_path, capsys):
    f, rows = tmp_path / "f.json", tmp_path / "rows.csv"
    summary(capsys, "phantom", "--n", 2, "--K", 1, "--out", f)
    code, out, err = run(capsys, "broken-forward", "--in", f, "--out", rows)
    assert code == 1 and not rows.exists()
    assert json.loads(err)["error"] == "TorusXrayError"


def test_fejer_writes_csv(tmp_path, capsys):
    f, csv = tmp_path / "f.json", tmp_path / "fejer.csv"
    summary(capsys, "phantom", "--n", 2, "--K", 2, "--kind", "separable-bump", "--out", f)
    out = summary(capsys, "fejer", "--in", f, "--N", 4, "--out", csv)
    assert out["grid"] == 64 and out["sup_error_on_grid"] > 0
    assert len(csv.read_text().splitlines()) == 64 * 64 + 1


def test_unknown_command_exits_nonzero(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code != 0
    assert "usage" in capsys.readouterr().err


def test_error_is_json_and_leaves_no_file(tmp_path, capsys):
    out = tmp_path / "g.json"
    code, _, err = run(capsys, "invert", "--in", tmp_path / "missing.json", "--out", out)
    assert code == 1
    assert json.loads(err)["error"] == "FileNotFoundError"
    assert not out.exists()


def test_incomplete_data_error(tmp_path, capsys):
    f, data, tuples = tmp_path / "f.json", tmp_path / "d.json", tmp_path / "t.json"
    tuples.write_text(json.dumps([[[1, 0]]]))
    summary(capsys, "phantom", "--n", 2, "--K", 1, "--out", f)
    summary(capsys, "forward", "--in", f, "--tuples", tuples, "--out", data)
    code, _, err = run(capsys, "invert", "--in", data, "--out", tmp_path / "g.json")
    assert code == 1 and json.loads(err)["error"] == "IncompleteDataError"
    assert not (tmp_path / "g.json").exists()


def test_outputs_are_deterministic(tmp_path, capsys):
    texts = []
    for run_id in range(2):
        d = tmp_path / str(run_id)
        d.mkdir()
        summary(capsys, "phantom", "--n", 2, "--K", 2, "--seed", 9, "--out", d / "f.json")
        summary(capsys, "forward", "--in", d / "f.json", "--out", d / "data.json")
        texts.append(((d / "f.json").read_bytes(), (d / "data.json").read_bytes()))
    assert texts[0] == texts[1]


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "torus_xray", "phantom", "--n", "2",
                           "--K", "1"], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["modes"] == 9
