"""CLI behaviour: commands, output formats, exit codes, validation reporting."""

import json
import subprocess
import sys

from liecoh import catalog
from liecoh.cli import main


def _emit(tmp_path, name, fname="pair.json"):
    path = tmp_path / fname
    path.write_text(json.dumps(catalog.emit(name)))
    return str(path)


def _write(tmp_path, doc, fname="pair.json"):
    path = tmp_path / fname
    path.write_text(json.dumps(doc) if isinstance(doc, dict) else doc)
    return str(path)


JACOBI_TYPO_DOC = {
    "algebra": {"center_dim": 0, "factors": [{
        "name": "su(2)", "dim": 3,
        "structure_constants": [[0, 1, 2, "2"], [1, 2, 1, "2"],
                                [0, 2, 1, "-2"]]}]},
    "subalgebra": {"basis": []},
}


def test_compute_sphere_4_json(tmp_path, capsys):
    code = main(["compute", _emit(tmp_path, "sphere:4"), "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["betti"] == [1, 0, 0, 0, 1]
    assert out["method"] == "formula"
    assert out["intermediates"]["dim_C"] == 1
    assert "diagnostics" not in out


def test_compute_table_output(tmp_path, capsys):
    code = main(["compute", _emit(tmp_path, "flag_su3")])
    assert code == 0
    out = capsys.readouterr().out
    assert "betti   [1, 0, 2, 0, 2]" in out
    assert "method  formula" in out
    assert "check   pass" in out


def test_missing_file_is_io_error(capsys):
    code = main(["compute", "/nonexistent/nowhere.json"])
    assert code == 1
    assert "cannot read" in capsys.readouterr().err


def test_invalid_json_is_parse_error(tmp_path, capsys):
    path = _write(tmp_path, "{not json", "broken.json")
    code = main(["compute", path])
    assert code == 1
    assert "cannot parse" in capsys.readouterr().err


def test_wrong_shape_document_is_input_error(tmp_path, capsys):
    path = _write(tmp_path, {"subalgebra": {"basis": [["1", "0", "0"]]}})
    code = main(["compute", path])
    assert code == 1
    assert "not a valid pair document" in capsys.readouterr().err


def test_jacobi_violation_reported_with_witness(tmp_path, capsys):
    path = _write(tmp_path, JACOBI_TYPO_DOC)
    code = main(["compute", path])
    assert code == 2
    out = capsys.readouterr().out
    assert "FAIL jacobi" in out
    assert "witness=(0, 1, 2)" in out


def test_non_closed_subalgebra_rejected(tmp_path, capsys):
    doc = catalog.emit("su:2")
    doc["subalgebra"]["basis"] = [["1", "0", "0"], ["0", "1", "0"]]
    path = _write(tmp_path, doc)
    code = main(["compute", path])
    assert code == 2
    assert "FAIL h_bracket_closed" in capsys.readouterr().out


def test_verify_example_4_7(tmp_path, capsys):
    code = main(["verify", _emit(tmp_path, "example_4_7"), "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "pass"
    assert out["agreement"] == {str(k): True for k in range(5)}
    assert set(out["methods"]) == {"formula", "koszul", "ce"}
    for m in out["methods"].values():
        assert m["betti"] == [1, 2, 1, 0, 0]
        assert m["elapsed"] >= 0


def test_verify_flag_su3_b4_everywhere(tmp_path, capsys):
    code = main(["verify", _emit(tmp_path, "flag_su3"), "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "pass"
    for m in out["methods"].values():
        assert m["betti"][4] - m["betti"][3] == 2


def test_verify_skip_ce(tmp_path, capsys):
    code = main(["verify", _emit(tmp_path, "su:4"), "--skip-ce", "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out["methods"]) == {"formula", "koszul"}
    assert out["status"] == "pass"


def test_verify_notes_ce_over_cap(tmp_path, capsys):
    # su(4) has a 15-dimensional quotient, over the default cap of 14
    code = main(["verify", _emit(tmp_path, "su:4"), "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "pass"
    assert any("ce skipped" in note for note in out["notes"])
    assert set(out["methods"]) == {"formula", "koszul"}


def test_verify_method_subset(tmp_path, capsys):
    code = main(["verify", _emit(tmp_path, "sphere:3"),
                 "--methods", "formula,koszul", "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out["methods"]) == {"formula", "koszul"}
    for m in out["methods"].values():
        assert m["betti"] == [1, 0, 0, 1, 0]


def test_verify_unknown_method(tmp_path, capsys):
    code = main(["verify", _emit(tmp_path, "sphere:2"),
                 "--methods", "formula,nope"])
    assert code == 1
    assert "unknown method" in capsys.readouterr().err


def test_verify_table_output(tmp_path, capsys):
    code = main(["verify", _emit(tmp_path, "sphere:2")])
    assert code == 0
    out = capsys.readouterr().out
    assert "status: pass" in out
    assert "formula" in out and "koszul" in out and "ce" in out


def test_oracle_ce_explain(tmp_path, capsys):
    code = main(["oracle", _emit(tmp_path, "sphere:2"),
                 "--method", "ce", "--explain", "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["method"] == "ce"
    assert out["betti"] == [1, 0, 1]
    assert out["diagnostics"]["complex_dims"] == [1, 0, 1]
    assert out["diagnostics"]["certified"] is True


def test_oracle_ce_over_cap_is_validation_error(tmp_path, capsys):
    code = main(["oracle", _emit(tmp_path, "su:4"), "--method", "ce"])
    assert code == 2
    assert "size cap" in capsys.readouterr().out


def test_oracle_ce_size_cap_flag(tmp_path, capsys):
    code = main(["oracle", _emit(tmp_path, "su:4"), "--method", "ce",
                 "--size-cap", "15", "--max-degree", "1", "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["betti"] == [1, 0]


def test_oracle_koszul(tmp_path, capsys):
    code = main(["oracle", _emit(tmp_path, "stiefel:5:2"),
                 "--method", "koszul", "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["method"] == "koszul"
    assert out["betti"] == [1, 0, 0, 0, 0]


def test_catalog_list(capsys):
    code = main(["catalog", "list"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    names = [line.split()[0].split(":")[0] for line in lines]
    assert names == sorted(names)
    assert any(line.startswith("sphere") for line in lines)


def test_catalog_emit_unknown(capsys):
    code = main(["catalog", "emit", "nonsense:9"])
    assert code == 1
    assert "unknown catalog name" in capsys.readouterr().err


def test_catalog_emit_to_file(tmp_path):
    target = tmp_path / "out.json"
    code = main(["catalog", "emit", "sphere:2", "-o", str(target)])
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["algebra"]["factors"][0]["dim"] == 3


def test_cli_subprocess_smoke(tmp_path):
    pair = tmp_path / "pair.json"
    emit = subprocess.run(
        [sys.executable, "-m", "liecoh.cli", "catalog", "emit", "sphere:4",
         "-o", str(pair)],
        capture_output=True, text=True)
    assert emit.returncode == 0, emit.stderr
    run = subprocess.run(
        [sys.executable, "-m", "liecoh.cli", "verify", str(pair), "--json"],
        capture_output=True, text=True)
    assert run.returncode == 0, run.stderr
    out = json.loads(run.stdout)
    assert out["status"] == "pass"
    for m in out["methods"].values():
        assert m["betti"] == [1, 0, 0, 0, 1]
