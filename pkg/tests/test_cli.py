import json

import numpy as np
import pytest

from flagforge import formats
from flagforge.cli import main
from flagforge.ffield import field_make
from flagforge.glgroup import MatGroup
from flagforge.steinberg import trivial_module


def run(args):
    return main(args)


def test_verify_fast_suites(tmp_path, capsys):
    out = tmp_path / "report.jsonl"
    csv_path = tmp_path / "report.csv"
    code = run(["verify", "generator-table", "bidegree", "--json", str(out), "--csv", str(csv_path)])
    assert code == 0
    text = capsys.readouterr().out
    assert "overall: pass" in text
    lines = out.read_text().splitlines()
    assert lines and all(json.loads(l)["pass"] for l in lines)
    assert all(json.loads(l)["statement"] for l in lines)
    header = csv_path.read_text().splitlines()[0]
    assert header == "suite,check,statement,params,expected,got,pass"


def test_verify_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run(["verify", "generator-table", "--json", str(a)]) == 0
    assert run(["verify", "generator-table", "--json", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_unknown_suite():
    assert run(["verify", "nothing"]) == 2


def test_verify_config_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.ini"
    cfg.write_text("[sphericality]\ngrid = [[2, 2]]\nrelative = []\n")
    csv_path = tmp_path / "r.csv"
    code = run(["verify", "sphericality", "--config", str(cfg), "--csv", str(csv_path)])
    assert code == 0
    rows = csv_path.read_text().splitlines()
    assert len(rows) == 3  # header + tits + split for the single grid point


def test_verify_empty_grid_gives_header_only_csv(tmp_path):
    cfg = tmp_path / "cfg.ini"
    cfg.write_text("[sphericality]\ngrid = []\nrelative = []\n")
    csv_path = tmp_path / "r.csv"
    assert run(["verify", "sphericality", "--config", str(cfg), "--csv", str(csv_path)]) == 0
    assert csv_path.read_text().splitlines() == ["suite,check,statement,params,expected,got,pass"]


def test_group_command(tmp_path):
    out = tmp_path / "g.json"
    assert run(["group", "--q", "2", "--n", "2", "--kind", "full", "--out", str(out), "--elements"]) == 0
    payload = json.loads(out.read_text())
    assert payload["order"] == 6 and len(payload["elements"]) == 6
    field, mat = formats.read_matrix(payload["generators"][0])
    assert mat.shape == (2, 2)


def test_building_command(tmp_path):
    out = tmp_path / "b.json"
    assert run(["building", "--q", "2", "--n", "3", "--kind", "tits", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["elements"] == 14 and payload["betti"]["1"] == 8
    assert len(payload["edges"]) == 21


def test_betti_command(tmp_path):
    cx = tmp_path / "circle.txt"
    cx.write_text("0 0\n0 1\n0 2\n1 0 1\n1 1 2\n1 0 2\n")
    out = tmp_path / "betti.json"
    assert run(["betti", "--complex", str(cx), "--json", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["dims"] == [1, 3, 3]
    assert payload["betti"] == [0, 0, 1]


def test_steinberg_command(tmp_path):
    out = tmp_path / "st.json"
    assert run(["steinberg", "--q", "3", "--n", "2", "--which", "tits", "--coeff", "3",
                "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["dim"] == 3


def test_ghom_command(tmp_path):
    f3 = field_make(3)
    z2 = MatGroup(f3, 1, [np.array([[1]], dtype=np.uint8), np.array([[2]], dtype=np.uint8)])
    gpath = tmp_path / "group.json"
    mpath = tmp_path / "module.json"
    gpath.write_text(formats.group_to_json(z2))
    mpath.write_text(formats.module_to_json(trivial_module(z2, 2)))
    out = tmp_path / "dims.json"
    assert run(["ghom", "--group", str(gpath), "--module", str(mpath),
                "--max-degree", "3", "--json", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["dims"] == {"0": 1, "1": 1, "2": 1, "3": 1}


def test_dl_commands(tmp_path):
    out = tmp_path / "table.json"
    assert run(["dl", "table", "--max-rank", "6", "--max-degree", "5", "--json", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert len(rows) == 12
    out = tmp_path / "apply.json"
    assert run(["dl", "apply", "--s", "2", "--expr", "a*Q[1](a)", "--json", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert "Q[2, 1](a)" in payload["result"]
    assert run(["dl", "tor", "--q", "2", "--ell", "3", "--max-rank", "3",
                "--max-degree", "6", "--json", str(tmp_path / "tor.json")]) == 0
    assert run(["dl", "ss-e3", "--max-rank", "8", "--max-degree", "5",
                "--json", str(tmp_path / "e3.json")]) == 0


def test_matrix_format_roundtrip():
    f4 = field_make(2, 2)
    mat = np.array([[0, 1], [2, 3]], dtype=np.uint8)
    text = formats.write_matrix(f4, mat)
    assert text.splitlines()[0] == "4 2 2"
    field, back = formats.read_matrix(text)
    assert field.q == 4 and np.array_equal(back, mat)
    f5 = field_make(5)
    mat5 = np.arange(4, dtype=np.uint8).reshape(2, 2)
    _, back5 = formats.read_matrix(formats.write_matrix(f5, mat5))
    assert np.array_equal(back5, mat5)


def test_complex_format_rejects_open_faces():
    from flagforge.errors import IOFailure

    with pytest.raises(IOFailure):
        formats.parse_complex("1 0 1\n")
