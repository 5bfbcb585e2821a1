"""Command line behaviour, driven through main(argv)."""

import json

import pytest

from locale_lab import chain_frame, boolean_frame, frame_to_json
from locale_lab.cli import main


@pytest.fixture()
def chain3_file(tmp_path):
    p = tmp_path / "chain3.json"
    p.write_text(json.dumps(frame_to_json(chain_frame(3))))
    return str(p)


@pytest.fixture()
def bool4_file(tmp_path):
    p = tmp_path / "bool4.json"
    p.write_text(json.dumps(frame_to_json(boolean_frame(2))))
    return str(p)


def test_check_all(chain3_file, capsys):
    assert main(["check", chain3_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["elements"] == 3
    assert out["verdicts"]["fit"]["holds"] is False
    assert out["verdicts"]["anti_urysohn"]["holds"] is True
    assert out["verdicts"]["sH"]["holds"] is False
    assert out["verdicts"]["TU"]["holds"] is False


def test_check_subset_of_axioms(bool4_file, capsys):
    assert main(["check", bool4_file, "--axioms", "fit,subfit"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out["verdicts"]) == {"fit", "subfit"}
    assert out["verdicts"]["fit"]["holds"] is True


def test_check_unknown_axiom(chain3_file, capsys):
    assert main(["check", chain3_file, "--axioms", "zippy"]) == 1
    assert "unknown axioms" in capsys.readouterr().err


def test_check_missing_file(capsys):
    assert main(["check", "/nonexistent/frame.json"]) == 1
    assert "error" in capsys.readouterr().err


def test_check_malformed_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["check", str(p)]) == 1


def test_check_not_a_frame(tmp_path, capsys):
    p = tmp_path / "m3.json"
    p.write_text(json.dumps({
        "elements": ["0", "x", "y", "z", "1"],
        "leq": [["0", "x"], ["0", "y"], ["0", "z"],
                ["x", "1"], ["y", "1"], ["z", "1"]]}))
    assert main(["check", str(p)]) == 1
    assert "distribute" in capsys.readouterr().err


def test_check_out_file(chain3_file, tmp_path, capsys):
    dest = tmp_path / "verdicts.json"
    assert main(["check", chain3_file, "--out", str(dest)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(dest.read_text())["elements"] == 3


def test_tensor(chain3_file, bool4_file, capsys):
    assert main(["tensor", chain3_file, bool4_file, "--dump"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["left"], out["right"], out["elements"]) == (3, 4, 9)
    assert len(out["ideals"]) == 9
    cells = {tuple(map(tuple, i["cells"])) for i in out["ideals"]}
    assert len(cells) == 9


def test_tensor_beyond_bound(chain3_file, bool4_file, capsys):
    code = main(["tensor", chain3_file, bool4_file, "--tensor-bound", "10"])
    assert code == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["skipped"] == "tensor-bound"
    assert "exceeds" in captured.err


def test_audit_small(tmp_path, capsys):
    dest = tmp_path / "report.json"
    assert main(["audit", "--max-poset", "2", "--out", str(dest)]) == 0
    report = json.loads(dest.read_text())
    assert report["summary"]["frames"] == 4
    assert report["summary"]["edges_violated"] == 0


def test_audit_violated_edge_exits_2(tmp_path, capsys):
    doctored = {"axioms": ["anti_urysohn", "F"],
                "edges": [["anti_urysohn", "F"]]}
    p = tmp_path / "edges.json"
    p.write_text(json.dumps(doctored))
    code = main(["audit", "--max-poset", "2", "--expected", str(p)])
    assert code == 2
    assert "anti_urysohn" in capsys.readouterr().err


def test_export_jsonl(capsys):
    assert main(["export", "--max-poset", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    assert all(json.loads(x)["name"] for x in lines)


def test_export_dot_from_report(tmp_path, capsys):
    dest = tmp_path / "report.json"
    main(["audit", "--max-poset", "2", "--out", str(dest)])
    capsys.readouterr()
    assert main(["export", "--dot", "--from-report", str(dest)]) == 0
    text = capsys.readouterr().out
    assert text.startswith("digraph") and "->" in text


def test_no_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
