import json
from pathlib import Path

import pytest

from affmon.cli import DocumentError, dump_document, main, parse_document, parse_ideal

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_example4(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "example4.json")
    rep = json.loads(out)
    assert code == 0
    assert rep["seminormal"] is True
    assert rep["phi_simplicial"]["verdict"] == "no"
    assert rep["certificate"]["level"] == 2
    assert rep["gen1"] == [[1, 0, 0, 0], [1, 0, 0, 1]]
    assert rep["bounds"]["best"] == 1 + 4 - 2


def test_analyze_numerical(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "numerical_2_3.json")
    rep = json.loads(out)
    assert rep["normal"] is False and rep["seminormal"] is False
    assert rep["seminormalization"] == [[1]]
    assert rep["seminormality_witness"] == [1]


def test_analyze_rank_zero(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "empty.json")
    rep = json.loads(out)
    assert code == 0 and rep["rank"] == 0 and rep["bounds"]["entries"][0]["rule"] == "R0"


def test_deterministic_output(capsys):
    outs = {run(capsys, "analyze", DATA / "example4.json", "--seed", "3")[1] for _ in range(2)}
    assert len(outs) == 1
    assert next(iter(outs)).endswith("\n")


def test_document_round_trip(tmp_path):
    text = (DATA / "example4.json").read_text()
    doc = parse_document(text)
    once = dump_document(doc)
    assert dump_document(parse_document(once)) == once
    assert json.loads(once)["generators"] == json.loads(text)["generators"]


def test_parse_errors_have_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ambient_rank": 2,\n "generators": [[1, 0],]}')
    code, _, err = run(capsys, "analyze", bad)
    assert code == 1 and "bad.json:2:" in err
    with pytest.raises(DocumentError):
        parse_document('{"ambient_rank": 2, "generators": [[0, 0]]}')
    with pytest.raises(DocumentError):
        parse_document('{"ambient_rank": 2, "generators": [[1, 0]], "extra": 1}')


def test_segre_command(capsys):
    code, out, _ = run(capsys, "segre", 2, 3, "--verify", "--certificate")
    rep = json.loads(out)
    assert code == 0 and rep["isomorphism"]["ok"] and rep["certificate"]["level"] == 2
    assert rep["k"] == 2


def test_rees_command(capsys):
    code, out, _ = run(capsys, "rees", "--ideal", "x1,x2,x3", "--verify-segre")
    rep = json.loads(out)
    assert code == 0 and rep["segre"]["ok"] and rep["segre"]["target"] == "Segre(2,3)"
    code, out, _ = run(capsys, "rees", "--ideal", "x1^2, x1*x2", "--verify-segre")
    assert code == 2
    assert parse_ideal("x1^2, x1*x2") == [(2, 0), (1, 1)]
    with pytest.raises(DocumentError):
        parse_ideal("x1 + x2")


def test_certify_tampered(tmp_path, capsys):
    code, out, _ = run(capsys, "certify", DATA / "example4.json")
    assert code == 0
    cert = json.loads(out)["certificate"]
    good = tmp_path / "good.json"
    good.write_text(json.dumps(cert))
    assert run(capsys, "certify", good)[0] == 0
    cert["recursion"]["monoid"]["generators"].append([0, 0, 1, 0])
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(cert))
    code, out, _ = run(capsys, "certify", bad)
    rep = json.loads(out)
    assert code == 1 and any("recursion monoid" in v for v in rep["violated"])


def test_certify_inconclusive(tmp_path, capsys):
    doc = tmp_path / "s22.json"
    doc.write_text(json.dumps({"ambient_rank": 3, "generators": [[1, 0, 0], [0, 1, 0], [1, 0, 1], [0, 1, 1]]}))
    assert run(capsys, "certify", doc, "--level", "2")[0] == 2


def test_normalize_and_bound_text(capsys, monkeypatch):
    code, out, _ = run(capsys, "normalize", DATA / "numerical_2_3.json", "--interior", "--degree-bound", "5")
    rep = json.loads(out)
    assert rep["normalization"] == [[1]] and rep["interior_generators"]["degree_bound"] == 5
    code, out, _ = run(capsys, "bound", DATA / "with_units.json", "--text")
    lines = out.strip().splitlines()
    assert code == 0 and lines[-1] == "best: S-dim <= 2"
    assert all(line.startswith(("R", "best")) and ("(" in line or line.startswith("best")) for line in lines)


def test_text_analyze_cites_rules(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "example4.json", "--text")
    bound_lines = [l for l in out.splitlines() if "S-dim <=" in l]
    assert bound_lines and all(l.strip().startswith(("R", "best")) for l in bound_lines)
