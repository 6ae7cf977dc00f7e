from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cubicpierce.cli import CONSTRUCTIONS, build_document, main
from cubicpierce.document import ConfigDocument, SchemaError
from cubicpierce.svg import role_counts


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return path


SQUARE = {
    "version": 1,
    "field": "rational",
    "representation": "planar",
    "sets": {"P": [["0", "0", "1"], ["1", "0", "1"], ["0", "1", "1"], ["1", "1", "1"]]},
}


@pytest.mark.parametrize(
    "name, extra",
    [
        ("regular-mgon", ["--m", 5]),
        ("rotated-union", ["--m", 4]),
        ("bipartite", ["--k", 5]),
        ("quadrilateral", []),
        ("three-line", []),
        ("fp-coset", ["--p", 7, "--subgroup-order", 3]),
        ("two-point", []),
        ("lattice-hexagon", []),
    ],
)
def test_construct_then_verify(tmp_path, capsys, name, extra):
    out = tmp_path / f"{name}.json"
    code, _, _ = run(capsys, "construct", name, *extra, "--out", out)
    assert code == 0
    code, stdout, _ = run(capsys, "verify", out)
    assert code == 0, stdout
    assert json.loads(stdout)["passed"] is True


def test_every_construction_is_covered():
    assert len(CONSTRUCTIONS) == 8


def test_construct_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, stdout, _ = run(capsys, "construct", "bipartite", "--k", 7)
        assert code == 0
        outs.append(stdout)
    assert outs[0] == outs[1]


def test_document_round_trip():
    for name, kw in (("rotated-union", {"m": 3}), ("quadrilateral", {}), ("fp-coset", {})):
        doc = build_document(name, **kw)
        again = ConfigDocument.from_json(doc.to_json())
        assert again.canonical().to_json() == doc.canonical().to_json() == doc.to_json()


def test_group_document_round_trip(tmp_path, capsys):
    obj = {
        "version": 1,
        "field": "rational",
        "representation": "group",
        "group": {"orders": [15]},
        # cosets of {0, 5, 10}: no three distinct elements sum to zero
        "sets": {"B": [[1], [6], [11]], "G": [[4], [9], [14]], "R": [[0], [5], [10]]},
    }
    path = write(tmp_path, "z15.json", obj)
    code, stdout, _ = run(capsys, "verify", path)
    assert code == 0
    code, stdout, _ = run(capsys, "analyze", path)
    rep = json.loads(stdout)
    assert code == 0 and rep["H"]["order"] == 3 and rep["short_argument"] == "holds"


def test_verify_reports_witness(tmp_path, capsys):
    obj = dict(SQUARE, sets=dict(SQUARE["sets"], R=[["1", "0", "0"]]))
    code, stdout, _ = run(capsys, "verify", write(tmp_path, "sq.json", obj))
    rep = json.loads(stdout)
    assert code == 1 and not rep["pierced"] and rep["witness"]


def test_verify_angle_witness(tmp_path, capsys):
    doc = build_document("regular-mgon", m=5).to_obj()
    doc["sets"]["R"] = doc["sets"]["R"][1:]
    code, stdout, _ = run(capsys, "verify", write(tmp_path, "a.json", doc))
    rep = json.loads(stdout)
    assert code == 1 and len(rep["witness"]["pair"]) == 2


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        json.dumps({"version": 2, "field": "rational", "representation": "planar", "sets": {}}),
        json.dumps({"version": 1, "field": "reals", "representation": "planar", "sets": {}}),
        json.dumps({"version": 1, "field": "rational", "representation": "planar", "sets": {"Q": []}}),
        json.dumps({"version": 1, "field": "rational", "representation": "planar", "sets": {"P": [["1", "2"]]}}),
        json.dumps({"version": 1, "field": "fp:7", "representation": "ec", "sets": {"P": ["O"]}}),
        json.dumps({"version": 1, "field": "rational", "representation": "planar",
                    "sets": {"P": [["0", "0", "0"]]}}),
    ],
)
def test_schema_errors_exit_2(tmp_path, capsys, text):
    code, _, err = run(capsys, "verify", write(tmp_path, "bad.json", text))
    assert code == 2 and err.startswith("error:")


def test_schema_error_type():
    with pytest.raises(SchemaError):
        ConfigDocument.from_json("[]")


def test_missing_file_exit_2(tmp_path, capsys):
    code, _, _ = run(capsys, "verify", tmp_path / "nope.json")
    assert code == 2


def test_missing_parameter_exit_2(capsys):
    code, _, err = run(capsys, "construct", "regular-mgon")
    assert code == 2 and "--m" in err


def test_analyze_planar_needs_group(tmp_path, capsys):
    code, _, err = run(capsys, "analyze", write(tmp_path, "sq.json", SQUARE))
    assert code == 2 and "group representation" in err


def test_analyze_fp_coset(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(capsys, "construct", "fp-coset", "--p", 13, "--a", 1, "--b", 0, "--subgroup-order", 10, "--out", path)
    code, stdout, _ = run(capsys, "analyze", path)
    rep = json.loads(stdout)
    assert code == 0 and rep["H"]["order"] == 10 and rep["failed_gates"] == []


def test_analyze_rotated_union_infinite(tmp_path, capsys):
    path = tmp_path / "r.json"
    run(capsys, "construct", "rotated-union", "--m", 4, "--out", path)
    code, stdout, _ = run(capsys, "analyze", path)
    assert code == 0 and json.loads(stdout)["H"] == "infinite"


def test_analyze_conic_gate(tmp_path, capsys):
    path = tmp_path / "q.json"
    run(capsys, "construct", "quadrilateral", "--out", path)
    code, stdout, _ = run(capsys, "analyze", path, "--conic", "ellipse")
    assert code == 1 and json.loads(stdout)["accepted"] is False


def test_minpierce(tmp_path, capsys):
    code, stdout, _ = run(capsys, "minpierce", write(tmp_path, "sq.json", SQUARE))
    rep = json.loads(stdout)
    assert code == 0 and rep["min_piercing"] == 3 and rep["counting_bound"] == 3 and len(rep["witness"]) == 3
    code, stdout, _ = run(capsys, "minpierce", write(tmp_path, "sq.json", SQUARE), "--limit", 2)
    assert json.loads(stdout)["min_piercing"] == "> 2"


def test_plot_two_point(tmp_path, capsys):
    src, out = tmp_path / "t.json", tmp_path / "t.svg"
    run(capsys, "construct", "two-point", "--out", src)
    assert run(capsys, "plot", src, "--out", out)[0] == 0
    counts = role_counts(out.read_text())
    assert counts["P"] == 2 and counts["R"] == 1


def test_plot_bipartite(tmp_path, capsys):
    src, out = tmp_path / "b.json", tmp_path / "b.svg"
    run(capsys, "construct", "bipartite", "--k", 5, "--out", src)
    assert run(capsys, "plot", src, "--out", out)[0] == 0
    counts = role_counts(out.read_text())
    assert counts == {"P": 0, "B": 10, "G": 10, "R": 15}
    assert out.read_text().startswith("<?xml")


def test_plot_rejects_ec(tmp_path, capsys):
    src = tmp_path / "c.json"
    run(capsys, "construct", "fp-coset", "--out", src)
    assert run(capsys, "plot", src, "--out", tmp_path / "x.svg")[0] == 2


def test_selftest_small_bounds(capsys):
    code, stdout, _ = run(capsys, "selftest", "--lev-bound", 8, "--lemma-bound", 6, "--gt-samples", 50, "--no-samples")
    assert code == 0
    assert all(line.startswith("PASS") for line in stdout.splitlines())


def test_selftest_mutant_fails(capsys):
    code, stdout, _ = run(capsys, "selftest", "--lev-bound", 6, "--lemma-bound", 5, "--gt-samples", 20, "--no-samples",
                          "--mutant")
    assert code == 1 and "reproducer:" in stdout


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cubicpierce", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "selftest" in proc.stdout
