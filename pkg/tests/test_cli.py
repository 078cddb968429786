"""CLI behavior: exit codes, report shape, determinism."""

import json
import re
from fractions import Fraction

import pytest

from mdrg import (
    MonomialOrder,
    MultiIndex,
    Polynomial,
    __version__,
    cell24,
    m_distance_table,
)
from mdrg.cli import main
from mdrg.schemes import distance_matrices
from mdrg.serialize import (
    dump_json,
    graph_to_dict,
    polynomials_from_dict,
    scheme_to_dict,
)

mi = MultiIndex
AXIS_TEXT = "A0=0,0;A1=0,2;A2=1,0;A3=0,1;A4=2,0"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture()
def cell24_graph(tmp_path):
    path = tmp_path / "cell24.json"
    path.write_text(dump_json(graph_to_dict(cell24())))
    return str(path)


@pytest.fixture()
def gen24_tensor(tmp_path, capsys):
    path = tmp_path / "t24.json"
    assert main(["generate", "gen24cell:2,1/2", "--out", str(path)]) == 0
    capsys.readouterr()
    return str(path)


def test_no_arguments_is_usage_error(capsys):
    code, _, err = run(capsys)
    assert code == 2
    assert "usage" in err


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert out.strip() == __version__


def test_generate_stdout_and_file(tmp_path, capsys):
    code, out, err = run(capsys, "generate", "cycle:6")
    assert code == 0
    doc = json.loads(out)
    assert doc["m"] == 1 and len(doc["edges"]) == 6
    assert "elapsed" in err

    path = tmp_path / "c6.json"
    code, out, _ = run(capsys, "generate", "cycle:6", "--out", str(path))
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text()) == doc


def test_generate_errors(capsys, tmp_path):
    code, _, err = run(capsys, "generate", "moebius:7")
    assert code == 2
    assert "error: unknown family" in err
    code, _, err = run(capsys, "generate", "cycle:two")
    assert code == 2
    code, _, err = run(capsys, "generate", "symmetrize:2")
    assert code == 2
    assert "--scheme" in err
    code, _, err = run(capsys, "generate", "gen24cell:2,1/8")
    assert code == 2
    assert "admissible" in err


def test_distances_on_product(tmp_path, capsys):
    c6 = tmp_path / "c6.json"
    c4 = tmp_path / "c4.json"
    assert main(["generate", "cycle:6", "--out", str(c6)]) == 0
    assert main(["generate", "cycle:4", "--out", str(c4)]) == 0
    prod = tmp_path / "t.json"
    assert main(["generate", "cartesian:%s,%s" % (c6, c4),
                 "--out", str(prod)]) == 0
    capsys.readouterr()
    code, out, err = run(capsys, "distances", str(prod), "--order", "deglex-y2")
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "distances"
    assert report["version"] == __version__
    assert report["results"]["size"] == 12
    assert report["results"]["distances"]["0,0|3,2"] == "3,2"
    assert re.search(r"elapsed: \d+\.\d\d\ds", err)


def test_certify_mdrg_cell24(cell24_graph, capsys):
    code, out, _ = run(capsys, "certify-mdrg", cell24_graph,
                       "--order", "deglex-sum")
    assert code == 0
    report = json.loads(out)
    assert report["certificates"]["mdrg"]["verdict"] == "pass"
    assert report["results"]["classes"] == ["0,0", "0,1", "0,2", "1,0", "2,0"]
    assert report["results"]["valencies"] == {
        "0,0": "1", "0,1": "8", "0,2": "8", "1,0": "6", "2,0": "1"}


def test_certify_mdrg_failure_has_witness(tmp_path, capsys):
    doc = {"m": 2, "vertices": [str(i) for i in range(5)],
           "edges": [["0", "1", 1], ["1", "2", 2], ["2", "3", 1],
                     ["3", "4", 2], ["4", "0", 1]]}
    path = tmp_path / "odd.json"
    path.write_text(dump_json(doc))
    code, out, _ = run(capsys, "certify-mdrg", str(path),
                       "--order", "deglex-sum")
    assert code == 1
    report = json.loads(out)
    checks = {c["name"]: c for c in report["certificates"]["mdrg"]["checks"]}
    assert checks["regular-counts"]["passed"] is False
    assert checks["regular-counts"]["witness"]["count"] == 1
    assert checks["regular-counts"]["witness"]["count_ref"] == 0


def test_output_is_byte_deterministic(cell24_graph, capsys):
    _, first, _ = run(capsys, "certify-mdrg", cell24_graph,
                      "--order", "deglex-sum")
    _, second, _ = run(capsys, "certify-mdrg", cell24_graph,
                       "--order", "deglex-sum")
    assert first == second


def test_verify_scheme(tmp_path, capsys):
    scheme = tmp_path / "pauli.json"
    assert main(["generate", "pauli4", "--out", str(scheme)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "verify-scheme", str(scheme))
    assert code == 0
    report = json.loads(out)
    assert report["certificates"]["axioms"]["verdict"] == "pass"
    assert report["certificates"]["numbers"]["verdict"] == "pass"

    tensor = tmp_path / "formal.json"
    assert main(["generate", "gen24cell:3,3/4", "--out", str(tensor)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "verify-scheme", str(tensor))
    assert code == 0  # formal tensors skip the integrality requirement
    report = json.loads(out)
    assert report["certificates"]["numbers"]["verdict"] == "pass"

    bad = tmp_path / "bad.json"
    bad.write_text(dump_json({"labels": ["0", "1"], "identity": "0",
                              "p": [["0", "0", "0", 1], ["1", "1", "0", -2],
                                    ["0", "1", "1", 1], ["1", "0", "1", 1]]}))
    code, out, _ = run(capsys, "verify-scheme", str(bad))
    assert code == 1
    assert json.loads(out)["certificates"]["numbers"]["verdict"] == "fail"

    code, _, err = run(capsys, "verify-scheme", "no-such-file.json")
    assert code == 2
    assert "error: cannot read" in err


def test_verify_scheme_rejects_graph(cell24_graph, capsys):
    code, _, err = run(capsys, "verify-scheme", cell24_graph)
    assert code == 2
    assert "graph file" in err


def test_certify_ppoly_from_graph(cell24_graph, capsys):
    code, out, _ = run(capsys, "certify-ppoly", cell24_graph,
                       "--order", "deglex-sum")
    assert code == 0
    report = json.loads(out)
    assert report["certificates"]["mdrg"]["verdict"] == "pass"
    assert report["certificates"]["ppoly"]["verdict"] == "pass"
    assert report["results"]["domain"] == ["0,0", "0,1", "0,2", "1,0", "2,0"]

    # the order also drives the distance computation, so deglex-y2 lands
    # on the diagonal domain and passes as well
    code, out, _ = run(capsys, "certify-ppoly", cell24_graph,
                       "--order", "deglex-y2")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["domain"] == ["0,0", "0,1", "1,0", "1,1", "2,0"]

    code, _, err = run(capsys, "certify-ppoly", cell24_graph,
                       "--order", "deglex-y2", "--labeling", AXIS_TEXT)
    assert code == 2  # labeling names do not match the distance classes
    assert "bad --labeling" in err


def test_certify_ppoly_graph_stops_at_mdrg(cell24_graph, capsys):
    # lex never realizes the unit of color 1, so the mdrg stage fails
    # and no ppoly certificate is emitted
    code, out, _ = run(capsys, "certify-ppoly", cell24_graph,
                       "--order", "lex")
    assert code == 1
    report = json.loads(out)
    assert sorted(report["certificates"]) == ["mdrg"]
    checks = {c["name"]: c for c in report["certificates"]["mdrg"]["checks"]}
    assert checks["colors-realized"]["witness"]["unit"] == "1,0"


def test_certify_ppoly_scheme_wrong_order_exits_1(tmp_path, capsys):
    table = m_distance_table(cell24(), MonomialOrder.parse("deglex-sum"))
    path = tmp_path / "scheme.json"
    path.write_text(dump_json(scheme_to_dict(distance_matrices(table))))
    code, out, _ = run(capsys, "certify-ppoly", str(path),
                       "--order", "deglex-y2")
    assert code == 1
    report = json.loads(out)
    assert report["certificates"]["axioms"]["verdict"] == "pass"
    checks = {c["name"]: c for c in report["certificates"]["ppoly"]["checks"]}
    assert checks["products-within-window"]["witness"] == {
        "a": "0,1", "b": "0,2", "bound": "1,1", "generator": "1,0",
        "value": "3", "window": "deglex-y2"}


def test_certify_ppoly_tensor_needs_labeling(gen24_tensor, capsys):
    code, _, err = run(capsys, "certify-ppoly", gen24_tensor,
                       "--order", "deglex-sum")
    assert code == 2
    assert "labeling" in err
    code, out, _ = run(capsys, "certify-ppoly", gen24_tensor,
                       "--order", "deglex-sum", "--labeling", AXIS_TEXT)
    assert code == 0
    report = json.loads(out)
    assert report["inputs"]["labeling"] == AXIS_TEXT
    assert report["inputs"]["order"] == "deglex-sum"


def test_certify_ppoly_polys_and_recurrences(gen24_tensor, tmp_path, capsys):
    out_file = tmp_path / "polys.json"
    code, out, _ = run(capsys, "certify-ppoly", gen24_tensor,
                       "--order", "deglex-sum", "--labeling", AXIS_TEXT,
                       "--polys", str(out_file), "--recurrences", "--boundary")
    assert code == 0
    report = json.loads(out)
    assert sorted(report["certificates"]) == [
        "boundary", "extraction", "ppoly", "recurrences"]
    for name, cert in report["certificates"].items():
        assert cert["verdict"] == "pass", name
    polys = polynomials_from_dict(json.loads(out_file.read_text()))
    assert polys[mi((2, 0))] == Polynomial({
        mi((0, 0)): Fraction(-1), mi((1, 0)): Fraction(-2, 3),
        mi((2, 0)): Fraction(1, 6)})
    first = report["results"]["polynomials"][0]
    assert first == {"n": "0,0", "terms": [{"a": "0,0", "coef": "1"}]}


def test_certify_ppoly_partial_flags(gen24_tensor, capsys):
    code, _, err = run(capsys, "certify-ppoly", gen24_tensor,
                       "--order", "deglex-sum", "--labeling", AXIS_TEXT,
                       "--partial", "ab:1,0")
    assert code == 2
    assert "does not refine" in err

    code, out, err = run(capsys, "certify-ppoly", gen24_tensor,
                         "--order", "deglex-sum", "--labeling", AXIS_TEXT,
                         "--partial", "ab:1/2,0", "--recurrences")
    assert code == 1
    assert "skipping extraction" in err
    report = json.loads(out)
    assert report["inputs"]["partial"] == "ab:1/2,0"
    assert report["certificates"]["ppoly"]["verdict"] == "fail"
    assert "recurrences" not in report["certificates"]

    code, _, err = run(capsys, "certify-ppoly", gen24_tensor,
                       "--order", "nope")
    assert code == 2
    assert "bad --order" in err


def test_type_ab_parameters_and_region(gen24_tensor, capsys):
    code, out, _ = run(capsys, "type-ab", gen24_tensor, "--labeling", AXIS_TEXT,
                       "--alpha", "1/2", "--beta", "0")
    assert code == 0
    report = json.loads(out)
    assert report["inputs"]["alpha"] == "1/2"
    assert report["certificates"]["type-ab"]["verdict"] == "pass"

    code, out, _ = run(capsys, "type-ab", gen24_tensor, "--labeling", AXIS_TEXT,
                       "--alpha", "0", "--beta", "0")
    assert code == 1
    assert json.loads(out)["certificates"]["type-ab"]["verdict"] == "fail"

    code, out, _ = run(capsys, "type-ab", gen24_tensor, "--labeling", AXIS_TEXT,
                       "--region")
    assert code == 0
    report = json.loads(out)
    assert report["results"] == {
        "alpha": "[1/2, 1)", "beta": "[0, 1)",
        "region": "alpha in [1/2, 1), beta in [0, 1)"}


def test_type_ab_usage_errors(gen24_tensor, cell24_graph, capsys):
    code, _, err = run(capsys, "type-ab", gen24_tensor, "--labeling", AXIS_TEXT,
                       "--alpha", "2", "--beta", "0")
    assert code == 2
    assert "alpha must lie in [0, 1], got 2" in err
    code, _, err = run(capsys, "type-ab", gen24_tensor, "--labeling", AXIS_TEXT,
                       "--region", "--alpha", "1/2")
    assert code == 2
    assert "either --region" in err
    code, _, err = run(capsys, "type-ab", gen24_tensor, "--labeling", AXIS_TEXT)
    assert code == 2
    code, _, err = run(capsys, "type-ab", cell24_graph, "--region")
    assert code == 2
    assert "scheme or tensor" in err


def test_discover(tmp_path, capsys):
    pauli = tmp_path / "pauli.json"
    assert main(["generate", "pauli4", "--out", str(pauli)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "discover", str(pauli), "--m", "1",
                       "--order", "deglex-sum")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["count"] == 1
    assert report["results"]["labelings"] == [
        {"generators": ["A1"], "labeling": "A0=0;A1=1;A2=2"}]

    # both orderings of the two unit classes work in two variables
    code, out, _ = run(capsys, "discover", str(pauli), "--m", "2",
                       "--order", "deglex-sum")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["count"] == 2
    assert report["results"]["labelings"] == [
        {"generators": ["A1", "A2"], "labeling": "A0=0,0;A1=1,0;A2=0,1"},
        {"generators": ["A2", "A1"], "labeling": "A0=0,0;A1=0,1;A2=1,0"}]

    code, _, err = run(capsys, "discover", str(pauli), "--m", "0",
                       "--order", "deglex-sum")
    assert code == 2


def test_discover_none_found(tmp_path, capsys):
    table = m_distance_table(cell24(), MonomialOrder.parse("deglex-sum"))
    path = tmp_path / "scheme.json"
    path.write_text(dump_json(scheme_to_dict(distance_matrices(table))))
    code, out, _ = run(capsys, "discover", str(path), "--m", "1",
                       "--order", "deglex-sum")
    assert code == 1
    report = json.loads(out)
    assert report["results"]["count"] == 0
    assert report["results"]["labelings"] == []


def test_quiet_silences_everything(cell24_graph, capsys):
    code, out, err = run(capsys, "certify-mdrg", cell24_graph,
                         "--order", "deglex-sum", "--quiet")
    assert code == 0
    assert out == "" and err == ""
    code, out, err = run(capsys, "certify-ppoly", cell24_graph,
                         "--order", "lex", "--quiet")
    assert code == 1
    assert out == "" and err == ""


def test_threads_environment(cell24_graph, capsys, monkeypatch):
    monkeypatch.setenv("MDRG_THREADS", "0")
    code, out, _ = run(capsys, "certify-mdrg", cell24_graph,
                       "--order", "deglex-sum")
    assert code == 0
    monkeypatch.setenv("MDRG_THREADS", "4")
    code, out4, _ = run(capsys, "certify-mdrg", cell24_graph,
                        "--order", "deglex-sum")
    assert code == 0
    assert out == out4
    monkeypatch.setenv("MDRG_THREADS", "soon")
    code, _, err = run(capsys, "certify-mdrg", cell24_graph,
                       "--order", "deglex-sum")
    assert code == 2
    assert "MDRG_THREADS" in err
    monkeypatch.setenv("MDRG_THREADS", "-1")
    assert main(["certify-mdrg", cell24_graph, "--order", "deglex-sum"]) == 2
    capsys.readouterr()
