import csv
import io
import json

from drn import fixtures
from drn.cli import main
from drn.matrices import read_matrix, verify, write_matrix
from drn.graphs import graph_from_spec_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_valid(tmp_path, capsys):
    f = fixtures.get("p3_width4")
    p = tmp_path / "p3.drnmat"
    p.write_text(write_matrix(f.matrix()))
    code, out, _ = run(capsys, "verify", "P3", str(p))
    assert code == 0 and "valid" in out


def test_verify_reference_cycle_certificate(tmp_path, capsys):
    res_code = main(["construct", "C10", "--out", str(tmp_path / "c10.drnmat")])
    assert res_code == 0
    code, out, _ = run(capsys, "verify", "C10", str(tmp_path / "c10.drnmat"))
    assert code == 0


def test_verify_duplicate_rows_exit_1(tmp_path, capsys):
    p = tmp_path / "dup.drnmat"
    p.write_text("drnmat 1\n2 2\n1 2\n1 2\n")
    code, out, _ = run(capsys, "verify", "K2", str(p))
    assert code == 1
    assert "duplicate rows 1,2" in out


def test_verify_invalid_matrix_exit_1(tmp_path, capsys):
    p = tmp_path / "bad.drnmat"
    p.write_text("drnmat 1\n2 2\n1 2\n2 1\n")
    code, out, _ = run(capsys, "verify", "E2", str(p))
    assert code == 1 and "disagree everywhere" in out


def test_verify_parse_error_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.drnmat"
    p.write_text("drnmat 1\n1 3\n1 1 2\n")
    code, _, err = run(capsys, "verify", "K1", str(p))
    assert code == 2 and "row 1" in err


def test_construct_writes_verifying_file(tmp_path, capsys):
    out_path = tmp_path / "k8p6.drnmat"
    code, out, _ = run(capsys, "construct", "K8-P6", "--out", str(out_path))
    assert code == 0 and "width 8" in out
    m = read_matrix(out_path.read_text())
    assert m.rows == fixtures.get("k8_minus_p6_width8").rows
    code, _, _ = run(capsys, "verify", "K8-P6", str(out_path))
    assert code == 0


def test_construct_examples(tmp_path, capsys):
    code, out, _ = run(capsys, "construct", "C10", "--out", str(tmp_path / "x"))
    assert code == 0 and "width 6" in out
    code, out, _ = run(capsys, "construct", "E7", "--out", str(tmp_path / "y"))
    assert code == 0 and "width 5" in out


def test_construct_bad_family_exit_2(capsys):
    code, _, err = run(capsys, "construct", "Qx7")
    assert code == 2


def test_bounds_json(capsys):
    code, out, _ = run(capsys, "bounds", "C12", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["lower"] == 4 and data["upper"] == 7


def test_solve_text_and_json(capsys):
    code, out, _ = run(capsys, "solve", "P3")
    assert code == 0 and "drn(P3) = 4" in out and "refuted widths: 3" in out
    code, out, _ = run(capsys, "solve", "P3", "--format", "json")
    data = json.loads(out)
    assert data["drn"] == 4 and data["refuted"] == [3]
    w = read_matrix(data["witness"])
    assert verify(graph_from_spec_text("P3"), w).valid


def test_solve_examples(capsys):
    code, out, _ = run(capsys, "solve", "C12", "--format", "json")
    assert json.loads(out)["drn"] == 5
    code, out, _ = run(capsys, "solve", "K3,4", "--format", "json")
    assert json.loads(out)["drn"] == 5


def test_solve_budget_exit_4(capsys):
    code, _, err = run(capsys, "solve", "K3,3", "--node-limit", "3")
    assert code == 4 and "budget" in err


def test_solve_g6_and_file_inputs(tmp_path, capsys):
    code, out, _ = run(capsys, "solve", "g6:Bw", "--format", "json")
    assert json.loads(out)["drn"] == 3
    p = tmp_path / "g.txt"
    p.write_text("# a graph\nBw\n")
    code, out, _ = run(capsys, "solve", f"@{p}", "--format", "json")
    assert json.loads(out)["drn"] == 3


def test_table_paths_small(capsys):
    code, out, _ = run(capsys, "table", "paths", "2..6", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["drn"]) for r in rows] == [2, 4, 4, 4, 4]


def test_table_csv_json_agree(capsys):
    code, out_csv, _ = run(capsys, "table", "cycles", "3..6", "--format", "csv")
    code, out_json, _ = run(capsys, "table", "cycles", "3..6", "--format", "json")
    csv_vals = {int(r["n"]): int(r["drn"]) for r in csv.DictReader(io.StringIO(out_csv))}
    json_vals = {r["n"]: r["drn"] for r in json.loads(out_json)["rows"]}
    assert csv_vals == json_vals == {3: 3, 4: 4, 5: 4, 6: 4}


def test_table_text_grouping(capsys):
    code, out, _ = run(capsys, "table", "cycles", "3..6")
    assert "4..6" in out


def test_table_bipartite(capsys):
    code, out, _ = run(capsys, "table", "bipartite", "3", "--format", "csv")
    vals = {(int(r["r"]), int(r["s"])): int(r["drn"])
            for r in csv.DictReader(io.StringIO(out))}
    assert vals == {(1, 1): 2, (1, 2): 4, (2, 2): 4, (1, 3): 4, (2, 3): 4, (3, 3): 5}


def test_table_bad_range_exit_2(capsys):
    code, _, _ = run(capsys, "table", "cycles", "1..5")
    assert code == 2


def test_survey_order(capsys):
    code, out, _ = run(capsys, "survey", "--order", "3", "--format", "json")
    data = json.loads(out)
    assert data["not_representable"] == 2 and data["total"] == 4


def test_survey_corpus_file(tmp_path, capsys):
    from drn.graphs import graph6_encode
    p = tmp_path / "corpus.g6"
    p.write_text(graph6_encode(graph_from_spec_text("E3")) + "\n")
    code, out, _ = run(capsys, "survey", str(p), "--k", "3", "--format", "json")
    assert json.loads(out)["not_representable"] == 1
    code, out, _ = run(capsys, "survey", str(p), "--k", "4", "--format", "json")
    assert json.loads(out)["not_representable"] == 0


def test_survey_e2_at_width_4(tmp_path, capsys):
    from drn.graphs import graph6_encode
    p = tmp_path / "corpus.g6"
    p.write_text(graph6_encode(graph_from_spec_text("E2")) + "\n")
    code, out, _ = run(capsys, "survey", str(p), "--k", "4", "--format", "json")
    assert json.loads(out)["not_representable"] == 0


def test_survey_input_validation(capsys):
    code, _, _ = run(capsys, "survey", "--order", "9")
    assert code == 2
    code, _, _ = run(capsys, "survey")
    assert code == 2


def test_missing_file_exit_2(capsys):
    code, _, _ = run(capsys, "verify", "K3", "/nonexistent/path.drnmat")
    assert code == 2
    code, _, _ = run(capsys, "solve", "@/nonexistent/graph")
    assert code == 2
