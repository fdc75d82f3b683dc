"""CLI behavior: subcommands, exit statuses, determinism, batch handling."""

import json

from knotcert.cli import main
from knotcert.corpus import corpus_entry

TREFOIL = "X(1,4,2,3) X(3,6,4,5) X(5,2,6,1)"
HOPF = "X(4,1,3,2) X(2,3,1,4)"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_trefoil_json(capsys):
    code, out, _ = run(capsys, "analyze", "--pd", TREFOIL, "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["band_primeness"]["verdict"] == "band_prime_certified"
    assert rep["minimality"]["verdict"] == "minimal_certified"
    assert rep["invariants"]["determinant"] == 3
    assert rep["schema"] == "knotcert-report/1"


def test_analyze_unknot(capsys):
    code, out, _ = run(capsys, "analyze", "--pd", "", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["band_primeness"]["verdict"] == "band_prime_certified"
    assert rep["invariants"]["determinant"] == 1


def test_analyze_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "analyze", "--pd", "X(1,2,3)")
    assert code == 2
    assert "error" in err


def test_analyze_link_rejected_exit_2(capsys):
    code, _, err = run(capsys, "analyze", "--pd", HOPF)
    assert code == 2
    assert "components" in err


def test_analyze_rank_cap_exit_3(capsys):
    granny = corpus_entry("3_1#3_1").pd
    code, _, err = run(capsys, "analyze", "--pd", granny, "--rank-cap", "3")
    assert code == 3
    assert "cap" in err


def test_json_output_is_byte_identical(capsys):
    _, out1, _ = run(capsys, "analyze", "--pd", TREFOIL, "--json")
    _, out2, _ = run(capsys, "analyze", "--pd", TREFOIL, "--json")
    assert out1 == out2


def test_analyze_out_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", "--pd", TREFOIL, "--out", str(tmp_path))
    assert code == 0
    files = list(tmp_path.glob("analysis-*.json"))
    assert len(files) == 1
    rep = json.loads(files[0].read_text())
    assert rep["band_primeness"]["verdict"] == "band_prime_certified"


def test_batch_bundled_corpus(tmp_path, capsys):
    code, out, err = run(capsys, "batch", "bundled", "--json", "--out", str(tmp_path))
    assert code == 0
    summary = json.loads(out)
    assert summary["entries"] == 34
    assert summary["counts"]["band_prime_certified"] == 29
    assert summary["counts"]["not_applicable"] == 5
    assert summary["failures"] == 0
    assert len(list(tmp_path.glob("*.json"))) == 34


def test_batch_empty_corpus(tmp_path, capsys):
    f = tmp_path / "empty.csv"
    f.write_text("name,pd\n")
    code, out, _ = run(capsys, "batch", str(f))
    assert code == 0
    assert "entries: 0" in out


def test_batch_malformed_entry_warns_and_continues(tmp_path, capsys):
    f = tmp_path / "c.csv"
    f.write_text(
        'name,pd\ngood,"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"\nbad,"X(1,2,3)"\n'
    )
    code, out, err = run(capsys, "batch", str(f), "--json")
    assert code == 0
    assert "warning" in err and "bad" in err
    summary = json.loads(out)
    assert summary["failures"] == 1
    assert summary["counts"]["failed"] == 1
    assert summary["counts"]["band_prime_certified"] == 1


def test_batch_stored_value_mismatch_is_inconsistency(tmp_path, capsys):
    f = tmp_path / "c.csv"
    f.write_text('name,pd,det\nwrong,"X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",99\n')
    code, out, _ = run(capsys, "batch", str(f), "--json")
    assert code == 1
    summary = json.loads(out)
    assert summary["counts"]["inconsistency"] == 1


def test_batch_json_corpus_format(tmp_path, capsys):
    f = tmp_path / "c.json"
    f.write_text(json.dumps([{"name": "t", "pd": TREFOIL, "det": 3}]))
    code, out, _ = run(capsys, "batch", str(f), "--json")
    assert code == 0
    assert json.loads(out)["counts"]["band_prime_certified"] == 1


def test_batch_missing_file(capsys):
    code, _, err = run(capsys, "batch", "/nonexistent/corpus.csv")
    assert code == 2
    assert "not found" in err


def test_pair_obstructed(capsys):
    code, out, _ = run(capsys, "pair", "--lower", "", "--upper", TREFOIL, "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] == "obstructed"
    codes = {f["code"] for f in rep["findings"]}
    assert {"hfk_mismatch", "determinant_mismatch", "genus_mismatch"} <= codes


def test_pair_no_obstruction(capsys):
    code, out, _ = run(capsys, "pair", "--lower", TREFOIL, "--upper", TREFOIL)
    assert code == 0
    assert "no obstruction found" in out


def test_pair_parse_error(capsys):
    code, _, err = run(capsys, "pair", "--lower", "nope", "--upper", TREFOIL)
    assert code == 2
