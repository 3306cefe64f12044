import json

import pytest

from meshdist.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main, run

PI = "(15)(17)(16)9(10)6(12)8(13)(11)(14)745321"


def out(argv):
    text, status = run(argv)
    assert status == EXIT_OK
    return text


def test_dist_examples():
    assert out(["dist", "--nr", "8", "--n", "4", "--source", "formula"]) == "6 11 6 1\n"
    assert out(["dist", "--nr", "10", "--n", "3", "--source", "oracle"]) == "3 3\n"
    assert out(["dist", "--pattern", "tau=12;R=", "--n", "3", "--source", "oracle"]) == "1 2 2 1\n"


def test_dist_table_and_json():
    text = out(["dist", "--nr", "14", "--n-max", "3"])
    assert text == "0: 1\n1: 1\n2: 1 1\n3: 3 2 1\n"
    data = json.loads(out(["dist", "--nr", "3", "--n-max", "4", "--source", "formula", "--format", "json"]))
    assert data == {"pattern": "nr=3", "rows": [[1], [1], [1, 1], [1, 4, 1], [1, 13, 9, 1]], "conjectural": True}


def test_dist_formula_for_strong_fixed_points():
    assert out(["dist", "--pattern", "tau=1;R=(0,1)(1,0)", "--n", "3", "--source", "formula"]) == "3 2 0 1\n"


def test_dist_is_independent_of_shards():
    a = out(["dist", "--nr", "45", "--n-max", "7", "--format", "json"])
    b = out(["dist", "--nr", "45", "--n-max", "7", "--format", "json", "--shards", "3"])
    assert a == b


def test_bfile():
    text = out(["bfile", "--nr", "8", "--column", "0", "--source", "formula", "--n-max", "4"])
    assert text.splitlines()[1:] == ["1 1", "2 1", "3 2", "4 6"]
    sfp = out(["bfile", "--pattern", "tau=1;R=(0,1)(1,0)", "--column", "0", "--source", "formula", "--n-max", "4"])
    assert [int(line.split()[1]) for line in sfp.splitlines()] == [1, 0, 1, 3, 14]
    tri = out(["bfile", "--nr", "14", "--source", "formula", "--n-max", "3", "--offset", "1"])
    assert tri == "1 1\n2 1\n3 1\n4 3\n5 2\n6 1\n"


def test_verify_ok_and_conjecture():
    text, status = run(["verify", "--theorem", "T3.10", "--n-max", "7"])
    assert status == EXIT_OK
    assert json.loads(text) == {"tag": "T3.10", "pattern": "nr=63", "n_max": 7, "status": "OK"}
    text, status = run(["verify", "--conjecture", "C6.1", "--n-max", "7"])
    assert status == EXIT_OK and json.loads(text)["status"] == "SUPPORTED"
    text, status = run(["verify", "--theorem", "J6", "--n-max", "6"])
    assert status == EXIT_OK and json.loads(text)["status"] == "OK"


def test_verify_reports_counterexample():
    text, status = run(["verify", "--theorem", "T2.9", "--n-max", "5"])
    assert status == EXIT_MISMATCH
    rec = json.loads(text)
    assert rec["status"] == "MISMATCH" and (rec["n"], rec["k"]) == (3, 0)
    assert rec["oracle_row"] == [2, 4]
    assert rec["witness"] == [2, 3, 1]


def test_verify_all_lines():
    text, status = run(["verify", "--all", "--n-max", "5"])
    lines = text.splitlines()
    recs = [json.loads(line.split(" ", 1)[1] if line.startswith("CONJECTURE") else line) for line in lines]
    bad = [r["tag"] for r in recs if r["status"] not in ("OK", "SUPPORTED")]
    assert bad == ["T2.9"]
    assert status == EXIT_MISMATCH
    assert {"T1.1", "E1", "T4.4", "J6", "C6.1"} <= {r["tag"] for r in recs}


def test_bijection_command():
    text = out(["bijection", "--perm", PI, "--parenthesised"])
    assert text.splitlines()[0] == "(17)(16)(15)(13)(11)4231975(10)6(12)8(14)"
    assert "= 2" in text.splitlines()[1]
    assert out(["bijection", "--map", "f", "--nr-pair", "48,49", "--perm", "132", "--n", "3"]).splitlines()[0] == "2 3 1"
    back = json.loads(
        out(["bijection", "--inverse", "--perm", "17 16 15 13 11 4 2 3 1 9 7 5 10 6 12 8 14", "--format", "json"])
    )
    assert back["output"] == [15, 17, 16, 9, 10, 6, 12, 8, 13, 11, 14, 7, 4, 5, 3, 2, 1]


def test_bijection_on_avoider_is_usage_error(capsys):
    assert main(["bijection", "--perm", "21"]) == EXIT_USAGE
    assert "--map f" in capsys.readouterr().err


def test_equidist_command():
    text = out(["equidist", "--group", "53,54", "--n-max", "6"])
    assert text.startswith("{53, 54}") and "equal for n <= 6" in text
    text, status = run(["equidist", "--group", "8,10", "--n-max", "4"])
    assert status == EXIT_OK and "DIVERGE" in text
    data = json.loads(out(["equidist", "--all", "--n-max", "5", "--format", "json"]))
    assert len(data) == 9


def test_catalog_command():
    rows = json.loads(out(["catalog", "--format", "json"]))
    by_nr = {r["nr"]: r for r in rows}
    assert by_nr[63]["theorem"] == "T3.10"
    assert by_nr[3]["status"] == "conjectured"
    assert by_nr[50]["theorem"] is None


@pytest.mark.parametrize(
    "argv",
    [
        ["dist", "--nr", "99"],
        ["dist", "--pattern", "tau=12;R=(0,5)"],
        ["dist", "--nr", "8", "--n", "11"],
        ["dist", "--nr", "50", "--source", "formula"],
        ["dist", "--nr", "8", "--order", "40", "--source", "formula"],
        ["verify"],
        ["verify", "--conjecture", "T3.10"],
        ["bijection", "--perm", "1 1"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv):
    try:
        status = main(argv)
    except SystemExit as exc:  # argparse
        status = exc.code
    assert status == EXIT_USAGE
