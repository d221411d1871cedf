import json
import subprocess
import sys
from fractions import Fraction

import pytest

from chevalley import cli


def run_json(args, capsys):
    code = cli.run(args)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith(("{", "[")) else out


def test_group_order_prints_integer(capsys):
    assert cli.run(["group", "order", "--datum", "A1-sc", "--ring", "fp:3"]) == cli.EXIT_OK
    assert capsys.readouterr().out.strip() == "24"


@pytest.mark.parametrize("args", [
    ["verify", "--datum", "bogus"],
    ["verify", "--ring", "banana"],
    ["verify", "--suite", "nonsense"],
    ["group", "order", "--datum", "A1-sc", "--ring", "q"],
    ["weylmod", "--datum", "A1-sc", "--lambda", "-1"],
    ["sl2q", "tau", "--e", "2", "--r", "0", "--m", "1"],
    ["group", "eval", "--datum", "A1-sc", "--word", "z:1:3"],
    ["not-a-command"],
])
def test_usage_errors(args, capsys):
    assert cli.run(args) == cli.EXIT_USAGE


def test_budget_exit_with_partial_report(capsys):
    code, rep = run_json(["verify", "--datum", "A1-sc", "--suite", "group", "--budget", "1"], capsys)
    assert code == cli.EXIT_BUDGET
    assert rep["passed"] is False and "budget_exceeded" in rep


def test_verify_group_suite(capsys):
    code, rep = run_json(["verify", "--datum", "A1-sc", "--ring", "fp:7", "--suite", "group",
                          "--window", "1"], capsys)
    assert code == cli.EXIT_OK and rep["passed"]
    tags = {item["tag"] for item in rep["items"]}
    assert {"rank-one-exchange", "torus-from-unipotents", "bigcell-uniqueness"} <= tags
    assert all(item["instances"] > 0 for item in rep["items"])


def test_verify_items_ordered_by_tag(capsys):
    _, rep = run_json(["verify", "--datum", "A1-sc", "--suite", "sl2q,weylmod", "--zeta-window", "3"],
                      capsys)
    keys = [(i["suite"], i["tag"]) for i in rep["items"]]
    assert keys == sorted(keys)


def test_group_eval(capsys):
    code, rep = run_json(["group", "eval", "--datum", "A1-sc", "--word", "x:1:3 t:5 y:1:2"], capsys)
    assert code == cli.EXIT_OK
    assert rep["lambda"] == [1] and rep["dim"] == 2
    dense = [[Fraction(0)] * 2 for _ in range(2)]
    for r, c, x in rep["matrix"]:
        dense[r][c] = Fraction(x)
    # x(3) diag(5, 1/5) y(2) computed by hand
    assert dense == [[Fraction(31, 5), Fraction(3, 5)], [Fraction(2, 5), Fraction(1, 5)]]


def test_export_module_shape(capsys):
    code, rep = run_json(["export", "module", "--datum", "A1-sc", "--lambda", "2"], capsys)
    assert code == cli.EXIT_OK
    assert rep["dim"] == 3 and rep["weights"] == [[2], [0], [-2]]
    assert rep["actions"]["f:0:1"] and rep["schema"]


def test_export_tables(capsys):
    _, rep = run_json(["export", "tables", "--window", "4"], capsys)
    assert rep["mhat"] and rep["m"]
    _, empty = run_json(["export", "tables", "--window", "-1"], capsys)
    assert empty["mhat"] == {} and empty["m"] == {}


def test_export_polynomial(capsys, tmp_path):
    out = tmp_path / "poly.json"
    assert cli.run(["coord", "iota", "--datum", "A1-sc", "--f", "w1:0:1", "--out", str(out)]) == 0
    poly = json.loads(out.read_text())["polynomial"]
    assert poly["variables"] == ["hm_1", "u_1", "hp_1"]
    assert poly["terms"] == [[[0, 1, 1], 1]]
    _, again = run_json(["export", "polynomial", "--datum", "A1-sc", "--lambda", "1", "--row", "0",
                         "--col", "1"], capsys)
    assert again["polynomial"] == poly


def test_weylmod_a2(capsys):
    code, rep = run_json(["weylmod", "--datum", "A2-sc", "--lambda", "1,1"], capsys)
    assert code == cli.EXIT_OK and rep["dim"] == 8


def test_coord_commands(capsys):
    code, rep = run_json(["coord", "hopf-check", "--datum", "A1-sc", "--window", "2"], capsys)
    assert code == cli.EXIT_OK and rep["passed"]
    code, rep = run_json(["coord", "kostant-compare", "--window", "2"], capsys)
    assert code == cli.EXIT_OK
    assert [(w["window"], w["rank"], w["equal"]) for w in rep["windows"]] == [
        (0, 1, True), (1, 5, True), (2, 14, True)]


def test_sl2q_tau_table(capsys):
    code, rep = run_json(["sl2q", "tau", "--e", "1", "--r", "0", "--m", "2"], capsys)
    assert code == cli.EXIT_OK and rep["table_agrees"]


def test_reports_deterministic(tmp_path):
    args = ["verify", "--datum", "A1-sc", "--ring", "fp:7", "--suite", "group,coord", "--seed", "3",
            "--window", "1"]
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert cli.run(args + ["--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "chevalley", "group", "order", "--datum", "A1-sc",
                           "--ring", "fp:2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "6"
