import json

import pytest

from deskbqo.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    return code, json.loads(out) if out.strip() else None


@pytest.mark.parametrize("argv,verdict", [
    (["tc", "a:0", "b:0"], "INCOMPARABLE"),
    (["eps", "()", "eps0"], "LE"),
    (["hterm", "--base", "antichain:3", "{u1,{u1}}", "u1"], "EQUIV"),
    (["eps", "eps0", "(())"], "GE"),
    (["tree", "--strong", "--base", "antichain:2", "0()", "1(0())"], "LE"),
])
def test_compare(capsys, argv, verdict):
    code, out, _ = run(capsys, "compare", *argv)
    assert code == 0 and out.strip() == verdict


def test_compare_json(capsys):
    code, rep = run_json(capsys, "compare", "--omega", "3", "tc", "u0", "a:2")
    assert code == 0 and rep["verdict"] == "LE" and rep["structure"] == "tc:3"


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "compare", "tc", "a:0", "a:1", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "LE"


def test_parse_errors_exit_2(capsys):
    code, _, err = run(capsys, "compare", "hterm", "{u1", "u1")
    assert code == 2 and "position" in err
    code, _, err = run(capsys, "compare", "eps", "(eps0)", "()")
    assert code == 2 and "error" in err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "--bound", "2", "enumerate", "Pf(antichain:2)")
    assert code == 0 and out.split() == ["{}", "{0}", "{1}", "{0,1}"]


@pytest.mark.parametrize("argv,image", [
    (["--map", "h", "--params", "alpha=3", "[2,0]"], "{{<0,0>,<1,2>},{<0,1>,<1,0>}}"),
    (["--map", "finq", "--params", "n=2", "1"], "{<0,1>,<1,1>}"),
    (["--map", "prod", "--params", "omega=3", "<1,0>"], "{<0,1>,<1,0>}"),
    (["--map", "j", "--params", "omega=2", "()"], "{u<1,0>}"),
])
def test_embed(capsys, argv, image):
    code, out, _ = run(capsys, "embed", *argv)
    assert code == 0 and out.strip() == image


def test_embed_missing_param(capsys):
    code, _, _ = run(capsys, "embed", "--map", "h", "[0]")
    assert code == 2


def test_barrier_star_and_power(capsys, tmp_path):
    block = tmp_path / "b.json"
    block.write_text(json.dumps({"base": 3, "maxlen": 2, "elements": [[0, 1], [0, 2], [1], [2]]}))
    code, rep = run_json(capsys, "barrier", "star", str(block))
    assert code == 0 and rep["B_star"]["elements"] == [[0, 1], [0, 2], [1, 2]]
    code, rep = run_json(capsys, "barrier", "power", "uniform:3:1", "--n", "2")
    assert code == 0
    assert rep["power"]["elements"] == [[0, 1], [0, 2], [1, 2]] and rep["is_block"]


def _array(tmp_path, values, target="tc:3"):
    p = tmp_path / "f.json"
    p.write_text(json.dumps({"block": {"base": 3, "maxlen": 1, "elements": [[0], [1], [2]]},
                             "target": target, "values": values}))
    return str(p)


def test_lift_and_badness(capsys, tmp_path):
    f = _array(tmp_path, {"0": "a:2", "1": "a:1", "2": "a:0"})
    code, rep = run_json(capsys, "lift", f, "--selector", "tc", "--depth", "3")
    assert code == 0 and rep["values"]["0,1"] == "a:1" and rep["values"]["0,1,2"] == "a:0"
    code, rep = run_json(capsys, "check", "badness", f, "--selector", "tc", "--depth", "3")
    assert code == 0 and rep["good_pairs"] == []


def test_badness_failure_exit_1(capsys, tmp_path):
    f = _array(tmp_path, {"0": "a:0", "1": "a:0", "2": "a:0"})
    code, rep = run_json(capsys, "check", "badness", f)
    assert code == 1 and rep["good_pairs"]


def test_search_bad_array(capsys):
    code, rep = run_json(capsys, "search", "bad-array", "--block", "uniform:4:2", "--target", "antichain:2")
    assert code == 0 and rep["exists"] and rep["nodes_expanded"] > 0 and "witness" in rep
    code, rep = run_json(capsys, "search", "bad-array", "--block", "uniform:5:2", "--target", "antichain:2",
                         "--count")
    assert rep["exists"] is False and rep["count"] == 0


def test_search_threshold(capsys):
    code, rep = run_json(capsys, "search", "threshold", "--arity", "1", "--target", "chain:3", "--max", "6")
    assert code == 0 and rep["threshold"] == 3 and rep["refuted_at"] == 4


def test_suite_list_and_run(capsys):
    code, out, _ = run(capsys, "suite", "list")
    assert code == 0 and "tc-chi" in out
    code, rep = run_json(capsys, "suite", "run", "tc-chi", "omega=3")
    assert code == 0 and rep["failure_count"] == 0 and rep["cases"] > 0


def test_unknown_suite(capsys):
    code, _, err = run(capsys, "suite", "run", "no-such-suite")
    assert code == 2 and "no-such-suite" in err
