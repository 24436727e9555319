import io
import subprocess
import sys

import pytest

from helpers import K_PATH, K_TEXT
from patternkit import cli, parse_transactions
from patternkit import context as core
from patternkit import ingest, itemsets, lattice, postprocess, rules


@pytest.fixture
def run(capsys, monkeypatch):
    def _run(*argv, stdin=""):
        monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(stdin.encode())))
        code = cli.run([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def data_lines(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


def test_itemsets_closed(run):
    code, out, err = run("itemsets", "--kind", "closed", "--minsupp", "2", K_PATH)
    assert code == 0 and err == ""
    assert data_lines(out) == ["{c} (4)", "{a, c} (3)", "{b, e} (4)", "{c, b, e} (3)", "{a, c, b, e} (2)"]
    assert out.splitlines()[0] == "# itemsets kind=closed minsupp=2 objects=5 items=5"


def test_percentage_threshold(run):
    assert run("itemsets", "--minsupp", "40%", K_PATH)[1] == run("itemsets", "--minsupp", "2", K_PATH)[1]
    assert run("itemsets", "--minsupp", "40%", stdin=K_TEXT)[1] == run("itemsets", "--minsupp", "2", K_PATH)[1]


@pytest.mark.parametrize("bad", ["0", "-1", "0%", "101%", "abc", "2.5"])
def test_bad_threshold_is_usage_error(run, bad):
    code, out, err = run("itemsets", "--minsupp", bad, K_PATH)
    assert code == 2 and out == ""
    assert "minsupp" in err


def test_threshold_resolution():
    assert cli.Threshold("40%").resolve(5) == 2
    assert cli.Threshold("1%").resolve(5) == 1
    assert cli.Threshold("100%").resolve(0) == 1
    assert cli.Threshold("3").resolve(5) == 3


def test_usage_errors(run):
    assert run("frobnicate")[0] == 2
    assert run("itemsets", "--bogus", K_PATH)[0] == 2
    assert run()[0] == 2
    code, _, err = run("rules", "--minconf", "1.5", K_PATH)
    assert code == 2 and "confidence" in err


def test_data_errors(run, tmp_path):
    code, out, err = run("itemsets", "-s", "1", "--format", "matrix", stdin="a b\n1 2\n")
    assert code == 1 and out == ""
    assert "line 2" in err
    assert run("itemsets", "-s", "1", tmp_path / "missing.txt")[0] == 1
    assert run("filter", stdin="{a} (1)\n")[0] == 1
    assert run("filter", "--require", "zz", stdin=run("rules", K_PATH)[1])[0] == 1


def test_rules_dg_single_object(run):
    code, out, _ = run("rules", "--basis", "dg", stdin="a b\n")
    assert code == 0
    assert len(data_lines(out)) == 1
    assert data_lines(out)[0].startswith("{} => {a, b} (")


def test_rules_measures_line(run):
    out = run("rules", "--basis", "all", "-s", "1", "-c", "0.5", K_PATH)[1]
    assert "{c} => {a} (supp=3 [0.600]; conf=0.750; lift=1.250; conv=1.600)" in out.splitlines()
    assert "{b} => {e} (supp=4 [0.800]; conf=1.000; lift=1.250; conv=inf)" in out.splitlines()


def test_filter_pipeline(run):
    listing = run("rules", "--basis", "mnr", "-s", "2", "-c", "1", K_PATH)[1]
    code, out, _ = run("filter", "--require", "e", stdin=listing)
    assert code == 0
    got = {line.split(" (")[0] for line in data_lines(out)}
    assert got == {
        "{b} => {e}", "{e} => {b}", "{c, b} => {e}", "{c, e} => {b}", "{a, b} => {c, e}", "{a, e} => {c, b}",
    }
    short = run("filter", "--max-antecedent", "1", stdin=listing)[1]
    assert len(data_lines(short)) == 3


def test_topk_and_colorize(run):
    freq = run("itemsets", "-s", "2", K_PATH)[1]
    assert data_lines(run("topk", "--measure", "support", "--k", "3", stdin=freq)[1]) == ["{c} (4)", "{b} (4)", "{e} (4)"]
    assert run("topk", "--measure", "lift", "--k", "3", stdin=freq)[0] == 1
    listing = run("rules", "--basis", "mnr", "-s", "2", "-c", "1", K_PATH)[1]
    marked = run("colorize", "--items", "e", "--mode", "markers", stdin=listing)[1]
    assert "{b} => {[*e*]} (" in marked
    assert postprocess.strip_highlights(marked) == listing


def test_no_color(run, monkeypatch):
    listing = run("rules", "--basis", "mnr", "-s", "2", "-c", "1", K_PATH)[1]
    assert "\x1b[" in run("colorize", "--items", "e", "--mode", "terminal", stdin=listing)[1]
    monkeypatch.setenv("NO_COLOR", "1")
    assert run("colorize", "--items", "e", "--mode", "terminal", stdin=listing)[1] == listing


def test_context_commands(run, tmp_path):
    matrix = run("convert", "--from", "transactions", "--to", "matrix", K_PATH)[1]
    assert ingest.parse_matrix(matrix) == parse_transactions(K_TEXT)
    back = run("convert", "--from", "matrix", "--to", "transactions", stdin=matrix)[1]
    assert parse_transactions(back) == parse_transactions(K_TEXT)
    t = run("transpose", K_PATH)[1]
    assert parse_transactions(t).item_names == ("o1", "o2", "o3", "o4", "o5")
    c = run("complement", "--to", "matrix", K_PATH)[1]
    assert ingest.parse_matrix(c) == ingest.complement(parse_transactions(K_TEXT))
    out_file = tmp_path / "r.txt"
    assert run("randgen", "--objects", "3", "--items", "2", "--seed", "5", "-o", out_file)[0] == 0
    assert out_file.read_text() == ingest.serialize(ingest.random_context(3, 2, 0.5, 5))
    d = run("discretize", "--method", "equal-width", "--bins", "2", stdin="x\n1\n2\n3\n4\n")[1]
    assert d.splitlines()[-1] == "x∈[2.5;4]"


def test_galois(run):
    out = run("galois", "--items", "a,b", K_PATH)[1]
    assert out == "extent {3, 5}\nclosure {a, c, b, e}\nsupport 2\n"
    assert run("galois", "--objects", "3,5", K_PATH)[1] == "intent {a, c, b, e}\n"
    assert run("galois", "--items", "zz", K_PATH)[0] == 1
    assert run("galois", "--objects", "9", K_PATH)[0] == 1


def test_eqclasses_and_lattice(run):
    out = run("eqclasses", "-s", "2", K_PATH)[1]
    assert "{b, e} <- [{b}, {e}] (4)" in out.splitlines()
    assert len(data_lines(out)) == 6
    dot = run("lattice", "--dot", K_PATH)[1]
    assert dot.count("[label=") == 8 and dot.count("->") == 10
    text = run("lattice", K_PATH)[1]
    assert sum(line.startswith("concept ") for line in text.splitlines()) == 8


def test_every_operation_maps_to_one_subcommand():
    modules = (core, ingest, itemsets, rules, lattice, postprocess)
    subcommands = set(cli.build_parser()._subparsers._group_actions[0].choices)
    for op, command in cli.OPERATIONS.items():
        assert any(hasattr(m, op) for m in modules), op
        assert command in subcommands
    assert set(cli.OPERATIONS.values()) == subcommands
    expected = {
        "convert", "transpose", "complement", "discretize", "randgen", "itemsets",
        "eqclasses", "rules", "lattice", "filter", "topk", "colorize",
    }
    assert expected <= subcommands


def test_help_documents_formats(run):
    for command in ("itemsets", "rules", "filter"):
        code, out, _ = run(command, "--help")
        assert code == 0 and "look like" in out


def _sh(cmd, **kw):
    return subprocess.run(cmd, shell=True, capture_output=True, text=True, **kw)


def test_shell_pipeline():
    exe = f"{sys.executable} -m patternkit"
    res = _sh(
        f"{exe} randgen --objects 20 --items 6 --density 0.5 --seed 42 "
        f"| {exe} itemsets --kind frequent --minsupp 30% | {exe} topk --measure support --k 5"
    )
    assert res.returncode == 0, res.stderr
    assert len(data_lines(res.stdout)) == 5


def test_truncated_stream_reports_line():
    exe = f"{sys.executable} -m patternkit"
    res = _sh(f"{exe} rules -s 1 -c 0.5 {K_PATH} | head -c 200 | {exe} filter --require e")
    assert res.returncode == 1
    assert "line" in res.stderr
