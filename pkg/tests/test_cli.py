import io
import json
from fractions import Fraction

import pytest

from hgmoduli import cli
from hgmoduli.cache import CACHE_VERSION, load_store
from hgmoduli.errors import InternalInconsistency
from hgmoduli.exactring import LPoly, parse_lpoly
from hgmoduli.symq import parse_terms


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def compute(r, k, n, d, *extra):
    return run("compute", "--r", str(r), "--k", str(k), "--n", str(n), "--d", str(d), *extra)


def rat(obj):
    return Fraction(int(obj["num"]), int(obj["den"]))


def test_compute_text_conics():
    code, text = compute(1, 3, 0, 2)
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "dimension: 5"
    assert "b: 1 0 2 0 3 0 3 0 2 0 1" in lines
    assert "E: t^5u^5 + 2t^4u^4 + 3t^3u^3 + 3t^2u^2 + 2tu + 1" in lines
    assert "euler: 12" in lines


def test_compute_betti_only():
    code, text = compute(2, 4, 0, 2, "--output", "betti")
    assert text == "b: 1 0 3 0 7 0 11 0 14 0 14 0 11 0 7 0 3 0 1\n"


def test_compute_h_basis():
    code, text = compute(2, 4, 1, 2, "--output", "class", "--basis", "h")
    assert text.startswith("class: (L^10+4L^9+12L^8+")
    assert text.splitlines()[0].endswith(") h1")


def test_tables():
    assert run("quot", "--r", "1", "--k", "2", "--delta", "1") == (0, "1 1 1 1\n")
    assert run("mor", "--r", "1", "--k", "2", "--d", "1") == (0, "L^3 - L\n")
    code, text = run("config", "--n", "2")
    assert text == "p: (L^2+L)/2 p1^2 + (L^2-L)/2 p2\nh: L h1^2 + (L^2-L) h2\n"


def test_table_json():
    code, text = run("quot", "--r", "2", "--k", "4", "--delta", "0", "--format", "json")
    assert json.loads(text)["counts"] == [1, 1, 2, 1, 1]
    code, text = run("mor", "--r", "1", "--k", "2", "--d", "1", "--format", "json")
    assert [rat(c) for c in json.loads(text)["poly"]] == [0, -1, 0, 1]


def test_json_is_canonical():
    code, text = compute(2, 4, 1, 1, "--format", "json")
    doc = json.loads(text)
    assert text == json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    assert set(doc) == {"betti", "class", "d", "dimension", "epoly", "euler", "k", "n", "poincare", "r", "rank"}


@pytest.mark.parametrize("basis", ["p", "h"])
@pytest.mark.parametrize("rknd", [(2, 4, 1, 1), (1, 3, 2, 1), (1, 2, 3, 1), (2, 4, 0, 2)])
def test_text_and_json_agree(basis, rknd):
    _, text = compute(*rknd, "--basis", basis)
    _, js = compute(*rknd, "--basis", basis, "--format", "json")
    doc = json.loads(js)
    fields = dict(line.split(": ", 1) for line in text.splitlines())
    assert int(fields["dimension"]) == doc["dimension"]
    assert [int(b) for b in fields["b"].split()] == doc["betti"]
    assert int(fields["euler"]) == doc["euler"]
    assert parse_lpoly(fields["rank"]) == LPoly([rat(c) for c in doc["rank"]])
    letter, terms = parse_terms(fields["class"])
    # a constant class (n = 0) carries no basis letter
    assert letter == (basis if rknd[2] else None)
    assert terms == {tuple(t["partition"]): LPoly([rat(c) for c in t["coeff"]])
                     for t in doc["class"]["terms"]}


def test_empty_space():
    code, text = compute(2, 4, 1, 0)
    assert code == 0
    assert text.splitlines()[0] == "dimension: empty"
    assert "euler: 0" in text


@pytest.mark.parametrize("argv", [
    ["compute", "--r", "4", "--k", "4", "--n", "0", "--d", "0"],
    ["compute", "--r", "1", "--k", "3", "--n", "-1", "--d", "0"],
    ["compute", "--r", "x", "--k", "3", "--n", "0", "--d", "0"],
    ["compute", "--r", "1"],
    ["config", "--n", "-2"],
    ["nonsense"],
    [],
])
def test_bad_arguments_exit_1(argv, capsys):
    try:
        code, _ = run(*argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_internal_failure_exit_2(monkeypatch):
    def boom(*args):
        raise InternalInconsistency("forced")

    monkeypatch.setattr(cli, "hodge_report", boom)
    code, _ = compute(2, 4, 0, 1)
    assert code == 2


def test_cache_round_trip(tmp_path):
    path = tmp_path / "c.json"
    code, cold = compute(2, 4, 0, 2, "--cache", str(path))
    first = path.read_bytes()
    doc = json.loads(first)
    assert doc["version"] == CACHE_VERSION
    assert "2:4:M_BAR:0:2" in doc["entries"]
    code, warm = compute(2, 4, 0, 2, "--cache", str(path))
    assert warm == cold
    assert path.read_bytes() == first
    _, fresh = compute(2, 4, 0, 2, "--no-cache")
    assert fresh == cold
    # rewriting from a reloaded store gives the same bytes
    store = load_store(str(path))
    store.dirty = True
    cli._close_store(store, str(path))
    assert path.read_bytes() == first


def test_env_var_sets_cache_path(tmp_path, monkeypatch):
    path = tmp_path / "env.json"
    monkeypatch.setenv("HG_MODULI_CACHE", str(path))
    compute(1, 2, 0, 1)
    assert path.exists()
    assert run("cache", "path") == (0, f"{path}\n")


def test_corrupt_cache_exit_3(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _ = compute(1, 2, 0, 1, "--cache", str(path))
    assert code == 3
    code, _ = run("selfcheck", "--cache", str(path))
    assert code == 3
    path.write_text('{"version": "1", "entries": {"1:2:NOPE:0:0": {}}}')
    assert compute(1, 2, 0, 1, "--cache", str(path))[0] == 3


def test_version_mismatch_is_ignored(tmp_path):
    path = tmp_path / "old.json"
    path.write_text('{"version": "0", "entries": {"garbage": 1}}')
    code, text = compute(1, 2, 0, 2, "--cache", str(path))
    assert code == 0
    assert "rank: L^2 + L + 1" in text
    assert json.loads(path.read_text())["version"] == CACHE_VERSION


def test_cache_subcommand(tmp_path):
    path = tmp_path / "c.json"
    compute(1, 2, 0, 1, "--cache", str(path))
    code, text = run("cache", "info", "--cache", str(path))
    assert code == 0 and text.startswith(f"{path}: ") and "entries" in text
    assert run("cache", "clear", "--cache", str(path))[0] == 0
    assert not path.exists()
