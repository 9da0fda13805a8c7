import json
import subprocess
import sys

import pytest

from schursim.cli import run

LABEL = '{"n":3,"path":["1","1/2"],"M":"-1/2"}'
CIRCUIT = {"n": 3, "source": json.loads(LABEL), "pi": [0, 2, 1], "lambda": None,
           "target": {"n": 3, "path": ["0", "1/2"], "M": "-1/2"}}


def cli(*args):
    return subprocess.run([sys.executable, "-m", "schursim", *args],
                          capture_output=True, text=True)


def test_overlap_json(capsys):
    assert run(["overlap", "--label", LABEL, "--y", "001"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["square"] == "2/3" and rec["sign"] == 1
    assert (rec["s"], rec["q"]) == ("1/3", "6")


def test_overlap_high_precision(capsys):
    assert run(["overlap", "--label", LABEL, "--y", "010", "--float", "--bits", "200"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["value"].startswith("-0.408248290463863016366214012450981")


def test_marginal(capsys):
    assert run(["marginal", "--label", LABEL, "--suffix", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["exact"] == "2/3"


def test_sample_lines():
    out = cli("sample", "--label", '{"n":3,"path":["1","3/2"],"M":"3/2"}',
              "--count", "3", "--seed", "7", "--format", "lines")
    assert out.returncode == 0 and out.stdout == "111\n111\n111\n"
    assert json.loads(out.stderr)["seed"] == 7


def test_outputs_are_byte_identical(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(CIRCUIT))
    for args in (["sample", "--label", LABEL, "--count", "50", "--seed", "3"],
                 ["estimate", "--circuit", str(path), "--epsilon", "0.2", "--delta", "0.1",
                  "--seed", "9"],
                 ["--format", "csv", "basis", "--n", "4", "--list"]):
        first, second = cli(*args), cli(*args)
        assert first.returncode == 0 and first.stdout == second.stdout


def test_exact_and_yor(capsys):
    assert run(["exact", "--circuit", json.dumps(CIRCUIT)]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["re_exact"] == "1/2*sqrt(3)"
    assert run(["yor", "--n", "3", "--J", "1/2", "--k", "1"]) == 0
    rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [(r["row"], r["col"], r["s"], r["q"]) for r in rows] == [
        (0, 0, "1/2", "1"), (0, 1, "1/2", "3"), (1, 0, "1/2", "3"), (1, 1, "-1/2", "1")]


def test_basis_count(capsys):
    assert run(["basis", "--n", "6", "--J", "1", "--count"]) == 0
    assert json.loads(capsys.readouterr().out) == {"n": 6, "J": "1", "paths": 9, "labels": 27}


@pytest.mark.parametrize("args,code", [
    (["bogus"], 2),
    (["overlap", "--label", "{not json", "--y", "001"], 2),
    (["overlap", "--label", '{"path":["1/2","1"],"M":"1/2"}', "--y", "001"], 3),
    (["overlap", "--label", LABEL, "--y", "01"], 3),
    (["estimate", "--circuit", json.dumps(CIRCUIT), "--epsilon", "0", "--delta", "0.1",
      "--seed", "1"], 3),
    (["sample", "--label", LABEL, "--count", "1", "--seed", "-4"], 2),
    (["basis", "--n", "40", "--list"], 4),
])
def test_exit_codes(args, code, capsys):
    assert run(args) == code
    assert capsys.readouterr().err
