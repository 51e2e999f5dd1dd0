import json
import subprocess
import sys
from io import StringIO

import pytest

from l1vanish import cli, io
from l1vanish.decision import example_paper, gen_odd_vanishing


def write(path, f):
    path.write_text(io.dumps(io.encode_function(f)), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def example2(tmp_path):
    return write(tmp_path / "example2.json", example_paper(2))


def test_check_vanishing(capsys, example2):
    code, out, _ = run(capsys, "check", example2)
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    assert doc["vanishes"] is True and doc["v"] == 1
    assert doc["even"]["coefficients"] == [{"d": 2, "c": 1, "value": "2"}]


def test_check_divergent(capsys, tmp_path):
    path = tmp_path / "ones.json"
    path.write_text('{"v": 1, "q": 3, "values": ["1", "1", "1"]}')
    code, out, err = run(capsys, "check", str(path))
    assert code == cli.EXIT_DIVERGENT
    assert "series diverges" in err and out == ""


def test_check_truncated_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"v": 1, "q": 3, "values": ["1",')
    code, _, err = run(capsys, "check", str(path))
    assert code == cli.EXIT_INPUT and "line 1" in err


def test_check_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "check", str(tmp_path / "nope.json"))
    assert code == cli.EXIT_INPUT


def test_check_flags(capsys, example2):
    code, out, _ = run(capsys, "check", example2, "--no-numeric")
    assert code == 0 and json.loads(out)["numeric"] == []
    code, out, _ = run(capsys, "check", example2, "--route", "split", "--route", "partial", "--bits", "128")
    routes = json.loads(out)["numeric"]
    assert [r["route"] for r in routes] == ["split", "partial"]
    assert all(r["precision_bits"] == 128 for r in routes)
    code, _, err = run(capsys, "check", example2, "--bits", "32")
    assert code == cli.EXIT_INPUT


def test_check_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", StringIO(io.dumps(io.encode_function(example_paper(3)))))
    code, out, _ = run(capsys, "check", "-")
    assert code == 0 and json.loads(out)["vanishes"] is True


def test_generate_example_family(capsys):
    code, out, _ = run(capsys, "generate", "paper-example", "--p", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["q"] == 9 and len(doc["values"]) == 9
    assert doc["values"][2] == "-5" and doc["values"][8] == "4"


def test_generate_character(capsys):
    code, out, _ = run(capsys, "generate", "character", "--q", "5")
    assert json.loads(out)["values"] == ["1", "-1", "-1", "1", "0"]


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "even-vanishing", "--q", "5"],
        ["generate", "odd-vanishing", "--q", "4"],
        ["generate", "character", "--q", "9"],
        ["generate", "paper-example", "--p", "6"],
        ["generate", "even-vanishing"],
    ],
)
def test_generate_invalid_parameters(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == cli.EXIT_GENERATOR and out == "" and err.startswith("error:")


def test_generate_even_prime_message(capsys):
    _, _, err = run(capsys, "generate", "even-vanishing", "--q", "7")
    assert "no divisor" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "even-vanishing", "--q", "12", "--seed", "3", "--self-check"],
        ["generate", "odd-vanishing", "--q", "9", "--seed", "1", "--conductor", "4", "--self-check"],
        ["generate", "character", "--q", "7", "--self-check"],
        ["generate", "paper-example", "--p", "5", "--self-check"],
    ],
)
def test_generate_self_check(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)["v"] == 1


def test_blocks_and_relations(capsys):
    code, out, _ = run(capsys, "blocks", "4")
    doc = json.loads(out)
    assert [(b["d"], b["c"], b["values"]) for b in doc["blocks"]] == [(2, 1, ["1/2", "-1/2", "1/2", "0"])]
    assert doc["blocks"][0]["verified"] is True
    _, out, _ = run(capsys, "blocks", "5")
    assert json.loads(out)["blocks"] == []
    _, out, _ = run(capsys, "blocks", "12")
    blocks = json.loads(out)["blocks"]
    assert len(blocks) == 11 and all(b["verified"] for b in blocks)
    _, out, _ = run(capsys, "relations", "5")
    rels = json.loads(out)["relations"]
    assert [r["kind"] for r in rels] == ["R1", "R1"] and all(r["verified"] for r in rels)
    _, out, _ = run(capsys, "relations", "4")
    assert [r["coeffs"] for r in json.loads(out)["relations"]] == [[1, 0, -1], [-1, 1, -1]]
    assert run(capsys, "blocks", "1")[0] == cli.EXIT_INPUT


def test_fourier_decompose_eval(capsys, tmp_path, example2):
    _, out, _ = run(capsys, "fourier", example2)
    doc = json.loads(out)
    assert doc["kind"] == "spectral"
    assert io.parse_function(doc) == io.parse_function(
        {"kind": "spectral", "q": 4, "values": ["1", "-1", "1", "0"]}
    )
    odd = write(tmp_path / "odd.json", gen_odd_vanishing(7, 2))
    _, out, _ = run(capsys, "decompose", odd)
    parts = json.loads(out)
    assert all(v == "0" for v in parts["even"]["values"])
    code, out, _ = run(capsys, "eval", example2, "--route", "fourier", "--route", "split")
    assert code == 0 and len(json.loads(out)["numeric"]) == 2
    ones = tmp_path / "ones.json"
    ones.write_text('{"q": 2, "values": ["1", "1"]}')
    assert run(capsys, "eval", str(ones))[0] == cli.EXIT_DIVERGENT


def test_output_is_deterministic(tmp_path):
    exe = [sys.executable, "-m", "l1vanish.cli"]
    gen = subprocess.run(exe + ["generate", "odd-vanishing", "--q", "11", "--seed", "5"], capture_output=True)
    path = tmp_path / "f.json"
    path.write_bytes(gen.stdout)
    outs = [subprocess.run(exe + ["check", str(path), "--route", "split"], capture_output=True) for _ in range(2)]
    assert outs[0].returncode == 0
    assert outs[0].stdout == outs[1].stdout
    again = subprocess.run(exe + ["generate", "odd-vanishing", "--q", "11", "--seed", "5"], capture_output=True)
    assert again.stdout == gen.stdout


def test_batch_mode(capsys, tmp_path):
    src = tmp_path / "in"
    src.mkdir()
    write(src / "a.json", example_paper(2))
    write(src / "b.json", io.parse_function({"q": 4, "values": ["1", "0", "-1", "0"]}))
    (src / "c.json").write_text('{"q": 3, "values": ["1", "1", "1"]}')
    out_dir = tmp_path / "out"
    code, out, _ = run(capsys, "check", str(src), "--jobs", "2", "--out", str(out_dir))
    doc = json.loads(out)
    assert doc["summary"] == {"files": 3, "vanishing": 1, "nonvanishing": 1, "divergent": 1, "errors": 0}
    assert [r["file"] for r in doc["results"]] == ["a.json", "b.json", "c.json"]
    assert code == cli.EXIT_DIVERGENT
    assert sorted(p.name for p in out_dir.iterdir()) == ["a.verdict.json", "b.verdict.json", "c.verdict.json"]
    (src / "d.json").write_text("{")
    code, out, _ = run(capsys, "check", str(src), "--jobs", "1")
    assert code == cli.EXIT_INPUT and json.loads(out)["summary"]["errors"] == 1


def test_batch_order_independent_of_jobs(capsys, tmp_path):
    for k in range(4):
        write(tmp_path / f"f{k}.json", gen_odd_vanishing(5 + k, k))
    outs = [run(capsys, "check", str(tmp_path), "--jobs", str(j))[1] for j in (1, 3)]
    assert outs[0] == outs[1]


def test_precision_env_var(monkeypatch, capsys, example2):
    monkeypatch.setenv(cli.BITS_ENV, "160")
    _, out, _ = run(capsys, "check", example2)
    assert json.loads(out)["numeric"][0]["precision_bits"] == 160
