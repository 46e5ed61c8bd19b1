import json
import shutil
import subprocess

import pytest

from episturmian.cli import EXIT_OK, EXIT_THEORY, EXIT_USAGE, SCHEMA_VERSION, main

from conftest import ABB_ACB, ABB_ACB_RETURNS, ABB_CLASS

ABB_CLASS_INPUT = "a->ababa,b->ababac,c->ab"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["schema"] == SCHEMA_VERSION
    return data


def test_class_table(capsys):
    code, out, _ = run(capsys, "class", ABB_CLASS_INPUT, "--format", "tsv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "morphism\tpal_prefix\tindex"
    assert [tuple(line.split("\t")) for line in lines[1:]] == [
        (m, p or "-", str(i)) for m, p, i in ABB_CLASS
    ]


def test_class_json(capsys):
    data = run_json(capsys, "class", ABB_CLASS_INPUT)
    assert [m["pal_prefix"] for m in data["members"]] == ["", "a", "ab", "aba", "abab", "ababa"]


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", ABB_CLASS_INPUT)
    assert code == EXIT_OK and out.strip() == "psi_abb o (b c)"
    data = run_json(capsys, "decompose", "a->ab,b->ba")
    assert data["episturmian"] is False


def test_index(capsys):
    data = run_json(capsys, "index", ABB_CLASS[3][0])
    assert data["index"] == 3 and data["w"] == "aba" and data["a_min"] == "c"


def test_pal_and_inverse(capsys):
    code, out, _ = run(capsys, "pal", "abc")
    assert out.strip() == "abacaba"
    code, out, _ = run(capsys, "pal-inverse", "abacaba")
    assert out.strip() == "abc"
    code, _, err = run(capsys, "pal-inverse", "abba")
    assert code == EXIT_USAGE and "error" in err


def test_standard_tree_dot(capsys):
    code, out, _ = run(capsys, "standard-tree", "--depth", "1", "--format", "dot")
    assert code == EXIT_OK and out.startswith("digraph standard_tree")
    assert out.count("->") == 3


def test_language(capsys):
    data = run_json(capsys, "language", "a->ab,b->a", "--n", "3")
    assert data["factors"] == ["aab", "aba", "baa", "bab"]


def test_rauzy_dot_tetrabonacci(capsys):
    code, out, _ = run(capsys, "rauzy", "a->ab,b->ac,c->ad,d->a", "--n", "4", "--format", "dot")
    assert code == EXIT_OK
    assert out.count("->") == 16 and out.count("style=bold") == 4 + 3


def test_rauzy_annotations(capsys):
    data = run_json(capsys, "rauzy", ABB_ACB, "--n", "8", "--annotate-dl")
    assert data["dl"]["acababac"] == {"d": "abbcaabc", "ell": 56}
    assert data["dl"]["ababacab"] == {"d": "abbc", "ell": 0}


def test_returns_both_methods(capsys):
    code, out, _ = run(capsys, "returns", ABB_ACB, "acababab", "--method", "both")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "MATCH"
    lefts = [line.split("\t")[1] for line in out.splitlines() if line.startswith("left\t")]
    assert lefts == list(ABB_ACB_RETURNS) * 2


def test_returns_json_sides(capsys):
    data = run_json(capsys, "returns", "a->ab,b->a", "a", "--side", "right")
    assert data["results"][0]["right_returns"] == ["a", "ba"]
    assert "left_returns" not in data["results"][0]


def test_check_p_negative_verdict_exits_zero(capsys):
    code, out, _ = run(capsys, "check-p", "a->ab,b->a", "b")
    assert code == EXIT_OK
    assert "P\tfails" in out
    data = run_json(capsys, "check-p", "a->ab,b->a", "a", "--cross-check", "oracle")
    assert data["holds_P"] is True


def test_obstructions(capsys):
    data = run_json(capsys, "obstructions", "a->ab,b->ac,c->a", "--n-max", "8")
    assert data["onset"] == 0
    assert all(not t["holds_P"] for t in data["tested"])


def test_morphism_from_file(capsys, tmp_path):
    path = tmp_path / "sigma.txt"
    path.write_text(ABB_CLASS_INPUT + "\n")
    code, out, _ = run(capsys, "decompose", "--file", str(path))
    assert code == EXIT_OK and out.strip() == "psi_abb o (b c)"
    code, _, err = run(capsys, "decompose", ABB_CLASS_INPUT, "--file", str(path))
    assert code == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["class", "a->ab,b"],
    ["returns", "a->ab,b->a", "bb"],
    ["check-p", "a->ab,b->ac,c->ab", "a"],
    ["decompose"],
    ["index", "a->b,b->a"],
])
def test_usage_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == EXIT_USAGE


def test_theory_violation_exit_code(capsys, monkeypatch):
    from episturmian import preservation

    def boom(*args, **kwargs):
        raise preservation.TheoryViolation("forced")

    monkeypatch.setattr(preservation, "check_preservation", boom)
    code, _, err = run(capsys, "check-p", "a->ab,b->a", "a")
    assert code == EXIT_THEORY and "theory violation" in err


def test_output_is_deterministic(capsys):
    argv = ["rauzy", ABB_ACB, "--n", "8", "--annotate-dl", "--format", "dot"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_report_writes_files(capsys, tmp_path):
    code, out, _ = run(capsys, "report", "a->ab,b->ac,c->a", "--out", str(tmp_path), "--n-max", "8")
    assert code == EXIT_OK
    names = {p.name for p in tmp_path.iterdir()}
    assert {"class.tsv", "class.png", "complexity.png", "complexity.tsv",
            "obstructions.png", "obstructions.tsv", "rauzy_8.dot", "rauzy_8.tsv"} <= names
    assert (tmp_path / "class.png").read_bytes()[:4] == b"\x89PNG"
    assert (tmp_path / "complexity.tsv").read_text().splitlines()[1] == "1\t3"


@pytest.mark.skipif(shutil.which("episturmian") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["episturmian", "pal", "abb"], capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "ababa"
