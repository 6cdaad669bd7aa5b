import json
import subprocess
import sys
from pathlib import Path

import pytest

from acunify.cli import Limits, generate, main, solve
from acunify.oracles import lcs_brute
from acunify.problem import ProblemError, format_problem, parse_problem
from acunify.reductions import LcsInstance

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(tmp_path, capsys, text, *flags):
    path = tmp_path / "p.txt"
    path.write_text(text)
    code = main(["run", str(path), "--json", *flags])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_comm_equal(tmp_path, capsys):
    code, report, _ = run(tmp_path, capsys, "theory f comm\nmode equal\nt1: f(a,b)\nt2: f(b,a)\n")
    assert code == 0 and report["result"] is True
    assert set(report["stats"]) == {"node_pairs", "table_cells", "enumerated", "elapsed_ms"}


def test_three_strings_unify(tmp_path, capsys):
    text = "vars x y z\nmode unify\ns1: a b c x b c x\ns2: a b y d b z d\n"
    code, report, _ = run(tmp_path, capsys, text)
    assert code == 0
    assert report["substitution"] == {"x": "d", "y": "c", "z": "c"}


def test_occurs_check_exit_code(tmp_path, capsys):
    text = "vars x w\nt1: f(g(a,b,a),f(x,x))\nt2: f(g(a,b,a),f(w,f(w,w)))\n"
    code, report, _ = run(tmp_path, capsys, text)
    assert code == 1 and report["result"] is False


def test_string_distance(tmp_path, capsys):
    code, report, _ = run(tmp_path, capsys,
                          "mode string-distance\ns1: b c d f e\ns2: a b g d e\n")
    assert code == 0 and report["result"] == 3 and report["algorithm"] == "levenshtein"


def test_string_distance_enumerates(tmp_path, capsys):
    text = "vars x y\nmode string-distance\nalphabet a b c\ns1: x y x\ns2: a b c\n"
    code, report, _ = run(tmp_path, capsys, text)
    assert report["result"] == 1 and report["stats"]["enumerated"] == 9


def test_budget_error_names_flag(tmp_path, capsys):
    text = "vars x y\nmode string-distance\nalphabet a b c\ns1: x y x\ns2: a b c\n"
    code, report, err = run(tmp_path, capsys, text, "--budget", "5")
    assert code == 2 and report is None
    assert "--budget" in err and "budget=5" in err


def test_k_bound_error(tmp_path, capsys):
    text = "theory f comm\nvars x y\nt1: f(x,a)\nt2: f(y,b)\n"
    code, _, err = run(tmp_path, capsys, text, "--k-bound", "1")
    assert code == 2 and "--k-bound" in err


def test_parse_error_has_position(tmp_path, capsys):
    code, _, err = run(tmp_path, capsys, "mode equal\nt1: f(a,\nt2: a\n")
    assert code == 2
    assert ":2:" in err


def test_unknown_directive(tmp_path, capsys):
    code, _, err = run(tmp_path, capsys, "colour blue\nt1: a\nt2: a\n")
    assert code == 2 and ":1:1:" in err


def test_missing_file(capsys):
    assert main(["run", "/nonexistent/problem.txt"]) == 2


def test_brute_fallback_warns(tmp_path, capsys):
    text = "theory f assoc\nvars x y\nt1: f(x,x)\nt2: f(y,a)\n"
    code, report, err = run(tmp_path, capsys, text)
    assert report["algorithm"] == "brute" and report["warnings"]
    assert "warning" in err


def test_forced_algorithm(tmp_path, capsys):
    text = "theory f assoc\nvars x\nt1: f(x,c)\nt2: f(a,f(b,c))\n"
    _, do, _ = run(tmp_path, capsys, text, "--algorithm", "do")
    _, brute, _ = run(tmp_path, capsys, text, "--algorithm", "brute")
    assert do["algorithm"] == "assoc-do" and brute["algorithm"] == "brute"
    assert do["result"] is brute["result"] is True
    assert brute["substitution"] == {"x": "f(a,b)"}


def test_tree_distance_with_variables(tmp_path, capsys):
    text = "arity g 1\nvars x y\nmode tree-distance\nt1: f(x,y)\nt2: g(a)\n"
    code, report, _ = run(tmp_path, capsys, text)
    assert report["result"] == 2 and report["algorithm"] == "tree-edit-do"


@pytest.mark.parametrize("name", sorted(p.name for p in PROBLEMS.glob("*.txt")))
def test_sample_problems_run(name, capsys):
    code = main(["run", str(PROBLEMS / name), "--json"])
    out = capsys.readouterr().out
    assert code in (0, 1)
    assert "result" in json.loads(out)


def test_alphabet_may_hold_hash():
    p = parse_problem("vars x\nmode string-distance\nalphabet: a # b\ns1: x\ns2: #\n")
    assert p.alphabet == ["a", "#", "b"]


def test_match_mode_needs_ground_right():
    with pytest.raises(ProblemError, match="variable-free"):
        parse_problem("vars x\nmode match\nt1: f(x)\nt2: f(x)\n")


def test_format_problem_round_trips():
    p = parse_problem("theory f ac\narity g 1\nvars x\nmode match\nt1: f(x,g(a))\nt2: f(b,g(a))\n")
    text = format_problem(p.lhs, p.rhs, mode="match", theories={"f": "ac"})
    q = parse_problem(text)
    assert (q.lhs, q.rhs, q.mode) == (p.lhs, p.rhs, p.mode)


@pytest.mark.parametrize("kind", ["lcs-string", "lcs-string-b3", "lcs-assoc", "lcs-ac"])
def test_generated_files_solve_to_the_recorded_truth(kind):
    inst = LcsInstance.of(["ab", "ba"], 1)
    text = generate(kind, inst)
    assert f"# lcs_brute: {str(lcs_brute(inst.strings, inst.l)).lower()}" in text
    report = solve(parse_problem(text), "auto", Limits())
    if kind.startswith("lcs-string"):
        target = int(text.split("# target: ")[1].split()[0])
        assert report.result == target
    else:
        assert report.result is True


def test_gen_writes_assoc_instance(tmp_path, capsys):
    out = tmp_path / "assoc.txt"
    assert main(["gen", "lcs-assoc", "--strings", "aab,aba", "--l", "2", "-o", str(out)]) == 0
    text = out.read_text()
    assert "theory f assoc" in text and "lcs_brute: true" in text
    assert main(["run", str(out)]) == 0


def test_gen_single_letter(capsys):
    assert main(["gen", "lcs-string", "--strings", "a", "--l", "1"]) == 0
    out = capsys.readouterr().out
    assert "s1: x1\n" in out and "s2: a\n" in out and "target: 0" in out


def test_gen_ac_is_seedable(capsys):
    main(["gen", "lcs-ac", "--seed", "5"])
    first = capsys.readouterr().out
    main(["gen", "lcs-ac", "--seed", "5"])
    assert capsys.readouterr().out == first


def test_bench_quick_csv(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--quick", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("algorithm,param")
    assert any(line.startswith("commut_unify,") for line in lines)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "acunify.cli", "run",
                           str(PROBLEMS / "comm_equal.txt")], capture_output=True, text=True)
    assert proc.returncode == 0 and "result: true" in proc.stdout
