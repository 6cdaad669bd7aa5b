"""Command-line front end: ``acunify run | gen | bench``."""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field

from . import oracles
from .ac import ac_equal_ground, ac_unify_do
from .assoc import assoc_equal_ground, assoc_match_bounded_nondo, assoc_unify_do
from .commut import commut_equal_ground, commut_match, commut_unify
from .counters import Stats
from .edit import (DEFAULT_BUDGET, string_edit_distance, string_edit_distance_do,
                   string_edit_distance_vars, string_unifier, tree_edit_distance,
                   tree_edit_distance_do_vars)
from .errors import PreconditionError, ResourceLimitError, TermSyntaxError
from .problem import Problem, ProblemError, format_problem, load_problem
from .reductions import (LcsInstance, ac_symbols, gen_ac_from_lcs, gen_assoc_from_lcs,
                         gen_string_bounded_occ, gen_string_from_lcs)
from .syntactic import match_syntactic, unify
from .terms import (Substitution, Term, Theory, Var, format_term, is_do_term, is_ground, subterms,
                    var_counts)

ALGORITHMS = ("auto", "do", "bounded", "brute")


@dataclass
class Report:
    result: bool | int
    algorithm: str
    substitution: Substitution | None = None
    stats: Stats = field(default_factory=Stats)
    warnings: list[str] = field(default_factory=list)
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        out: dict = {"result": self.result, "algorithm": self.algorithm}
        if self.substitution is not None:
            out["substitution"] = {
                x.name: (v if isinstance(v, str) else format_term(v))
                for x, v in self.substitution.sorted_items()}
        out["stats"] = {
            "node_pairs": self.stats.node_pairs,
            "table_cells": self.stats.table_cells,
            "enumerated": self.stats.enumerated,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


@dataclass
class Limits:
    budget: int = DEFAULT_BUDGET
    k_bound: int = 4
    nondo_bound: int = 3
    threads: int = 1


def _theories(*terms: Term) -> set[Theory]:
    return {s.sym.theory for t in terms for s in subterms(t) if not s.is_var and s.args}


def _string_do(s1, s2) -> bool:
    seen = [x for x in (*s1, *s2) if isinstance(x, Var)]
    return len(seen) == len(set(seen))


def solve(problem: Problem, algorithm: str = "auto", limits: Limits | None = None) -> Report:
    """Dispatch a parsed problem to the matching algorithm."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    limits = limits or Limits()
    start = time.perf_counter()
    if problem.is_string:
        report = _solve_strings(problem, algorithm, limits)
    elif problem.mode == "tree-distance":
        report = _solve_tree(problem, algorithm, limits)
    elif problem.mode == "equal":
        report = _solve_equal(problem)
    else:
        report = _solve_unify(problem, algorithm, limits)
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def _solve_strings(p: Problem, algorithm: str, limits: Limits) -> Report:
    s1, s2 = p.lhs, p.rhs
    stats = Stats()
    if p.mode == "equal":
        if any(isinstance(x, Var) for x in (*s1, *s2)):
            raise PreconditionError("mode equal needs variable-free strings")
        return Report(s1 == s2, "string-equal")
    if p.mode in ("unify", "match"):
        if p.mode == "match" and any(isinstance(x, Var) for x in s2):
            raise PreconditionError("mode match needs a variable-free s2")
        theta = string_unifier(s1, s2, p.alphabet)
        return Report(theta is not None, "string-unify", theta)
    has_vars = any(isinstance(x, Var) for x in (*s1, *s2))
    if not has_vars:
        return Report(string_edit_distance(s1, s2), "levenshtein")
    if algorithm == "do" or (algorithm == "auto" and _string_do(s1, s2)):
        if not _string_do(s1, s2):
            raise PreconditionError("--algorithm do needs every variable to occur once")
        return Report(string_edit_distance_do(s1, s2), "string-do")
    d, theta = string_edit_distance_vars(s1, s2, p.alphabet, budget=limits.budget, stats=stats,
                                         threads=limits.threads)
    return Report(d, "string-enumerate", theta, stats)


def _solve_tree(p: Problem, algorithm: str, limits: Limits) -> Report:
    t1, t2 = p.lhs, p.rhs
    stats = Stats()
    if is_ground(t1) and is_ground(t2):
        return Report(tree_edit_distance(t1, t2, stats=stats), "tree-edit", stats=stats)
    if algorithm in ("auto", "do") and is_do_term(t1, t2):
        return Report(tree_edit_distance_do_vars(t1, t2, stats=stats), "tree-edit-do", stats=stats)
    if algorithm == "do":
        raise PreconditionError("--algorithm do needs every variable to occur once")
    pool = oracles.default_pool(t1, t2, max_size=3)
    k = len({*var_counts(t1), *var_counts(t2)})
    if len(pool) ** k > limits.budget:
        raise ResourceLimitError("pooled substitutions exceed the enumeration budget",
                                 bound="budget", limit=limits.budget,
                                 required=len(pool) ** k, flag="--budget")
    stats.enumerated += len(pool) ** k
    d = oracles.brute_tree_edit_distance_vars(t1, t2, pool)
    warn = [] if algorithm == "brute" else [
        "repeated variables: no polynomial algorithm applies; using pooled brute force"]
    return Report(d, "tree-edit-brute", stats=stats, warnings=warn)


def _solve_equal(p: Problem) -> Report:
    t1, t2 = p.lhs, p.rhs
    if not (is_ground(t1) and is_ground(t2)):
        raise PreconditionError("mode equal needs variable-free terms")
    th = _theories(t1, t2) - {Theory.FREE}
    if not th:
        return Report(t1 == t2, "syntactic")
    if th == {Theory.ASSOC}:
        return Report(assoc_equal_ground(t1, t2), "assoc-canonical")
    if th == {Theory.COMM}:
        return Report(commut_equal_ground(t1, t2), "commut-ident")
    if th == {Theory.AC}:
        return Report(ac_equal_ground(t1, t2), "ac-canonical")
    return Report(oracles.equal_modulo(t1, t2), "normal-form")


def _brute(t1, t2, limits: Limits, warn: str | None) -> Report:
    theta = oracles.brute_unifiable(t1, t2, budget=limits.budget)
    return Report(theta is not None, "brute", theta, warnings=[warn] if warn else [])


def _solve_unify(p: Problem, algorithm: str, limits: Limits) -> Report:
    t1, t2 = p.lhs, p.rhs
    if p.mode == "match" and not is_ground(t2):
        raise PreconditionError("mode match needs a variable-free t2")
    if not is_ground(t2) and is_ground(t1):
        t1, t2 = t2, t1  # keep the ground side on the right
    stats = Stats()
    th = _theories(t1, t2) - {Theory.FREE}
    fallback = "no polynomial algorithm applies to this input; using brute force"
    if algorithm == "brute":
        return _brute(t1, t2, limits, None)

    if not th:
        theta = match_syntactic(t1, t2) if p.mode == "match" else unify(t1, t2)
        return Report(theta is not None, "syntactic", theta)

    if th == {Theory.ASSOC}:
        do = is_do_term(t1, t2)
        if algorithm == "do" or (algorithm == "auto" and do):
            return Report(assoc_unify_do(t1, t2, stats=stats), "assoc-do", stats=stats)
        if is_ground(t2):
            ok = assoc_match_bounded_nondo(t1, t2, bound=limits.nondo_bound, stats=stats)
            return Report(ok, "assoc-bounded", stats=stats)
        if algorithm == "bounded":
            raise PreconditionError("--algorithm bounded needs one variable-free side")
        return _brute(t1, t2, limits, fallback)

    if th == {Theory.COMM}:
        if is_ground(t2):
            ok, thetas = commut_match(t1, t2, stats=stats)
            witness = min(thetas, key=repr) if ok else None
            return Report(ok, "commut-match", witness, stats)
        ok, theta = commut_unify(t1, t2, limits.k_bound, stats=stats)
        return Report(ok, "commut-unify", theta, stats)

    if th <= {Theory.AC, Theory.COMM}:
        if algorithm == "do" or (algorithm == "auto" and is_do_term(t1, t2)):
            return Report(ac_unify_do(t1, t2, stats=stats), "ac-do", stats=stats)
        if algorithm == "bounded":
            raise PreconditionError("no bounded algorithm for AC with repeated variables")
        return _brute(t1, t2, limits, fallback)

    if algorithm in ("do", "bounded"):
        raise PreconditionError("no specialised algorithm mixes associative and commutative symbols")
    return _brute(t1, t2, limits, fallback)


# ---------------------------------------------------------------------------
# subcommands

def _print_report(report: Report, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if as_json:
        print(json.dumps(report.to_json(), sort_keys=True), file=out)
        return
    value = report.result
    print(f"result: {str(value).lower() if isinstance(value, bool) else value}", file=out)
    if report.substitution is not None:
        print(f"substitution: {report.substitution!r}", file=out)
    print(f"algorithm: {report.algorithm}", file=out)
    s = report.stats
    print(f"stats: node_pairs={s.node_pairs} table_cells={s.table_cells} "
          f"enumerated={s.enumerated} elapsed_ms={report.elapsed_ms:.3f}", file=out)


def cmd_run(args) -> int:
    problem = load_problem(args.file)
    limits = Limits(args.budget, args.k_bound, args.nondo_bound, args.threads)
    report = solve(problem, args.algorithm, limits)
    _print_report(report, args.json)
    if isinstance(report.result, bool):
        return 0 if report.result else 1
    return 0


GENERATORS = ("lcs-string", "lcs-string-b3", "lcs-assoc", "lcs-ac")


def generate(kind: str, inst: LcsInstance, *, binary_constants: bool = False) -> str:
    """Problem-file text for one reduction, with the LCS ground truth as comments."""
    truth = oracles.lcs_brute(inst.strings, inst.l)
    words = ",".join("".join(s) for s in inst.strings)
    notes = [f"gen {kind} --strings {words} --l {inst.l}",
             f"lcs_brute: {str(truth).lower()}"]
    if kind in ("lcs-string", "lcs-string-b3"):
        fn = gen_string_from_lcs if kind == "lcs-string" else gen_string_bounded_occ
        s1, s2, target = fn(inst)
        notes.append(f"target: {target}  (distance equals target iff lcs_brute is true)")
        return format_problem(s1, s2, mode="string-distance", comments=notes,
                              alphabet=[*inst.alphabet, "#"])
    if kind == "lcs-assoc":
        t1, t2 = gen_assoc_from_lcs(inst, binary_constants=binary_constants)
        notes.append("t1 matches t2 iff lcs_brute is true")
        return format_problem(t1, t2, mode="match", theories={"f": Theory.ASSOC}, comments=notes)
    if kind == "lcs-ac":
        t1, t2 = gen_ac_from_lcs(inst)
        notes.append("t1 matches t2 iff lcs_brute is true")
        return format_problem(t1, t2, mode="match",
                              theories={n: Theory.AC for n in ac_symbols()}, comments=notes)
    raise ValueError(f"unknown generator {kind!r}")


def cmd_gen(args) -> int:
    if args.strings:
        strings = [s for s in args.strings.split(",") if s]
        if not strings:
            raise ValueError("--strings needs at least one nonempty string")
        inst = LcsInstance.of(strings, args.l if args.l is not None else 1)
    else:
        rng = random.Random(args.seed)
        inst = LcsInstance.random(rng)
        if args.l is not None:
            inst = LcsInstance(inst.strings, args.l)
    text = generate(args.kind, inst, binary_constants=args.binary_constants)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    from .bench import run_bench, write_csv

    rows = run_bench(seed=args.seed, quick=args.quick)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acunify", description="Unification and edit distance modulo A, C and AC.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="solve a problem file")
    run.add_argument("file")
    run.add_argument("--json", action="store_true", help="print a JSON report")
    run.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    run.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                     help="max substitutions any enumeration may try")
    run.add_argument("--k-bound", type=int, default=4,
                     help="max variables for commutative unification")
    run.add_argument("--nondo-bound", type=int, default=3,
                     help="max repeated variables for associative matching")
    run.add_argument("--threads", type=int, default=1)
    run.set_defaults(func=cmd_run)

    gen = sub.add_parser("gen", help="emit an LCS-derived problem file")
    gen.add_argument("kind", choices=GENERATORS)
    gen.add_argument("--strings", help="comma-separated LCS strings, e.g. aab,aba")
    gen.add_argument("--l", type=int, help="target subsequence length")
    gen.add_argument("--seed", type=int, default=0, help="seed for a random instance")
    gen.add_argument("--binary-constants", action="store_true",
                     help="encode constants over {0,1} with h (lcs-assoc only)")
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    bench = sub.add_parser("bench", help="print scaling counters as CSV")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out")
    bench.add_argument("--quick", action="store_true", help="smaller instances")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ProblemError, TermSyntaxError, PreconditionError, ResourceLimitError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
