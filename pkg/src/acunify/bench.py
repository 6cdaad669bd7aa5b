"""Scaling counters for the parameterised algorithms, as CSV rows.

Each row records an algorithm, its parameters, wall time and the operation
counters, next to the quantity the count is expected to track.
"""
from __future__ import annotations

import csv
import random
import time
from collections.abc import Iterable

from .assoc import STAR, str_match_vdc
from .commut import commut_match, commut_unify
from .counters import Stats
from .edit import string_edit_distance_vars
from .terms import App, Symbol, Term, Theory, Var

FIELDS = ("algorithm", "param", "p", "q", "k", "m_plus_n", "sigma", "elapsed_ms", "node_pairs",
          "table_cells", "enumerated", "ops", "max_theta", "expected", "ratio")

F = Symbol("f", 2, Theory.COMM)


def _const(name: str) -> App:
    return App(Symbol(name, 0))


def _row(**kw) -> dict:
    row = dict.fromkeys(FIELDS, "")
    row.update(kw)
    return row


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, (time.perf_counter() - start) * 1000


def bench_str_match(rng: random.Random, sizes: Iterable[int], *, all_stars: bool = False
                    ) -> list[dict]:
    """Operation count of the wildcard matcher against p²q².

    ``all_stars`` uses sequences made only of stars, the costliest input.
    """
    rows = []
    sizes = list(sizes)
    name = "str_match_vdc_all_stars" if all_stars else "str_match_vdc"
    for p in sizes:
        for q in sizes:
            if all_stars:
                a, b = [STAR] * p, [STAR] * q
            else:
                a = [STAR if rng.random() < 0.3 else rng.choice("ab") for _ in range(p)]
                b = [STAR if rng.random() < 0.3 else rng.choice("ab") for _ in range(q)]
            stats = Stats()
            _, ms = _timed(lambda: str_match_vdc(a, b, stats=stats))
            expected = p * p * q * q
            rows.append(_row(algorithm=name, param="p,q", p=p, q=q,
                             elapsed_ms=round(ms, 3), table_cells=stats.table_cells,
                             ops=stats.ops, expected=expected,
                             ratio=round(stats.ops / expected, 6)))
    return rows


def chain_pair(k: int) -> tuple[Term, Term]:
    """``f(x1, f(x2, ... f(xk, a)))`` against ``f(b, f(b, ... f(b, b)))``.

    Never unifiable (the lone ``a`` meets only ``b``), so every candidate
    mapping is tried; ``m = n = 2k + 1``.
    """
    t1: Term = _const("a")
    t2: Term = _const("b")
    for i in range(k, 0, -1):
        t1 = App(F, (Var(f"x{i}"), t1))
        t2 = App(F, (_const("b"), t2))
    return t1, t2


def bench_commut_unify(ks: Iterable[int]) -> list[dict]:
    rows = []
    for k in ks:
        t1, t2 = chain_pair(k)
        mn = t1.size + t2.size
        stats = Stats()
        (ok, _), ms = _timed(lambda: commut_unify(t1, t2, k_bound=max(4, k), stats=stats))
        expected = mn ** k
        rows.append(_row(algorithm="commut_unify", param="k", k=k, m_plus_n=mn,
                         elapsed_ms=round(ms, 3), node_pairs=stats.node_pairs,
                         table_cells=stats.table_cells, enumerated=stats.enumerated,
                         expected=expected, ratio=round(stats.enumerated / expected, 6)))
    return rows


def theta_pair(k: int) -> tuple[Term, Term]:
    """``f(f(xk,yk), ... f(x1,y1))`` against ``f(f(a,b), ... f(a,b))``.

    Each ``(xi, yi)`` pair can take ``a, b`` in either order, so the root
    holds 2^k substitutions over 2k variables.
    """
    pattern: Term = App(F, (Var("x1"), Var("y1")))
    text: Term = App(F, (_const("a"), _const("b")))
    for i in range(2, k + 1):
        pattern = App(F, (App(F, (Var(f"x{i}"), Var(f"y{i}"))), pattern))
        text = App(F, (App(F, (_const("a"), _const("b"))), text))
    return pattern, text


def bench_commut_match(ks: Iterable[int]) -> list[dict]:
    rows = []
    for k in ks:
        t1, t2 = theta_pair(k)
        nvars = 2 * k
        stats = Stats()
        (ok, thetas), ms = _timed(lambda: commut_match(t1, t2, stats=stats))
        expected = 2 ** (nvars - 1)
        rows.append(_row(algorithm="commut_match", param="k", k=nvars, m_plus_n=t1.size + t2.size,
                         elapsed_ms=round(ms, 3), node_pairs=stats.node_pairs,
                         table_cells=stats.table_cells, max_theta=stats.max_theta,
                         enumerated=len(thetas), expected=expected,
                         ratio=round(stats.max_theta / expected, 6)))
    return rows


def bench_string_vars(rng: random.Random, ks: Iterable[int], sigma: int = 3) -> list[dict]:
    rows = []
    letters = "abcdefgh"[:sigma]
    for k in ks:
        names = [f"x{i}" for i in range(1, k + 1)]
        s1 = tuple(Var(n) for n in names) + tuple(rng.choice(letters) for _ in range(4))
        s2 = tuple(rng.choice(letters) for _ in range(k + 4))
        stats = Stats()
        _, ms = _timed(lambda: string_edit_distance_vars(s1, s2, letters, stats=stats))
        expected = sigma ** k
        rows.append(_row(algorithm="string_edit_distance_vars", param="k", k=k, sigma=sigma,
                         elapsed_ms=round(ms, 3), enumerated=stats.enumerated,
                         table_cells=stats.table_cells, expected=expected,
                         ratio=round(stats.enumerated / expected, 6)))
    return rows


def run_bench(seed: int = 0, quick: bool = False) -> list[dict]:
    rng = random.Random(seed)
    sizes = (10, 20) if quick else (10, 20, 30, 40)
    rows = bench_str_match(rng, sizes)
    rows += bench_str_match(rng, sizes, all_stars=True)
    rows += bench_commut_unify((1, 2) if quick else (1, 2, 3))
    rows += bench_commut_match((1, 2, 3) if quick else (1, 2, 3, 4, 5))
    rows += bench_string_vars(rng, (1, 2, 3) if quick else (1, 2, 3, 4, 5))
    return rows


def write_csv(rows: list[dict], fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
