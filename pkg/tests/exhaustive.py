"""Exhaustive term pairs, one per orbit under renaming of constants and variables.

A pair is kept only when its constants, read left to right through ``t1`` and
then ``t2``, first appear in the order a, b, c, and its variables in the order
x, y.  Renaming preserves every verdict the suites compare, so each orbit is
checked exactly once.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Iterator

from acunify import App, Symbol, Term, Theory, Var
from acunify.oracles import enumerate_terms

CONSTANT_NAMES = ("a", "b", "c")
VARIABLE_NAMES = ("x", "y")


def signature(theory: Theory, max_size: int = 6) -> list[Term]:
    """Every raw term over a binary ``f`` of ``theory``, unary ``g``, a, b, c, x, y."""
    leaves = [App(Symbol(c, 0)) for c in CONSTANT_NAMES] + [Var(v) for v in VARIABLE_NAMES]
    return enumerate_terms(max_size, [Symbol("f", 2, theory), Symbol("g", 1)], leaves)


def _leaves(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        node = stack.pop()
        if node.args:
            stack.extend(reversed(node.args))
        else:
            yield node


def profile(t: Term) -> tuple[tuple[str, ...], tuple[str, ...], tuple[int, ...]]:
    """First-appearance order of constants and variables, and variable counts."""
    consts: dict[str, None] = {}
    vars_: dict[str, None] = {}
    counts = dict.fromkeys(VARIABLE_NAMES, 0)
    for leaf in _leaves(t):
        if leaf.is_var:
            vars_.setdefault(leaf.name)
            counts[leaf.name] += 1
        else:
            consts.setdefault(leaf.name)
    return tuple(consts), tuple(vars_), tuple(counts[v] for v in VARIABLE_NAMES)


def _merged_is_prefix(first: tuple, second: tuple, names: tuple) -> bool:
    merged = first + tuple(n for n in second if n not in first)
    return merged == names[:len(merged)]


def _rename(t: Term, table: dict[str, Term]) -> Term:
    if not t.args:
        return table.get(t.name, t)
    return App(t.sym, [_rename(a, table) for a in t.args])


def _normalise(t1: Term, t2: Term) -> tuple[Term, Term]:
    """Rename a pair into its orbit representative."""
    consts, vars_ = {}, {}
    for leaf in itertools.chain(_leaves(t1), _leaves(t2)):
        if leaf.is_var and leaf.name not in vars_:
            vars_[leaf.name] = Var(VARIABLE_NAMES[len(vars_)])
        elif not leaf.is_var and leaf.name not in consts:
            consts[leaf.name] = App(Symbol(CONSTANT_NAMES[len(consts)], 0))
    table = {**consts, **vars_}
    return _rename(t1, table), _rename(t2, table)


def pairs(terms: list[Term], *, ground_right: bool = False, do: bool = False,
          unordered: bool = False) -> Iterator[tuple[Term, Term]]:
    """Orbit representatives among ordered pairs from ``terms``.

    ``ground_right`` keeps pairs whose second term is variable-free; ``do``
    keeps pairs where each variable occurs at most once across both terms;
    ``unordered`` also identifies a pair with its swap.
    """
    groups: dict[tuple, list[int]] = defaultdict(list)
    for i, t in enumerate(terms):
        groups[profile(t)].append(i)
    index = {t: i for i, t in enumerate(terms)}
    keys = sorted(groups)
    for k1, k2 in itertools.product(keys, repeat=2):
        (c1, v1, n1), (c2, v2, n2) = k1, k2
        if ground_right and v2:
            continue
        if do and any(a + b > 1 for a, b in zip(n1, n2)):
            continue
        if not (_merged_is_prefix(c1, c2, CONSTANT_NAMES)
                and _merged_is_prefix(v1, v2, VARIABLE_NAMES)):
            continue
        for i in groups[k1]:
            for j in groups[k2]:
                if unordered:
                    s2, s1 = _normalise(terms[j], terms[i])
                    if (index[s2], index[s1]) < (i, j):
                        continue
                yield terms[i], terms[j]
