"""Associative unification: ground equality, DO unification, bounded matching."""
from __future__ import annotations

import itertools
from collections.abc import Callable, Sequence
from typing import NamedTuple

from .counters import Stats
from .errors import PreconditionError, ResourceLimitError
from .terms import (App, Term, apply_substitution, canonicalize, is_do_term, is_ground,
                    subterms, var_counts)

__all__ = ["Star", "STAR", "str_match_vdc", "assoc_equal_ground", "assoc_unify_do",
           "assoc_match_bounded_nondo", "match_table", "segment_candidates"]


class Star(NamedTuple):
    """Variable-length don't care: matches one or more consecutive items."""

    name: str = "*"


STAR = Star()


def _is_star(x) -> bool:
    return isinstance(x, Star)


def str_match_vdc(a: Sequence, b: Sequence, matches: Callable[[int, int], bool] | None = None,
                  *, stats: Stats | None = None) -> bool:
    """Match two sequences that may both contain :class:`Star` items.

    ``matches(i, j)`` decides whether the non-star items ``a[i]`` and ``b[j]``
    (0-based) match; by default they must be equal.  ``E[i][j]`` records
    whether ``a[:i]`` matches ``b[:j]``.  Runs in O(p²q²).
    """
    p, q = len(a), len(b)
    if matches is None:
        def matches(i, j):
            return a[i] == b[j]
    E = [[False] * (q + 1) for _ in range(p + 1)]
    E[0][0] = True
    ops = 0
    for i in range(1, p + 1):
        ai_star = _is_star(a[i - 1])
        for j in range(1, q + 1):
            bj_star = _is_star(b[j - 1])
            if ai_star and bj_star:
                ops += i + j
                v = (any(E[k][j - 1] for k in range(i))
                     or any(E[i - 1][k] for k in range(j)))
            elif ai_star:
                ops += j
                v = any(E[i - 1][k] for k in range(j))
            elif bj_star:
                ops += i
                v = any(E[k][j - 1] for k in range(i))
            else:
                ops += 1
                v = E[i - 1][j - 1] and matches(i - 1, j - 1)
            E[i][j] = v
    if stats is not None:
        stats.ops += ops
        stats.table_cells += (p + 1) * (q + 1)
    return E[p][q]


def _require_assoc_signature(*terms: Term) -> None:
    for t in terms:
        for s in subterms(t):
            if not s.is_var and s.sym.theory.commutative:
                raise PreconditionError(
                    f"symbol {s.name!r} is commutative; the associative algorithms handle "
                    "only associative and free symbols")


def assoc_equal_ground(t1: Term, t2: Term) -> bool:
    """Equality modulo associativity: compare flattened canonical forms."""
    if not (is_ground(t1) and is_ground(t2)):
        raise PreconditionError("assoc_equal_ground: terms must be variable-free")
    _require_assoc_signature(t1, t2)
    return canonicalize(t1) == canonicalize(t2)


def _postorder(t: Term) -> tuple[list[Term], list[tuple[int, ...]]]:
    """Node list in post-order plus child index tuples (positions, not values)."""
    nodes: list[Term] = []
    kids: list[tuple[int, ...]] = []
    stack: list = [(t, False)]
    pending: list[list[int]] = []
    while stack:
        node, done = stack.pop()
        if done:
            kids.append(tuple(pending.pop()))
            nodes.append(node)
            if pending:
                pending[-1].append(len(nodes) - 1)
            continue
        if node.is_var or not node.args:
            nodes.append(node)
            kids.append(())
            if pending:
                pending[-1].append(len(nodes) - 1)
            continue
        pending.append([])
        stack.append((node, True))
        stack.extend((a, False) for a in reversed(node.args))
    return nodes, kids


def match_table(c1: Term, c2: Term, *, stats: Stats | None = None) -> list[list[bool]]:
    """Fill ``D[u][v]`` for canonical ``c1``, ``c2`` (post-order node indices).

    ``D[u][v]`` is true iff the subterms at ``u`` and ``v`` are unifiable
    modulo associativity, assuming no variable is shared between them.
    """
    n1, k1 = _postorder(c1)
    n2, k2 = _postorder(c2)
    D = [[False] * len(n2) for _ in n1]
    for u, tu in enumerate(n1):
        for v, tv in enumerate(n2):
            if stats is not None:
                stats.node_pairs += 1
            u_const = not tu.is_var and not tu.args
            v_const = not tv.is_var and not tv.args
            if u_const or v_const:
                D[u][v] = tu.is_var or tv.is_var or (u_const and v_const and tu.name == tv.name)
            elif tu.is_var or tv.is_var:
                D[u][v] = True
            elif tu.sym.name != tv.sym.name:
                D[u][v] = False
            elif tu.sym.theory.associative:
                cu, cv = k1[u], k2[v]
                a = [STAR if n1[c].is_var else c for c in cu]
                b = [STAR if n2[c].is_var else c for c in cv]
                D[u][v] = str_match_vdc(a, b, lambda i, j: D[cu[i]][cv[j]], stats=stats)
            else:
                cu, cv = k1[u], k2[v]
                D[u][v] = len(cu) == len(cv) and all(D[x][y] for x, y in zip(cu, cv))
    return D


def assoc_unify_do(t1: Term, t2: Term, *, stats: Stats | None = None) -> bool:
    """Decide associative unifiability of a DO pair.

    Every variable must occur exactly once across both terms.  Both terms are
    canonicalized, then the node-pair table is filled bottom-up; child lists
    of associative nodes are compared with :func:`str_match_vdc`, variables
    standing for nonempty runs of siblings.
    """
    if not is_do_term(t1, t2):
        raise PreconditionError(
            "assoc_unify_do: every variable must occur once across both terms; "
            "use assoc_match_bounded_nondo or the brute-force oracle")
    _require_assoc_signature(t1, t2)
    c1, c2 = canonicalize(t1), canonicalize(t2)
    D = match_table(c1, c2, stats=stats)
    return D[-1][-1]


def segment_candidates(ground: Term) -> list[Term]:
    """Terms a repeated pattern variable may stand for when matching ``ground``.

    Every subterm of the canonical form, and for each associative node every
    run of two or more consecutive children folded under that symbol.
    """
    c = canonicalize(ground)
    out: dict[Term, None] = {}
    for s in subterms(c):
        out.setdefault(s, None)
        if not s.is_var and s.args and s.sym.theory.associative:
            q = len(s.args)
            for i in range(q):
                for j in range(i + 2, q + 1):
                    if j - i == q:
                        continue
                    out.setdefault(App(s.sym, s.args[i:j]), None)
    return list(out)


def assoc_match_bounded_nondo(t1: Term, t2: Term, *, bound: int = 3,
                              stats: Stats | None = None) -> bool:
    """Associative matching when ``t1`` has few repeated variables.

    Each variable occurring more than once in ``t1`` is tried against every
    candidate from :func:`segment_candidates`; the remaining DO problem goes
    to :func:`assoc_unify_do`.
    """
    if not is_ground(t2):
        raise PreconditionError("assoc_match_bounded_nondo: the second term must be variable-free")
    _require_assoc_signature(t1, t2)
    repeated = sorted((v for v, c in var_counts(t1).items() if c > 1), key=lambda v: v.name)
    if len(repeated) > bound:
        raise ResourceLimitError(
            f"{len(repeated)} repeated variables exceed the bound",
            bound="nondo_bound", limit=bound, required=len(repeated), flag="--nondo-bound")
    if not repeated:
        return assoc_unify_do(t1, t2, stats=stats)
    c2 = canonicalize(t2)
    candidates = segment_candidates(c2)
    for values in itertools.product(candidates, repeat=len(repeated)):
        if stats is not None:
            stats.enumerated += 1
        inst = apply_substitution(t1, dict(zip(repeated, values)))
        if assoc_unify_do(inst, c2, stats=stats):
            return True
    return False
