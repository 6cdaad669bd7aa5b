"""Associative-commutative ground equality and DO unification."""
from __future__ import annotations

from collections.abc import Callable
from functools import lru_cache

from .counters import Stats
from .errors import PreconditionError
from .terms import Term, Theory, canonicalize, is_do_term, is_ground, subterms


def _require_ac_signature(*terms: Term) -> None:
    for t in terms:
        for s in subterms(t):
            if not s.is_var and s.sym.theory is Theory.ASSOC:
                raise PreconditionError(
                    f"symbol {s.name!r} is associative but not commutative; "
                    "use the associative algorithms")


def ac_equal_ground(t1: Term, t2: Term) -> bool:
    """Equality modulo AC: flatten, sort, compare."""
    if not (is_ground(t1) and is_ground(t2)):
        raise PreconditionError("ac_equal_ground: terms must be variable-free")
    return canonicalize(t1) == canonicalize(t2)


def max_bipartite_matching(n_left: int, n_right: int, edge: Callable[[int, int], bool]) -> int:
    """Size of a maximum matching, by augmenting paths (Kuhn).

    ``edge(i, j)`` is queried lazily and at most once per pair.
    """
    cache: dict[tuple[int, int], bool] = {}

    def has(i, j):
        key = (i, j)
        if key not in cache:
            cache[key] = edge(i, j)
        return cache[key]

    owner = [-1] * n_right

    def augment(i, seen):
        for j in range(n_right):
            if j in seen or not has(i, j):
                continue
            seen.add(j)
            if owner[j] < 0 or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    return sum(augment(i, set()) for i in range(n_left))


def ac_unify_do(t1: Term, t2: Term, *, stats: Stats | None = None) -> bool:
    """Decide AC unifiability when every variable occurs once across both terms.

    For two argument lists under the same AC symbol:

    * variables on both sides - always unifiable, each side's variables
      absorb the other side's leftovers;
    * variables on one side only - the other side's arguments must host a
      matching that covers every non-variable argument, with at least one
      argument left per variable;
    * no variables - a perfect matching.

    Edges of the matching are recursive unifiability checks, which are
    independent because no variable is shared.
    """
    if not is_do_term(t1, t2):
        raise PreconditionError(
            "ac_unify_do: every variable must occur exactly once across both terms")
    _require_ac_signature(t1, t2)
    c1, c2 = canonicalize(t1), canonicalize(t2)

    @lru_cache(maxsize=None)
    def uni(a: Term, b: Term) -> bool:
        if stats is not None:
            stats.node_pairs += 1
        if a.is_var or b.is_var:
            return True
        if not a.args or not b.args:
            return not a.args and not b.args and a.name == b.name
        if a.sym.name != b.sym.name:
            return False
        th = a.sym.theory
        if th is Theory.AC:
            return _ac_args(a.args, b.args, uni)
        if len(a.args) != len(b.args):
            return False
        if th is Theory.COMM:
            (x1, x2), (y1, y2) = a.args, b.args
            return (uni(x1, y1) and uni(x2, y2)) or (uni(x1, y2) and uni(x2, y1))
        return all(uni(x, y) for x, y in zip(a.args, b.args))

    return uni(c1, c2)


def _ac_args(p: tuple, q: tuple, uni) -> bool:
    pv = sum(1 for x in p if x.is_var)
    qv = sum(1 for y in q if y.is_var)
    if pv and qv:
        return True
    if qv and not pv:
        p, q, pv, qv = q, p, qv, pv
        flip = True
    else:
        flip = False
    rigid = [x for x in p if not x.is_var]
    if pv == 0 and len(p) != len(q):
        return False
    if len(q) - len(rigid) < pv:
        return False

    def edge(i, j):
        return uni(q[j], rigid[i]) if flip else uni(rigid[i], q[j])

    return max_bipartite_matching(len(rigid), len(q), edge) == len(rigid)
