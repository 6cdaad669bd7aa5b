"""String and ordered-tree edit distance, with and without variables.

Strings are tuples whose items are plain symbols (``str``) or :class:`Var`.
All edit operations have unit cost.
"""
from __future__ import annotations

import itertools
import sys
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor

from .counters import Stats
from .errors import PreconditionError, ResourceLimitError
from .terms import Substitution, Term, Var, is_do_term, var_counts

VString = tuple  # items: str | Var

DEFAULT_BUDGET = 10**7


def vstring(symbols: str | Iterable[str], variables: Iterable[str] = ()) -> VString:
    """Build a string; names listed in ``variables`` become :class:`Var`.

    A ``str`` without whitespace is split into characters, otherwise on
    whitespace: ``vstring("abcxbcx", "xyz")`` or ``vstring("x1 x2 # a", ["x1", "x2"])``.
    """
    if isinstance(symbols, str):
        symbols = symbols.split() if any(c.isspace() for c in symbols) else list(symbols)
    varnames = set(variables)
    return tuple(Var(s) if s in varnames else s for s in symbols)


def format_vstring(s: Sequence) -> str:
    items = [x.name if isinstance(x, Var) else x for x in s]
    if all(len(x) == 1 for x in items):
        return "".join(items)
    return " ".join(items)


def string_variables(*strings: Sequence) -> list[Var]:
    """Distinct variables, sorted by name."""
    return sorted({x for s in strings for x in s if isinstance(x, Var)}, key=lambda v: v.name)


def _levenshtein(s1: Sequence, s2: Sequence, free=None) -> int:
    """Classic O(mn) DP.  ``free(a, b)`` marks replacements that cost nothing."""
    prev = list(range(len(s2) + 1))
    for i, a in enumerate(s1, 1):
        cur = [i]
        for j, b in enumerate(s2, 1):
            same = a == b or (free is not None and free(a, b))
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (0 if same else 1)))
        prev = cur
    return prev[-1]


def string_edit_distance(s1: Sequence, s2: Sequence) -> int:
    """Unit-cost Levenshtein distance between variable-free strings."""
    if any(isinstance(x, Var) for x in (*s1, *s2)):
        raise PreconditionError("string_edit_distance: inputs must be variable-free")
    return _levenshtein(s1, s2)


def _alphabet(sigma, *strings) -> list[str]:
    if sigma is None:
        sigma = {x for s in strings for x in s if not isinstance(x, Var)}
    return sorted(set(sigma))


def _scan_chunk(args):
    s1, s2, variables, sigma, prefixes = args
    best, best_theta = None, None
    count = 0
    for head in prefixes:
        for tail in itertools.product(sigma, repeat=len(variables) - len(head)):
            values = head + tail
            theta = dict(zip(variables, values))
            d = _levenshtein([theta.get(x, x) for x in s1], [theta.get(x, x) for x in s2])
            count += 1
            if best is None or d < best:
                best, best_theta = d, values
    return best, best_theta, count


def string_edit_distance_vars(s1: Sequence, s2: Sequence, sigma: Iterable[str] | None = None, *,
                              budget: int = DEFAULT_BUDGET, stats: Stats | None = None,
                              threads: int = 1) -> tuple[int, Substitution]:
    """Minimum edit distance over every substitution Γ → Σ.

    Tries all ``|Σ|^k`` substitutions (k distinct variables) and runs the
    plain DP on each.  Returns the distance and the lexicographically
    smallest minimizing substitution (variables by name, values in sorted
    alphabet order).  ``sigma`` defaults to the constants of the inputs.
    """
    variables = string_variables(s1, s2)
    alphabet = _alphabet(sigma, s1, s2)
    k = len(variables)
    if k and not alphabet:
        raise PreconditionError("string_edit_distance_vars: empty alphabet")
    total = len(alphabet) ** k
    if total > budget:
        raise ResourceLimitError(
            f"{len(alphabet)}^{k} = {total} substitutions exceed the enumeration budget",
            bound="budget", limit=budget, required=total, flag="--budget")
    if threads > 1 and k >= 1 and len(alphabet) > 1:
        chunks = [[(c,) for c in alphabet[i::threads]] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_scan_chunk, [(tuple(s1), tuple(s2), variables, alphabet, ch)
                                                  for ch in chunks if ch]))
        results = [r for r in results if r[0] is not None]
        best, best_theta, _ = min(results, key=lambda r: (r[0], r[1]))
    else:
        best, best_theta, _ = _scan_chunk((tuple(s1), tuple(s2), variables, alphabet, [()]))
    if stats is not None:
        stats.enumerated += total
        stats.table_cells += total * (len(s1) + 1) * (len(s2) + 1)
    return best, Substitution(dict(zip(variables, best_theta)))


def string_unifier(s1: Sequence, s2: Sequence, sigma: Iterable[str] | None = None
                   ) -> Substitution | None:
    """A substitution making the strings equal, by positional propagation.

    Each position ties two items together; a class of tied items may hold at
    most one distinct constant.  Classes of variables only take the smallest
    alphabet symbol.
    """
    if len(s1) != len(s2):
        return None
    parent: dict = {}

    def find(x):
        while x in parent:
            x = parent[x]
        return x

    for a, b in zip(s1, s2):
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        if not isinstance(ra, Var) and not isinstance(rb, Var):
            return None
        if isinstance(ra, Var):
            parent[ra] = rb
        else:
            parent[rb] = ra
    variables = string_variables(s1, s2)
    filler = None
    theta = {}
    for v in variables:
        r = find(v)
        if isinstance(r, Var):
            if filler is None:
                alphabet = _alphabet(sigma, s1, s2)
                if not alphabet:
                    raise PreconditionError("string_unifier: empty alphabet")
                filler = alphabet[0]
            theta[v] = filler
        else:
            theta[v] = r
    return Substitution(theta)


def string_unifiable(s1: Sequence, s2: Sequence, sigma: Iterable[str] | None = None) -> bool:
    return string_unifier(s1, s2, sigma) is not None


def _is_var(x) -> bool:
    return isinstance(x, Var)


def string_edit_distance_do(s1: Sequence, s2: Sequence) -> int:
    """Edit distance with variables when every variable occurs once overall.

    A variable can be set to whatever it is aligned with, so replacements
    touching a variable are free.
    """
    seen = set()
    for x in (*s1, *s2):
        if isinstance(x, Var):
            if x in seen:
                raise PreconditionError(f"variable {x.name} occurs more than once")
            seen.add(x)
    return _levenshtein(s1, s2, free=lambda a, b: _is_var(a) or _is_var(b))


# ---------------------------------------------------------------------------
# trees

def _label(t: Term) -> tuple:
    return (t.is_var, t.name)


def _forest_distance(t1: Term, t2: Term, var_rule: bool, stats: Stats | None,
                     memo: dict | None = None) -> int:
    # Forests are tuples of trees; the rightmost tree is the last item.
    memo = {} if memo is None else memo
    before = len(memo)

    def dist(f1: tuple, f2: tuple) -> int:
        key = (f1, f2)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not f1 and not f2:
            best = 0
        elif not f2:
            best = dist(f1[:-1] + f1[-1].args, ()) + 1
        elif not f1:
            best = dist((), f2[:-1] + f2[-1].args) + 1
        else:
            a, b = f1[-1], f2[-1]
            best = min(
                dist(f1[:-1] + a.args, f2) + 1,
                dist(f1, f2[:-1] + b.args) + 1,
                dist(f1[:-1], f2[:-1]) + dist(a.args, b.args) + (_label(a) != _label(b)),
            )
            if var_rule and (a.is_var or b.is_var):
                best = min(best, dist(f1[:-1], f2[:-1]))
        memo[key] = best
        return best

    limit = sys.getrecursionlimit()
    need = 4 * (t1.size + t2.size) + 100
    if need > limit:
        sys.setrecursionlimit(need)
    try:
        d = dist((t1,), (t2,))
    finally:
        sys.setrecursionlimit(limit)
    if stats is not None:
        stats.table_cells += len(memo) - before
        stats.node_pairs += t1.size * t2.size
    return d


def tree_edit_distance(t1: Term, t2: Term, *, stats: Stats | None = None,
                       memo: dict | None = None) -> int:
    """Unit-cost ordered tree edit distance (labels are symbol names).

    ``memo`` may be shared between calls on related trees to reuse forest
    subresults.
    """
    if var_counts(t1) or var_counts(t2):
        raise PreconditionError("tree_edit_distance: terms must be variable-free")
    return _forest_distance(t1, t2, False, stats, memo)


def tree_edit_distance_do_vars(t1: Term, t2: Term, *, stats: Stats | None = None) -> int:
    """Tree edit distance with variables for DO inputs.

    Same forest recursion as :func:`tree_edit_distance`, plus a free match of
    a rightmost tree against a lone variable node.  Every variable must occur
    once across both terms.
    """
    if not is_do_term(t1, t2):
        raise PreconditionError(
            "tree_edit_distance_do_vars: every variable must occur exactly once across both terms")
    return _forest_distance(t1, t2, True, stats)
