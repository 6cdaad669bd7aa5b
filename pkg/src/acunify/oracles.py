"""Brute-force reference engines.

Everything here works from definitions (normal forms, exhaustive enumeration,
backtracking over decompositions) and shares no code with the algorithms it
is used to check, apart from the term data types.
"""
from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Iterator, Sequence

from .errors import PreconditionError, ResourceLimitError
from .terms import App, Substitution, Symbol, Term, Theory, Var, order_key, subterms, var_counts

__all__ = [
    "normal_form", "equal_modulo", "ground_terms", "default_pool", "brute_match",
    "brute_unifiable", "c_unify", "enumerate_terms", "lcs_brute", "brute_str_match_vdc", "brute_tree_edit_distance_vars",
    "embeds_under_substitution",
]

DEFAULT_BUDGET = 10**7


def normal_form(t: Term) -> Term:
    """Flatten associative symbols, then sort arguments of commutative ones."""
    if t.is_var or not t.args:
        return t
    args = [normal_form(a) for a in t.args]
    th = t.sym.theory
    if th.associative:
        flat = []
        for a in args:
            if not a.is_var and a.args and a.sym.name == t.sym.name:
                flat.extend(a.args)
            else:
                flat.append(a)
        args = flat
    if th.commutative:
        args = sorted(args, key=order_key)
    return App(t.sym, args)


def _ground(t: Term) -> bool:
    return not var_counts(t)


def equal_modulo(t1: Term, t2: Term, sig=None) -> bool:
    """Ground equality under each symbol's declared theory."""
    if not (_ground(t1) and _ground(t2)):
        raise PreconditionError("equal_modulo: terms must be variable-free")
    return normal_form(t1) == normal_form(t2)


def _fold(sym: Symbol, items: Sequence[Term]) -> Term:
    return items[0] if len(items) == 1 else App(sym, items)


# ---------------------------------------------------------------------------
# term pools

def ground_terms(symbols: Iterable[Symbol], max_size: int) -> list[Term]:
    """Every ground term up to ``max_size`` nodes, one per normal form.

    Theory symbols are built as binary applications.
    """
    symbols = sorted(set(symbols), key=lambda s: (s.arity, s.name))
    by_size: dict[int, list[Term]] = {1: [App(s) for s in symbols if s.arity == 0]}
    for size in range(2, max_size + 1):
        out = []
        for s in symbols:
            if s.arity == 0:
                continue
            for parts in _compositions(size - 1, s.arity):
                if any(p not in by_size for p in parts):
                    continue
                for args in itertools.product(*(by_size[p] for p in parts)):
                    out.append(App(s, args))
        by_size[size] = out
    seen: dict[Term, Term] = {}
    for size in sorted(by_size):
        for t in by_size[size]:
            seen.setdefault(normal_form(t), t)
    return list(seen.values())


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def _symbols_of(*terms: Term) -> set[Symbol]:
    out = set()
    for t in terms:
        for s in subterms(t):
            if not s.is_var:
                out.add(s.sym if s.args else Symbol(s.sym.name, 0))
    return out


def _argument_groups(t: Term) -> Iterator[Term]:
    """Folds of consecutive runs (associative) or sub-multisets (AC) of arguments."""
    if t.is_var or not t.args or not t.sym.theory.associative:
        return
    args = list(normal_form(t).args)
    if t.sym.theory.commutative:
        for r in range(2, len(args) + 1):
            for combo in itertools.combinations(args, r):
                yield App(t.sym, combo)
    else:
        for i in range(len(args)):
            for j in range(i + 2, len(args) + 1):
                yield App(t.sym, args[i:j])


def default_pool(t1: Term, t2: Term, max_size: int = 4, symbols: Iterable[Symbol] = ()) -> list[Term]:
    """Candidate ground bindings for brute-force search.

    Every subterm of both inputs and every folded argument group of their
    associative nodes, with all variables set to one constant (one copy per
    constant), plus every ground term up to ``max_size`` over the symbols in
    play.  Deduplicated by normal form.
    """
    syms = _symbols_of(t1, t2) | set(symbols)
    consts = sorted((s for s in syms if s.arity == 0), key=lambda s: s.name)
    if not consts:
        consts = [Symbol("_k", 0)]
        syms.add(consts[0])
    cands: list[Term] = []
    pieces = []
    for t in (t1, t2):
        for s in subterms(t):
            if not s.is_var:
                pieces.append(s)
                pieces.extend(_argument_groups(s))
    for s in pieces:
        if _ground(s):
            cands.append(s)
        else:
            cands.extend(_instantiate_all(s, App(c)) for c in consts)
    cands.extend(ground_terms(syms, max_size))
    seen: dict[Term, Term] = {}
    for c in cands:
        seen.setdefault(normal_form(c), c)
    return list(seen.values())


def _instantiate_all(t: Term, value: Term) -> Term:
    if t.is_var:
        return value
    if not t.args:
        return t
    return App(t.sym, [_instantiate_all(a, value) for a in t.args])


# ---------------------------------------------------------------------------
# exact matching by backtracking

def brute_match(pattern: Term, ground: Term) -> Iterator[dict]:
    """Yield every binding dict ``θ`` with ``pattern θ ≡ ground``, modulo theories.

    Explores all decompositions: argument orders for commutative symbols,
    segment splits for associative ones, sub-multiset splits for AC ones.
    Bound values are in normal form.  Duplicates may be yielded.
    """
    if not _ground(ground):
        raise PreconditionError("brute_match: the second term must be variable-free")
    yield from _match(normal_form(pattern), normal_form(ground), {})


def _match(p: Term, g: Term, theta: dict) -> Iterator[dict]:
    if p.is_var:
        bound = theta.get(p)
        if bound is None:
            yield {**theta, p: g}
        elif bound == g:
            yield theta
        return
    if g.is_var or p.sym.name != g.sym.name:
        return
    if not p.args or not g.args:
        if not p.args and not g.args:
            yield theta
        return
    th = p.sym.theory
    if th is Theory.FREE:
        if len(p.args) == len(g.args):
            yield from _match_seq(p.args, g.args, theta)
    elif th is Theory.COMM:
        if len(p.args) == len(g.args) == 2:
            yield from _match_seq(p.args, g.args, theta)
            if g.args[0] != g.args[1]:
                yield from _match_seq(p.args, g.args[::-1], theta)
    elif th is Theory.ASSOC:
        yield from _match_assoc(p.sym, list(p.args), list(g.args), theta)
    else:
        rigid = [a for a in p.args if not a.is_var]
        flexible = [a for a in p.args if a.is_var]
        yield from _match_ac(p.sym, rigid + flexible, list(g.args), theta)


def _match_seq(ps: Sequence[Term], gs: Sequence[Term], theta: dict) -> Iterator[dict]:
    if not ps:
        yield theta
        return
    for th in _match(ps[0], gs[0], theta):
        yield from _match_seq(ps[1:], gs[1:], th)


def _as_args(sym: Symbol, t: Term) -> list[Term]:
    if not t.is_var and t.args and t.sym.name == sym.name:
        return list(t.args)
    return [t]


def _match_assoc(sym: Symbol, ps: list, gs: list, theta: dict) -> Iterator[dict]:
    if not ps:
        if not gs:
            yield theta
        return
    if len(gs) < len(ps):
        return
    head, rest = ps[0], ps[1:]
    if head.is_var:
        bound = theta.get(head)
        if bound is not None:
            need = _as_args(sym, bound)
            if gs[:len(need)] == need:
                yield from _match_assoc(sym, rest, gs[len(need):], theta)
            return
        for k in range(1, len(gs) - len(rest) + 1):
            value = _fold(sym, gs[:k])
            yield from _match_assoc(sym, rest, gs[k:], {**theta, head: value})
    else:
        for th in _match(head, gs[0], theta):
            yield from _match_assoc(sym, rest, gs[1:], th)


def _remove(items: list, taken: Sequence) -> list | None:
    rest = list(items)
    for t in taken:
        try:
            rest.remove(t)
        except ValueError:
            return None
    return rest


def _match_ac(sym: Symbol, ps: list, gs: list, theta: dict) -> Iterator[dict]:
    if not ps:
        if not gs:
            yield theta
        return
    if len(gs) < len(ps):
        return
    head, rest = ps[0], ps[1:]
    if not head.is_var:
        tried = set()
        for j, g in enumerate(gs):
            if g in tried:
                continue
            tried.add(g)
            for th in _match(head, g, theta):
                yield from _match_ac(sym, rest, gs[:j] + gs[j + 1:], th)
        return
    bound = theta.get(head)
    if bound is not None:
        remaining = _remove(gs, _as_args(sym, bound))
        if remaining is not None:
            yield from _match_ac(sym, rest, remaining, theta)
        return
    seen = set()
    for r in range(1, len(gs) - len(rest) + 1):
        for idx in itertools.combinations(range(len(gs)), r):
            chosen = tuple(gs[i] for i in idx)
            if chosen in seen:
                continue
            seen.add(chosen)
            remaining = [g for i, g in enumerate(gs) if i not in idx]
            yield from _match_ac(sym, rest, remaining, {**theta, head: _fold(sym, chosen)})


def _substitute(t: Term, theta: dict) -> Term:
    if t.is_var:
        return theta.get(t, t)
    if not t.args:
        return t
    return App(t.sym, [_substitute(a, theta) for a in t.args])


def _occurs_in(x: Var, t: Term) -> bool:
    return any(s == x for s in subterms(t))


def c_unify(t1: Term, t2: Term) -> Substitution | None:
    """Exact unification when no symbol is associative.

    Plain rule-based unification that, at every commutative pair, tries both
    ways of pairing the arguments (full backtracking).  Sound and complete
    because two terms are equal modulo commutativity iff their heads agree
    and the arguments agree in one of the two pairings, and commutativity
    preserves term size (so the occurs check stays valid).
    """
    for t in (t1, t2):
        for s in subterms(t):
            if not s.is_var and s.args and s.sym.theory.associative:
                raise PreconditionError("c_unify: associative symbols are not supported")

    def solve(eqs: list, theta: dict) -> dict | None:
        while eqs:
            a, b = eqs.pop()
            a, b = _walk(a, theta), _walk(b, theta)
            if a == b:
                continue
            if b.is_var and not a.is_var:
                a, b = b, a
            if a.is_var:
                b = _resolve(b, theta)
                if _occurs_in(a, b):
                    return None
                theta = {**theta, a: b}
                continue
            if a.sym.name != b.sym.name or len(a.args) != len(b.args):
                return None
            if a.sym.theory.commutative and len(a.args) == 2:
                (a1, a2), (b1, b2) = a.args, b.args
                found = solve(eqs + [(a1, b1), (a2, b2)], theta)
                if found is not None:
                    return found
                eqs = eqs + [(a1, b2), (a2, b1)]
                continue
            eqs = eqs + list(zip(a.args, b.args))
        return theta

    theta = solve([(t1, t2)], {})
    if theta is None:
        return None
    return Substitution({x: _resolve(v, theta) for x, v in theta.items()})


def _walk(t: Term, theta: dict) -> Term:
    while t.is_var and t in theta:
        t = theta[t]
    return t


def _resolve(t: Term, theta: dict) -> Term:
    t = _walk(t, theta)
    if t.is_var or not t.args:
        return t
    return App(t.sym, [_resolve(a, theta) for a in t.args])


def brute_unifiable(t1: Term, t2: Term, sig=None, pool: Sequence[Term] | None = None, *,
                    budget: int = DEFAULT_BUDGET) -> Substitution | None:
    """Search for a unifier modulo the symbols' theories.

    * no associative symbol and no ``pool``: :func:`c_unify` (exact);
    * one side ground: exhaustive matching via :func:`brute_match` (exact);
    * otherwise every map from one side's variables into ``pool`` (default
      :func:`default_pool`) is tried, the other side is matched exactly
      against the instantiated term, and then the roles are swapped.  This
      is complete only relative to the pool.

    Every answer is re-checked with :func:`equal_modulo` after grounding any
    variables left over.
    """
    v1, v2 = list(var_counts(t1)), list(var_counts(t2))
    if pool is None and v1 and v2 and not _has_assoc(t1, t2):
        theta = c_unify(t1, t2)
        return None if theta is None else _checked(t1, t2, dict(theta))
    order = [(t1, t2, v2), (t2, t1, v1)]
    if not v2:
        order = [(t1, t2, [])]
    elif not v1:
        order = [(t2, t1, [])]
    if pool is None and any(vs for _, _, vs in order):
        pool = default_pool(t1, t2)
    total = sum(len(pool) ** len(vs) if vs else 1 for _, _, vs in order)
    if total > budget:
        raise ResourceLimitError("oracle enumeration exceeds the budget", bound="budget",
                                 limit=budget, required=total, flag="--budget")
    for pattern, other, enum_vars in order:
        for values in itertools.product(pool or [], repeat=len(enum_vars)):
            partial = dict(zip(enum_vars, values))
            target = _substitute(other, partial)
            inst = _substitute(pattern, partial)
            for theta in brute_match(inst, target):
                found = _checked(t1, t2, {**partial, **theta})
                if found is not None:
                    return found
    return None


def _has_assoc(*terms: Term) -> bool:
    return any(not s.is_var and s.args and s.sym.theory.associative
               for t in terms for s in subterms(t))


def _checked(t1: Term, t2: Term, theta: dict) -> Substitution | None:
    """Ground leftover variables with a fresh constant and confirm equality."""
    filler = App(Symbol("_k", 0))
    rest = {x: filler for t in (t1, t2) for x in var_counts(t) if x not in theta}
    ground = {x: _substitute(v, rest) for x, v in theta.items()}
    ground.update(rest)
    if not equal_modulo(_substitute(t1, ground), _substitute(t2, ground)):
        return None
    return Substitution(theta)


def enumerate_terms(max_size: int, symbols: Sequence[Symbol], leaves: Sequence[Term]) -> list[Term]:
    """Every term (raw, not up to any theory) with at most ``max_size`` nodes."""
    by_size: dict[int, list[Term]] = {1: list(leaves)}
    for size in range(2, max_size + 1):
        out = []
        for sym in symbols:
            if sym.arity == 0:
                continue
            for parts in _compositions(size - 1, sym.arity):
                for args in itertools.product(*(by_size[p] for p in parts)):
                    out.append(App(sym, args))
        by_size[size] = out
    return [t for size in sorted(by_size) for t in by_size[size]]


# ---------------------------------------------------------------------------
# strings

def lcs_brute(strings: Sequence[Sequence[str]], l: int) -> bool:
    """Is there a common subsequence of length ``l``?  Tries every candidate."""
    if l <= 0:
        return True
    if not strings:
        raise PreconditionError("lcs_brute: need at least one string")
    letters = sorted(set(strings[0]))
    for cand in itertools.product(letters, repeat=l):
        if all(_is_subsequence(cand, s) for s in strings):
            return True
    return False


def _is_subsequence(small: Sequence, big: Sequence) -> bool:
    it = iter(big)
    return all(any(c == b for b in it) for c in small)


def brute_str_match_vdc(a: Sequence, b: Sequence, matches: Callable[[int, int], bool] | None = None,
                        is_star: Callable[[object], bool] | None = None) -> bool:
    """Reference matcher for sequences with variable-length don't cares.

    Tries every split of both sequences into aligned blocks, left to right:
    a non-star item against a non-star item, or a star against a nonempty run
    of the other sequence.
    """
    if is_star is None:
        from .assoc import Star

        def is_star(x):
            return isinstance(x, Star)
    if matches is None:
        def matches(i, j):
            return a[i] == b[j]
    p, q = len(a), len(b)

    def go(i: int, j: int) -> bool:
        if i == p or j == q:
            return i == p and j == q
        sa, sb = is_star(a[i]), is_star(b[j])
        if sa and any(go(i + 1, j + k) for k in range(1, q - j + 1)):
            return True
        if sb and any(go(i + k, j + 1) for k in range(1, p - i + 1)):
            return True
        return not sa and not sb and matches(i, j) and go(i + 1, j + 1)

    return go(0, 0)


def embeds_under_substitution(s1: Sequence, s2: Sequence,
                              sigma: Iterable[str] | None = None) -> Substitution | None:
    """Find θ: Γ → Σ making ``s1 θ`` a subsequence of ``s2 θ``.

    Depth-first over embeddings, binding variables on first use (both sides
    may hold variables; a pair of fresh variables branches over ``sigma``).
    Failing states are memoised on the two positions and the bindings that
    still matter for the unread suffixes.  Variables left unbound are free
    and are set to the smallest symbol of ``sigma`` in the result.
    """
    if sigma is None:
        sigma = {x for x in (*s1, *s2) if not isinstance(x, Var)}
    sigma = sorted(set(sigma))
    n, m = len(s1), len(s2)

    def suffix_vars(s):
        out = [frozenset()] * (len(s) + 1)
        for i in range(len(s) - 1, -1, -1):
            out[i] = out[i + 1] | ({s[i]} if isinstance(s[i], Var) else set())
        return out

    later1, later2 = suffix_vars(s1), suffix_vars(s2)
    dead: set = set()

    def value(x, theta):
        return theta.get(x) if isinstance(x, Var) else x

    def go(i: int, j: int, theta: dict) -> dict | None:
        if i == n:
            return theta
        if m - j < n - i:
            return None
        live = later1[i] | later2[j]
        key = (i, j, frozenset((k, v) for k, v in theta.items() if k in live))
        if key in dead:
            return None
        x = s1[i]
        vx = value(x, theta)
        for jj in range(j, m - (n - i) + 1):
            y = s2[jj]
            vy = value(y, theta)
            if vx is not None and vy is not None:
                options = [theta] if vx == vy else []
            elif vx is not None:
                options = [{**theta, y: vx}]
            elif vy is not None:
                options = [{**theta, x: vy}]
            elif x == y:
                options = [{**theta, x: c} for c in sigma]
            else:
                options = [{**theta, x: c, y: c} for c in sigma]
            for opt in options:
                found = go(i + 1, jj + 1, opt)
                if found is not None:
                    return found
        dead.add(key)
        return None

    found = go(0, 0, {})
    if found is None:
        return None
    for x in (*s1, *s2):
        if isinstance(x, Var) and x not in found and sigma:
            found[x] = sigma[0]
    return Substitution(found)


# ---------------------------------------------------------------------------
# trees

def brute_tree_edit_distance_vars(t1: Term, t2: Term, pool: Sequence[Term]) -> int:
    """Minimum plain tree edit distance over all ground instantiations from ``pool``.

    Candidates are tried by increasing size gap, a lower bound on the
    distance, and the scan stops once the gap reaches the best distance.
    """
    from .edit import tree_edit_distance

    c1, c2 = var_counts(t1), var_counts(t2)
    variables = list(dict.fromkeys([*c1, *c2]))
    weight = [c1.get(x, 0) - c2.get(x, 0) for x in variables]
    base = t1.size - t2.size
    scored = sorted(
        (abs(base + sum(w * (v.size - 1) for w, v in zip(weight, values))), n, values)
        for n, values in enumerate(itertools.product(pool, repeat=len(variables))))
    best = None
    memo: dict = {}
    for gap, _, values in scored:
        if best is not None and gap >= best:
            break
        theta = dict(zip(variables, values))
        d = tree_edit_distance(_substitute(t1, theta), _substitute(t2, theta), memo=memo)
        if best is None or d < best:
            best = d
    return best
