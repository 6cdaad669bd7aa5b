"""Syntactic (free-theory) unification and matching.

Union-find over term values with an explicit work stack; the occurs check
happens once, when the solved classes are resolved into a substitution.
"""
from __future__ import annotations

from .errors import PreconditionError
from .terms import App, Substitution, Term, Var, is_ground, var_counts


class _UnionFind:
    def __init__(self):
        self.parent: dict[Term, Term] = {}

    def find(self, t: Term) -> Term:
        root = t
        while root in self.parent:
            root = self.parent[root]
        while t in self.parent and self.parent[t] is not root:
            self.parent[t], t = root, self.parent[t]
        return root

    def union(self, child: Term, root: Term) -> None:
        self.parent[child] = root


def unify(t1: Term, t2: Term) -> Substitution | None:
    """Return a unifier of ``t1`` and ``t2`` or ``None``.

    All symbols are treated as free.  The result is idempotent: no bound term
    mentions a bound variable.
    """
    uf = _UnionFind()
    work = [(t1, t2)]
    while work:
        a, b = work.pop()
        a, b = uf.find(a), uf.find(b)
        if a == b:
            continue
        if a.is_var:
            uf.union(a, b)
        elif b.is_var:
            uf.union(b, a)
        else:
            if a.sym.name != b.sym.name or len(a.args) != len(b.args):
                return None
            uf.union(a, b)
            work.extend(zip(a.args, b.args))

    variables = list(dict.fromkeys([*var_counts(t1), *var_counts(t2)]))
    resolved: dict[Term, Term] = {}
    # 0 = unvisited, 1 = on stack, 2 = done
    state: dict[Term, int] = {}

    def resolve(start: Term) -> Term | None:
        stack = [(start, False)]
        while stack:
            node, expanded = stack.pop()
            rep = uf.find(node)
            if rep.is_var:
                resolved[node] = rep
                continue
            if expanded:
                resolved[node] = App(rep.sym, [resolved[a] for a in rep.args])
                if node is not rep:
                    resolved[rep] = resolved[node]
                state[rep] = 2
                continue
            if state.get(rep) == 2:
                resolved[node] = resolved[rep]
                continue
            if state.get(rep) == 1:
                return None  # occurs check: a class contains a term over itself
            state[rep] = 1
            stack.append((node, True))
            stack.extend((a, False) for a in rep.args)
        return resolved[start]

    bindings = {}
    for v in variables:
        value = resolve(v)
        if value is None:
            return None
        if value != v:
            bindings[v] = value
    return Substitution(bindings)


def match_syntactic(pattern: Term, ground: Term) -> Substitution | None:
    """One-sided unification: find θ with ``pattern θ == ground``."""
    if not is_ground(ground):
        raise PreconditionError("match_syntactic: the second term must be variable-free")
    theta: dict[Var, Term] = {}
    work = [(pattern, ground)]
    while work:
        p, g = work.pop()
        if p.is_var:
            bound = theta.get(p)
            if bound is None:
                theta[p] = g
            elif bound != g:
                return None
        elif p.sym.name != g.sym.name or len(p.args) != len(g.args):
            return None
        else:
            work.extend(zip(p.args, g.args))
    return Substitution(theta)
