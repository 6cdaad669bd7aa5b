"""Commutative unification.

* :func:`commut_equal_ground` - ground equality via :func:`test_commut_ident`.
* :func:`commut_match` - matching, O(2^k poly(m, n)) in the pattern's variable count.
* :func:`commut_unify` - unification by enumerating variable-to-node maps,
  polynomial for a bounded number of variables.

Symbols tagged ``comm`` (or ``ac``) may swap their two arguments; associativity
is not modelled here.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence

from .counters import Stats
from .errors import InvariantViolation, PreconditionError, ResourceLimitError
from .terms import (App, DagNode, Substitution, Term, TermDag, Theory, Var, build_dag, is_ground, order_key,
                    subterms, var_counts)

SubstitutionSet = frozenset  # of Substitution

__all__ = ["SubstitutionSet", "join", "commut_equal_ground", "test_commut_ident",
           "commut_match", "commut_unify", "comm_normal"]


def _require_no_assoc(*terms: Term) -> None:
    for t in terms:
        for s in subterms(t):
            if not s.is_var and s.sym.theory is Theory.ASSOC:
                raise PreconditionError(
                    f"symbol {s.name!r} is associative; the commutative algorithms do not "
                    "handle associativity")


def _commutative(sym) -> bool:
    return sym is not None and sym.theory.commutative


def test_commut_ident(r1: int, r2: int, g: TermDag, *, stats: Stats | None = None) -> bool:
    """Decide whether two DAG nodes denote equal terms modulo commutativity.

    Fills ``D[u][v]`` over all node pairs, children first.  Variable leaves are
    treated as distinct opaque constants.
    """
    nodes = g.nodes
    n = len(nodes)
    D = [[False] * n for _ in range(n)]
    # cells whose nodes differ in label, kind or arity are false by the
    # pseudo-code's own rules, so only same-signature nodes are visited
    groups: dict[tuple, list[int]] = {}
    for v, nv in enumerate(nodes):
        groups.setdefault((nv.label, nv.is_var, len(nv.children)), []).append(v)
    for u in range(n):
        nu = nodes[u]
        Du = D[u]
        same = groups[(nu.label, nu.is_var, len(nu.children))]
        if not nu.children:
            for v in same:
                Du[v] = True
            continue
        swap = len(nu.children) == 2 and _commutative(nu.sym)
        for v in same:
            if u == v:
                Du[v] = True
                continue
            cv = nodes[v].children
            if swap:
                uL, uR = nu.children
                vL, vR = cv
                Du[v] = (D[uL][vL] and D[uR][vR]) or (D[uL][vR] and D[uR][vL])
            else:
                Du[v] = all(D[a][b] for a, b in zip(nu.children, cv))
    if stats is not None:
        stats.node_pairs += n * n
        stats.table_cells += n * n
    return D[r1][r2]


# keep pytest from collecting the public name as a test
test_commut_ident.__test__ = False


def commut_equal_ground(t1: Term, t2: Term) -> bool:
    """Ground equality modulo commutativity (unordered tree isomorphism)."""
    if not (is_ground(t1) and is_ground(t2)):
        raise PreconditionError("commut_equal_ground: terms must be variable-free")
    _require_no_assoc(t1, t2)
    g = build_dag([t1, t2])
    return test_commut_ident(g.roots[0], g.roots[1], g)


def comm_normal(t: Term) -> Term:
    """Representative of ``t``'s class: arguments of commutative nodes sorted."""
    memo: dict[Term, Term] = {}
    for s in subterms(t):
        if s in memo:
            continue
        if s.is_var or not s.args:
            memo[s] = s
            continue
        args = [memo[a] for a in s.args]
        if _commutative(s.sym) and len(args) == 2:
            args.sort(key=order_key)
        memo[s] = App(s.sym, args)
    return memo[t]


def _compatible(a: Substitution, b: Substitution) -> bool:
    if len(b) < len(a):
        a, b = b, a
    for k, v in a.items():
        w = b.get(k)
        if w is not None and w != v:
            return False
    return True


def join(s1: Iterable[Substitution], s2: Iterable[Substitution]) -> frozenset:
    """All unions of a compatible pair from ``s1`` × ``s2``.

    Two substitutions are compatible when no shared variable is bound to
    different terms.
    """
    s2 = list(s2)
    out = set()
    for a in s1:
        for b in s2:
            if _compatible(a, b):
                out.add(a if len(b) == 0 else b if len(a) == 0 else
                        Substitution({**a, **b}))
    return frozenset(out)


def _positions(t: Term):
    """Post-order occurrences with children indices and depths."""
    nodes, kids, depth = [], [], []
    stack = [(t, 0, False)]
    pending: list[list[int]] = []
    while stack:
        node, d, done = stack.pop()
        if not done and node.args:
            pending.append([])
            stack.append((node, d, True))
            stack.extend((a, d + 1, False) for a in reversed(node.args))
            continue
        kids.append(tuple(pending.pop()) if done else ())
        nodes.append(node)
        depth.append(d)
        if pending:
            pending[-1].append(len(nodes) - 1)
    return nodes, kids, depth


_EMPTY = Substitution({})


def commut_match(t1: Term, t2: Term, *, stats: Stats | None = None) -> tuple[bool, frozenset]:
    """Commutative matching of pattern ``t1`` against ground ``t2``.

    Returns the decision and the set of matching substitutions found at the
    root.  Only same-depth node pairs are ever filled.  Each cell's set is
    checked against the 2^(i-1) size bound, i = distinct variables under the
    pattern node; a violation raises :class:`InvariantViolation`.
    """
    if not is_ground(t2):
        raise PreconditionError("commut_match: the second term must be variable-free")
    _require_no_assoc(t1, t2)
    n1, k1, d1 = _positions(t1)
    n2, k2, d2 = _positions(t2)
    nf2 = {}
    for v, s in enumerate(n2):
        nf2[v] = comm_normal(s)
    nvars = [len(var_counts(s)) for s in n1]
    nf1 = {u: comm_normal(s) for u, s in enumerate(n1) if nvars[u] == 0}

    by_depth2: dict[int, list[int]] = {}
    for v, d in enumerate(d2):
        by_depth2.setdefault(d, []).append(v)
    D: dict[tuple[int, int], bool] = {}
    Theta: dict[tuple[int, int], frozenset] = {}
    # post-order on t1 visits children before parents; children sit one level deeper
    for u in sorted(range(len(n1)), key=lambda u: -d1[u]):
        tu = n1[u]
        for v in by_depth2.get(d1[u], ()):
            tv = n2[v]
            if tu.is_var:
                theta = frozenset([Substitution({tu: nf2[v]})])
                ok = True
            elif nvars[u] == 0:
                ok = nf1[u] == nf2[v]
                # matched ground subterms contribute the empty substitution, so
                # the parent's join is not wiped out
                theta = frozenset([_EMPTY]) if ok else frozenset()
            elif tu.sym.name != tv.sym.name or len(tu.args) != len(tv.args):
                ok, theta = False, frozenset()
            else:
                cu, cv = k1[u], k2[v]
                orders = [cu]
                if len(cu) == 2 and _commutative(tu.sym):
                    orders.append((cu[1], cu[0]))
                acc: set = set()
                for order in orders:
                    if not all(D[(a, b)] for a, b in zip(order, cv)):
                        continue
                    part = Theta[(order[0], cv[0])]
                    for a, b in zip(order[1:], cv[1:]):
                        part = join(part, Theta[(a, b)])
                        if not part:
                            break
                    acc |= part
                theta = frozenset(acc)
                ok = bool(theta)
            i = nvars[u]
            if i >= 1 and len(theta) > 2 ** (i - 1):
                raise InvariantViolation(
                    f"|Theta| = {len(theta)} exceeds 2^{i - 1} at pattern node {tu}")
            D[(u, v)] = ok
            Theta[(u, v)] = theta
            if stats is not None:
                stats.node_pairs += 1
                stats.table_cells += 1
                stats.max_theta = max(stats.max_theta, len(theta))
    root = (len(n1) - 1, len(n2) - 1)
    ok = D.get(root, False)
    return ok, Theta.get(root, frozenset()) if ok else frozenset()


def commut_unify(t1: Term, t2: Term, k_bound: int = 4, *, variables: Sequence[Var] | None = None,
                 stats: Stats | None = None) -> tuple[bool, Substitution | None]:
    """Commutative unification for a bounded number of variables.

    Every map from the k variables to the m + n node occurrences of the two
    terms is tried, in order (variables in ``variables`` order, targets in
    post-order of ``t1`` then ``t2``).  Maps whose replacement graph has a
    cycle other than a self-loop are skipped; a variable mapped onto one of
    its own occurrences stays an opaque constant.  The shared DAG of the
    instantiated terms is checked with :func:`test_commut_ident`; mappings
    under which the two sides would differ in size are skipped first, since
    the test cannot succeed on them.  The first success is decoded into a
    substitution; self-looped variables stay unbound.
    """
    _require_no_assoc(t1, t2)
    if variables is None:
        variables = list(dict.fromkeys([*var_counts(t1), *var_counts(t2)]))
    else:
        variables = list(variables)
    k = len(variables)
    if k > k_bound:
        raise ResourceLimitError(f"{k} variables exceed the bound", bound="k_bound",
                                 limit=k_bound, required=k, flag="--k-bound")
    g = build_dag([t1, t2])
    r1, r2 = g.roots
    positions = [g.add_term(s) for s in (*subterms(t1), *subterms(t2))]
    var_node = {x: g.add_term(x) for x in variables}
    var_of_node = {nid: x for x, nid in var_node.items()}

    total = len(positions) ** k
    n1, n2 = g.nodes[r1], g.nodes[r2]
    if not n1.is_var and not n2.is_var and (n1.label, len(n1.children)) != (
            n2.label, len(n2.children)):
        # distinct root symbols survive every mapping: all candidates fail
        if stats is not None:
            stats.enumerated += total
        return False, None
    own = [var_node[x] for x in variables]
    below = _variables_below(g, own)
    size, occ = _tree_measures(g, own)

    for choice in itertools.product(positions, repeat=k):
        if stats is not None:
            stats.enumerated += 1
        if _has_cycle(choice, own, below):
            continue
        if not _sizes_agree(choice, own, size, occ, r1, r2):
            continue
        target = dict(zip(variables, choice))
        built = _instantiate(g, (r1, r2), target, var_of_node)
        if built is None:
            continue
        h, (n1, n2), new_id = built
        if test_commut_ident(n1, n2, h, stats=stats):
            theta = {}
            for x in variables:
                value = h.term(new_id[var_node[x]])
                if value != x:
                    theta[x] = value
            return True, Substitution(theta)
    return False, None


def _variables_below(g: TermDag, var_ids: list[int]) -> list[int]:
    """Bitmask, per node, of the enumerated variables in its subtree."""
    bit = {nid: 1 << i for i, nid in enumerate(var_ids)}
    below = []
    for nid, node in enumerate(g.nodes):
        m = bit.get(nid, 0)
        for c in node.children:
            m |= below[c]
        below.append(m)
    return below


def _tree_measures(g: TermDag, var_ids: list[int]) -> tuple[list[int], list[list[int]]]:
    """Unfolded tree size and per-variable occurrence counts of every node."""
    pos = {nid: i for i, nid in enumerate(var_ids)}
    size: list[int] = []
    occ: list[list[int]] = []
    for nid, node in enumerate(g.nodes):
        counts = [0] * len(var_ids)
        if nid in pos:
            counts[pos[nid]] = 1
        total = 1
        for c in node.children:
            total += size[c]
            counts = [a + b for a, b in zip(counts, occ[c])]
        size.append(total)
        occ.append(counts)
    return size, occ


def _sizes_agree(choice, own, size, occ, r1, r2) -> bool:
    """Would the instantiated roots have equal size?

    Commutativity preserves size, so a mismatch means the identity test
    must fail; the mapping can be skipped without building its DAG.
    """
    k = len(choice)
    value = [1] * k
    for _ in range(k):
        value = [1 if choice[i] == own[i] else
                 size[choice[i]] + sum(o * (v - 1) for o, v in zip(occ[choice[i]], value))
                 for i in range(k)]

    def inst(r):
        return size[r] + sum(o * (v - 1) for o, v in zip(occ[r], value))

    return inst(r1) == inst(r2)


def _has_cycle(choice: Sequence[int], own: list[int], below: list[int]) -> bool:
    """Does ``x_i -> variables under M(x_i)`` have a cycle other than a self-loop?"""
    k = len(choice)
    succ = [0 if choice[i] == own[i] else below[choice[i]] for i in range(k)]
    # repeatedly drop variables with no successors left; a leftover means a cycle
    alive = (1 << k) - 1
    changed = True
    while changed:
        changed = False
        for i in range(k):
            if alive >> i & 1 and not succ[i] & alive:
                alive &= ~(1 << i)
                changed = True
    return alive != 0


def _instantiate(g: TermDag, roots, target: dict, var_of_node: dict):
    """Rebuild ``g`` with each variable node replaced by its target node.

    Returns ``None`` when the replacement graph has a non-self-loop cycle.
    """
    h = TermDag()
    index = h._index
    hnodes = h.nodes
    nodes = g.nodes
    new_id: dict[int, int] = {}
    state: dict[int, int] = {}

    def intern(key, node):
        nid = index.get(key)
        if nid is None:
            nid = len(hnodes)
            hnodes.append(DagNode(key[0], key[1], key[2], node.sym))
            index[key] = nid
        return nid

    for root in roots:
        stack = [(root, False)]
        while stack:
            nid, expanded = stack.pop()
            if expanded:
                node = nodes[nid]
                x = var_of_node.get(nid) if node.is_var else None
                if x is not None and target[x] != nid:
                    new_id[nid] = new_id[target[x]]
                elif node.is_var:
                    new_id[nid] = intern((node.label, True, ()), node)
                else:
                    new_id[nid] = intern(
                        (node.label, False, tuple([new_id[c] for c in node.children])), node)
                state[nid] = 2
                continue
            s = state.get(nid)
            if s == 2:
                continue
            if s == 1:
                return None
            state[nid] = 1
            stack.append((nid, True))
            node = nodes[nid]
            x = var_of_node.get(nid) if node.is_var else None
            if x is not None:
                if target[x] != nid:
                    stack.append((target[x], False))
            else:
                stack.extend([(c, False) for c in node.children])
    return h, tuple(new_id[r] for r in roots), new_id
