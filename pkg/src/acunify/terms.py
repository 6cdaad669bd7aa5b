"""First-order terms over a signature with per-symbol equational theories.

Terms are immutable, hashable values.  A constant is an :class:`App` with no
arguments.  Symbols carry their theory tag so an algorithm can tell an
associative ``f`` from a free one without a separate signature argument.

>>> sig = Signature.build(theories={"f": "assoc"})
>>> t = sig.parse("f(f(a,b),f(g(c,d),e))")
>>> format_term(canonicalize(t))
'f(a,b,g(c,d),e)'
"""
from __future__ import annotations

import enum
import re
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ArityError, TermSyntaxError, UndeclaredSymbolError

__all__ = [
    "Theory", "Symbol", "Signature", "Var", "App", "Term", "Substitution",
    "parse_term", "format_term", "apply_substitution", "occurs", "variables_of",
    "var_counts", "is_do_term", "is_ground", "canonicalize", "subterms",
    "term_size", "TermDag", "build_dag", "order_key",
]


class Theory(enum.Enum):
    FREE = "free"
    ASSOC = "assoc"
    COMM = "comm"
    AC = "ac"

    @property
    def associative(self) -> bool:
        return self in (Theory.ASSOC, Theory.AC)

    @property
    def commutative(self) -> bool:
        return self in (Theory.COMM, Theory.AC)

    @classmethod
    def parse(cls, value: str | Theory) -> Theory:
        if isinstance(value, Theory):
            return value
        aliases = {"a": "assoc", "c": "comm", "assoccomm": "ac", "associative": "assoc",
                   "commutative": "comm"}
        value = value.lower()
        return cls(aliases.get(value, value))


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int
    theory: Theory = Theory.FREE

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError(f"negative arity for {self.name!r}")
        if self.theory is not Theory.FREE and self.arity != 2:
            raise ValueError(
                f"symbol {self.name!r} with theory {self.theory.value} must have arity 2, "
                f"got {self.arity}")

    @property
    def is_constant(self) -> bool:
        return self.arity == 0


class Term:
    """Base class of :class:`Var` and :class:`App`."""

    __slots__ = ()
    is_var = False

    def __repr__(self):
        return f"{type(self).__name__}({format_term(self)!r})"

    def __str__(self):
        return format_term(self)


class Var(Term):
    __slots__ = ("name", "_hash")
    is_var = True
    args = ()

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("var", name))

    def __eq__(self, other):
        return self is other or (type(other) is Var and other.name == self.name)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return order_key(self) < order_key(other)

    @property
    def size(self) -> int:
        return 1


class App(Term):
    """Function application ``sym(args...)``; a constant when ``args`` is empty.

    Equality is structural and compares symbols by name.
    """

    __slots__ = ("sym", "args", "_hash", "_size", "_key")

    def __init__(self, sym: Symbol, args: Iterable[Term] = ()):
        self.sym = sym
        self.args = tuple(args)
        self._hash = hash((sym.name, self.args))
        self._size = 1 + sum(a.size for a in self.args)
        self._key = None

    @property
    def name(self) -> str:
        return self.sym.name

    @property
    def size(self) -> int:
        return self._size

    @property
    def is_constant(self) -> bool:
        return not self.args

    def __eq__(self, other):
        # explicit stack: deep terms would overflow a recursive tuple compare
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if type(b) is not type(a) or hash(a) != hash(b):
                return False
            if type(a) is Var:
                if a.name != b.name:
                    return False
                continue
            if a.sym.name != b.sym.name or len(a.args) != len(b.args):
                return False
            stack.extend(zip(a.args, b.args))
        return True

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return order_key(self) < order_key(other)


def order_key(t: Term) -> tuple:
    """Total order on terms: by symbol name, then children lexicographically.

    Applications sort before variables.
    """
    if t.is_var:
        return (1, t.name)
    if t._key is None:
        t._key = (0, t.sym.name, tuple(order_key(a) for a in t.args))
    return t._key


def term_size(t: Term) -> int:
    return t.size


# ---------------------------------------------------------------------------
# signatures and parsing

_IDENT = re.compile(r"[a-z0-9_&#]+")


class Signature:
    """Symbol table mapping names to :class:`Symbol`.

    In the default (open) mode a symbol used without a declaration gets its
    arity from its first use; later uses must agree.  ``strict=True`` rejects
    undeclared symbols instead.
    """

    def __init__(self, symbols: Iterable[Symbol] = (), *, strict: bool = False):
        self._symbols: dict[str, Symbol] = {}
        self.strict = strict
        for s in symbols:
            self.add(s)

    @classmethod
    def build(cls, theories: Mapping[str, str | Theory] | None = None,
              arities: Mapping[str, int] | None = None, *, strict: bool = False) -> Signature:
        sig = cls(strict=strict)
        for name, th in (theories or {}).items():
            sig.declare(name, 2, th)
        for name, ar in (arities or {}).items():
            sig.declare(name, ar)
        return sig

    def add(self, sym: Symbol) -> Symbol:
        old = self._symbols.get(sym.name)
        if old is not None and old != sym:
            raise ValueError(f"conflicting declarations for {sym.name!r}: {old} vs {sym}")
        self._symbols[sym.name] = sym
        return sym

    def declare(self, name: str, arity: int, theory: str | Theory = Theory.FREE) -> Symbol:
        theory = Theory.parse(theory)
        old = self._symbols.get(name)
        if old is not None and old.theory is not theory and theory is Theory.FREE:
            # an `arity` line after a `theory` line: keep the theory
            theory = old.theory
        if old is not None and (old.arity, old.theory) != (arity, theory):
            if old.theory is Theory.FREE and theory is not Theory.FREE and old.arity == arity:
                del self._symbols[name]
            else:
                raise ValueError(f"conflicting declarations for {name!r}")
        return self.add(Symbol(name, arity, theory))

    def __contains__(self, name: str) -> bool:
        return name in self._symbols

    def __getitem__(self, name: str) -> Symbol:
        return self._symbols[name]

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._symbols.values())

    def __len__(self):
        return len(self._symbols)

    def get(self, name: str) -> Symbol | None:
        return self._symbols.get(name)

    def lookup(self, name: str, nargs: int, pos: int | None = None) -> Symbol:
        sym = self._symbols.get(name)
        if sym is None:
            if self.strict:
                raise UndeclaredSymbolError(f"undeclared symbol {name!r}", pos)
            return self.add(Symbol(name, nargs))
        if sym.theory.associative and nargs >= 2:
            return sym  # flattened form f(a,b,c)
        if nargs != sym.arity:
            raise ArityError(
                f"symbol {name!r} has arity {sym.arity} but is applied to {nargs} argument(s)", pos)
        return sym

    def const(self, name: str) -> App:
        return App(self.lookup(name, 0))

    def app(self, name: str, *args: Term) -> App:
        return App(self.lookup(name, len(args)), args)

    def fresh_constant(self, prefix: str = "_c") -> App:
        i = 1
        while f"{prefix}{i}" in self._symbols:
            i += 1
        return App(self.add(Symbol(f"{prefix}{i}", 0)))

    def parse(self, text: str, variables: Iterable[str] = ()) -> Term:
        return parse_term(text, self, variables)

    def __repr__(self):
        return f"Signature({list(self._symbols.values())!r})"


def parse_term(text: str, sig: Signature, variables: Iterable[str] | Iterable[Var] = ()) -> Term:
    """Parse ``term := ident | ident '(' term (',' term)* ')'``.

    Names listed in ``variables`` become :class:`Var`; everything else is
    looked up (or, in open mode, registered) in ``sig``.
    """
    varnames = {v.name if isinstance(v, Var) else v for v in variables}
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", "", len(text))

    def expect(kind):
        nonlocal pos
        tok = peek()
        if tok[0] != kind:
            want = {"ident": "identifier", "(": "'('", ")": "')'", ",": "','"}.get(kind, kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise TermSyntaxError(f"expected {want}, got {got}", tok[2], text)
        pos += 1
        return tok

    # explicit stack instead of recursion: frames are [name, start, args]
    stack: list[list] = []
    result = None
    while True:
        _, name, start = expect("ident")
        if peek()[0] == "(":
            pos += 1
            stack.append([name, start, []])
            continue
        if name in varnames:
            node: Term = Var(name)
        else:
            node = App(sig.lookup(name, 0, start))
        while True:
            if not stack:
                result = node
                break
            stack[-1][2].append(node)
            tok = peek()
            if tok[0] == ",":
                pos += 1
                break
            expect(")")
            fname, fstart, args = stack.pop()
            if fname in varnames:
                raise TermSyntaxError(f"variable {fname!r} applied to arguments", fstart, text)
            node = App(sig.lookup(fname, len(args), fstart), args)
        if result is not None:
            break
    if pos != len(tokens):
        tok = tokens[pos]
        raise TermSyntaxError(f"unexpected {tok[1]!r} after term", tok[2], text)
    return result


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "(),":
            out.append((ch, ch, i))
            i += 1
        else:
            m = _IDENT.match(text, i)
            if not m:
                raise TermSyntaxError(f"unexpected character {ch!r}", i, text)
            out.append(("ident", m.group(), i))
            i = m.end()
    if not out:
        raise TermSyntaxError("empty term", 0, text)
    return out


def format_term(t: Term) -> str:
    parts: list[str] = []
    stack: list = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif item.is_var or not item.args:
            parts.append(item.name)
        else:
            parts.append(item.name + "(")
            stack.append(")")
            for i, a in enumerate(reversed(item.args)):
                stack.append(a)
                if i < len(item.args) - 1:
                    stack.append(",")
    return "".join(parts)


# ---------------------------------------------------------------------------
# traversal helpers

def subterms(t: Term) -> Iterator[Term]:
    """All subterm occurrences in post-order."""
    stack = [(t, False)]
    while stack:
        node, done = stack.pop()
        if done or node.is_var or not node.args:
            yield node
            continue
        stack.append((node, True))
        for a in reversed(node.args):
            stack.append((a, False))


def var_counts(t: Term) -> dict[Var, int]:
    """Occurrence count per variable, in order of first occurrence."""
    counts: dict[Var, int] = {}
    stack = [t]
    while stack:
        node = stack.pop()
        if node.is_var:
            counts[node] = counts.get(node, 0) + 1
        else:
            stack.extend(reversed(node.args))
    return counts


def variables_of(t: Term) -> frozenset[Var]:
    return frozenset(var_counts(t))


def occurs(x: Var, t: Term) -> bool:
    stack = [t]
    while stack:
        node = stack.pop()
        if node.is_var:
            if node == x:
                return True
        else:
            stack.extend(node.args)
    return False


def is_ground(t: Term) -> bool:
    return not var_counts(t)


def is_do_term(*terms: Term) -> bool:
    """True iff every variable occurs exactly once across ``terms``."""
    seen: set[Var] = set()
    for t in terms:
        for v, c in var_counts(t).items():
            if c > 1 or v in seen:
                return False
            seen.add(v)
    return True


# ---------------------------------------------------------------------------
# substitutions

class Substitution(Mapping):
    """Finite map from variables to terms, applied simultaneously.

    No bound term may mention a variable of the domain; construction fails
    otherwise.  For strings the bound values are plain symbol names.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, bindings: Mapping | Iterable = ()):
        items = bindings.items() if isinstance(bindings, Mapping) else bindings
        m: dict[Var, Term | str] = {}
        for k, v in items:
            k = k if isinstance(k, Var) else Var(k)
            m[k] = v
        for k, v in m.items():
            if isinstance(v, Term):
                for w in var_counts(v):
                    if w in m:
                        raise ValueError(
                            f"binding {k.name}/{format_term(v)} mentions bound variable {w.name}")
        self._map = m
        self._hash = None

    def __getitem__(self, key):
        if not isinstance(key, Var):
            key = Var(key)
        return self._map[key]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Substitution):
            return self._map == other._map
        return NotImplemented

    def sorted_items(self) -> list[tuple[Var, Term | str]]:
        return sorted(self._map.items(), key=lambda kv: kv[0].name)

    def as_strings(self) -> dict[str, str]:
        return {k.name: v if isinstance(v, str) else format_term(v) for k, v in self.sorted_items()}

    def __repr__(self):
        body = ", ".join(f"{k}/{v}" for k, v in self.as_strings().items())
        return "{" + body + "}"


def apply_substitution(t, theta: Mapping):
    """Replace every variable of ``t`` bound in ``theta``, simultaneously.

    ``t`` may be a term or a string (sequence of symbols and :class:`Var`).
    Bound terms are inserted as-is, never re-scanned.
    """
    if not isinstance(t, Term):
        return tuple(theta.get(s, s) if isinstance(s, Var) else s for s in t)
    if not theta:
        return t
    memo: dict[Term, Term] = {}
    stack = [(t, False)]
    while stack:
        node, done = stack.pop()
        if node in memo:
            continue
        if node.is_var:
            memo[node] = theta.get(node, node)
        elif not node.args:
            memo[node] = node
        elif done:
            new = tuple(memo[a] for a in node.args)
            memo[node] = node if all(x is y for x, y in zip(new, node.args)) else App(node.sym, new)
        else:
            stack.append((node, True))
            stack.extend((a, False) for a in node.args)
    return memo[t]


# ---------------------------------------------------------------------------
# canonical forms

def canonicalize(t: Term, sig: Signature | None = None) -> Term:
    """Flatten nested associative symbols and sort AC arguments.

    ``sig`` is accepted for symmetry with the parser; theories are read off
    the symbols themselves.
    """
    memo: dict[Term, Term] = {}
    stack = [(t, False)]
    while stack:
        node, done = stack.pop()
        if node in memo:
            continue
        if node.is_var or not node.args:
            memo[node] = node
        elif not done:
            stack.append((node, True))
            stack.extend((a, False) for a in node.args)
        else:
            args = [memo[a] for a in node.args]
            th = node.sym.theory
            if th.associative:
                flat = []
                for a in args:
                    if not a.is_var and a.args and a.sym.name == node.sym.name:
                        flat.extend(a.args)
                    else:
                        flat.append(a)
                args = flat
            if th is Theory.AC:
                args.sort(key=order_key)
            memo[node] = App(node.sym, args)
    return memo[t]


# ---------------------------------------------------------------------------
# shared DAGs

class DagNode(NamedTuple):
    label: str
    is_var: bool
    children: tuple[int, ...]
    sym: Symbol | None = None


class TermDag:
    """Hash-consed DAG of one or more terms.

    Node ids are assigned children-first, so increasing id order is a valid
    post-order.  ``roots[i]`` is the node of the i-th input term.
    """

    def __init__(self):
        self.nodes: list[DagNode] = []
        self.roots: list[int] = []
        self._index: dict[tuple, int] = {}

    def intern(self, label: str, is_var: bool, children: tuple[int, ...] = (),
               sym: Symbol | None = None) -> int:
        key = (label, is_var, children)
        nid = self._index.get(key)
        if nid is None:
            for c in children:
                if not 0 <= c < len(self.nodes):
                    raise ValueError(f"child {c} does not exist")
            nid = len(self.nodes)
            self.nodes.append(DagNode(label, is_var, children, sym))
            self._index[key] = nid
        return nid

    def add_term(self, t: Term) -> int:
        memo: dict[Term, int] = {}
        for node in subterms(t):
            if node in memo:
                continue
            if node.is_var:
                memo[node] = self.intern(node.name, True)
            else:
                memo[node] = self.intern(node.name, False,
                                         tuple(memo[a] for a in node.args), node.sym)
        return memo[t]

    def __len__(self):
        return len(self.nodes)

    def term(self, nid: int) -> Term:
        memo: dict[int, Term] = {}
        stack = [(nid, False)]
        while stack:
            n, done = stack.pop()
            if n in memo:
                continue
            node = self.nodes[n]
            if node.is_var:
                memo[n] = Var(node.label)
            elif not node.children:
                memo[n] = App(node.sym or Symbol(node.label, 0))
            elif done:
                sym = node.sym or Symbol(node.label, len(node.children))
                memo[n] = App(sym, [memo[c] for c in node.children])
            else:
                stack.append((n, True))
                stack.extend((c, False) for c in node.children)
        return memo[nid]

    def edges(self) -> int:
        return sum(len(n.children) for n in self.nodes)


def build_dag(terms: Sequence[Term]) -> TermDag:
    dag = TermDag()
    for t in terms:
        dag.roots.append(dag.add_term(t))
    return dag
