"""Instance generators that encode longest-common-subsequence questions.

Each generator turns an :class:`LcsInstance` ``(S, l)`` into an edit distance
or unification instance whose answer is "yes" exactly when the strings in
``S`` share a subsequence of length ``l``.
"""
from __future__ import annotations

import random
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .terms import App, Symbol, Term, Theory, Var

__all__ = ["LcsInstance", "gen_string_from_lcs", "gen_string_bounded_occ", "gen_assoc_from_lcs",
           "gen_ac_from_lcs", "max_occurrences", "assoc_symbols", "ac_symbols"]

SEP = "#"


@dataclass(frozen=True)
class LcsInstance:
    """Strings over a base alphabet and a target subsequence length."""

    strings: tuple[tuple[str, ...], ...]
    l: int
    alphabet: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.strings:
            raise ValueError("an LCS instance needs at least one string")
        if self.l < 0:
            raise ValueError("l must be non-negative")
        strings = tuple(tuple(s) for s in self.strings)
        object.__setattr__(self, "strings", strings)
        letters = sorted(set(self.alphabet) | {c for s in strings for c in s})
        if SEP in letters:
            raise ValueError(f"{SEP!r} is reserved as a separator")
        object.__setattr__(self, "alphabet", tuple(letters))

    @classmethod
    def of(cls, strings: Iterable[str | Sequence[str]], l: int) -> LcsInstance:
        """``LcsInstance.of(["aab", "aba"], 2)``; a ``str`` is split into characters."""
        return cls(tuple(tuple(s) for s in strings), l)

    @classmethod
    def random(cls, rng: random.Random, *, k_max: int = 3, len_max: int = 6, sigma: int = 3,
               l_max: int = 3) -> LcsInstance:
        letters = "abcdefghij"[:sigma]
        k = rng.randint(1, k_max)
        strings = [tuple(rng.choice(letters) for _ in range(rng.randint(1, len_max)))
                   for _ in range(k)]
        return cls(tuple(strings), rng.randint(1, l_max))

    @property
    def k(self) -> int:
        return len(self.strings)


def max_occurrences(*strings: Sequence) -> int:
    counts = Counter(x for s in strings for x in s if isinstance(x, Var))
    return max(counts.values(), default=0)


# ---------------------------------------------------------------------------
# strings

def gen_string_from_lcs(inst: LcsInstance) -> tuple[tuple, tuple, int]:
    """``s1 = (x1..xl #)^(k-1) x1..xl``, ``s2 = s_1 # ... # s_k``.

    The minimum edit distance with variables equals ``target = Σ|s_i| - lk``
    iff some θ makes ``s1 θ`` a subsequence of ``s2``, i.e. iff the LCS
    question is a yes.
    """
    xs = [Var(f"x{j}") for j in range(1, inst.l + 1)]
    s1: list = []
    s2: list = []
    for i, s in enumerate(inst.strings):
        if i:
            s1.append(SEP)
            s2.append(SEP)
        s1.extend(xs)
        s2.extend(s)
    target = sum(len(s) for s in inst.strings) - inst.l * inst.k
    return tuple(s1), tuple(s2), target


def gen_string_bounded_occ(inst: LcsInstance) -> tuple[tuple, tuple, int]:
    """Same question with every variable occurring at most three times.

    The j-th copy of ``x_i`` becomes its own variable ``x{i}_{j}``.  Gadget
    pairs appended to both strings force all copies of one ``x_i`` to agree:

    * pattern side ``# x_{i,1} y_{i,1} y_{i,1} x_{i,2} ... y_{i,k-1} y_{i,k-1} x_{i,k}``
    * text side    ``# z_{i,1} z_{i,1} z_{i,2} z_{i,2} z_{i,2} ... z_{i,k} z_{i,k}``

    Aligned position by position they chain every ``x_{i,j}`` to the same
    value.  Both gadgets have length ``3k - 1``, so the target is unchanged.
    Variable count is ``3lk - l``.
    """
    k, l = inst.k, inst.l
    s1: list = []
    s2: list = []
    for i, s in enumerate(inst.strings):
        if i:
            s1.append(SEP)
            s2.append(SEP)
        s1.extend(Var(f"x{j}_{i + 1}") for j in range(1, l + 1))
        s2.extend(s)
    for j in range(1, l + 1):
        s1.append(SEP)
        for i in range(1, k + 1):
            s1.append(Var(f"x{j}_{i}"))
            if i < k:
                y = Var(f"y{j}_{i}")
                s1.extend((y, y))
        s2.append(SEP)
        for i in range(1, k + 1):
            z = Var(f"z{j}_{i}")
            reps = 1 if k == 1 else 2 if i in (1, k) else 3
            s2.extend([z] * reps)
    target = sum(len(s) for s in inst.strings) - l * k
    return tuple(s1), tuple(s2), target


# ---------------------------------------------------------------------------
# associative terms

def assoc_symbols() -> dict[str, Symbol]:
    return {"f": Symbol("f", 2, Theory.ASSOC), "g": Symbol("g", 2), "h": Symbol("h", 2)}


def _binary_code(index: int, width: int, h: Symbol) -> Term:
    bits = [App(Symbol(b, 0)) for b in format(index, f"0{width}b")]
    t = bits[-1]
    for b in reversed(bits[:-1]):
        t = App(h, (b, t))
    return t


def gen_assoc_from_lcs(inst: LcsInstance, *, binary_constants: bool = False) -> tuple[Term, Term]:
    """Associative matching instance with ``(l + 1)k + l`` pattern variables.

    Pattern gadget for string i (``f`` associative, ``g`` free)::

        u^i = f(y_{i,1}, f(x_1, f(y_{i,2}, ... f(x_l, f(y_{i,l+1}, g(#, u^{i+1}))))))

    and the last gadget ends in ``g(#,#)``.  The text side spells
    ``&, c_1, &, c_2, ..., c_n, &`` for each string with a fresh ``&n``
    constant every time, so no ``x_j`` can bind to one when k ≥ 2.

    ``binary_constants`` replaces every constant by a fixed-width code
    ``h(b1, h(b2, ...))`` over the constants ``0`` and ``1``.
    """
    syms = assoc_symbols()
    f, g, h = syms["f"], syms["g"], syms["h"]
    amp = 0

    def fresh_amp() -> str:
        nonlocal amp
        amp += 1
        return f"&{amp}"

    padded: list[list[str]] = []
    for s in inst.strings:
        row = []
        for c in s:
            row.extend((fresh_amp(), c))
        row.append(fresh_amp())
        padded.append(row)

    names = list(inst.alphabet) + [SEP] + [f"&{n}" for n in range(1, amp + 1)]
    if binary_constants:
        width = max(2, len(names).bit_length())
        table = {name: _binary_code(n, width, h) for n, name in enumerate(names, 1)}
    else:
        table = {name: App(Symbol(name, 0)) for name in names}

    def const(name: str) -> Term:
        return table[name]

    xs = [Var(f"x{j}") for j in range(1, inst.l + 1)]

    def chain(items: list[Term], tail: Term) -> Term:
        t = tail
        for item in reversed(items):
            t = App(f, (item, t))
        return t

    t1: Term = App(g, (const(SEP), const(SEP)))
    t2: Term = App(g, (const(SEP), const(SEP)))
    for i in range(inst.k, 0, -1):
        items: list[Term] = []
        for j in range(inst.l):
            items.extend((Var(f"y{i}_{j + 1}"), xs[j]))
        items.append(Var(f"y{i}_{inst.l + 1}"))
        tail = t1 if i == inst.k else App(g, (const(SEP), t1))
        t1 = chain(items, tail)
        tail = t2 if i == inst.k else App(g, (const(SEP), t2))
        t2 = chain([const(c) for c in padded[i - 1]], tail)
    return t1, t2


# ---------------------------------------------------------------------------
# AC terms

POS = "_pos"
PAD = "_pad"


def ac_symbols() -> dict[str, Symbol]:
    return {name: Symbol(name, 2, Theory.AC) for name in ("f1", "f2", "f3", "f4")}


def _ac(sym: Symbol, args: Sequence[Term]) -> Term:
    return args[0] if len(args) == 1 else App(sym, args)


def gen_ac_from_lcs(inst: LcsInstance) -> tuple[Term, Term]:
    """AC matching instance; letter positions are encoded by term size.

    Text side, with ``f1..f4`` all AC::

        ŝ_i[j] = f1(c, f2(_pos, ..., _pos))          # j + 1 copies of _pos
        t2     = f3(f4(ŝ_1[1], ..., ŝ_1[n_1], _pad), ..., f4(ŝ_k[1], ..., _pad))

    Pattern side::

        t^i_j = f1(x_j, f2(_pos, y_{i,1}, ..., y_{i,j}))
        t^i   = f4(z_i, t^i_1, ..., t^i_l)
        t1    = f3(t^1, ..., t^k)

    The ``y`` variables are shared inside gadget i, so the j-th pattern grabs
    a strictly later letter than the (j-1)-th.  ``_pad`` gives ``z_i``
    something to absorb when a string has exactly l letters.  A one-argument
    ``f3`` (k = 1) is written as its argument.  Variable count ``l + kl + k``.
    """
    s = ac_symbols()
    f1, f2, f3, f4 = s["f1"], s["f2"], s["f3"], s["f4"]
    pos, pad = App(Symbol(POS, 0)), App(Symbol(PAD, 0))
    letters = {c: App(Symbol(c, 0)) for c in inst.alphabet}

    text = []
    for word in inst.strings:
        hats = [App(f1, (letters[c], App(f2, [pos] * (j + 1)))) for j, c in enumerate(word, 1)]
        text.append(App(f4, hats + [pad]))
    t2 = _ac(f3, text)

    pattern = []
    for i in range(1, inst.k + 1):
        ys = [Var(f"y{i}_{h}") for h in range(1, inst.l + 1)]
        parts = [App(f1, (Var(f"x{j}"), App(f2, [pos, *ys[:j]]))) for j in range(1, inst.l + 1)]
        pattern.append(_ac(f4, [Var(f"z{i}"), *parts]))
    t1 = _ac(f3, pattern)
    return t1, t2
