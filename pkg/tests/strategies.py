"""Hypothesis strategies for terms and strings."""
from __future__ import annotations

from hypothesis import strategies as st

from acunify import App, Symbol, Theory, Var

CONSTANTS = tuple(App(Symbol(c, 0)) for c in "abc")
G = Symbol("g", 1)


def terms(theory: Theory = Theory.FREE, *, variables: str = "", max_leaves: int = 6):
    """Terms over a binary ``f`` of the given theory, unary ``g`` and a, b, c."""
    f = Symbol("f", 2, theory)
    leaves = st.sampled_from(CONSTANTS + tuple(Var(v) for v in variables))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(st.builds(lambda x: App(G, (x,)), sub),
                              st.builds(lambda x, y: App(f, (x, y)), sub, sub)),
        max_leaves=max_leaves)


def ground_terms(theory: Theory = Theory.FREE, max_leaves: int = 6):
    return terms(theory, max_leaves=max_leaves)


def strings(alphabet: str = "abc", max_size: int = 5):
    return st.text(alphabet=alphabet, max_size=max_size)
