import itertools
import random

import pytest
from conftest import term
from hypothesis import assume, given
from strategies import terms

from acunify import (PreconditionError, Theory, ac_equal_ground, ac_unify_do, canonicalize,
                     is_do_term)
from acunify.ac import max_bipartite_matching
from acunify.oracles import brute_unifiable, enumerate_terms
from acunify.terms import App, Symbol

AC = {"f": "ac"}
F = Symbol("f", 2, Theory.AC)


def t(text):
    return term(text, AC)


def test_ground_equality_examples():
    assert ac_equal_ground(t("f(a,f(b,c))"), t("f(f(c,a),b)"))
    assert not ac_equal_ground(t("f(a,a,b)"), t("f(a,b,b)"))
    assert ac_equal_ground(t("f(a,g(b))"), t("f(g(b),a)"))


def test_ground_equality_refuses_variables():
    with pytest.raises(PreconditionError):
        ac_equal_ground(t("f(x,a)"), t("f(a,a)"))


def scramble(x, rng):
    """Re-associate and permute every f node at random."""
    if x.is_var or not x.args:
        return x
    args = [scramble(a, rng) for a in canonicalize(x).args] if x.sym == F else \
        [scramble(a, rng) for a in x.args]
    if x.sym != F:
        return App(x.sym, args)
    rng.shuffle(args)
    while len(args) > 1:
        i = rng.randrange(len(args) - 1)
        args[i:i + 2] = [App(F, (args[i], args[i + 1]))]
    return args[0]


def test_scrambles_stay_equal():
    rng = random.Random(7)
    ground = enumerate_terms(6, [F, Symbol("g", 1)], [App(Symbol(c, 0)) for c in "abc"])
    for x in ground:
        assert ac_equal_ground(x, scramble(x, rng))


def test_distinct_classes_stay_apart():
    ground = enumerate_terms(5, [F, Symbol("g", 1)], [App(Symbol(c, 0)) for c in "ab"])
    reps = list({canonicalize(x): x for x in ground}.values())
    for x, y in itertools.combinations(reps, 2):
        assert not ac_equal_ground(x, y)


def test_unify_do_examples():
    assert ac_unify_do(t("f(x,a)"), t("f(a,b,c)"))
    assert brute_unifiable(t("f(x,a)"), t("f(a,b,c)")).as_strings() == {"x": "f(b,c)"}
    assert ac_unify_do(t("f(x,a)"), t("f(y,g(c))"))
    assert not ac_unify_do(t("f(a,b)"), t("f(a,c)"))


def test_unify_do_counts_arguments():
    # one variable cannot absorb zero arguments
    assert not ac_unify_do(t("f(x,a,b)"), t("f(a,b)"))
    assert ac_unify_do(t("f(x,y)"), t("f(a,b,c)"))
    assert not ac_unify_do(t("f(x,y,z)"), t("f(a,b)"))


def test_unify_do_refuses_repeats():
    with pytest.raises(PreconditionError):
        ac_unify_do(t("f(x,x)"), t("f(a,a)"))


def test_bipartite_matching():
    assert max_bipartite_matching(3, 3, lambda i, j: i == j or j == 0) == 3
    assert max_bipartite_matching(3, 3, lambda i, j: j == 0) == 1
    assert max_bipartite_matching(0, 2, lambda i, j: True) == 0


@given(terms(Theory.AC, variables="xy", max_leaves=4), terms(Theory.AC, variables="uv",
                                                            max_leaves=4))
def test_unify_do_is_symmetric(t1, t2):
    assume(is_do_term(t1, t2))
    assert ac_unify_do(t1, t2) == ac_unify_do(t2, t1)
