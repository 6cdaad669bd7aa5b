import itertools

import pytest
from conftest import term
from hypothesis import given
from strategies import terms

import acunify.commut as commut_module
from acunify import (InvariantViolation, PreconditionError, ResourceLimitError, Stats, Substitution,
                     Theory, Var, apply_substitution, build_dag, commut_equal_ground, commut_match,
                     commut_unify, join, test_commut_ident)
from acunify.oracles import brute_unifiable, enumerate_terms, equal_modulo
from acunify.terms import App, Symbol

C = {"f": "comm"}


def t(text):
    return term(text, C)


def sub(**kw):
    return Substitution({k: term(v) for k, v in kw.items()})


def test_ground_equality_examples():
    assert commut_equal_ground(t("f(a,b)"), t("f(b,a)"))
    assert not commut_equal_ground(t("f(a,b)"), t("f(a,c)"))
    both = {"f": "comm", "g": "comm"}
    assert commut_equal_ground(term("f(g(a,b),c)", both), term("f(c,g(b,a))", both))


def test_ground_equality_refuses_variables():
    with pytest.raises(PreconditionError):
        commut_equal_ground(t("f(x,a)"), t("f(a,a)"))


def test_join_examples():
    assert join({sub(x="a")}, {sub(x="b")}) == frozenset()
    assert join({sub(x="a")}, {sub(y="b")}) == {sub(x="a", y="b")}
    assert join({sub(x="a"), sub(x="b")}, {sub(x="a", y="c")}) == {sub(x="a", y="c")}


def test_join_with_empty_substitution_is_identity():
    s = {sub(x="a"), sub(x="b")}
    assert join({Substitution({})}, s) == s


def test_match_examples():
    ok, thetas = commut_match(term("f(x,g(x))", C), term("f(g(a),a)", C))
    assert ok and thetas == {sub(x="a")}
    assert commut_match(t("f(x,x)"), t("f(a,b)")) == (False, frozenset())
    ok, thetas = commut_match(t("f(a,b)"), t("f(b,a)"))
    assert ok and thetas == {Substitution({})}


def test_match_returns_every_order():
    ok, thetas = commut_match(t("f(x,y)"), t("f(a,b)"))
    assert thetas == {sub(x="a", y="b"), sub(x="b", y="a")}


def test_match_needs_ground_text():
    with pytest.raises(PreconditionError):
        commut_match(t("f(x,a)"), t("f(y,a)"))


def test_match_refuses_associative_symbols():
    with pytest.raises(PreconditionError, match="associative"):
        commut_match(term("f(x,a)", {"f": "assoc"}), term("f(a,a)", {"f": "assoc"}))


def test_theta_bound_violation_is_reported(monkeypatch):
    real = commut_module.join

    def bloated(s1, s2):
        out = set(real(s1, s2))
        out |= {Substitution({Var("x"): App(Symbol(f"junk{i}", 0))}) for i in range(4)}
        return frozenset(out)

    monkeypatch.setattr(commut_module, "join", bloated)
    with pytest.raises(InvariantViolation, match="exceeds"):
        commut_match(t("f(x,y)"), t("f(a,b)"))


@given(terms(Theory.COMM, variables="xyz"), terms(Theory.COMM))
def test_match_is_sound_and_bounded(pattern, ground):
    stats = Stats()
    ok, thetas = commut_match(pattern, ground, stats=stats)
    assert ok == bool(thetas)
    for theta in thetas:
        assert commut_equal_ground(apply_substitution(pattern, theta), ground)
    assert ok == (brute_unifiable(pattern, ground) is not None)


def test_ident_examples():
    g = build_dag([t("f(a,b)"), t("f(b,a)")])
    assert test_commut_ident(*g.roots, g)
    assert test_commut_ident(g.roots[0], g.roots[0], g)
    h = {"h": "comm"}
    g = build_dag([term("f(h(a,b),h(b,a))", h), term("f(h(a,b),h(a,b))", h)])
    assert test_commut_ident(*g.roots, g)


def test_ident_matches_normal_forms_exhaustively():
    f = Symbol("f", 2, Theory.COMM)
    ground = enumerate_terms(6, [f, Symbol("g", 1)], [App(Symbol(c, 0)) for c in "ab"])
    for x, y in itertools.combinations(ground, 2):
        g = build_dag([x, y])
        assert test_commut_ident(*g.roots, g) == equal_modulo(x, y)


def unifies(t1, t2, theta):
    """Does ``theta`` unify the pair once leftover variables become ``c``?"""
    left, right = apply_substitution(t1, theta), apply_substitution(t2, theta)
    filler = {v: t("c") for v in (Var("x"), Var("y"), Var("z"))}
    return equal_modulo(apply_substitution(left, filler), apply_substitution(right, filler))


def test_unify_examples():
    ok, theta = commut_unify(t("f(x,a)"), t("f(a,y)"))
    assert ok and unifies(t("f(x,a)"), t("f(a,y)"), theta)
    assert commut_unify(t("f(x,x)"), t("f(a,b)")) == (False, None)
    assert commut_unify(Var("x"), t("f(x,a)")) == (False, None)


def test_unify_witness_grounds_consistently():
    ok, theta = commut_unify(t("f(x,g(y))"), t("f(g(a),z)"))
    assert ok and unifies(t("f(x,g(y))"), t("f(g(a),z)"), theta)


def test_unify_counts_every_mapping():
    stats = Stats()
    t1, t2 = t("f(x,a)"), t("f(b,b)")
    commut_unify(t1, t2, stats=stats)
    assert stats.enumerated == (t1.size + t2.size) ** 1


def test_unify_variable_bound():
    with pytest.raises(ResourceLimitError, match="--k-bound"):
        commut_unify(t("f(x,f(y,z))"), t("f(u,v)"), k_bound=4)


@given(terms(Theory.COMM, variables="xy", max_leaves=4), terms(Theory.COMM, variables="xy",
                                                              max_leaves=4))
def test_unify_is_symmetric_and_agrees_with_oracle(t1, t2):
    ok = commut_unify(t1, t2)[0]
    assert ok == commut_unify(t2, t1)[0]
    assert ok == (brute_unifiable(t1, t2) is not None)
