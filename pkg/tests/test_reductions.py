import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acunify import Var, format_term, string_edit_distance_vars
from acunify.edit import format_vstring
from acunify.oracles import brute_unifiable, embeds_under_substitution, lcs_brute
from acunify.reductions import (LcsInstance, gen_ac_from_lcs, gen_assoc_from_lcs,
                                gen_string_bounded_occ, gen_string_from_lcs, max_occurrences)
from acunify.terms import is_ground, subterms, variables_of

AAB_ABA = LcsInstance.of(["aab", "aba"], 2)

instances = st.builds(
    LcsInstance.of,
    st.lists(st.text("abc", min_size=1, max_size=4), min_size=1, max_size=3),
    st.integers(1, 3))


def test_instance_validation():
    with pytest.raises(ValueError):
        LcsInstance.of([], 1)
    with pytest.raises(ValueError):
        LcsInstance.of(["ab"], -1)
    with pytest.raises(ValueError, match="reserved"):
        LcsInstance.of(["a#b"], 1)


def test_string_generator_example():
    s1, s2, target = gen_string_from_lcs(AAB_ABA)
    assert format_vstring(s1) == "x1 x2 # x1 x2"
    assert "".join(s2) == "aab#aba"
    assert target == 2


def test_string_generator_single_letter():
    s1, s2, target = gen_string_from_lcs(LcsInstance.of(["a"], 1))
    assert s1 == (Var("x1"),) and s2 == ("a",) and target == 0


def test_string_round_trip_small():
    rng = random.Random(1)
    for _ in range(40):
        inst = LcsInstance.random(rng, len_max=4, l_max=2)
        s1, s2, target = gen_string_from_lcs(inst)
        dist, _ = string_edit_distance_vars(s1, s2, inst.alphabet + ("#",))
        assert (dist == target) == lcs_brute(inst.strings, inst.l)
        assert dist >= target


def test_bounded_occurrence_example():
    s1, s2, target = gen_string_bounded_occ(AAB_ABA)
    names = {x for x in s1 + s2 if isinstance(x, Var)}
    assert len(names) == 3 * AAB_ABA.l * AAB_ABA.k - AAB_ABA.l
    assert target == 2


@given(instances)
def test_bounded_occurrence_audit(inst):
    s1, s2, _ = gen_string_bounded_occ(inst)
    assert max_occurrences(s1, s2) <= 3
    if inst.k >= 3:
        assert max_occurrences(s1, s2) == 3


def test_bounded_occurrence_round_trip_small():
    rng = random.Random(2)
    for _ in range(40):
        inst = LcsInstance.random(rng, len_max=4, l_max=2)
        s1, s2, _ = gen_string_bounded_occ(inst)
        found = embeds_under_substitution(s1, s2, inst.alphabet + ("#",)) is not None
        assert found == lcs_brute(inst.strings, inst.l)


def test_assoc_generator_example():
    t1, t2 = gen_assoc_from_lcs(AAB_ABA)
    assert len(variables_of(t1)) == 2 * 2 + 2 + 2
    assert is_ground(t2)
    assert brute_unifiable(t1, t2) is not None


def padded_lengths(t2):
    """Constants per string in the text side, read along the f-chains."""
    out, count, node = [], 0, t2
    while True:
        if node.name == "f":
            count += 1
            node = node.args[1]
        else:  # g(#, rest) or the final g(#,#)
            out.append(count)
            count = 0
            node = node.args[1]
            if node.name == "#":
                return out


def test_assoc_generator_pads_every_string():
    _, t2 = gen_assoc_from_lcs(LcsInstance.of(["abc", "b", "ca"], 1))
    assert padded_lengths(t2) == [1 + 2 * 3, 1 + 2 * 1, 1 + 2 * 2]


def test_assoc_binary_constants_are_fixed_width():
    _, t2 = gen_assoc_from_lcs(LcsInstance.of(["ab"], 1), binary_constants=True)
    leaves = {s.name for s in subterms(t2) if not s.args}
    assert leaves == {"0", "1"}
    codes = {format_term(s) for s in subterms(t2) if s.args and s.name == "h"
             and s.args[1].name == "h"}
    assert len(codes) == 6  # a, b, # and three & constants


def test_assoc_round_trip_small():
    rng = random.Random(3)
    for _ in range(25):
        inst = LcsInstance.random(rng, len_max=3, l_max=2)
        t1, t2 = gen_assoc_from_lcs(inst)
        assert (brute_unifiable(t1, t2) is not None) == lcs_brute(inst.strings, inst.l)


def test_ac_generator_example():
    t1, t2 = gen_ac_from_lcs(AAB_ABA)
    assert "f1(b,f2(_pos,_pos,_pos,_pos))" in format_term(t2)
    assert len(variables_of(t1)) == AAB_ABA.l + AAB_ABA.k * AAB_ABA.l + AAB_ABA.k
    assert is_ground(t2)


def test_ac_single_string_drops_outer_symbol():
    t1, t2 = gen_ac_from_lcs(LcsInstance.of(["ab"], 1))
    assert t1.name == t2.name == "f4"


def test_ac_round_trip_small():
    rng = random.Random(4)
    for _ in range(25):
        inst = LcsInstance.random(rng, len_max=3, l_max=2)
        t1, t2 = gen_ac_from_lcs(inst)
        assert (brute_unifiable(t1, t2) is not None) == lcs_brute(inst.strings, inst.l)
