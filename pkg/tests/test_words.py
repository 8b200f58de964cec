import itertools

import pytest

from pcgroups.families import builtin_family
from pcgroups.presentation import commutator, conjugate, enumerate_elements, inverse
from pcgroups.subgroups import (full_group, gamma_term, lower_central_series,
                                trivial_subgroup)
from pcgroups.words import (Comm, Var, WitnessTuple, arity, evaluate,
                            gamma_word, outer_word, parse_word,
                            slot_value_set, slot_value_set_restricted,
                            value_set, verbal_subgroup, word_text)


def test_gamma_word_shape():
    assert gamma_word(1) == Var(1)
    assert gamma_word(2) == Comm(Var(1), Var(2))
    assert gamma_word(3) == Comm(Comm(Var(1), Var(2)), Var(3))
    assert arity(gamma_word(4)) == 4
    with pytest.raises(ValueError):
        gamma_word(0)


def test_outer_word_validation():
    outer_word([[1, 2], [3, 4]])
    outer_word([[1, 3], [2, 4]])  # non-contiguous variable split is fine
    with pytest.raises(ValueError):
        outer_word([[1, 1], 2])  # repeated variable
    with pytest.raises(ValueError):
        outer_word([[1, 2], 4])  # gap in the variable range
    with pytest.raises(ValueError):
        outer_word("nope")


def test_parse_word():
    assert parse_word("gamma3") == gamma_word(3)
    assert parse_word("γ2") == gamma_word(2)
    w = parse_word("[[1,2],[3,4]]")
    assert word_text(w) == "[[1,2],[3,4]]"
    with pytest.raises(ValueError):
        parse_word("gamma0")
    with pytest.raises(ValueError):
        parse_word("[1,2,3]")


def test_evaluate_examples(heis3):
    b, a = heis3.element([0, 1, 0]), heis3.element([1, 0, 0])
    assert evaluate(gamma_word(2), heis3, [b, a]) == heis3.element([0, 0, 1])
    assert evaluate(Var(1), heis3, [a]) == a
    for x, y in itertools.product(enumerate_elements(heis3), repeat=2):
        v = evaluate(gamma_word(2), heis3, [x, y])
        assert gamma_term(heis3, 2).contains(v)
    with pytest.raises(ValueError):
        evaluate(gamma_word(2), heis3, [a])


def test_gamma3_trivial_on_class_two(heis3):
    w = gamma_word(3)
    assert value_set(w, heis3) == (heis3.identity(),)


def test_value_set_examples(heis3, elab32, wreath3):
    assert value_set(gamma_word(2), elab32) == (elab32.identity(),)
    vs = value_set(gamma_word(2), heis3)
    assert set(vs) == {heis3.element([0, 0, k]) for k in range(3)}
    vs_w = value_set(gamma_word(2), wreath3)
    assert set(vs_w) == set(gamma_term(wreath3, 2).elements)


def naive_value_set(w, P):
    r = arity(w)
    out = set()
    for args in itertools.product(enumerate_elements(P), repeat=r):
        out.add(evaluate(w, P, list(args)))
    return out


def test_value_set_matches_naive_enumeration(corpus_small):
    w2 = gamma_word(2)
    for G in corpus_small:
        if G.order > 81:
            continue
        assert set(value_set(w2, G)) == naive_value_set(w2, G), G.id
    # arity 3 on a small group, both gamma and a bushier word
    H = builtin_family("heis", 3)
    assert set(value_set(gamma_word(3), H)) == naive_value_set(gamma_word(3), H)
    d8 = builtin_family("dihedral", 8)
    w4 = outer_word([[1, 2], [3, 4]])
    assert set(value_set(w4, d8)) == naive_value_set(w4, d8)


def test_value_set_invariances(corpus_small):
    w = gamma_word(2)
    for G in corpus_small:
        if G.order > 81:
            continue
        vals = set(value_set(w, G))
        for v in list(vals):
            assert inverse(G, v) in vals
            for g in enumerate_elements(G)[:: max(1, G.order // 9)]:
                assert conjugate(G, v, g) in vals


def test_verbal_subgroup_equals_gamma_terms(corpus_small):
    for G in corpus_small:
        series = lower_central_series(G)
        for r in range(1, min(len(series) + 1, 5)):
            assert verbal_subgroup(gamma_word(r), G) == gamma_term(G, r), \
                f"{G.id} r={r}"


def test_verbal_subgroup_gamma1(heis3):
    assert verbal_subgroup(gamma_word(1), heis3) == full_group(heis3)


def test_slot_value_set_examples(heis3, elab32):
    a = heis3.element([1, 0, 0])
    wt = WitnessTuple(slot=2, fixed=(a,))
    values = slot_value_set(heis3, 2, wt)
    assert set(values) == {heis3.element([0, 0, k]) for k in range(3)}
    wt_ab = WitnessTuple(slot=2, fixed=(elab32.element([1, 0]),))
    assert slot_value_set(elab32, 2, wt_ab) == (elab32.identity(),)


def test_slot_value_set_always_inside_gamma(corpus_small):
    for G in corpus_small:
        if G.order > 81:
            continue
        x = G.element_at(G.order - 1)
        y = G.element_at(1)
        for r, fixed in ((2, (x,)), (3, (x, y))):
            for j in range(1, r + 1):
                wt = WitnessTuple(slot=j, fixed=fixed)
                for v in slot_value_set(G, r, wt):
                    assert gamma_term(G, r).contains(v)


def test_slot_value_set_restricted(heis3):
    a = heis3.element([1, 0, 0])
    wt = WitnessTuple(slot=2, fixed=(a,))
    triv = slot_value_set_restricted(heis3, 2, wt, trivial_subgroup(heis3))
    assert triv == (heis3.identity(),)
    assert slot_value_set_restricted(heis3, 2, wt, full_group(heis3)) \
        == slot_value_set(heis3, 2, wt)


def test_slot_errors(heis3):
    a = heis3.element([1, 0, 0])
    with pytest.raises(ValueError):
        slot_value_set(heis3, 2, WitnessTuple(slot=3, fixed=(a,)))
    with pytest.raises(ValueError):
        slot_value_set(heis3, 3, WitnessTuple(slot=1, fixed=(a,)))
