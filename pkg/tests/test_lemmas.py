import itertools

import pytest

from pcgroups.families import builtin_family
from pcgroups.lemmas import (LEMMA_IDS, lemma_suite, separation_conjugators)
from pcgroups.presentation import (commutator, conjugate, enumerate_elements,
                                   multiply)
from pcgroups.subgroups import normal_closure
from pcgroups.words import Comm, Var, arity, gamma_word


def suite_by_id(P, r, seed=1):
    return {rep.lemma: rep for rep in lemma_suite(P, r, seed=seed)}


def test_suite_covers_all_ids(heis3):
    reports = lemma_suite(heis3, 2)
    assert [rep.lemma for rep in reports] == list(LEMMA_IDS)


def test_suite_passes_on_small_groups(heis3, elab32):
    for G in (heis3, elab32):
        for rep in lemma_suite(G, 2):
            assert rep.status in ("pass", "vacuous"), (G.id, rep)


def test_vacuity_is_labelled(elab32, heis3):
    by_id = suite_by_id(elab32, 2)
    # no 2-generator verbal subgroup in an elementary abelian group
    assert by_id["two-generator-powerful"].status == "vacuous"
    assert by_id["obstruction-laws"].status == "vacuous"
    assert by_id["stabilizer-laws"].status == "vacuous"
    # the derived-subgroup law needs r = 2 specifically
    assert suite_by_id(heis3, 3)["stabilizer-obstruction"].status == "vacuous"


def test_stabilizer_laws_run_where_applicable(wreath3):
    by_id = suite_by_id(wreath3, 2)
    assert by_id["stabilizer-laws"].status == "pass"
    assert by_id["obstruction-laws"].status == "pass"


def test_unknown_lemma_id_rejected(heis3):
    with pytest.raises(ValueError):
        lemma_suite(heis3, 2, lemmas=("no-such-lemma",))


def test_single_lemma_selection(heis3):
    reports = lemma_suite(heis3, 2, lemmas=("power-bracket",))
    assert len(reports) == 1 and reports[0].lemma == "power-bracket"


def test_sampling_is_deterministic(wreath3):
    a = suite_by_id(wreath3, 3, seed=9)
    b = suite_by_id(wreath3, 3, seed=9)
    for lemma in LEMMA_IDS:
        assert a[lemma].instances == b[lemma].instances
        assert a[lemma].failures == b[lemma].failures
        assert a[lemma].seed == b[lemma].seed


def _check_split_identity(P, w, j, ys, h):
    """Direct elementwise verification of the slot-splitting identity."""
    hs = separation_conjugators(P, w, j, ys, h)
    hull = normal_closure(P, [h])
    assert all(hull.contains(x) for x in hs)
    r = arity(w)

    def ev(args):
        vals = list(args)
        def rec(u):
            if isinstance(u, Var):
                return vals[u.index - 1]
            return commutator(P, rec(u.left), rec(u.right))
        return rec(w)

    base_args = list(ys)
    base_args[j - 1] = h
    base = ev(base_args)
    for g in enumerate_elements(P):
        lhs_args = list(ys)
        lhs_args[j - 1] = multiply(P, g, h)
        lhs = ev(lhs_args)
        rhs_args = [conjugate(P, ys[i], hs[i]) for i in range(r)]
        rhs_args[j - 1] = conjugate(P, g, hs[j - 1])
        assert lhs == multiply(P, ev(rhs_args), base)


def test_separation_conjugators_gamma(heis3):
    w = gamma_word(3)
    ys = [heis3.element([1, 0, 0]), heis3.element([0, 1, 0]),
          heis3.element([1, 2, 0])]
    for j in (1, 2, 3):
        for h_idx in (1, 4, 10):
            _check_split_identity(heis3, w, j, ys, heis3.element_at(h_idx))


def test_separation_conjugators_non_contiguous_word():
    d8 = builtin_family("dihedral", 8)
    w = Comm(Comm(Var(1), Var(3)), Comm(Var(2), Var(4)))
    ys = [d8.element_at(i) for i in (1, 2, 4, 5)]
    for j in (1, 2, 3, 4):
        _check_split_identity(d8, w, j, ys, d8.element_at(3))


def test_failure_reporting_shape(heis3):
    rep = suite_by_id(heis3, 2)["power-bracket"]
    assert rep.status == "pass"
    assert rep.failures == ()
    assert rep.instances > 0
    assert rep.to_dict()["lemma"] == "power-bracket"
    assert "elapsed" not in rep.to_dict()
    assert "elapsed" in rep.to_dict(with_timings=True)
