"""Acceptance suite: one test per criterion, timed where the criterion is.

Each test prints a single PASS line on success (visible with -s); a failure
falls out as an ordinary assertion with context.
"""

import itertools
import random
import time

import numpy as np
import pytest

from oracle import oracle_table
from pcgroups.families import builtin_corpus
from pcgroups.fileformat import serialize_pcp
from pcgroups.lemmas import lemma_suite
from pcgroups.presentation import collect, multiply
from pcgroups.runner import RunOptions, load_corpus, run_suite
from pcgroups.stabilizers import gamma_quotient_centralizer
from pcgroups.subgroups import gamma_term, rank
from pcgroups.tables import group_tables
from pcgroups.witness import Branch, check_single_slot_property
from pcgroups.words import slot_value_set

R_VALUES = (2, 3, 4)


def _tokens(P, x):
    return [(i + 1, e) for i, e in enumerate(x.exps) if e]


def test_criterion_1_engine_matches_independent_oracle(corpus):
    """collect/multiply equal the extension-tower oracle on every product."""
    t0 = time.perf_counter()
    checked = 0
    for G in corpus:
        if G.order > 243:
            continue
        T = oracle_table(G)
        # full engine table (built from collection pushes) vs oracle
        assert (group_tables(G).mul == T).all(), G.id
        elems = [G.element_at(i) for i in range(G.order)]
        for xi, x in enumerate(elems):
            xtok = _tokens(G, x)
            for yi, y in enumerate(elems):
                expect = G.element_at(int(T[xi, yi]))
                assert multiply(G, x, y) == expect, (G.id, x, y)
                assert collect(G, xtok + _tokens(G, y)) == expect, (G.id, x, y)
                checked += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0, f"engine-vs-oracle sweep took {elapsed:.1f}s"
    print(f"\nACCEPTANCE 1 engine-vs-oracle: PASS "
          f"({checked} products, {elapsed:.1f}s)")


def _identity_suite_exhaustive(G):
    t = group_tables(G)
    order = G.order
    idx = np.arange(order, dtype=np.int32)
    X, Y = idx[:, None], idx[None, :]
    failures = 0
    # (i) [x,y] = [y,x]^-1
    failures += int((t.comm_v(X, Y) != t.inv[t.comm_v(Y, X)]).sum())
    # (iii) [x, y^-1] = [y,x]^(y^-1) and [x^-1, y] = [y,x]^(x^-1)
    failures += int((t.comm_v(X, t.inv[Y])
                     != t.conj_v(t.comm_v(Y, X), t.inv[Y])).sum())
    failures += int((t.comm_v(t.inv[X], Y)
                     != t.conj_v(t.comm_v(Y, X), t.inv[X])).sum())
    # (ii) and (iv) need three elements; loop one coordinate
    for z in idx:
        z = np.int32(z)
        failures += int((t.comm_v(t.mul[X, Y], z)
                         != t.mul[t.conj_v(t.comm_v(X, z), Y),
                                  t.comm_v(Y, z)]).sum())
        failures += int((t.comm_v(X, t.mul[Y, z])
                         != t.mul[t.comm_v(X, z),
                                  t.conj_v(t.comm_v(X, Y), z)]).sum())
        hw = t.mul[t.mul[
            t.conj_v(t.comm_v(t.comm_v(X, t.inv[Y]), z), Y),
            t.conj_v(t.comm_v(t.comm_v(Y, t.inv[z]), X), z)],
            t.conj_v(t.comm_v(t.comm_v(z, t.inv[X]), Y), X)]
        failures += int((hw != 0).sum())
    return failures


def _identity_suite_sampled(G, count, seed):
    t = group_tables(G)
    rng = np.random.default_rng(seed)
    x, y, z = (rng.integers(0, G.order, size=count).astype(np.int32)
               for _ in range(3))
    failures = 0
    failures += int((t.comm_v(x, y) != t.inv[t.comm_v(y, x)]).sum())
    failures += int((t.comm_v(x, t.inv[y])
                     != t.conj_v(t.comm_v(y, x), t.inv[y])).sum())
    failures += int((t.comm_v(t.inv[x], y)
                     != t.conj_v(t.comm_v(y, x), t.inv[x])).sum())
    failures += int((t.comm_v(t.mul[x, y], z)
                     != t.mul[t.conj_v(t.comm_v(x, z), y),
                              t.comm_v(y, z)]).sum())
    failures += int((t.comm_v(x, t.mul[y, z])
                     != t.mul[t.comm_v(x, z),
                              t.conj_v(t.comm_v(x, y), z)]).sum())
    hw = t.mul[t.mul[
        t.conj_v(t.comm_v(t.comm_v(x, t.inv[y]), z), y),
        t.conj_v(t.comm_v(t.comm_v(y, t.inv[z]), x), z)],
        t.conj_v(t.comm_v(t.comm_v(z, t.inv[x]), y), x)]
    failures += int((hw != 0).sum())
    return failures


def _power_split_membership(G, pairs):
    """c^n (c')^-1 in the derived subgroup of <y, c>, c = [x,y], c' = [x,y^n]."""
    t = group_tables(G)
    failures = 0
    for xi, yi in pairs:
        c = int(t.comm_v(np.int32(xi), np.int32(yi)))
        hull = t.closure([yi, c])
        brackets = np.unique(t.comm_v(hull[:, None], hull[None, :]))
        derived = set(int(i) for i in t.closure(brackets))
        for n in (2, 3, G.p, G.p * G.p):
            cn = int(t.pow_v(np.int32(c), n))
            yn = int(t.pow_v(np.int32(yi), n))
            cn2 = int(t.comm_v(np.int32(xi), np.int32(yn)))
            z = int(t.mul[cn, t.inv[cn2]])
            if z not in derived:
                failures += 1
    return failures


def test_criterion_2_identity_suite(corpus):
    """Bracket identities and the power-split membership, zero failures."""
    t0 = time.perf_counter()
    total = 0
    for G in corpus:
        if G.order <= 81:
            total += _identity_suite_exhaustive(G)
            pairs = itertools.product(range(G.order), repeat=2)
            total += _power_split_membership(G, pairs)
        else:
            seed = 1000 + G.order
            total += _identity_suite_sampled(G, 10_000, seed)
            rng = random.Random(seed)
            pairs = [(rng.randrange(G.order), rng.randrange(G.order))
                     for _ in range(10_000)]
            total += _power_split_membership(G, pairs)
    assert total == 0, f"{total} identity failures"
    print(f"\nACCEPTANCE 2 identity-suite: PASS "
          f"(0 failures, {time.perf_counter() - t0:.1f}s)")


def test_criterion_3_lemma_suite(corpus):
    """lemma_suite has no failures for every builtin group, r in 2..4."""
    t0 = time.perf_counter()
    failing = []
    vacuous = 0
    passes = 0
    for G in corpus:
        for r in R_VALUES:
            for rep in lemma_suite(G, r, seed=1):
                if rep.status == "fail":
                    failing.append((G.id, r, rep.lemma, rep.failures[:2]))
                elif rep.status == "vacuous":
                    vacuous += 1
                else:
                    passes += 1
    elapsed = time.perf_counter() - t0
    assert not failing, failing
    assert elapsed < 600.0, f"lemma suite took {elapsed:.1f}s"
    print(f"\nACCEPTANCE 3 lemma-suite: PASS "
          f"({passes} pass, {vacuous} vacuous, {elapsed:.1f}s)")


def test_criterion_4_cyclic_branch(corpus):
    """Exact slot coverage whenever the verbal subgroup is cyclic."""
    count = 0
    for G in corpus:
        t0 = time.perf_counter()
        for r in R_VALUES:
            if rank(gamma_term(G, r)) > 1:
                continue
            verdict = check_single_slot_property(G, r)
            assert verdict.hypotheses.branch is Branch.CYCLIC
            assert verdict.equality_holds, (G.id, r)
            got = set(slot_value_set(G, r, verdict.witness))
            assert got == set(gamma_term(G, r).elements), (G.id, r)
            count += 1
        elapsed = time.perf_counter() - t0
        assert elapsed < 60.0, f"{G.id}: cyclic-branch checks took {elapsed:.1f}s"
    assert count >= 12  # dihedral/quaternion/semidihedral, heis, wreath at r=3, ...
    print(f"\nACCEPTANCE 4 cyclic-branch: PASS ({count} applicable runs)")


def test_criterion_5_two_generator_odd_branch(corpus):
    """Exact slot coverage for 2-generator odd-p cases; restricted range
    covers whenever the quotient centralizer is proper."""
    seen = []
    for G in corpus:
        for r in R_VALUES:
            if G.p == 2 or rank(gamma_term(G, r)) != 2:
                continue
            verdict = check_single_slot_property(G, r)
            assert verdict.hypotheses.branch is Branch.TWO_GEN_ODD
            assert verdict.equality_holds, (G.id, r)
            got = set(slot_value_set(G, r, verdict.witness))
            assert got == set(gamma_term(G, r).elements), (G.id, r)
            if verdict.hypotheses.c_equals_g is False:
                assert verdict.restricted_covers, (G.id, r)
            seen.append((G.id, r, verdict.hypotheses.c_equals_g))
    ids = {s[0] for s in seen}
    assert "wreath(3)" in ids and "freenilp(3,3)" in ids
    assert any(not ceq for _, _, ceq in seen)  # the proper-centralizer case ran
    print(f"\nACCEPTANCE 5 two-generator-odd: PASS ({seen})")


def test_criterion_6_negative_control(corpus):
    """p = 2 with 2-generator verbal subgroup: no claim, empirical report only."""
    dd = next(G for G in corpus if G.id == "d8xd8")
    verdict = check_single_slot_property(dd, 2)
    assert verdict.hypotheses.branch is Branch.NOT_APPLICABLE
    assert verdict.hypotheses.d_gamma_r == 2 and dd.p == 2
    assert verdict.witness is None
    assert not verdict.equality_holds
    assert verdict.gamma_equals_value_set is not None  # report still produced
    print(f"\nACCEPTANCE 6 negative-control: PASS "
          f"(empirical set equality: {verdict.gamma_equals_value_set})")


def test_criterion_7_centralizer_index_bound(corpus):
    """|G : C| <= p whenever the verbal subgroup is 2-generator; exact."""
    checked = 0
    for G in corpus:
        for r in R_VALUES:
            if rank(gamma_term(G, r)) != 2:
                continue
            C = gamma_quotient_centralizer(G, r)
            assert G.order % C.size == 0
            assert G.order // C.size <= G.p, (G.id, r)
            checked += 1
    assert checked >= 4
    print(f"\nACCEPTANCE 7 centralizer-index: PASS ({checked} instances)")


def test_criterion_8_deterministic_reports(tmp_path):
    """Two corpus runs with the same seed produce byte-identical reports."""
    d = tmp_path / "corpus"
    d.mkdir()
    for G in builtin_corpus():
        if G.order <= 81:
            name = G.id.replace("(", "_").replace(")", "").replace(",", "_")
            (d / f"{name}.pcg").write_text(serialize_pcp(G))
    opts = RunOptions(r_values=(2, 3), seed=20240)
    first = run_suite(load_corpus(d), opts).to_json()
    second = run_suite(load_corpus(d), opts).to_json()
    assert first.encode() == second.encode()
    print(f"\nACCEPTANCE 8 determinism: PASS ({len(first)} bytes, "
          f"{first.count(chr(10))} lines identical)")
