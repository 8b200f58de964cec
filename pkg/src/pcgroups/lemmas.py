"""Property suite: structural lemmas checked instance by instance.

Every check detects its own hypotheses; an empty instance space is reported
as "vacuous", never as "pass".  Instance spaces of size at most
EXHAUSTIVE_LIMIT are enumerated completely; larger ones are sampled with
SAMPLE_COUNT draws from a seeded generator, and the derived seed is recorded
in the report.
"""

from __future__ import annotations

import random
import time
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .presentation import Element, PcPresentation
from .stabilizers import (gamma_quotient_centralizer, left_obstruction,
                          right_obstruction)
from .subgroups import (Subgroup, all_subgroups, center, closure,
                        commutator_subgroup, full_group, gamma_term,
                        is_powerful, iterated_commutator, join,
                        lower_central_series, maximal_normalized_subgroups,
                        normal_closure, power_subgroup, rank,
                        trivial_subgroup, upper_central_series)
from .tables import group_tables
from .witness import find_witness
from .words import (Comm, OuterWord, Var, WitnessTuple, arity, evaluate,
                    gamma_word, slot_value_indices, value_indices,
                    value_provenance, word_text)

__all__ = ["LemmaReport", "lemma_suite", "LEMMA_IDS", "separation_conjugators"]

EXHAUSTIVE_LIMIT = 10 ** 6
SAMPLE_COUNT = 10 ** 4
MAX_RECORDED_FAILURES = 5

LEMMA_IDS = (
    "power-bracket",
    "nested-bracket",
    "normal-absorption",
    "two-generator-powerful",
    "powerful-subgroups",
    "power-index-monotone",
    "slot-factorization",
    "slot-factorization-quotient",
    "coset-lifting",
    "power-inside-bracket",
    "power-outside-bracket",
    "power-congruence-ladder",
    "surjective-slot-criterion",
    "obstruction-laws",
    "stabilizer-laws",
    "stabilizer-obstruction",
)


@dataclass
class LemmaReport:
    lemma: str
    status: str  # "pass" | "fail" | "vacuous"
    instances: int
    failures: tuple[str, ...] = ()
    sampled: bool = False
    seed: int | None = None
    elapsed: float = 0.0

    def to_dict(self, with_timings: bool = False) -> dict:
        out = {
            "lemma": self.lemma,
            "status": self.status,
            "instances": self.instances,
            "failures": list(self.failures),
            "sampled": self.sampled,
            "seed": self.seed,
        }
        if with_timings:
            out["elapsed"] = round(self.elapsed, 3)
        return out


class _Recorder:
    """Collects instance counts and failure descriptors for one lemma."""

    def __init__(self) -> None:
        self.instances = 0
        self.failures: list[str] = []
        self.sampled = False

    def tick(self) -> None:
        self.instances += 1

    def fail(self, message: str) -> None:
        if len(self.failures) < MAX_RECORDED_FAILURES:
            self.failures.append(message)
        else:
            self.failures_overflow = True

    def check(self, ok: bool, message: str) -> None:
        self.tick()
        if not ok:
            self.fail(message)


@dataclass
class _Context:
    """Shared (cached) computations for one (presentation, r) run."""

    P: PcPresentation
    r: int
    base_seed: int

    def __post_init__(self) -> None:
        P, r = self.P, self.r
        self.G = full_group(P)
        self.series = lower_central_series(P)
        self.cls = len(self.series) - 1
        self.gr = gamma_term(P, r)
        self.grm1 = gamma_term(P, r - 1) if r >= 2 else self.G
        self.gr_p = power_subgroup(self.gr, 1)
        self.d_gr = rank(self.gr)
        self.p = P.p
        # lemma hypotheses on the verbal subgroup rank, as used repeatedly:
        # p odd needs d <= 2, p = 2 needs a cyclic term
        self.power_hypothesis = (self.d_gr <= 2 if P.p != 2 else self.d_gr <= 1)
        self._normal_family: list[Subgroup] | None = None

    def rng(self, lemma: str) -> random.Random:
        token = f"{self.P.id}|{self.r}|{lemma}".encode()
        return random.Random(self.base_seed ^ zlib.crc32(token))

    def seed_of(self, lemma: str) -> int:
        token = f"{self.P.id}|{self.r}|{lemma}".encode()
        return self.base_seed ^ zlib.crc32(token)

    def normal_family(self) -> list[Subgroup]:
        """Normal-subgroup instance pool: every normal subgroup at small
        order, a deterministic structural family otherwise."""
        if self._normal_family is not None:
            return self._normal_family
        P = self.P
        cached = P._cache.get("normal_family")
        if cached is None:
            if P.order <= 81:
                subs = [H for H in all_subgroups(self.G) if H.is_normal()]
            else:
                pool: list[Subgroup] = [trivial_subgroup(P), self.G]
                pool += self.series
                pool += upper_central_series(P)
                for k in (1, 2):
                    pool.append(power_subgroup(self.G, k))
                for term in self.series[1:]:
                    pool.append(power_subgroup(term, 1))
                pool.append(join(power_subgroup(self.G, 1),
                                 gamma_term(P, 2)))  # Frattini subgroup
                for g in P.generators():
                    pool.append(normal_closure(P, [g]))
                seen: dict[bytes, Subgroup] = {}
                for H in pool:
                    seen.setdefault(H.indices.tobytes(), H)
                subs = sorted(seen.values(), key=lambda H: H.sort_key())
            cached = subs
            P._cache["normal_family"] = cached
        self._normal_family = cached
        return cached

    def random_element(self, rng: random.Random) -> Element:
        return self.P.element_at(rng.randrange(self.P.order))

    def gamma_exponent(self) -> int:
        """Smallest s with gamma_r(G)^(p^s) trivial."""
        s = 0
        cur = self.gr
        while cur.size > 1:
            cur = power_subgroup(cur, 1)
            s += 1
        return s


def _tuple_space(sizes: list[int]) -> int:
    total = 1
    for s in sizes:
        total *= s
    return total


def _iter_tuples(sizes: list[int], rng: random.Random,
                 rec: _Recorder, limit: int = EXHAUSTIVE_LIMIT,
                 samples: int = SAMPLE_COUNT):
    """All mixed-radix tuples if the space is small, else seeded samples."""
    total = _tuple_space(sizes)
    if total <= limit:
        vec = [0] * len(sizes)
        while True:
            yield tuple(vec)
            k = len(sizes) - 1
            while k >= 0 and vec[k] == sizes[k] - 1:
                vec[k] = 0
                k -= 1
            if k < 0:
                return
            vec[k] += 1
    else:
        rec.sampled = True
        for _ in range(samples):
            yield tuple(rng.randrange(s) for s in sizes)


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------


def _check_power_bracket(ctx: _Context, rec: _Recorder) -> None:
    """[L^n, N] <= [L,N]^n [L,N,L] for normal L, N and n in {p, p^2}."""
    fam = ctx.normal_family()
    for L in fam:
        for N in fam:
            LN = commutator_subgroup(L, N)
            LNL = commutator_subgroup(LN, L)
            for k in (1, 2):
                lhs = commutator_subgroup(power_subgroup(L, k), N)
                rhs = join(power_subgroup(LN, k), LNL)
                rec.check(lhs.issubset(rhs),
                          f"L={L.size},N={N.size},n=p^{k}")


def _check_nested_bracket(ctx: _Context, rec: _Recorder) -> None:
    """[L, gamma_i(G)] <= [L, G, ..., G] (i times) for normal L."""
    for L in ctx.normal_family():
        for i in range(1, ctx.cls + 1):
            lhs = commutator_subgroup(L, gamma_term(ctx.P, i))
            rhs = iterated_commutator(L, i)
            rec.check(lhs.issubset(rhs), f"L={L.size},i={i}")


def _check_normal_absorption(ctx: _Context, rec: _Recorder) -> None:
    """If N <= K N^p [N,G] for normal N, K, then N <= K."""
    fam = ctx.normal_family()
    for N in fam:
        bound = join(power_subgroup(N, 1), commutator_subgroup(N, ctx.G))
        for K in fam:
            if N.issubset(join(K, bound)):
                rec.check(N.issubset(K), f"N={N.size},K={K.size}")


_EXTRA_WORDS: tuple[OuterWord, ...] = (
    Comm(Comm(Var(1), Var(2)), Comm(Var(3), Var(4))),  # derived-style word
)


def _candidate_words(r: int) -> list[OuterWord]:
    words = [gamma_word(k) for k in (2, 3, 4)]
    words.extend(_EXTRA_WORDS)
    return words


def _check_two_generator_powerful(ctx: _Context, rec: _Recorder) -> None:
    """2-generator verbal subgroups of outer words satisfy W' <= W^(p^2)."""
    from .words import verbal_subgroup

    for w in _candidate_words(ctx.r):
        W = verbal_subgroup(w, ctx.P)
        if rank(W) != 2:
            continue
        derived = commutator_subgroup(W, W)
        ok = derived.issubset(power_subgroup(W, 2)) and is_powerful(W)
        rec.check(ok, f"w={word_text(w)},|W|={W.size}")


def _powerful_two_gen_candidates(ctx: _Context) -> list[Subgroup]:
    pool: list[Subgroup] = []
    if ctx.P.order <= 81:
        pool = list(all_subgroups(ctx.G))
    else:
        pool = list(ctx.normal_family())
        pool += [power_subgroup(t, 1) for t in ctx.series[1:]]
    seen: dict[bytes, Subgroup] = {}
    for H in pool:
        seen.setdefault(H.indices.tobytes(), H)
    return sorted(seen.values(), key=lambda H: H.sort_key())


def _check_powerful_subgroups(ctx: _Context, rec: _Recorder) -> None:
    """In a powerful 2-generator group every subgroup is powerful."""
    for H in _powerful_two_gen_candidates(ctx):
        if H.size <= 1 or rank(H) != 2 or not is_powerful(H):
            continue
        if H.size > 140:
            continue  # subgroup enumeration guard; larger H not materialized
        for S in all_subgroups(H):
            rec.check(is_powerful(S), f"|H|={H.size},|S|={S.size}")


def _check_power_index_monotone(ctx: _Context, rec: _Recorder) -> None:
    """Powerful W, p >= 3, N <= L normal in W: |N:N^(p^i)| <= |L:L^(p^i)|."""
    if ctx.p == 2:
        return
    for W in _powerful_two_gen_candidates(ctx):
        if W.size <= 1 or not is_powerful(W) or W.size > 140:
            continue
        subs = [S for S in all_subgroups(W) if S.normalized_by(W)]
        for N in subs:
            for L in subs:
                if not N.issubset(L):
                    continue
                for i in (1, 2):
                    ni = N.size // power_subgroup(N, i).size
                    li = L.size // power_subgroup(L, i).size
                    rec.check(ni <= li, f"|W|={W.size},N={N.size},L={L.size},i={i}")


# -- separation --------------------------------------------------------------


def _eval_sub(w: OuterWord, P: PcPresentation, args: list[Element]) -> Element:
    """Evaluate a (sub)word against a full argument list, no renumbering."""
    from .presentation import commutator

    if isinstance(w, Var):
        return args[w.index - 1]
    return commutator(P, _eval_sub(w.left, P, args), _eval_sub(w.right, P, args))


def separation_conjugators(P: PcPresentation, w: OuterWord, j: int,
                           ys: list[Element], h: Element) -> list[Element]:
    """Conjugators h_1, ..., h_r in <h>^G splitting g*h out of slot j:

        w(y_1, ..., g h, ..., y_r)
            = w(y_1^{h_1}, ..., g^{h_j}, ..., y_r^{h_r})
              * w(y_1, ..., h, ..., y_r)    for every g.

    Built by structural recursion on the word; ys is the full argument list
    with position j - 1 ignored.
    """
    from .presentation import conjugate, multiply

    r = arity(w)

    def rec(u: OuterWord) -> dict[int, Element]:
        if isinstance(u, Var):
            return {u.index: P.identity()}
        left_vars = _variables_of(u.left)
        right_vars = _variables_of(u.right)
        with_h = list(ys)
        with_h[j - 1] = h
        if j in right_vars:
            inner = rec(u.right)
            z2 = _eval_sub(u.right, P, with_h)
            a_val = _eval_sub(u.left, P, ys)
            c = conjugate(P, z2, a_val)
            out = {v: c for v in left_vars}
            out.update({v: multiply(P, inner[v], c) for v in right_vars})
            return out
        inner = rec(u.left)
        a2 = _eval_sub(u.left, P, with_h)
        out = {v: multiply(P, inner[v], a2) for v in left_vars}
        out.update({v: a2 for v in right_vars})
        return out

    table = rec(w)
    return [table[i] for i in range(1, r + 1)]


def _variables_of(w: OuterWord) -> set[int]:
    if isinstance(w, Var):
        return {w.index}
    return _variables_of(w.left) | _variables_of(w.right)


def _check_slot_factorization(ctx: _Context, rec: _Recorder) -> None:
    """The g*h split with conjugators from the normal closure of h."""
    from .words import _eval_vec

    P, r = ctx.P, ctx.r
    w = gamma_word(r)
    t = group_tables(P)
    rng = ctx.rng("slot-factorization")
    g_all = np.arange(P.order, dtype=np.int32)
    hull_cache: dict[int, frozenset] = {}
    sizes = [r] + [P.order] * r  # slot j, the r-1 fixed entries, and h
    for tup in _iter_tuples(sizes, rng, rec, limit=20_000,
                            samples=SAMPLE_COUNT if P.order <= 243 else 2000):
        j = tup[0] + 1
        ys = [P.element_at(i) for i in tup[1:r]]
        ys.insert(j - 1, P.identity())  # placeholder at the slot
        h_idx = tup[r]
        h = P.element_at(h_idx)
        hs = separation_conjugators(P, w, j, ys, h)
        hull = hull_cache.get(h_idx)
        if hull is None:
            hull = frozenset(int(i) for i in t.normal_closure([h_idx]))
            hull_cache[h_idx] = hull
        member_ok = all(P.index_of(x) in hull for x in hs)
        # vectorised check of the displayed identity over every g
        y_idx = [np.int32(P.index_of(y)) for y in ys]
        h_conj = [np.int32(P.index_of(x)) for x in hs]
        gh = t.mul[g_all, np.int32(h_idx)]
        lhs = _eval_vec(w, t, [gh if pos == j else y_idx[pos - 1]
                               for pos in range(1, r + 1)])
        rhs_args = [t.conj_v(g_all, h_conj[j - 1]) if pos == j
                    else t.conj_v(y_idx[pos - 1], h_conj[pos - 1])
                    for pos in range(1, r + 1)]
        rhs_main = _eval_vec(w, t, rhs_args)
        base = _eval_vec(w, t, [np.int32(h_idx) if pos == j else y_idx[pos - 1]
                                for pos in range(1, r + 1)])
        identity_ok = bool((lhs == t.mul[rhs_main, base]).all())
        rec.check(member_ok and identity_ok,
                  f"j={j},ys={[str(y) for k, y in enumerate(ys) if k != j - 1]},h={h}")


def _check_slot_factorization_quotient(ctx: _Context, rec: _Recorder) -> None:
    """[.., g h, ..] = [.., g, ..] [.., h, ..] modulo gamma_{n+s} for h in gamma_s."""
    from .words import _eval_vec

    P, r = ctx.P, ctx.r
    t = group_tables(P)
    w = gamma_word(r)
    rng = ctx.rng("slot-factorization-quotient")
    for s in (1, 2):
        gs = gamma_term(P, s)
        modulus = gamma_term(P, r + s)
        mod_set = modulus.indices
        sizes = [r] + [P.order] * (r - 1) + [gs.size]
        for tup in _iter_tuples(sizes, rng, rec, limit=20_000,
                                samples=SAMPLE_COUNT if P.order <= 243 else 2000):
            j = tup[0] + 1
            args = [np.int32(i) for i in tup[1:r]]
            args.insert(j - 1, np.int32(0))
            h_idx = np.int32(gs.indices[tup[r]])
            g_all = np.arange(P.order, dtype=np.int32)
            gh = t.mul[g_all, h_idx]
            lhs = _eval_vec(w, t, [gh if pos == j else args[pos - 1]
                                   for pos in range(1, r + 1)])
            at_g = _eval_vec(w, t, [g_all if pos == j else args[pos - 1]
                                    for pos in range(1, r + 1)])
            at_h = _eval_vec(w, t, [h_idx if pos == j else args[pos - 1]
                                    for pos in range(1, r + 1)])
            quot = t.mul_v(t.inv_v(t.mul[at_g, at_h]), lhs)
            ok = bool(np.isin(quot, mod_set).all())
            rec.check(ok, f"s={s},j={j},h={P.element_at(int(h_idx))}")


def _check_coset_lifting(ctx: _Context, rec: _Recorder) -> None:
    """Lifting-step instances derived from the group's own verified witness."""
    from .witness import coset_lifting_step

    P, r = ctx.P, ctx.r
    verdict = find_witness(P, r)
    if verdict.witness is None or not verdict.equality_holds:
        return
    w = gamma_word(r)
    layers = [(ctx.gr, ctx.gr_p), (ctx.gr, trivial_subgroup(P))]
    for L, N in layers:
        if not N.is_normal():
            continue
        report = coset_lifting_step(P, w, N, L, verdict.witness,
                                    max_tuples=256)
        rec.tick()
        if report.conditions_hold and report.conclusion_holds is False:
            rec.fail(f"L={L.size},N={N.size}: {report.failures}")


# -- power congruences -------------------------------------------------------


def _left_normed_from(P: PcPresentation, start: Element,
                      rest: list[Element]) -> Element:
    from .presentation import commutator

    cur = start
    for x in rest:
        cur = commutator(P, cur, x)
    return cur


def _check_power_inside_bracket(ctx: _Context, rec: _Recorder) -> None:
    """[x_1..x_r]^(p^k) = [[x_1..x_j]^(p^k), x_{j+1}, ..] mod gamma_r^(p^(k+1)),
    and the refined form modulo [R, G, ..]^(p^(k+1)) for a normal R containing
    an inner prefix value."""
    from .presentation import commutator, inverse, multiply, power

    P, r = ctx.P, ctx.r
    if not ctx.power_hypothesis:
        return
    rng = ctx.rng("power-inside-bracket")
    mods = {k: power_subgroup(ctx.gr, k + 1) for k in (1, 2)}
    refined_cache: dict[tuple[bytes, int, int, int], Subgroup] = {}
    sizes = [P.order] * r
    count = 0
    for tup in _iter_tuples(sizes, rng, rec, limit=20_000,
                            samples=600 if P.order > 243 else 2000):
        xs = [P.element_at(i) for i in tup]
        j = rng.randrange(2, r + 1) if r > 2 else 2
        k = rng.choice((1, 2))
        full = _left_normed_from(P, xs[0], xs[1:])
        prefix = _left_normed_from(P, xs[0], xs[1:j])
        lhs = power(P, full, P.p ** k)
        rhs = _left_normed_from(P, power(P, prefix, P.p ** k), xs[j:])
        diff = multiply(P, inverse(P, rhs), lhs)
        rec.check(mods[k].contains(diff), f"xs={[str(x) for x in xs]},j={j},k={k}")
        # refined modulus: R = normal closure of the value at an inner prefix
        i = rng.randrange(1 if P.order <= 81 else 2, j + 1)
        inner = _left_normed_from(P, xs[0], xs[1:i])
        key_R = normal_closure(P, [inner])
        ck = (key_R.indices.tobytes(), r - i, k, 0)
        refined = refined_cache.get(ck)
        if refined is None:
            refined = power_subgroup(iterated_commutator(key_R, r - i), k + 1)
            refined_cache[ck] = refined
        rec.check(refined.contains(diff),
                  f"refined xs={[str(x) for x in xs]},i={i},j={j},k={k}")
        count += 1


def _check_power_outside_bracket(ctx: _Context, rec: _Recorder) -> None:
    """[K, H^(p^k), G, ..] <= [K, H, G, ..]^(p^k) for K generated by
    left-normed values of weight j-1."""
    P, r = ctx.P, ctx.r
    if not ctx.power_hypothesis:
        return
    fam = [H for H in ctx.normal_family() if H.size > 1][:6]
    for j in range(1, r + 1):
        if j == 1:
            # weight-0 values impose nothing on K; any normal K qualifies
            k_subgroups = fam[:3]
        else:
            k_subgroups = [gamma_term(P, j - 1)]
            if j > 2:
                provs = value_provenance(gamma_word(j - 1), P)
                for v in sorted(provs)[1:3]:
                    k_subgroups.append(normal_closure(P, [P.element_at(v)]))
        for K in k_subgroups:
            for H in fam:
                base = iterated_commutator(commutator_subgroup(K, H), r - j)
                for k in (1, 2):
                    lhs = iterated_commutator(
                        commutator_subgroup(K, power_subgroup(H, k)), r - j)
                    rec.check(lhs.issubset(power_subgroup(base, k)),
                              f"j={j},K={K.size},H={H.size},k={k}")


def _interval_pairs(ctx: _Context) -> list[tuple[Subgroup, Subgroup]]:
    """Normal pairs gamma_r^p <= N < L <= gamma_r with |L:N| = p."""
    if ctx.gr.size > 140:
        return []
    layers = [S for S in all_subgroups(ctx.gr)
              if ctx.gr_p.issubset(S) and S.is_normal()]
    pairs = []
    for L in layers:
        for N in layers:
            if N.issubset(L) and L.size == N.size * ctx.p:
                pairs.append((L, N))
    return pairs


def _check_power_congruence_ladder(ctx: _Context, rec: _Recorder) -> None:
    """Under the detected centrality/exponent conditions, powers of a slot
    value track powers of the slot entry modulo the lower layer."""
    from .presentation import inverse, multiply, power

    P, r = ctx.P, ctx.r
    if not ctx.power_hypothesis:
        return
    prov = value_provenance(gamma_word(r), P)
    exp_s = ctx.gamma_exponent()
    for L, N in _interval_pairs(ctx):
        n_p = power_subgroup(N, 1)
        tuples_used = 0
        for v in sorted(prov):
            if tuples_used >= 4:
                break
            if not (L.contains_index(v) and not N.contains_index(v)):
                continue
            tup = prov[v]
            tuples_used += 1
            for j in range(1, r + 1):
                xs = [P.element_at(i) for i in tup]
                h = xs[j - 1]
                H = normal_closure(P, [h])
                if P.p != 2:
                    W = iterated_commutator(
                        commutator_subgroup(
                            commutator_subgroup(gamma_term(P, j), H), H),
                        r - j)
                    cond = (commutator_subgroup(W, ctx.G).issubset(n_p)
                            and power_subgroup(W, 1).issubset(n_p))
                else:
                    if ctx.d_gr > 1:
                        cond = False
                    else:
                        lhs0 = power(P, _left_normed_from(P, xs[0], xs[1:]), 2)
                        ys = list(xs)
                        ys[j - 1] = power(P, h, 2)
                        rhs0 = _left_normed_from(P, ys[0], ys[1:])
                        cond = power_subgroup(N, 1).contains(
                            multiply(P, inverse(P, rhs0), lhs0))
                if not cond:
                    continue
                ok = True
                for k in range(0, exp_s + 1):
                    pk = P.p ** k
                    val = _left_normed_from(P, xs[0], xs[1:])
                    lhs = power(P, val, pk)
                    ys = list(xs)
                    ys[j - 1] = power(P, h, pk)
                    rhs = _left_normed_from(P, ys[0], ys[1:])
                    n_pk = power_subgroup(N, k)
                    if not n_pk.contains(multiply(P, inverse(P, rhs), lhs)):
                        ok = False
                        break
                    lk = power_subgroup(L, k)
                    span = join(closure(P, [rhs]), n_pk)
                    if not (span == lk):
                        ok = False
                        break
                rec.check(ok, f"L={L.size},N={N.size},j={j},v={v}")


# -- obstruction/stabilizer laws --------------------------------------------


def _bracket_with_group_sub(ctx: _Context, v: int) -> Subgroup:
    t = group_tables(ctx.P)
    return Subgroup(ctx.P, t.closure(np.unique(t.comm_col(v))))


def _check_surjective_slot_criterion(ctx: _Context, rec: _Recorder) -> None:
    """[x, G] = gamma_r iff x avoids every left obstruction, and dually."""
    P, r = ctx.P, ctx.r
    t = group_tables(P)
    if ctx.gr.size > 140 or ctx.grm1.size > 4600:
        return
    us = maximal_normalized_subgroups(ctx.gr, ctx.G)
    d_union: set[int] = set()
    for U in us:
        d_union.update(int(i) for i in left_obstruction(P, r, U).indices)
    for x in (int(i) for i in ctx.grm1.indices):
        full = _bracket_with_group_sub(ctx, x)
        rec.check((full == ctx.gr) == (x not in d_union), f"left x={x}")
    rs = maximal_normalized_subgroups(ctx.gr, ctx.grm1)
    e_union: set[int] = set()
    for R in rs:
        e_union.update(int(i) for i in right_obstruction(P, r, R).indices)
    gm = ctx.grm1.indices
    for y in range(P.order):
        arr = t.closure(np.unique(t.comm_v(gm, np.int32(y))))
        got = arr.size == ctx.gr.size and bool((arr == ctx.gr.indices).all())
        rec.check(got == (y not in e_union), f"right y={y}")


def _check_obstruction_laws(ctx: _Context, rec: _Recorder) -> None:
    """Proper-ness, intersection law and orthogonality of the obstructions
    when the verbal subgroup is 2-generator."""
    P, r = ctx.P, ctx.r
    if ctx.d_gr != 2 or ctx.gr.size > 140:
        return
    t = group_tables(P)
    us = maximal_normalized_subgroups(ctx.gr, ctx.G)
    rs = maximal_normalized_subgroups(ctx.gr, ctx.grm1)
    ds = {U: left_obstruction(P, r, U) for U in us}
    es = {R: right_obstruction(P, r, R) for R in rs}
    for U, D in ds.items():
        rec.check(D.size < ctx.grm1.size, f"left obstruction full at U={U.size}")
    for R, E in es.items():
        rec.check(E.size < P.order, f"right obstruction full at R={R.size}")
    for U in us:
        for V in us:
            for W in us:
                if V == W:
                    continue
                inter = ds[V].index_set & ds[W].index_set
                rec.check(inter <= ds[U].index_set,
                          f"left intersection UVW={U.size},{V.size},{W.size}")
    for R in rs:
        for S in rs:
            for T in rs:
                if S == T:
                    continue
                inter = (set(int(i) for i in es[S].indices)
                         & set(int(i) for i in es[T].indices))
                rec.check(inter <= set(int(i) for i in es[R].indices),
                          "right intersection")
    grp_set = ctx.gr_p.indices
    for U in us:
        for R in rs:
            if U == R:
                continue
            brackets = t.comm_v(ds[U].indices[:, None], es[R].indices[None, :])
            rec.check(bool(np.isin(brackets, grp_set).all()),
                      f"[D,E] escapes p-th powers U={U.size},R={R.size}")


def _check_stabilizer_laws(ctx: _Context, rec: _Recorder) -> None:
    """Index bound, dichotomy and descending action of the quotient
    centralizer when the verbal subgroup is 2-generator."""
    P, r = ctx.P, ctx.r
    if ctx.d_gr != 2:
        return
    C = gamma_quotient_centralizer(P, r)
    rec.check(P.order <= C.size * ctx.p, f"index {P.order // C.size}")
    grp1 = gamma_term(P, r + 1)
    ceq = C.size == P.order
    rec.check(ceq == grp1.issubset(ctx.gr_p), "dichotomy")
    if ctx.gr.size <= 140:
        between = [S for S in all_subgroups(ctx.gr)
                   if ctx.gr_p.issubset(S) and ctx.gr_p.size < S.size < ctx.gr.size]
        if ceq:
            for U in between:
                rec.check(U.is_normal(), f"non-normal layer |U|={U.size}")
        else:
            normal_between = [U for U in between if U.is_normal()]
            expected = join(grp1, ctx.gr_p)
            rec.check(len(normal_between) == 1
                      and normal_between[0] == expected,
                      f"unique normal layer count={len(normal_between)}")
    k, cur = 0, ctx.gr
    while cur.size > 1:
        nxt = power_subgroup(ctx.gr, k + 1)
        rec.check(commutator_subgroup(cur, C).issubset(nxt), f"k={k}")
        cur = nxt
        k += 1


def _check_stabilizer_obstruction(ctx: _Context, rec: _Recorder) -> None:
    """For the derived subgroup every left obstruction sits inside the
    quotient centralizer (r = 2 only)."""
    P = ctx.P
    if ctx.r != 2:
        return
    g2 = gamma_term(P, 2)
    if g2.size == 1 or rank(g2) > 2 or g2.size > 140:
        return
    C = gamma_quotient_centralizer(P, 2)
    for U in maximal_normalized_subgroups(g2, ctx.G):
        rec.check(left_obstruction(P, 2, U).issubset(C), f"U={U.size}")


_CHECKS: tuple[tuple[str, Callable[[_Context, _Recorder], None]], ...] = (
    ("power-bracket", _check_power_bracket),
    ("nested-bracket", _check_nested_bracket),
    ("normal-absorption", _check_normal_absorption),
    ("two-generator-powerful", _check_two_generator_powerful),
    ("powerful-subgroups", _check_powerful_subgroups),
    ("power-index-monotone", _check_power_index_monotone),
    ("slot-factorization", _check_slot_factorization),
    ("slot-factorization-quotient", _check_slot_factorization_quotient),
    ("coset-lifting", _check_coset_lifting),
    ("power-inside-bracket", _check_power_inside_bracket),
    ("power-outside-bracket", _check_power_outside_bracket),
    ("power-congruence-ladder", _check_power_congruence_ladder),
    ("surjective-slot-criterion", _check_surjective_slot_criterion),
    ("obstruction-laws", _check_obstruction_laws),
    ("stabilizer-laws", _check_stabilizer_laws),
    ("stabilizer-obstruction", _check_stabilizer_obstruction),
)


def lemma_suite(P: PcPresentation, r: int, seed: int = 1,
                lemmas: tuple[str, ...] | None = None) -> list[LemmaReport]:
    """Run every applicable structural check for the pair (P, r)."""
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    ctx = _Context(P, r, seed)
    wanted = set(lemmas) if lemmas else set(LEMMA_IDS)
    unknown = wanted - set(LEMMA_IDS)
    if unknown:
        raise ValueError(f"unknown lemma ids: {sorted(unknown)}")
    reports = []
    for lemma_id, fn in _CHECKS:
        if lemma_id not in wanted:
            continue
        rec = _Recorder()
        t0 = time.perf_counter()
        fn(ctx, rec)
        elapsed = time.perf_counter() - t0
        if rec.instances == 0:
            status = "vacuous"
        elif rec.failures:
            status = "fail"
        else:
            status = "pass"
        reports.append(LemmaReport(
            lemma=lemma_id,
            status=status,
            instances=rec.instances,
            failures=tuple(rec.failures),
            sampled=rec.sampled,
            seed=ctx.seed_of(lemma_id) if rec.sampled else None,
            elapsed=elapsed,
        ))
    return reports
