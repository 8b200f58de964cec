"""Subgroup-level operations with fully materialized element sets.

Subgroups carry their complete (sorted) element set, so equality, inclusion
and quotient sizes are exact set computations.  The dense index tables do the
heavy lifting; everything here is deterministic.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .presentation import Element, PcPresentation
from .tables import group_tables

__all__ = [
    "Subgroup",
    "trivial_subgroup",
    "full_group",
    "closure",
    "normal_closure",
    "join",
    "commutator_subgroup",
    "iterated_commutator",
    "lower_central_series",
    "gamma_term",
    "nilpotency_class",
    "power_subgroup",
    "frattini",
    "rank",
    "center",
    "upper_central_series",
    "CentralizerResult",
    "centralizer_section",
    "is_powerful",
    "all_subgroups",
    "maximal_normalized_subgroups",
]

# above this many (a, b) pairs, commutator subgroups switch from the
# exhaustive-pairs definition to the generator-bracket normal closure
PAIR_LIMIT = 1 << 20


class Subgroup:
    """A subgroup of a pc-presented group, materialized as sorted indices."""

    def __init__(self, ambient: PcPresentation, indices,
                 generators: tuple[Element, ...] = ()):
        self.ambient = ambient
        arr = np.unique(np.asarray(indices, dtype=np.int32))
        if arr.size == 0 or arr[0] != 0:
            arr = np.union1d(arr, np.zeros(1, dtype=np.int32))
        self.indices = arr
        self.index_set = frozenset(int(i) for i in arr)
        self.generators = generators
        self._small_gens: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        return int(self.indices.size)

    def __len__(self) -> int:
        return self.size

    @property
    def elements(self) -> tuple[Element, ...]:
        P = self.ambient
        return tuple(P.element_at(int(i)) for i in self.indices)

    def contains(self, x: Element) -> bool:
        return self.ambient.index_of(x) in self.index_set

    def contains_index(self, i: int) -> bool:
        return int(i) in self.index_set

    def issubset(self, other: "Subgroup") -> bool:
        return self.index_set <= other.index_set

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and self.ambient is other.ambient
                and self.index_set == other.index_set)

    def __hash__(self) -> int:
        return hash((id(self.ambient), self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Subgroup(|H|={self.size} of {self.ambient.id})"

    def sort_key(self):
        return (self.size, tuple(int(i) for i in self.indices))

    def small_gens(self) -> tuple[int, ...]:
        """A short generating sequence (greedy, deterministic)."""
        if self._small_gens is None:
            t = group_tables(self.ambient)
            chosen: list[int] = []
            have = t.closure([])
            # prefer the declared generators, then remaining elements
            pool = [int(self.ambient.index_of(g)) for g in self.generators]
            pool += [int(i) for i in self.indices]
            for g in pool:
                if have.size == self.size:
                    break
                if g not in have:
                    chosen.append(g)
                    have = t.closure(chosen)
            self._small_gens = tuple(chosen)
        return self._small_gens

    def is_normal(self) -> bool:
        """Normal in the full ambient group."""
        cached = self.ambient._cache.setdefault("normal_flags", {})
        key = self.indices.tobytes()
        if key not in cached:
            t = group_tables(self.ambient)
            gens = np.arange(1, self.ambient.n + 1)
            ok = True
            for i in range(self.ambient.n):
                g = int(self.ambient.index_of(self.ambient.generator(i + 1)))
                conj = t.conj_v(self.indices, np.int32(g))
                if not set(int(c) for c in conj) <= self.index_set:
                    ok = False
                    break
            del gens
            cached[key] = ok
        return cached[key]

    def normalized_by(self, H: "Subgroup") -> bool:
        t = group_tables(self.ambient)
        for g in H.small_gens():
            conj = t.conj_v(self.indices, np.int32(g))
            if not set(int(c) for c in conj) <= self.index_set:
                return False
        return True


def trivial_subgroup(P: PcPresentation) -> Subgroup:
    return Subgroup(P, [0])


def full_group(P: PcPresentation) -> Subgroup:
    key = "full_group"
    if key not in P._cache:
        P._cache[key] = Subgroup(P, np.arange(P.order, dtype=np.int32),
                                 P.generators())
    return P._cache[key]


def closure(P: PcPresentation, gens: Iterable[Element]) -> Subgroup:
    gens = tuple(gens)
    for g in gens:
        P.check_element(g)
    t = group_tables(P)
    idx = [int(P.index_of(g)) for g in gens]
    return Subgroup(P, t.closure(idx), gens)


def normal_closure(P: PcPresentation, gens: Iterable[Element]) -> Subgroup:
    gens = tuple(gens)
    for g in gens:
        P.check_element(g)
    t = group_tables(P)
    idx = [int(P.index_of(g)) for g in gens]
    return Subgroup(P, t.normal_closure(idx), gens)


def join(A: Subgroup, B: Subgroup) -> Subgroup:
    _common_ambient(A, B)
    t = group_tables(A.ambient)
    return Subgroup(A.ambient, t.closure(list(A.small_gens()) + list(B.small_gens())),
                    A.generators + B.generators)


def commutator_subgroup(A: Subgroup, B: Subgroup) -> Subgroup:
    """[A, B], generated by all commutators [a, b] with a in A, b in B."""
    P = _common_ambient(A, B)
    t = group_tables(P)
    if A.size * B.size <= PAIR_LIMIT:
        brackets = np.unique(t.comm_v(A.indices[:, None], B.indices[None, :]))
        return Subgroup(P, t.closure(brackets))
    # generator brackets, then closure under conjugation by <A, B>
    ga = list(A.small_gens())
    gb = list(B.small_gens())
    brackets = np.unique(t.comm_v(np.asarray(ga, dtype=np.int32)[:, None],
                                  np.asarray(gb, dtype=np.int32)[None, :]))
    return Subgroup(P, t.normal_closure(brackets, ambient_gens=ga + gb))


def iterated_commutator(L: Subgroup, n: int) -> Subgroup:
    """[L, G], n times; n = 0 returns L itself."""
    if n < 0:
        raise ValueError(f"iteration count must be >= 0, got {n}")
    cur = L
    G = full_group(L.ambient)
    for _ in range(n):
        cur = commutator_subgroup(cur, G)
    return cur


def lower_central_series(P: PcPresentation) -> list[Subgroup]:
    """G = gamma_1 > gamma_2 > ... down to (and including) the trivial term."""
    key = "lcs"
    if key not in P._cache:
        series = [full_group(P)]
        while series[-1].size > 1:
            nxt = commutator_subgroup(series[-1], series[0])
            if nxt.size == series[-1].size:
                break  # cannot happen for consistent p-groups
            series.append(nxt)
        P._cache[key] = series
    return list(P._cache[key])


def gamma_term(P: PcPresentation, r: int) -> Subgroup:
    if r < 1:
        raise ValueError(f"lower central index must be >= 1, got {r}")
    series = lower_central_series(P)
    return series[r - 1] if r <= len(series) else trivial_subgroup(P)


def nilpotency_class(P: PcPresentation) -> int:
    return len(lower_central_series(P)) - 1


def power_subgroup(H: Subgroup, k: int) -> Subgroup:
    """H^(p^k), generated by the p^k-th powers of all elements of H."""
    if k < 0:
        raise ValueError(f"power exponent must be >= 0, got {k}")
    if k == 0:
        return H
    t = group_tables(H.ambient)
    powers = np.unique(t.pow_v(H.indices, H.ambient.p ** k))
    return Subgroup(H.ambient, t.closure(powers))


def frattini(H: Subgroup) -> Subgroup:
    """Phi(H) = H^p [H, H]."""
    return join(power_subgroup(H, 1), commutator_subgroup(H, H))


def rank(H: Subgroup) -> int:
    """Minimal number of generators, via the Frattini quotient."""
    q = H.size // frattini(H).size
    return round(math.log(q, H.ambient.p)) if q > 1 else 0


def center(P: PcPresentation) -> Subgroup:
    return centralizer_section(P, full_group(P), trivial_subgroup(P)).as_subgroup()


def upper_central_series(P: PcPresentation) -> list[Subgroup]:
    """1 = Z_0 <= Z_1 <= ... up to the stable term (= G for p-groups)."""
    series = [trivial_subgroup(P)]
    G = full_group(P)
    while True:
        nxt = centralizer_section(P, G, series[-1]).as_subgroup()
        if nxt.size == series[-1].size:
            break
        series.append(nxt)
    return series


class CentralizerResult:
    """Exact element set of a section centralizer, flagged subgroup or not.

    The set {g : [A, g] <= B} is a subgroup whenever B is normal in the
    group generated by A and the candidates; for arbitrary B it can fail to
    be closed, so the raw set plus an `is_subgroup` flag is returned.
    """

    def __init__(self, ambient: PcPresentation, indices: np.ndarray):
        self.ambient = ambient
        self.indices = np.unique(np.asarray(indices, dtype=np.int32))
        t = group_tables(ambient)
        closed = t.closure(self.indices)
        self.is_subgroup = closed.size == self.indices.size

    @property
    def size(self) -> int:
        return int(self.indices.size)

    @property
    def elements(self) -> tuple[Element, ...]:
        return tuple(self.ambient.element_at(int(i)) for i in self.indices)

    def as_subgroup(self) -> Subgroup:
        if not self.is_subgroup:
            raise ValueError("centralizer set is not closed under multiplication")
        return Subgroup(self.ambient, self.indices)


def centralizer_section(P: PcPresentation, A: Subgroup, B: Subgroup,
                        within: Subgroup | None = None) -> CentralizerResult:
    """C(A/B) = {g : [a, g] in B for all a in A}, over `within` (default G).

    B must be contained in A.  When B is normal in the ambient group the
    condition is checked on a generating set of A only; otherwise every
    element of A is tested, which keeps the result exact even when it is
    not a subgroup.
    """
    if not B.issubset(A):
        raise ValueError("centralizer section needs B <= A")
    t = group_tables(P)
    cand = within.indices if within is not None else np.arange(P.order, dtype=np.int32)
    bset = B.indices
    if B.is_normal():
        test_elts = A.small_gens()
    else:
        test_elts = [int(i) for i in A.indices]
    mask = np.ones(cand.size, dtype=bool)
    for a in test_elts:
        live = cand[mask]
        if live.size == 0:
            break
        comms = t.comm_v(np.int32(a), live)
        ok = np.isin(comms, bset)
        mask[mask] = ok
    return CentralizerResult(P, cand[mask])


def is_powerful(H: Subgroup) -> bool:
    """[H,H] <= H^p for odd p; [H,H] <= H^4 for p = 2."""
    derived = commutator_subgroup(H, H)
    k = 2 if H.ambient.p == 2 else 1
    return derived.issubset(power_subgroup(H, k))


SUBGROUP_ENUM_LIMIT = 140


def all_subgroups(K: Subgroup, limit: int = SUBGROUP_ENUM_LIMIT) -> list[Subgroup]:
    """Every subgroup of K, by closing each known subgroup with one more element.

    Exponential in general; guarded to |K| <= limit, which covers the corpus
    uses (K is a verbal subgroup or similar small section).
    """
    if K.size > limit:
        raise ValueError(
            f"subgroup enumeration capped at order {limit}, got {K.size}")
    P = K.ambient
    cache = P._cache.setdefault("all_subgroups", {})
    ckey = K.indices.tobytes()
    if ckey in cache:
        return list(cache[ckey])
    t = group_tables(P)
    found: dict[bytes, np.ndarray] = {}
    triv = t.closure([])
    found[triv.tobytes()] = triv
    frontier = [triv]
    elems = [int(i) for i in K.indices]
    while frontier:
        nxt = []
        for sub in frontier:
            have = set(int(i) for i in sub)
            for x in elems:
                if x in have:
                    continue
                ext = t.closure(list(sub) + [x])
                key = ext.tobytes()
                if key not in found:
                    found[key] = ext
                    nxt.append(ext)
        frontier = nxt
    subs = [Subgroup(P, arr) for arr in found.values()]
    subs.sort(key=lambda s: s.sort_key())
    cache[ckey] = subs
    return list(subs)


def maximal_normalized_subgroups(K: Subgroup, H: Subgroup) -> list[Subgroup]:
    """All U maximal among the proper subgroups of K normalized by H."""
    _common_ambient(K, H)
    candidates = [U for U in all_subgroups(K)
                  if U.size < K.size and U.normalized_by(H)]
    maximal = [U for U in candidates
               if not any(U is not V and U.issubset(V) for V in candidates)]
    maximal.sort(key=lambda s: s.sort_key())
    return maximal


def _common_ambient(A: Subgroup, B: Subgroup) -> PcPresentation:
    if A.ambient is not B.ambient:
        raise ValueError("subgroups must share an ambient presentation")
    return A.ambient
