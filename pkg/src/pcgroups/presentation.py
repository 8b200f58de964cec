"""Exact arithmetic in finite p-groups given by weighted polycyclic presentations.

A presentation has generators g_1, ..., g_n, all of relative order p, with

    g_i^p        = power word   (tokens with indices > i)
    [g_j, g_i]   = commutator word for j > i   (tokens with indices > j)

Every relation word only involves generators of strictly larger index, so the
presentation is adapted to a central chief series and collection from the left
terminates.  Every element has a unique normal form g_1^{e_1} ... g_n^{e_n}
with 0 <= e_k < p; the group has order p^n exactly when the presentation is
consistent (see :func:`validate_consistency`).

Conventions used throughout the package:

    [x, y] = x^-1 y^-1 x y          x^y = y^-1 x y
    g_j g_i = g_i g_j [g_j, g_i]    for j > i
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "PresentationError",
    "Element",
    "PcPresentation",
    "Word",
    "collect",
    "multiply",
    "inverse",
    "power",
    "commutator",
    "conjugate",
    "ConsistencyReport",
    "validate_consistency",
    "enumerate_elements",
]

ORDER_CAP = 1 << 20

# a relation word: tokens (generator index, exponent), indices strictly increasing
Word = tuple[tuple[int, int], ...]


class PresentationError(ValueError):
    """Malformed presentation data (bad prime, bad token, out-of-range index)."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True, order=True)
class Element:
    """Normal-form exponent vector; the element g_1^{e_1} ... g_n^{e_n}."""

    exps: tuple[int, ...]

    def __str__(self) -> str:
        return "[" + ",".join(str(e) for e in self.exps) + "]"

    def is_identity(self) -> bool:
        return not any(self.exps)


def _check_word(word, owner: int, n: int, p: int, kind: str) -> Word:
    """Validate one relation word; indices are 1-based and must exceed `owner`."""
    out = []
    prev = owner
    for tok in word:
        k, e = int(tok[0]), int(tok[1])
        if k <= owner:
            raise PresentationError(
                f"{kind}: token index must exceed {owner} (got {k})")
        if k <= prev:
            raise PresentationError(
                f"{kind}: token indices must be strictly increasing (got {k})")
        if k > n:
            raise PresentationError(f"{kind}: token index {k} out of range 1..{n}")
        if not 1 <= e < p:
            raise PresentationError(
                f"{kind}: exponent {e} out of range 1..{p - 1}")
        out.append((k, e))
        prev = k
    return tuple(out)


class PcPresentation:
    """A finite p-group of order p^n encoded by power and commutator relations.

    `power` maps generator index i (1-based) to the word for g_i^p; `comm`
    maps pairs (j, i) with j > i to the word for [g_j, g_i].  Omitted
    relations default to the empty word (identity).  Immutable after
    construction; all operations on it are pure functions.
    """

    def __init__(self, p: int, n: int,
                 power: dict[int, Iterable] | None = None,
                 comm: dict[tuple[int, int], Iterable] | None = None,
                 id: str = "pcgroup"):
        if not is_prime(p):
            raise PresentationError(f"p must be prime, got {p}")
        if n < 0:
            raise PresentationError(f"generator count must be >= 0, got {n}")
        if p ** n > ORDER_CAP:
            raise PresentationError(
                f"group order p^n = {p}^{n} exceeds the cap {ORDER_CAP}")
        self.p = p
        self.n = n
        self.order = p ** n
        self.id = id

        pw = [()] * n
        for i, w in (power or {}).items():
            i = int(i)
            if not 1 <= i <= n:
                raise PresentationError(f"pow {i}: generator index out of range")
            if pw[i - 1]:
                raise PresentationError(f"pow {i}: duplicate relation")
            pw[i - 1] = _check_word(w, i, n, p, f"pow {i}")
        self._power = tuple(pw)

        cw: dict[tuple[int, int], Word] = {}
        for (j, i), w in (comm or {}).items():
            j, i = int(j), int(i)
            if not 1 <= i < j <= n:
                raise PresentationError(f"comm {j} {i}: need 1 <= i < j <= n")
            if (j, i) in cw:
                raise PresentationError(f"comm {j} {i}: duplicate relation")
            word = _check_word(w, j, n, p, f"comm {j} {i}")
            if word:
                cw[(j, i)] = word
        self._comm = cw

        # 0-based views used by the collector
        self._power0 = tuple(tuple((k - 1, e) for k, e in w) for w in self._power)
        comm0 = [[() for _ in range(n)] for _ in range(n)]
        for (j, i), w in cw.items():
            comm0[j - 1][i - 1] = tuple((k - 1, e) for k, e in w)
        self._comm0 = tuple(tuple(row) for row in comm0)

        self._place = tuple(p ** (n - 1 - k) for k in range(n))
        self._push_cache: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = {}
        self._cache: dict = {}

    # -- relation access -------------------------------------------------

    def power_word(self, i: int) -> Word:
        return self._power[i - 1]

    def comm_word(self, j: int, i: int) -> Word:
        return self._comm.get((j, i), ())

    def relations(self) -> tuple[tuple[int, Word], ...]:
        return tuple((i, w) for i, w in enumerate(self._power, start=1))

    def comm_relations(self) -> tuple[tuple[tuple[int, int], Word], ...]:
        return tuple(sorted(self._comm.items()))

    # -- elements ---------------------------------------------------------

    def identity(self) -> Element:
        return Element((0,) * self.n)

    def generator(self, i: int) -> Element:
        if not 1 <= i <= self.n:
            raise PresentationError(f"generator index {i} out of range")
        exps = [0] * self.n
        exps[i - 1] = 1
        return Element(tuple(exps))

    def generators(self) -> tuple[Element, ...]:
        return tuple(self.generator(i) for i in range(1, self.n + 1))

    def element(self, exps: Sequence[int]) -> Element:
        exps = tuple(int(e) for e in exps)
        self.check_element(Element(exps))
        return Element(exps)

    def check_element(self, x: Element) -> None:
        if len(x.exps) != self.n or any(not 0 <= e < self.p for e in x.exps):
            raise PresentationError(
                f"element {x} does not belong to {self.id} (n={self.n}, p={self.p})")

    def index_of(self, x: Element) -> int:
        """Position of x in lexicographic order; a bijection onto 0..order-1."""
        idx = 0
        for e, w in zip(x.exps, self._place):
            idx += e * w
        return idx

    def element_at(self, idx: int) -> Element:
        exps = []
        for w in self._place:
            exps.append(idx // w)
            idx %= w
        return Element(tuple(exps))

    def structurally_equal(self, other: "PcPresentation") -> bool:
        return (self.p == other.p and self.n == other.n
                and self._power == other._power and self._comm == other._comm)

    def __repr__(self) -> str:
        return f"PcPresentation({self.id!r}, p={self.p}, n={self.n})"

    def __reduce__(self):
        # rebuild from the defining data; caches are not carried across pickling
        power = {i: w for i, w in enumerate(self._power, start=1) if w}
        return (PcPresentation, (self.p, self.n, power, dict(self._comm), self.id))

    # -- collection --------------------------------------------------------

    def _push_gen(self, vec: list[int], i: int) -> None:
        """Multiply the normal form `vec` by g_i (0-based) in place.

        The tail of `vec` beyond position i is snapshotted, cleared, and
        re-multiplied after the exchange; every recursive call uses a strictly
        larger index, which bounds the recursion depth by n.
        """
        n = self.n
        tail = [(k, vec[k]) for k in range(i + 1, n) if vec[k]]
        for k, _ in tail:
            vec[k] = 0
        vec[i] += 1
        if vec[i] == self.p:
            vec[i] = 0
            for (k, e) in self._power0[i]:
                for _ in range(e):
                    self._cached_push(vec, k)
        for (k, ek) in tail:
            comm = self._comm0[k][i]
            for _ in range(ek):
                self._cached_push(vec, k)
                for (m, e) in comm:
                    for _ in range(e):
                        self._cached_push(vec, m)

    def _cached_push(self, vec: list[int], i: int) -> None:
        key = (tuple(vec), i)
        hit = self._push_cache.get(key)
        if hit is None:
            self._push_gen(vec, i)
            self._push_cache[key] = tuple(vec)
        else:
            vec[:] = hit


def collect(P: PcPresentation, word: Iterable[tuple[int, int]]) -> Element:
    """Normal form of an arbitrary word, given as (generator, exponent) tokens.

    Generator indices are 1-based; exponents may be any integers (negative
    exponents go through the inverse of the generator).
    """
    vec = [0] * P.n
    for tok in word:
        i, e = int(tok[0]), int(tok[1])
        if not 1 <= i <= P.n:
            raise PresentationError(f"token index {i} out of range 1..{P.n}")
        if 0 <= e < 4 * P.p:
            for _ in range(e):
                P._cached_push(vec, i - 1)
        else:
            g = power(P, P.generator(i), e)
            for k, ek in enumerate(g.exps):
                for _ in range(ek):
                    P._cached_push(vec, k)
    return Element(tuple(vec))


def multiply(P: PcPresentation, x: Element, y: Element) -> Element:
    P.check_element(x)
    P.check_element(y)
    vec = list(x.exps)
    for k, ek in enumerate(y.exps):
        for _ in range(ek):
            P._cached_push(vec, k)
    return Element(tuple(vec))


def inverse(P: PcPresentation, x: Element) -> Element:
    """Right inverse, found by clearing positions left to right.

    Multiplying by g_i^(p - e) zeroes position i and only disturbs higher
    positions, so after one pass the product is the identity.
    """
    P.check_element(x)
    cur = list(x.exps)
    inv = [0] * P.n
    for i in range(P.n):
        e = cur[i]
        if e:
            t = P.p - e
            for _ in range(t):
                P._cached_push(cur, i)
                P._cached_push(inv, i)
    return Element(tuple(inv))


def power(P: PcPresentation, x: Element, m: int) -> Element:
    """x^m by binary powering; m may be negative."""
    if m < 0:
        return power(P, inverse(P, x), -m)
    acc = P.identity()
    base = x
    while m:
        if m & 1:
            acc = multiply(P, acc, base)
        m >>= 1
        if m:
            base = multiply(P, base, base)
    return acc


def commutator(P: PcPresentation, x: Element, y: Element) -> Element:
    """[x, y] = x^-1 y^-1 x y."""
    xy = multiply(P, x, y)
    yx = multiply(P, y, x)
    return multiply(P, inverse(P, yx), xy)


def conjugate(P: PcPresentation, x: Element, y: Element) -> Element:
    """x^y = y^-1 x y."""
    return multiply(P, inverse(P, y), multiply(P, x, y))


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    element_count: int
    failures: tuple[str, ...] = ()


# Full associativity is checked on the multiplication table up to this order;
# beyond it the classical overlap test words are used instead.
FULL_CHECK_LIMIT = 3 ** 5


def validate_consistency(P: PcPresentation) -> ConsistencyReport:
    """Check that the presentation defines a group of order exactly p^n.

    For small groups (order <= 243) the full multiplication table is built
    from `collect` and associativity is verified on every triple.  For larger
    groups the standard overlap words are resolved both ways (inner products
    brought to normal form before the outer multiplication):

        g_k (g_j g_i) = (g_k g_j) g_i        for k > j > i
        (g_j^p) g_i   = g_j^{p-1} (g_j g_i)  for j > i
        g_j (g_i^p)   = (g_j g_i) g_i^{p-1}  for j > i
        g_i (g_i^p)   = (g_i^p) g_i
    """
    failures: list[str] = []
    n, p = P.n, P.p
    if P.order <= FULL_CHECK_LIMIT:
        import numpy as np

        from .tables import group_tables

        try:
            t = group_tables(P)
        except Exception as exc:  # table construction itself failed
            return ConsistencyReport(False, P.order, (str(exc),))
        mul = t.mul
        # every row and column must be a permutation
        full = np.arange(P.order)
        if not all((np.sort(mul[i]) == full).all() for i in range(P.order)):
            failures.append("multiplication rows are not permutations")
        if not all((np.sort(mul[:, i]) == full).all() for i in range(P.order)):
            failures.append("multiplication columns are not permutations")
        # associativity over all triples, chunked over x
        if not failures:
            for start in range(0, P.order, 64):
                rows = mul[start:start + 64]
                left = mul[rows.reshape(-1), :].reshape(rows.shape[0], P.order, P.order)
                right = rows[:, mul]
                if not (left == right).all():
                    bad = np.argwhere(left != right)[0]
                    x, y, z = start + int(bad[0]), int(bad[1]), int(bad[2])
                    failures.append(
                        f"associativity fails at ({P.element_at(x)}, "
                        f"{P.element_at(y)}, {P.element_at(z)})")
                    break
        count = P.order if not failures else _closure_count(P)
        return ConsistencyReport(not failures, count, tuple(failures))

    gen = [P.generator(i) for i in range(1, n + 1)]
    pw = [collect(P, P.power_word(i)) for i in range(1, n + 1)]  # g_i^p values
    gp1 = [P.element_at((p - 1) * P._place[i]) for i in range(n)]  # g_i^(p-1)

    def eq(a, b, what):
        if a != b:
            failures.append(f"overlap test failed: {what}")

    for i in range(n):
        eq(multiply(P, gen[i], pw[i]), multiply(P, pw[i], gen[i]),
           f"g{i + 1} g{i + 1}^p")
        for j in range(i + 1, n):
            eq(multiply(P, pw[j], gen[i]),
               multiply(P, gp1[j], multiply(P, gen[j], gen[i])),
               f"g{j + 1}^p g{i + 1}")
            eq(multiply(P, gen[j], pw[i]),
               multiply(P, multiply(P, gen[j], gen[i]), gp1[i]),
               f"g{j + 1} g{i + 1}^p")
            for k in range(j + 1, n):
                eq(multiply(P, gen[k], multiply(P, gen[j], gen[i])),
                   multiply(P, multiply(P, gen[k], gen[j]), gen[i]),
                   f"g{k + 1} (g{j + 1} g{i + 1})")
    count = P.order if not failures else _closure_count(P)
    return ConsistencyReport(not failures, count, tuple(failures))


def _closure_count(P: PcPresentation) -> int:
    """Size of the closure of the generators under `multiply` (diagnostic)."""
    seen = {P.identity()}
    frontier = list(seen)
    gens = P.generators()
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = multiply(P, x, g)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return len(seen)


def enumerate_elements(P: PcPresentation) -> list[Element]:
    """All p^n normal forms in lexicographic order."""
    return [P.element_at(i) for i in range(P.order)]


def _iter_exps(n: int, p: int) -> Iterator[tuple[int, ...]]:
    vec = [0] * n
    while True:
        yield tuple(vec)
        k = n - 1
        while k >= 0 and vec[k] == p - 1:
            vec[k] = 0
            k -= 1
        if k < 0:
            return
        vec[k] += 1
