"""Dense index-based operation tables, the workhorse behind exhaustive checks.

Elements are identified with their lexicographic index (mixed-radix value of
the exponent vector).  The right-multiplication permutations R_i come straight
from the collection engine; the full multiplication table is assembled column
by column from them, so table entries agree with `multiply` by construction.

The full table costs order^2 int32 and is only built at desk scale
(FULL_TABLE_LIMIT); element-level operations in `presentation` stay available
for anything up to the global order cap.
"""

from __future__ import annotations

import numpy as np

from .presentation import Element, PcPresentation, PresentationError

__all__ = ["GroupTables", "group_tables", "FULL_TABLE_LIMIT"]

FULL_TABLE_LIMIT = 4600


class GroupTables:
    def __init__(self, P: PcPresentation):
        if P.order > FULL_TABLE_LIMIT:
            raise PresentationError(
                f"{P.id}: order {P.order} exceeds the dense-table limit "
                f"{FULL_TABLE_LIMIT}; exhaustive set operations need a smaller group")
        self.P = P
        order, n, p = P.order, P.n, P.p
        self.order = order

        # R[i][x] = index of x * g_{i+1}
        R = np.empty((max(n, 1), order), dtype=np.int32)
        for i in range(n):
            for x in range(order):
                vec = list(P.element_at(x).exps)
                P._cached_push(vec, i)
                R[i, x] = P.index_of(Element(tuple(vec)))
        self.R = R

        # mul[x, y] = x * y, columns filled along the lexicographic odometer:
        # y = y' * g_i where i is the last nonzero digit of y.
        mul = np.empty((order, order), dtype=np.int32)
        mul[:, 0] = np.arange(order, dtype=np.int32)
        place = P._place
        for y in range(1, order):
            i = _last_nonzero_digit(y, place, p)
            mul[:, y] = R[i][mul[:, y - place[i]]]
        self.mul = mul

        self.inv = np.argmin(mul, axis=1).astype(np.int32)  # x*y == 0 minimizes

    # -- vectorised helpers; all arguments are indices or index arrays ------

    def mul_v(self, a, b):
        return self.mul[a, b]

    def inv_v(self, a):
        return self.inv[a]

    def conj_v(self, x, y):
        """x^y = y^-1 x y, elementwise."""
        return self.mul[self.mul[self.inv[y], x], y]

    def comm_v(self, x, y):
        """[x, y] = (yx)^-1 (xy), elementwise."""
        return self.mul[self.inv[self.mul[y, x]], self.mul[x, y]]

    def pow_v(self, x, m: int):
        """x^m elementwise (m may be negative)."""
        x = np.asarray(x, dtype=np.int32)
        if m < 0:
            return self.pow_v(self.inv[x], -m)
        acc = np.zeros_like(x)
        base = x
        while m:
            if m & 1:
                acc = self.mul[acc, base]
            m >>= 1
            if m:
                base = self.mul[base, base]
        return acc

    def comm_col(self, x: int) -> np.ndarray:
        """[x, g] for every g in the group, as an array over g."""
        g = np.arange(self.order, dtype=np.int32)
        return self.comm_v(np.int32(x), g)

    def closure(self, gens) -> np.ndarray:
        """Sorted indices of the subgroup generated by `gens`."""
        gens = np.unique(np.asarray(list(gens) + [0], dtype=np.int32))
        cur = gens
        while True:
            prods = np.unique(self.mul[cur[:, None], gens])
            new = np.union1d(cur, prods)
            if new.size == cur.size:
                return new
            cur = new

    def normal_closure(self, gens, ambient_gens=None) -> np.ndarray:
        """Smallest subgroup containing `gens` closed under all conjugations."""
        if ambient_gens is None:
            ambient_gens = [int(self.P.index_of(g)) for g in self.P.generators()]
        ambient_gens = np.asarray(ambient_gens, dtype=np.int32)
        cur = self.closure(gens)
        while True:
            if ambient_gens.size:
                conj = np.unique(self.conj_v(cur[:, None], ambient_gens))
            else:
                conj = cur
            new = self.closure(np.union1d(cur, conj))
            if new.size == cur.size:
                return new
            cur = new


def _last_nonzero_digit(y: int, place, p: int) -> int:
    for i in range(len(place) - 1, -1, -1):
        if (y // place[i]) % p:
            return i
    raise AssertionError("y must be nonzero")


def group_tables(P: PcPresentation) -> GroupTables:
    """Cached dense tables for a presentation."""
    t = P._cache.get("tables")
    if t is None:
        t = GroupTables(P)
        P._cache["tables"] = t
    return t
