"""Auxiliary subgroups controlling which slots can generate a verbal subgroup.

For the r-th lower central term gamma_r = [gamma_{r-1}, G], three families of
subgroups measure how a single argument can fail to reach all of gamma_r:

* the quotient centralizer C(gamma_r / gamma_r^p): elements acting trivially
  on the top elementary quotient of gamma_r;
* for U maximal among proper G-normalized subgroups of gamma_r, the left
  obstruction: elements x of gamma_{r-1} with [x, G] <= U (x is useless in
  the left slot);
* for R maximal among proper gamma_{r-1}-normalized subgroups of gamma_r,
  the right obstruction: elements y with [gamma_{r-1}, y] <= R.  This one
  need not be a subgroup when R is not normal, so it is returned as a
  flagged element set.
"""

from __future__ import annotations

from .presentation import PcPresentation
from .subgroups import (CentralizerResult, Subgroup, centralizer_section,
                        full_group, gamma_term, maximal_normalized_subgroups,
                        power_subgroup, trivial_subgroup)

__all__ = [
    "gamma_quotient_centralizer",
    "descending_centralizer_tower",
    "left_obstruction",
    "right_obstruction",
]


def gamma_quotient_centralizer(P: PcPresentation, r: int) -> Subgroup:
    """C(gamma_r(G) / gamma_r(G)^p); the whole group iff the action is trivial."""
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    gr = gamma_term(P, r)
    return centralizer_section(P, gr, power_subgroup(gr, 1)).as_subgroup()


def descending_centralizer_tower(P: PcPresentation, r: int, j: int) -> list[Subgroup]:
    """The chain T_r = gamma_r^p, T_i = C_{gamma_i}(G / T_{i+1}) down to i = j.

    Returned in ascending index order: [T_j, T_{j+1}, ..., T_r].
    """
    if not 2 <= j <= r:
        raise ValueError(f"need 2 <= j <= r, got j={j}, r={r}")
    tower = [power_subgroup(gamma_term(P, r), 1)]
    G = full_group(P)
    for i in range(r - 1, j - 1, -1):
        below = tower[-1]
        tower.append(
            centralizer_section(P, G, below, within=gamma_term(P, i)).as_subgroup())
    tower.reverse()
    return tower


def _require_maximal_normalized(U: Subgroup, K: Subgroup, H: Subgroup,
                                what: str) -> None:
    if not any(U == V for V in maximal_normalized_subgroups(K, H)):
        raise ValueError(f"{what}: subgroup of order {U.size} is not maximal "
                         f"among proper subgroups of the target normalized by "
                         f"the acting subgroup")


def left_obstruction(P: PcPresentation, r: int, U: Subgroup) -> Subgroup:
    """Elements x of gamma_{r-1}(G) with [x, G] <= U.

    U must be maximal among proper subgroups of gamma_r(G) normalized by G.
    """
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    gr = gamma_term(P, r)
    _require_maximal_normalized(U, gr, full_group(P), "left obstruction")
    return centralizer_section(P, full_group(P), U,
                               within=gamma_term(P, r - 1)).as_subgroup()


def right_obstruction(P: PcPresentation, r: int, R: Subgroup) -> CentralizerResult:
    """Elements y of G with [gamma_{r-1}(G), y] <= R, as a flagged set.

    R must be maximal among proper subgroups of gamma_r(G) normalized by
    gamma_{r-1}(G).  The result can fail to be a subgroup when R is not
    normal in G; the flag records what happened.
    """
    if r < 2:
        raise ValueError(f"need r >= 2, got {r}")
    gr = gamma_term(P, r)
    grm1 = gamma_term(P, r - 1)
    _require_maximal_normalized(R, gr, grm1, "right obstruction")
    return centralizer_section(P, grm1, R)
