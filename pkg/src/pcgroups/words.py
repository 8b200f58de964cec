"""Outer commutator words: ASTs, evaluation, value sets, verbal subgroups.

An outer (multilinear) word is built by nesting commutators so that each
variable occurs exactly once.  Because the variables of the two sides of a
bracket are disjoint, the value set of [alpha, beta] is exactly the set of
commutators of an alpha-value with a beta-value; `value_set` exploits that
factorization, and the tests cross-check it against naive tuple enumeration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .presentation import Element, PcPresentation
from .subgroups import Subgroup, closure, gamma_term
from .tables import group_tables

__all__ = [
    "OuterWord",
    "Var",
    "Comm",
    "outer_word",
    "arity",
    "gamma_word",
    "parse_word",
    "word_text",
    "evaluate",
    "value_set",
    "value_indices",
    "value_provenance",
    "verbal_subgroup",
    "WitnessTuple",
    "slot_value_set",
    "slot_value_set_restricted",
    "slot_value_indices",
]


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Comm:
    left: "OuterWord"
    right: "OuterWord"


OuterWord = Union[Var, Comm]


def _variables(w: OuterWord) -> list[int]:
    if isinstance(w, Var):
        return [w.index]
    return _variables(w.left) + _variables(w.right)


def validate_outer(w: OuterWord) -> int:
    """Check the multilinear condition; returns the arity."""
    vs = _variables(w)
    if sorted(vs) != list(range(1, len(vs) + 1)):
        raise ValueError(
            f"not an outer word: variables {vs} must be exactly 1..{len(vs)}, "
            "each used once")
    return len(vs)


def arity(w: OuterWord) -> int:
    return len(_variables(w))


def outer_word(tree) -> OuterWord:
    """Build a validated outer word from nested ints / 2-lists."""
    w = _from_nested(tree)
    validate_outer(w)
    return w


def _from_nested(tree) -> OuterWord:
    if isinstance(tree, (Var, Comm)):
        return tree
    if isinstance(tree, int):
        if tree < 1:
            raise ValueError(f"variable index must be >= 1, got {tree}")
        return Var(tree)
    if isinstance(tree, (list, tuple)) and len(tree) == 2:
        return Comm(_from_nested(tree[0]), _from_nested(tree[1]))
    raise ValueError(f"cannot interpret {tree!r} as an outer word")


def gamma_word(r: int) -> OuterWord:
    """The left-normed lower central word [x_1, x_2, ..., x_r]."""
    if r < 1:
        raise ValueError(f"gamma word needs r >= 1, got {r}")
    w: OuterWord = Var(1)
    for k in range(2, r + 1):
        w = Comm(w, Var(k))
    return w


_GAMMA_RE = re.compile(r"^(?:gamma|γ)(\d+)$")


def parse_word(text: str) -> OuterWord:
    """Parse "gamma3" or a bracket string like "[[1,2],[3,4]]"."""
    text = text.strip()
    m = _GAMMA_RE.match(text)
    if m:
        return gamma_word(int(m.group(1)))
    import ast

    try:
        tree = ast.literal_eval(text)
    except (ValueError, SyntaxError) as exc:
        raise ValueError(f"cannot parse word {text!r}: {exc}") from None
    return outer_word(tree)


def word_text(w: OuterWord) -> str:
    if isinstance(w, Var):
        return str(w.index)
    return f"[{word_text(w.left)},{word_text(w.right)}]"


def evaluate(w: OuterWord, P: PcPresentation, args: Sequence[Element]) -> Element:
    """Substitute args for the variables (args[k-1] for variable k)."""
    r = validate_outer(w)
    if len(args) != r:
        raise ValueError(f"word has arity {r}, got {len(args)} arguments")
    for x in args:
        P.check_element(x)
    t = group_tables(P)
    idx = [int(P.index_of(x)) for x in args]
    return P.element_at(int(_eval_idx(w, t, idx)))


def _eval_idx(w: OuterWord, t, idx: list[int]) -> int:
    if isinstance(w, Var):
        return idx[w.index - 1]
    a = _eval_idx(w.left, t, idx)
    b = _eval_idx(w.right, t, idx)
    return int(t.comm_v(np.int32(a), np.int32(b)))


def value_indices(w: OuterWord, P: PcPresentation) -> np.ndarray:
    """Sorted indices of the exact value set of w over all argument tuples."""
    validate_outer(w)
    key = ("values", word_text(w))
    if key not in P._cache:
        t = group_tables(P)
        P._cache[key] = _value_indices(w, t)
    return P._cache[key]


def _value_indices(w: OuterWord, t) -> np.ndarray:
    if isinstance(w, Var):
        return np.arange(t.order, dtype=np.int32)
    left = _value_indices(w.left, t)
    right = _value_indices(w.right, t)
    return np.unique(t.comm_v(left[:, None], right[None, :]))


def value_set(w: OuterWord, P: PcPresentation) -> tuple[Element, ...]:
    return tuple(P.element_at(int(i)) for i in value_indices(w, P))


def value_provenance(w: OuterWord, P: PcPresentation) -> dict[int, tuple[int, ...]]:
    """For each value index, one argument tuple realizing it.

    Deterministic: for every value the lexicographically first (left index,
    right index) combination is kept at each bracket.
    """
    validate_outer(w)
    key = ("provenance", word_text(w))
    if key in P._cache:
        return P._cache[key]
    t = group_tables(P)

    def rec(u) -> dict[int, tuple[int, ...]]:
        if isinstance(u, Var):
            return {i: (i,) for i in range(t.order)}
        lv = _value_indices(u.left, t)
        rv = _value_indices(u.right, t)
        lp = None if isinstance(u.left, Var) else rec(u.left)
        rp = None if isinstance(u.right, Var) else rec(u.right)
        matrix = t.comm_v(lv[:, None], rv[None, :])
        uniq, first = np.unique(matrix, return_index=True)
        rows, cols = np.divmod(first, rv.size)
        out: dict[int, tuple[int, ...]] = {}
        for v, ri, ci in zip(uniq, rows, cols):
            a, b = int(lv[ri]), int(rv[ci])
            out[int(v)] = ((a,) if lp is None else lp[a]) + \
                          ((b,) if rp is None else rp[b])
        return out

    if isinstance(w, Var):
        prov = {i: (i,) for i in range(t.order)}
    else:
        prov = rec(w)
    P._cache[key] = prov
    return prov


def verbal_subgroup(w: OuterWord, P: PcPresentation) -> Subgroup:
    """w(G), the subgroup generated by the value set."""
    t = group_tables(P)
    return Subgroup(P, t.closure(value_indices(w, P)))


@dataclass(frozen=True)
class WitnessTuple:
    """Fixed entries for all slots but one: x_1, ..., x_{j-1}, x_{j+1}, ..., x_r."""

    slot: int
    fixed: tuple[Element, ...]

    def arity(self) -> int:
        return len(self.fixed) + 1

    def args_with(self, g: Element) -> tuple[Element, ...]:
        j = self.slot
        return self.fixed[: j - 1] + (g,) + self.fixed[j - 1:]


def _check_witness(P: PcPresentation, r: int, witness: WitnessTuple) -> None:
    if r < 2:
        raise ValueError(f"slot value sets need r >= 2, got {r}")
    if not 1 <= witness.slot <= r:
        raise ValueError(f"slot {witness.slot} out of range 1..{r}")
    if len(witness.fixed) != r - 1:
        raise ValueError(
            f"witness needs {r - 1} fixed entries, got {len(witness.fixed)}")
    for x in witness.fixed:
        P.check_element(x)


def _eval_vec(w: OuterWord, t, args: Sequence):
    """Evaluate with scalar or whole-array arguments (broadcasting)."""
    if isinstance(w, Var):
        return args[w.index - 1]
    return t.comm_v(_eval_vec(w.left, t, args), _eval_vec(w.right, t, args))


def slot_value_indices(P: PcPresentation, r: int, witness: WitnessTuple,
                       over: np.ndarray | None = None,
                       word: OuterWord | None = None) -> np.ndarray:
    """Sorted indices of {w(x_1, ..., g, ..., x_r) : g in `over`} (default: G).

    `word` defaults to the left-normed lower central word of arity r; the
    whole g-range is evaluated as one vector.
    """
    _check_witness(P, r, witness)
    if word is None:
        word = gamma_word(r)
    elif arity(word) != r:
        raise ValueError(f"word arity {arity(word)} does not match r={r}")
    t = group_tables(P)
    g = np.arange(P.order, dtype=np.int32) if over is None else over
    j = witness.slot
    fixed_idx = [np.int32(P.index_of(x)) for x in witness.fixed]
    args = [g if pos == j else fixed_idx[pos - 1 if pos < j else pos - 2]
            for pos in range(1, r + 1)]
    out = _eval_vec(word, t, args)
    if np.ndim(out) == 0:
        out = np.full(g.shape, out, dtype=np.int32)
    return np.unique(out)


def slot_value_set(P: PcPresentation, r: int,
                   witness: WitnessTuple) -> tuple[Element, ...]:
    idx = slot_value_indices(P, r, witness)
    return tuple(P.element_at(int(i)) for i in idx)


def slot_value_set_restricted(P: PcPresentation, r: int, witness: WitnessTuple,
                              rng: Subgroup) -> tuple[Element, ...]:
    """Slot values with g ranging over the subgroup `rng` only."""
    idx = slot_value_indices(P, r, witness, over=rng.indices)
    return tuple(P.element_at(int(i)) for i in idx)
