"""Built-in presentation families used as fixtures and corpus entries.

Every family is given by an explicit weighted pc presentation; the unit tests
validate each one for consistency and check the documented structure (order,
lower central series, exponent) against the independent table oracle.
"""

from __future__ import annotations

from .presentation import PcPresentation, PresentationError

__all__ = ["builtin_family", "direct_product", "builtin_corpus", "FAMILY_NAMES"]

FAMILY_NAMES = ("elab", "heis", "espm", "dihedral", "quaternion",
                "semidihedral", "wreath", "freenilp")


def elab(p: int, k: int) -> PcPresentation:
    """Elementary abelian group of order p^k."""
    return PcPresentation(p, k, id=f"elab({p},{k})")


def heis(p: int) -> PcPresentation:
    """Heisenberg group of order p^3: two generators with central commutator."""
    return PcPresentation(p, 3, comm={(2, 1): [(3, 1)]}, id=f"heis({p})")


def espm(p: int) -> PcPresentation:
    """Extraspecial group of order p^3 and exponent p^2.

    g1 has order p^2 (g1^p = g3 central) and conjugation by g2 raises g1 to
    the power 1+p; for p = 2 this is the dihedral group of order 8.
    """
    return PcPresentation(
        p, 3,
        power={1: [(3, 1)]},
        comm={(2, 1): [(3, p - 1)]},
        id=f"espm({p})")


def _two_power_chain(m: int, x_square: list, conj_exp: int, id: str) -> PcPresentation:
    """Order-2^m group <x, r> with r of order 2^(m-1), x^2 given, r^x = r^conj_exp.

    Generators: g1 = x, g_k = r^(2^(k-2)) for k = 2..m, so the chain refines
    <r> by index-2 steps.  Relation words are computed from exponents of r.
    """
    if m < 3:
        raise PresentationError(f"{id}: order 2^m needs m >= 3")
    n = m
    rot_order = 2 ** (m - 1)

    def r_power_word(e: int) -> list:
        # express r^e (e mod rot_order) in the basis g_2 = r, g_3 = r^2, ...
        e %= rot_order
        word = []
        for k in range(2, n + 1):
            if e & (1 << (k - 2)):
                word.append((k, 1))
        return word

    power = {}
    if x_square:
        power[1] = x_square
    for k in range(2, n):
        power[k] = [(k + 1, 1)]  # (r^(2^(k-2)))^2 = r^(2^(k-1))
    comm = {}
    for k in range(2, n + 1):
        e = 2 ** (k - 2)
        # [g_k, g1] = r^(-e) * (r^e)^x = r^(e*conj_exp - e)
        word = r_power_word(e * conj_exp - e)
        if word:
            comm[(k, 1)] = word
    return PcPresentation(2, n, power=power, comm=comm, id=id)


def dihedral(order: int) -> PcPresentation:
    m = _log2_order(order, "dihedral")
    return _two_power_chain(m, [], -1, f"dihedral({order})")


def quaternion(order: int) -> PcPresentation:
    m = _log2_order(order, "quaternion")
    # x^2 = r^(2^(m-2)), the unique central involution = g_m
    return _two_power_chain(m, [(m, 1)], -1, f"quaternion({order})")


def semidihedral(order: int) -> PcPresentation:
    m = _log2_order(order, "semidihedral")
    if m < 4:
        raise PresentationError("semidihedral needs order >= 16")
    return _two_power_chain(m, [], 2 ** (m - 2) - 1, f"semidihedral({order})")


def _log2_order(order: int, name: str) -> int:
    m = order.bit_length() - 1
    if order != 2 ** m or m < 3:
        raise PresentationError(f"{name}: order must be a power of 2, >= 8")
    return m


def wreath(p: int) -> PcPresentation:
    """C_p wr C_p of order p^(p+1), presented on a chief-series-adapted basis.

    g1 is the top cycle; g2 generates the base and g_{k+1} = [g_k, g1]
    (differences along the base), so the base is g2, ..., g_{p+1} with
    [g_{p+1}, g1] = 1.
    """
    n = p + 1
    comm = {(k, 1): [(k + 1, 1)] for k in range(2, n)}
    return PcPresentation(p, n, comm=comm, id=f"wreath({p})")


def freenilp(p: int, c: int) -> PcPresentation:
    """Largest 2-generator group of class <= c whose chief factors all have order p.

    c = 1 gives C_p x C_p, c = 2 the Heisenberg group, and c = 3 the group of
    order p^5 on the basis a, b, [b,a], [b,a,a], [b,a,b] with all basic
    commutators of order p.
    """
    if c == 1:
        return PcPresentation(p, 2, id=f"freenilp({p},1)")
    if c == 2:
        return PcPresentation(p, 3, comm={(2, 1): [(3, 1)]}, id=f"freenilp({p},2)")
    if c == 3:
        return PcPresentation(
            p, 5,
            comm={(2, 1): [(3, 1)], (3, 1): [(4, 1)], (3, 2): [(5, 1)]},
            id=f"freenilp({p},3)")
    raise PresentationError(f"freenilp: class must be 1, 2 or 3, got {c}")


_BUILDERS = {
    "elab": elab,
    "heis": heis,
    "espm": espm,
    "dihedral": dihedral,
    "quaternion": quaternion,
    "semidihedral": semidihedral,
    "wreath": wreath,
    "freenilp": freenilp,
}


def builtin_family(name: str, *params: int) -> PcPresentation:
    """Construct a named family member, e.g. builtin_family("heis", 3)."""
    if name not in _BUILDERS:
        raise PresentationError(
            f"unknown family {name!r}; known: {', '.join(sorted(_BUILDERS))}")
    try:
        return _BUILDERS[name](*params)
    except TypeError as exc:
        raise PresentationError(f"{name}: bad parameters {params}: {exc}") from None


def direct_product(A: PcPresentation, B: PcPresentation,
                   id: str | None = None) -> PcPresentation:
    """Direct product: B's generators are shifted above A's, no cross relations."""
    if A.p != B.p:
        raise PresentationError("direct product requires a common prime")
    shift = A.n
    power = {i: list(w) for i, w in A.relations() if w}
    comm = {pair: list(w) for pair, w in A.comm_relations()}
    for i, w in B.relations():
        if w:
            power[i + shift] = [(k + shift, e) for k, e in w]
    for (j, i), w in B.comm_relations():
        comm[(j + shift, i + shift)] = [(k + shift, e) for k, e in w]
    return PcPresentation(A.p, A.n + B.n, power=power, comm=comm,
                          id=id or f"{A.id}x{B.id}")


def builtin_corpus() -> list[PcPresentation]:
    """The canonical corpus: every family exercised at desk scale."""
    groups = [
        elab(3, 1),
        elab(3, 2),
        heis(3),
        espm(3),
        espm(5),
        dihedral(8),
        dihedral(16),
        dihedral(32),
        dihedral(64),
        quaternion(8),
        quaternion(16),
        quaternion(32),
        semidihedral(16),
        semidihedral(32),
        wreath(2),
        wreath(3),
        freenilp(3, 3),
        freenilp(5, 3),
        direct_product(dihedral(8), dihedral(8), id="d8xd8"),
    ]
    return groups
