import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcgroups.families import builtin_family, direct_product
from pcgroups.presentation import (Element, PcPresentation, PresentationError,
                                   collect, commutator, conjugate,
                                   enumerate_elements, inverse, multiply,
                                   power, validate_consistency)


def test_collect_heis_basics(heis3):
    assert collect(heis3, [(1, 1), (2, 1)]) == heis3.element([1, 1, 0])
    assert collect(heis3, [(2, 1), (1, 1)]) == heis3.element([1, 1, 1])
    assert collect(heis3, []) == heis3.identity()


def test_collect_negative_and_large_exponents(heis3):
    a = heis3.element([1, 0, 0])
    assert collect(heis3, [(1, -1)]) == inverse(heis3, a)
    assert collect(heis3, [(1, 10)]) == power(heis3, a, 10)
    assert collect(heis3, [(2, -4), (2, 4)]) == heis3.identity()


def test_collect_index_out_of_range(heis3):
    with pytest.raises(PresentationError):
        collect(heis3, [(4, 1)])


def test_multiply_examples(heis3, elab32):
    a, b = heis3.element([1, 0, 0]), heis3.element([0, 1, 0])
    assert multiply(heis3, a, b) == heis3.element([1, 1, 0])
    assert multiply(heis3, b, a) == heis3.element([1, 1, 1])
    assert multiply(elab32, elab32.element([1, 0]),
                    elab32.element([2, 0])) == elab32.identity()


def test_multiply_rejects_foreign_elements(heis3, elab32):
    with pytest.raises(PresentationError):
        multiply(heis3, elab32.element([1, 0]), heis3.identity())


def test_inverse_and_power(heis3):
    a = heis3.element([1, 0, 0])
    assert inverse(heis3, a) == heis3.element([2, 0, 0])
    ab = heis3.element([1, 1, 0])
    assert power(heis3, ab, 3) == heis3.identity()
    assert power(heis3, ab, -1) == inverse(heis3, ab)
    assert power(heis3, ab, 0) == heis3.identity()


def test_power_in_two_power_chain():
    d16 = builtin_family("dihedral", 16)
    rot = d16.element([0, 1, 0, 0])
    assert power(d16, rot, 2) == d16.element([0, 0, 1, 0])
    assert power(d16, rot, 8) == d16.identity()


def test_commutator_examples(heis3):
    a, b = heis3.element([1, 0, 0]), heis3.element([0, 1, 0])
    assert commutator(heis3, b, a) == heis3.element([0, 0, 1])
    assert commutator(heis3, a, b) == heis3.element([0, 0, 2])
    for x in enumerate_elements(heis3):
        assert commutator(heis3, x, x) == heis3.identity()


def test_conjugate_follows_bracket_convention(heis3, elab32):
    # x^y = y^-1 x y = x * [x, y]
    a, b = heis3.element([1, 0, 0]), heis3.element([0, 1, 0])
    assert conjugate(heis3, a, heis3.identity()) == a
    assert conjugate(heis3, a, b) == multiply(heis3, a, commutator(heis3, a, b))
    assert conjugate(heis3, a, b) == heis3.element([1, 0, 2])
    assert conjugate(elab32, elab32.element([1, 0]),
                     elab32.element([0, 1])) == elab32.element([1, 0])


def test_validate_consistency_examples(heis3, elab32):
    rep = validate_consistency(heis3)
    assert rep.consistent and rep.element_count == 27
    rep = validate_consistency(elab32)
    assert rep.consistent and rep.element_count == 9


def test_validate_consistency_rejects_bad_extension():
    # a^2 = b^2 = 1 with [b,a] = c, [c,a] = d, [c,b] = 1 forces d = 1
    bad = PcPresentation(2, 4, comm={(2, 1): [(3, 1)], (3, 1): [(4, 1)]})
    rep = validate_consistency(bad)
    assert not rep.consistent
    assert any("associativity" in f or "overlap" in f for f in rep.failures)


def test_validate_consistency_testword_route():
    # same defect embedded in a group above the full-table threshold
    bad = PcPresentation(2, 4, comm={(2, 1): [(3, 1)], (3, 1): [(4, 1)]})
    big = direct_product(bad, builtin_family("elab", 2, 5), id="bad512")
    assert big.order == 512
    rep = validate_consistency(big)
    assert not rep.consistent


def test_presentation_format_errors():
    with pytest.raises(PresentationError):
        PcPresentation(4, 2)  # not prime
    with pytest.raises(PresentationError):
        PcPresentation(2, 25)  # beyond the order cap
    with pytest.raises(PresentationError):
        PcPresentation(3, 3, comm={(2, 1): [(2, 1)]})  # index must exceed j
    with pytest.raises(PresentationError):
        PcPresentation(3, 3, comm={(2, 1): [(3, 3)]})  # exponent out of range
    with pytest.raises(PresentationError):
        PcPresentation(3, 3, power={1: [(3, 1), (3, 1)]})  # not increasing


def test_enumerate_elements(heis3):
    assert [e.exps for e in enumerate_elements(builtin_family("elab", 3, 1))] \
        == [(0,), (1,), (2,)]
    elems = enumerate_elements(heis3)
    assert len(elems) == 27
    assert elems == sorted(elems)
    assert len(enumerate_elements(builtin_family("wreath", 3))) == 81


def test_element_str(heis3):
    assert str(heis3.element([1, 0, 2])) == "[1,0,2]"


GROUP_POOL = [
    builtin_family("heis", 3),
    builtin_family("espm", 3),
    builtin_family("dihedral", 16),
    builtin_family("quaternion", 16),
    builtin_family("wreath", 3),
]


@st.composite
def group_and_elements(draw, count=3):
    G = draw(st.sampled_from(GROUP_POOL))
    idx = st.integers(min_value=0, max_value=G.order - 1)
    xs = [G.element_at(draw(idx)) for _ in range(count)]
    return G, xs


@settings(max_examples=200, deadline=None)
@given(group_and_elements())
def test_group_laws_random(data):
    G, (x, y, z) = data
    assert multiply(G, multiply(G, x, y), z) == multiply(G, x, multiply(G, y, z))
    assert multiply(G, x, G.identity()) == x
    assert multiply(G, x, inverse(G, x)) == G.identity()


@settings(max_examples=100, deadline=None)
@given(group_and_elements(count=1), st.integers(min_value=-30, max_value=30))
def test_power_matches_iterated_multiplication(data, m):
    G, (x,) = data
    acc = G.identity()
    step = x if m >= 0 else inverse(G, x)
    for _ in range(abs(m)):
        acc = multiply(G, acc, step)
    assert power(G, x, m) == acc


@settings(max_examples=100, deadline=None)
@given(group_and_elements(count=2))
def test_commutator_antisymmetry_random(data):
    G, (x, y) = data
    assert commutator(G, x, y) == inverse(G, commutator(G, y, x))


def test_full_order_power_is_identity(corpus_small):
    for G in corpus_small:
        for x in itertools.islice(enumerate_elements(G), 0, G.order, 7):
            assert power(G, x, G.order) == G.identity()
