"""Unit tests for VPoly and AnchoredSeries arithmetic."""
from fractions import Fraction

import pytest

from dlhecke.rootdata import RootSystemSpec
from dlhecke.vseries import (AnchoredSeries, SeriesError, VPoly, VP_ONE,
                             VP_ZERO, V, VINV, add_maps, geometric_inverse,
                             ht, mul_maps, maps_first_difference)

A2 = RootSystemSpec.parse("A2")
A1A = RootSystemSpec.parse("A1!")


def test_vpoly_basic_arithmetic():
    p = VPoly({0: 1, -1: -1})          # 1 - v^-1
    q = VPoly({1: 2})                  # 2v
    assert p + q == VPoly({0: 1, -1: -1, 1: 2})
    assert p - p == VP_ZERO
    assert not VP_ZERO
    assert p * q == VPoly({1: 2, 0: -2})
    assert -q == VPoly({1: -2})
    assert 1 - VINV == VPoly({0: 1, -1: -1})


def test_vpoly_term_and_degrees():
    t = VPoly.term(3, -2)
    assert t == VPoly({-2: 3})
    assert t.min_deg() == t.max_deg() == -2
    assert VPoly({-2: 1, 1: 5}).max_deg() == 1


def test_vpoly_evaluate_exact_rational():
    p = (1 - VINV) * (1 - VINV)        # 1 - 2v^-1 + v^-2
    assert p.evaluate(Fraction(2)) == Fraction(1, 4)
    assert p.evaluate(Fraction(1, 3)) == Fraction(4)


def test_vpoly_v_inverse_ring_predicate():
    assert (1 - VINV).in_v_inverse_ring()
    assert not V.in_v_inverse_ring()
    assert VP_ZERO.in_v_inverse_ring()


def test_vpoly_pairs_roundtrip():
    p = VPoly({-3: 4, 0: -1})
    assert VPoly.from_pairs(p.pairs()) == p


def test_ht():
    assert ht((2, 0, 1)) == 3
    assert ht((-1, 1)) == 0


def test_monomial_and_coefficient():
    s = AnchoredSeries.monomial(A2, (1, 0))
    assert s.exact
    assert s.coefficient((0, 0)) == VP_ONE
    assert s.coefficient((1, 2)) == VP_ZERO


def test_addition_requires_same_anchor():
    a = AnchoredSeries.monomial(A2, (1, 0))
    b = AnchoredSeries.monomial(A2, (0, 1))
    with pytest.raises(SeriesError):
        _ = a + b


def test_multiplication_adds_anchors():
    a = AnchoredSeries.monomial(A2, (1, 0), beta=(1, 0))
    b = AnchoredSeries.monomial(A2, (0, 1), beta=(0, 2))
    p = a * b
    assert p.anchor == (1, 1)
    assert p.coefficient((1, 2)) == VP_ONE


def test_truncation_depth_tracking():
    one = AnchoredSeries.one(A2, 2)
    t = one.truncate(3)
    assert not t.exact and t.depth == 3
    deep = AnchoredSeries.monomial(A2, (0, 0), beta=(2, 2))
    assert (t * deep.truncate(5)).depth == 3


def test_negative_beta_requires_exact():
    s = AnchoredSeries(A2, (0, 0), {(-1, 0): VP_ONE}, exact=True)
    assert s.coefficient((-1, 0)) == VP_ONE
    with pytest.raises(SeriesError):
        AnchoredSeries(A2, (0, 0), {(-1, 0): VP_ONE}, depth=4, exact=False)


def test_first_difference_and_eq_up_to_depth():
    a = AnchoredSeries.one(A1A, 2).truncate(4)
    b = a + AnchoredSeries.monomial(A1A, (0, 0), beta=(1, 1)).truncate(4)
    diff = a.first_difference(b)
    assert diff is not None and diff[0] == (1, 1)
    assert a.eq_up_to_depth(b, up_to=1)
    assert not a.eq_up_to_depth(b, up_to=2)


def test_shifted_moves_support():
    s = AnchoredSeries.monomial(A2, (2, 0), beta=(1, 1))
    moved = s.shifted((1, 0))
    assert moved.coefficient((2, 1)) == VP_ONE


def test_evaluate_v_maps_betas_to_rationals():
    s = AnchoredSeries(A2, (0, 0), {(0, 0): 1 - VINV}, exact=True)
    vals = s.evaluate_v(Fraction(2))
    assert vals == {(0, 0): Fraction(1, 2)}


def test_json_roundtrip():
    s = AnchoredSeries(A1A, (0, 1), {(0, 0): VP_ONE, (1, 1): 1 - VINV},
                       depth=3, exact=False)
    back = AnchoredSeries.from_json_dict(s.to_json_dict())
    assert back.first_difference(s) is None
    assert back.anchor == s.anchor and back.depth == s.depth


def test_geometric_inverse_is_inverse():
    inv = geometric_inverse(A1A, VINV, (1, 1), 6)
    factor = AnchoredSeries(A1A, (0, 0), {(0, 0): VP_ONE, (1, 1): -VINV},
                            depth=6, exact=False)
    prod = inv * factor
    assert prod.first_difference(AnchoredSeries.one(A1A, 2).truncate(6)) is None


def test_raw_map_helpers():
    t1 = {(0, 0): VP_ONE, (1, 0): -VP_ONE}
    t2 = {(0, 0): VP_ONE, (1, 0): VP_ONE}
    assert mul_maps(t1, t2, None) == {(0, 0): VP_ONE, (2, 0): -VP_ONE}
    assert add_maps(t1, t2) == {(0, 0): VPoly(2)}
    assert maps_first_difference(t1, t2, 10) == ((1, 0), -VP_ONE, VP_ONE)
