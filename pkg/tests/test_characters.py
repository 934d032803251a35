"""Unit tests for characters, denominators, and the golden files."""
import json
import pathlib

import pytest

from dlhecke import characters
from dlhecke.characters import CharacterError
from dlhecke.rootdata import RootSystemSpec
from dlhecke.vseries import AnchoredSeries, VPoly, VP_ONE, VINV

GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"

A1 = RootSystemSpec.parse("A1")
A2 = RootSystemSpec.parse("A2")
A1A = RootSystemSpec.parse("A1!")
A2A = RootSystemSpec.parse("A2!")


def test_denominator_a1_affine_low_terms():
    d = characters.denominator(A1A, 2, deformed=True)
    assert d.coefficient((0, 0)) == VP_ONE
    assert d.coefficient((1, 0)) == -VINV
    assert d.coefficient((0, 1)) == -VINV
    # cross term v^-2 from the two simple coroots, minus v^-1 from the
    # imaginary coroot factor
    assert d.coefficient((1, 1)) == VPoly({-2: 1, -1: -1})


def test_plain_denominator_a1_affine():
    # at v = 1 the real cross term and the imaginary factor cancel at c
    d = characters.denominator(A1A, 2, deformed=False)
    assert d.coefficient((1, 1)) == VPoly()


def test_inverse_denominator_inverts():
    for deformed in (False, True):
        d = characters.denominator(A1A, 5, deformed=deformed)
        inv = characters.inverse_denominator(A1A, 5, deformed=deformed)
        one = AnchoredSeries.one(A1A, 2).truncate(5)
        assert (d * inv).first_difference(one) is None


def test_m_factor_a1_affine_example():
    m = characters.m_factor(A1A, 4)
    assert m.coefficient((0, 0)) == VP_ONE
    assert m.coefficient((1, 1)) == VPoly({-1: 1, -2: -1})   # v^-1 - v^-2
    assert m.coefficient((1, 0)) == VPoly()
    # support sits on multiples of c
    assert all(b[0] == b[1] for b in m.terms)


def test_m_factor_rejects_finite():
    with pytest.raises(CharacterError):
        characters.m_factor(A2, 4)


def test_character_depth2_basic_affine_a1():
    chi = characters.weyl_kac_character(A1A, (0, 1), 2)
    assert {b: c for b, c in chi.terms.items()} == {
        (0, 0): VP_ONE, (0, 1): VP_ONE, (1, 1): VP_ONE}


def test_finite_character_a2_adjoint():
    chi = characters.finite_character_exact(A2, (1, 1))
    # 8-dimensional: six weight-1 coefficients and a double zero weight
    assert chi.coefficient((1, 1)) == VPoly(2)
    total = sum(c.evaluate(1) for c in chi.terms.values())
    assert total == 8


def test_finite_character_weyl_dimension_a1():
    chi = characters.finite_character_exact(A1, (3,))
    assert sorted(chi.terms) == [(0,), (1,), (2,), (3,)]
    assert all(c == VP_ONE for c in chi.terms.values())


def test_character_requires_dominant_labels():
    with pytest.raises(CharacterError):
        characters.character_numerator(A1A, (-1, 2), 3)


def test_denominator_identity_affine():
    assert characters.denominator_identity_holds(A1A, 8)
    assert characters.denominator_identity_holds(A2A, 6)


def test_wtwist_denominator_identities():
    for i in (1, 2):
        assert characters.check_denominator_wtwist(A1A, i, 5)


def test_gk_delta_leading_terms():
    delta = characters.gk_delta(A1, 4)
    # (1 - v^-1 e^{-a}) / (1 - e^{-a}): every depth >= 1 coefficient 1 - v^-1
    for j in range(1, 5):
        assert delta.coefficient((j,)) == 1 - VINV


def test_character_matches_goldens_all_depths():
    """The geometric-inverse route reproduces the coefficient-recursion
    oracle that generated the goldens."""
    for depth in (2, 4, 6, 8):
        data = json.loads(
            (GOLDEN / f"character_A1aff_0_1_depth{depth}.json").read_text())
        golden = AnchoredSeries.from_json_dict(data)
        live = characters.weyl_kac_character(A1A, (0, 1), depth)
        assert live.first_difference(golden) is None
