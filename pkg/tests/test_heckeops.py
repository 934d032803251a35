"""Unit tests for the Demazure-Lusztig operators and symmetrizers."""
import pytest

from dlhecke import heckeops, rootdata
from dlhecke.heckeops import HeckeError, T_KIND, TPRIME_KIND
from dlhecke.rootdata import RootSystemSpec
from dlhecke.vseries import AnchoredSeries, VPoly, VP_ONE, V, VINV

A1 = RootSystemSpec.parse("A1")
A2 = RootSystemSpec.parse("A2")
A1A = RootSystemSpec.parse("A1!")


def _mono(spec, labels, **kw):
    return AnchoredSeries.monomial(spec, labels, **kw)


def test_T_closed_form_k0():
    # <a, mu> = 0:  T(e^mu) = -v^-1 e^{mu - a}
    out = heckeops.apply_T(A1, 1, _mono(A1, (0,)))
    assert dict(out.terms) == {(1,): -VINV}


def test_T_closed_form_k1():
    # <a, mu> = 1:  (1 - v^-1) e^{mu - a} - v^-1 e^{mu - 2a}
    out = heckeops.apply_T(A1, 1, _mono(A1, (1,)))
    assert dict(out.terms) == {(1,): 1 - VINV, (2,): -VINV}


def test_T_closed_form_k2():
    out = heckeops.apply_T(A1, 1, _mono(A1, (2,)))
    assert dict(out.terms) == {(1,): 1 - VINV, (2,): 1 - VINV, (3,): -VINV}


def test_T_closed_form_k_minus_1():
    # <a, mu> = -1:  T(e^mu) = -e^mu
    out = heckeops.apply_T(A1, 1, _mono(A1, (-1,)))
    assert dict(out.terms) == {(0,): VPoly(-1)}


def test_T_closed_form_k_minus_2_rises():
    # <a, mu> = -2: support rises one step toward the reflection
    out = heckeops.apply_T(A1, 1, _mono(A1, (-2,)))
    assert dict(out.terms) == {(-1,): VPoly(-1), (0,): VINV - 1}


def test_Tprime_closed_form_k1():
    # T'(e^mu) = e^{mu - a} when <a, mu> = 1
    out = heckeops.apply_T(A1, 1, _mono(A1, (1,)), TPRIME_KIND)
    assert dict(out.terms) == {(1,): VP_ONE}


def test_apply_T_is_linear():
    s = _mono(A2, (1, 1)) + _mono(A2, (1, 1), beta=(1, 0), coeff=VPoly(3))
    out = heckeops.apply_T(A2, 1, s)
    parts = heckeops.apply_T(A2, 1, _mono(A2, (1, 1))) + \
        heckeops.apply_T(A2, 1, _mono(A2, (1, 1), beta=(1, 0))).scale(VPoly(3))
    assert out.first_difference(parts) is None


def test_apply_T_rejects_truncated_series():
    with pytest.raises(HeckeError):
        heckeops.apply_T(A2, 1, AnchoredSeries.one(A2, 2).truncate(3))


def test_quadratic_relation_on_awkward_monomials():
    for labels in [(-3, 2), (0, 0), (4, -1)]:
        s = _mono(A2, labels)
        for i in (1, 2):
            assert heckeops.check_quadratic(A2, i, s, T_KIND)
            assert heckeops.check_quadratic(A2, i, s, TPRIME_KIND)


def test_quadratic_relation_affine_double_bond():
    for labels in [(0, 1), (2, -2), (-1, 3)]:
        for i in (1, 2):
            assert heckeops.check_quadratic(A1A, i, _mono(A1A, labels))


def test_braid_relation_a2():
    assert heckeops.check_braid(A2, 1, 2, _mono(A2, (2, -1)))


def test_conjugation_identity():
    assert heckeops.check_conjugation(A2, 1, _mono(A2, (1, -2)))
    assert heckeops.check_conjugation(A1A, 2, _mono(A1A, (0, 1)))


def test_word_operator_composes_right_to_left():
    s = _mono(A2, (1, 1))
    lhs = heckeops.apply_T_word(A2, (1, 2), s)
    rhs = heckeops.apply_T(A2, 1, heckeops.apply_T(A2, 2, s))
    assert lhs.first_difference(rhs) is None


def test_symmetrizer_partial_finite_a1():
    total, deltas = heckeops.symmetrizer_partial(A1, (2,), 10)
    assert len(deltas) == 2          # identity layer plus one reflection
    assert dict(total.terms) == {
        (0,): VP_ONE, (1,): 1 - VINV, (2,): 1 - VINV, (3,): -VINV}


def test_symmetrizer_stabilized_affine_flags():
    total, achieved, stabilized = heckeops.symmetrizer_stabilized(
        A1A, (0, 1), 3, margin=2)
    assert stabilized and achieved >= 3
    assert total.depth == 3
    assert total.coefficient((0, 0)) == VP_ONE
    # forcing an unreachable margin inside a tiny layer budget reports honestly
    _, _, flag = heckeops.symmetrizer_stabilized(A1A, (0, 1), 3, margin=2,
                                                 max_layers=2)
    assert not flag


def test_layer_cap_enforced():
    with pytest.raises(HeckeError):
        heckeops.symmetrizer_partial(RootSystemSpec.parse("A3"), (1, 1, 1),
                                     10, layer_cap=2)
