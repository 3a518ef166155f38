from fractions import Fraction

import numpy as np
import pytest

from singular_iter.pairs import (apply, apply_inverse, make_affine_pair, make_minkowski_pair, make_piecewise_pair,
                                 validate_assumptions)


def test_affine_cantor_example():
    pair = make_affine_pair(Fraction(1, 3), Fraction(2, 3))
    assert pair.f0(Fraction(1, 3)) == 1
    assert pair.f1(Fraction(2, 3)) == 0
    assert pair.s == 3
    assert pair.symmetric


def test_affine_lebesgue_example():
    pair = make_affine_pair("1/2", "1/2")
    assert pair.s == 2
    for x in (Fraction(-1, 3), Fraction(1, 5), Fraction(7, 4)):
        assert pair.f0(x) == 2 * x
        assert pair.f1(x) == 2 * x - 1


def test_affine_asymmetric_example():
    pair = make_affine_pair("2/5", "4/5")
    assert pair.f1(Fraction(1)) == 1
    assert pair.s == Fraction(5, 2)
    assert not pair.symmetric


@pytest.mark.parametrize("a, b", [(0, "1/2"), ("2/3", "1/3"), ("1/2", 1), ("-1/4", "1/2")])
def test_affine_rejects_bad_parameters(a, b):
    with pytest.raises(ValueError):
        make_affine_pair(a, b)


def test_minkowski_examples():
    pair = make_minkowski_pair()
    half = Fraction(1, 2)
    assert pair.f0(half) == 1 == 2 * half
    assert pair.f1(half) == 0 and pair.f1(Fraction(1)) == 1
    assert apply_inverse(pair, 0, half) == Fraction(1, 3)
    assert apply_inverse(pair, 1, 0) == half
    assert (pair.a, pair.b, pair.s, pair.symmetric) == (half, half, 2, True)


def test_apply_examples(cantor, any_pair):
    assert apply(cantor, 0, 0.25) == pytest.approx(0.75, abs=1e-15)
    assert apply(cantor, 1, 0.0) == pytest.approx(-2.0, abs=1e-15)
    assert apply(cantor, 0, Fraction(1, 4)) == Fraction(3, 4)
    assert apply(cantor, 1, Fraction(0)) == -2
    assert apply(any_pair, 0, 0.0) == 0


def test_apply_inverse_examples(cantor):
    assert apply_inverse(cantor, 0, 1) == Fraction(1, 3)
    assert apply_inverse(cantor, 1, 0) == Fraction(2, 3)
    with pytest.raises(ValueError):
        apply_inverse(cantor, 0, 1.5)


def test_maps_accept_arrays(any_pair):
    xs = np.linspace(-1, 2, 31)
    np.testing.assert_allclose(any_pair.f0(xs), [any_pair.f0(float(x)) for x in xs], rtol=0, atol=1e-14)
    np.testing.assert_allclose(any_pair.f1(xs), [any_pair.f1(float(x)) for x in xs], rtol=0, atol=1e-14)


def test_inverse_round_trip(any_pair):
    for y in np.linspace(0.0, 1.0, 1001):
        for s in (0, 1):
            x = apply_inverse(any_pair, s, float(y))
            lo, hi = (0, any_pair.a) if s == 0 else (any_pair.b, 1)
            assert lo - 1e-15 <= x <= hi + 1e-15
            assert abs(apply(any_pair, s, x) - y) <= 1e-12


def test_builtins_pass_validation(any_pair):
    report = validate_assumptions(any_pair, 1001)
    assert report.passed, report.violations[:3]


def test_symmetric_builtins_reflect(any_pair):
    if not any_pair.symmetric:
        pytest.skip("asymmetric family")
    assert any_pair.a == 1 - any_pair.b
    for x in np.linspace(-2, 3, 1001):
        assert abs(any_pair.f0(1 - x) + any_pair.f1(x) - 1) <= 1e-12


def test_slope_conditions_on_grid(any_pair):
    s, a, b = float(any_pair.s), float(any_pair.a), float(any_pair.b)
    for x in np.linspace(-2, 3, 1001):
        x = float(x)
        if x <= 0:
            assert any_pair.f0(x) <= s * x + 1e-12
        if x >= a:
            assert any_pair.f0(x) >= 1 + s * (x - a) - 1e-12
        if x <= b:
            assert any_pair.f1(x) <= s * (x - b) + 1e-12
        if x >= 1:
            assert any_pair.f1(x) >= 1 + s * (x - 1) - 1e-12


def planted_defect():
    # f0 reaches only 0.9 at the declared a = 1/3
    return make_piecewise_pair(
        [(-1, -3), (0, 0), ("1/3", "9/10"), (2, 6)],
        [(0, -2), ("2/3", 0), (1, 1), (2, 4)],
        a="1/3", b="2/3", s=3,
    )


def test_planted_defect_is_reported_as_a2():
    report = validate_assumptions(planted_defect(), 1001)
    assert not report.passed
    assert "A2" in report.tags()


def test_piecewise_cantor_copy_validates_and_inverts():
    pair = make_piecewise_pair([(0, 0), ("1/3", 1)], [("2/3", 0), (1, 1)], a="1/3", b="2/3", s=3, symmetric=True)
    assert validate_assumptions(pair).passed
    assert pair.f0(Fraction(1, 4)) == Fraction(3, 4)
    assert apply_inverse(pair, 1, 0.5) == pytest.approx(5 / 6, abs=1e-13)
    assert apply(pair, 1, apply_inverse(pair, 1, 0.5)) == pytest.approx(0.5, abs=1e-12)


def test_non_monotone_custom_pair_flags_a1():
    pair = make_piecewise_pair([(0, 0), ("1/10", "1/2"), ("1/5", "1/4"), ("1/3", 1)],
                               [("2/3", 0), (1, 1)], a="1/3", b="2/3", s=3)
    assert "A1" in validate_assumptions(pair).tags()


def test_symmetric_flag_requires_a_equals_one_minus_b():
    with pytest.raises(ValueError):
        make_piecewise_pair([(0, 0), ("2/5", 1)], [("4/5", 0), (1, 1)], a="2/5", b="4/5", s="5/2", symmetric=True)
