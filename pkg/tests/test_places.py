import math
from fractions import Fraction

import numpy as np
import pytest

from arakelov import places
from arakelov.errors import AllZero, TooFewValues, ZeroInput

V3 = places.finite(3)
V7 = places.finite(7)


def rand_rational(rng, height=200):
    num = 0
    while num == 0:
        num = int(rng.integers(-height, height + 1))
    return Fraction(num, int(rng.integers(1, height + 1)))


class TestValuation:
    def test_unit(self):
        assert places.padic_valuation(1, 5) == 0

    def test_twelve(self):
        assert places.padic_valuation(12, 2) == 2

    def test_zero_is_infinite(self):
        assert places.padic_valuation(0, 7) == math.inf

    def test_additive(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            x, y = rand_rational(rng), rand_rational(rng)
            for p in (2, 3, 5):
                assert places.padic_valuation(x * y, p) == places.padic_valuation(
                    x, p
                ) + places.padic_valuation(y, p)

    def test_needs_prime(self):
        with pytest.raises(ValueError):
            places.padic_valuation(3, 6)


class TestLogAbs:
    def test_one_ninth_at_three(self):
        assert places.log_abs(Fraction(1, 9), V3) == 2 * math.log(3)

    def test_trivial_place(self):
        assert places.log_abs(7, places.TRIVIAL) == 0.0
        assert places.log_abs(0, places.TRIVIAL) == -math.inf

    def test_flow_scaling(self):
        v = places.Place("archimedean", None, 0.5)
        assert places.log_abs(2, v) == 0.5 * math.log(2)

    def test_zero_sentinel(self):
        assert places.log_abs(0, V3) == -math.inf
        assert places.log_abs(0, places.ARCH) == -math.inf

    def test_multiplicative(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            x, y = rand_rational(rng), rand_rational(rng)
            for v in (V3, V7, places.ARCH):
                assert places.log_abs(x * y, v) == pytest.approx(
                    places.log_abs(x, v) + places.log_abs(y, v), abs=1e-12
                )

    def test_flow_linearity_exact(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            x = rand_rational(rng)
            base = places.log_abs(x, V3)
            assert places.log_abs(x, places.finite(3, 0.25)) == 0.25 * base


class TestProductFormula:
    def test_six(self):
        assert places.product_formula_residual(6) == pytest.approx(0.0, abs=1e-12)

    def test_one(self):
        assert places.product_formula_residual(1) == 0.0

    def test_negative_fraction(self):
        assert places.product_formula_residual(Fraction(-35, 4)) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_zero_rejected(self):
        with pytest.raises(ZeroInput):
            places.product_formula_residual(0)

    def test_thousand_randoms(self):
        rng = np.random.default_rng(5)
        worst = max(
            abs(places.product_formula_residual(rand_rational(rng, 500)))
            for _ in range(1000)
        )
        assert worst <= 1e-12


class TestHeights:
    def test_one_two(self):
        assert places.projective_height([1, 2]) == pytest.approx(math.log(2), abs=1e-14)

    def test_equal_coords(self):
        assert places.projective_height([1, 1]) == 0.0

    def test_scaling_invariance(self):
        assert places.projective_height([2, 4]) == pytest.approx(
            places.projective_height([1, 2]), abs=1e-12
        )

    def test_all_zero(self):
        with pytest.raises(AllZero):
            places.projective_height([0, 0])

    def test_affine_half(self):
        assert places.affine_height(Fraction(1, 2)) == pytest.approx(math.log(2), abs=1e-14)

    def test_affine_one(self):
        assert places.affine_height(1) == 0.0

    def test_affine_two_three(self):
        # sum over places of log+ max(|2|_v, |3|_v): only infinity contributes
        assert places.affine_height([2, 3]) == pytest.approx(math.log(3), abs=1e-14)

    def test_reciprocal_symmetry(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            x = rand_rational(rng)
            assert places.affine_height(x) == pytest.approx(
                places.affine_height(1 / x), abs=1e-12
            )

    def test_random_scaling_invariance(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            xs = [rand_rational(rng, 30) for _ in range(3)]
            c = rand_rational(rng, 30)
            assert places.projective_height([c * x for x in xs]) == pytest.approx(
                places.projective_height(xs), abs=1e-11
            )


class TestSubmax:
    def test_basic(self):
        assert places.submax([1, 3, 2]) == 2

    def test_ties(self):
        assert places.submax([5, 5]) == 5

    def test_negative(self):
        assert places.submax([-1, 0, -2, 7]) == 0

    def test_too_few(self):
        with pytest.raises(TooFewValues):
            places.submax([1])


class TestPlaceValidation:
    def test_epsilon_positive(self):
        with pytest.raises(ValueError):
            places.Place("finite", 3, 0.0)

    def test_arch_epsilon_capped(self):
        with pytest.raises(ValueError):
            places.Place("archimedean", None, 1.5)
        places.Place("archimedean", None, 1.0)

    def test_finite_needs_prime(self):
        with pytest.raises(ValueError):
            places.Place("finite", 4)


class TestSerialization:
    def test_rational_roundtrip(self):
        for s in ("3/4", "-35/4", "7", "0"):
            assert places.format_rational(places.parse_rational(s)) == s

    def test_infinity_token(self):
        assert places.parse_p1_point("inf") is places.INFINITY
        assert places.format_p1_point(places.INFINITY) == "inf"

    def test_place_roundtrip(self):
        for v in (V3, places.ARCH, places.TRIVIAL, places.finite(5, 0.5)):
            assert places.place_from_json(places.place_to_json(v)) == v
