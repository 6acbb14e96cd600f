"""Exact scalar arithmetic: Laurent polynomials in q, prime fields, Q(zeta_p)."""

import random
from fractions import Fraction

import pytest

from superchar.qcoeff import (
    Cyclotomic,
    FieldElem,
    LaurentPoly,
    field_units,
    is_prime,
    laurent_eval,
    theta,
)


def random_poly(rng):
    return LaurentPoly(
        {rng.randrange(-4, 5): rng.randrange(-9, 10) for _ in range(rng.randrange(5))}
    )


class TestLaurentPoly:
    def test_normalization_drops_zero_coefficients(self):
        f = LaurentPoly({2: 1, 0: 0, -1: 0})
        assert f.coeffs == {2: 1}
        assert (LaurentPoly({1: 1}) - LaurentPoly({1: 1})) == LaurentPoly.zero()
        assert LaurentPoly.zero().coeffs == {}

    def test_ring_laws_on_random_elements(self):
        rng = random.Random(11)
        for _ in range(200):
            f, g, h = (random_poly(rng) for _ in range(3))
            assert f + g == g + f
            assert f * g == g * f
            assert (f + g) + h == f + (g + h)
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h

    def test_evaluation_is_a_ring_homomorphism(self):
        rng = random.Random(12)
        for _ in range(100):
            f, g = random_poly(rng), random_poly(rng)
            x = Fraction(rng.randrange(1, 7), rng.randrange(1, 5))
            assert laurent_eval(f * g, x) == laurent_eval(f, x) * laurent_eval(g, x)
            assert laurent_eval(f + g, x) == laurent_eval(f, x) + laurent_eval(g, x)

    def test_evaluation_spot_values(self):
        assert laurent_eval(LaurentPoly.one(), 7) == 1
        assert laurent_eval(LaurentPoly({-1: 1, 0: 1}), 2) == Fraction(3, 2)
        # q*(4q-3) at q=2
        f = LaurentPoly({1: 1}) * LaurentPoly({1: 4, 0: -3})
        assert laurent_eval(f, 2) == 10

    def test_pole_at_zero_is_an_error(self):
        with pytest.raises(ZeroDivisionError):
            laurent_eval(LaurentPoly({-1: 1}), 0)
        assert laurent_eval(LaurentPoly({2: 3}), 0) == 0

    def test_shift_and_power(self):
        q = LaurentPoly({1: 1})
        assert q.shift(-1) == LaurentPoly.one()
        assert q ** 0 == LaurentPoly.one()
        assert LaurentPoly.q_minus_one() ** 2 == LaurentPoly({2: 1, 1: -2, 0: 1})
        assert LaurentPoly.q_power(-3, 2) == LaurentPoly({-3: 2})

    def test_is_monomial(self):
        assert LaurentPoly({3: 5}).is_monomial()
        assert not LaurentPoly({3: 5, 0: 1}).is_monomial()
        assert not LaurentPoly.zero().is_monomial()

    def test_text_and_json_round_trips(self):
        f = LaurentPoly({2: 3, -1: -1, 0: 1})
        assert LaurentPoly.from_text("3*q^2 - q^-1 + 1") == f
        assert LaurentPoly.from_json(f.to_json()) == f
        assert f.to_json() == {"-1": -1, "0": 1, "2": 3}
        rng = random.Random(13)
        for _ in range(50):
            g = random_poly(rng)
            assert LaurentPoly.from_text(str(g)) == g


class TestFieldElem:
    def test_units_enumeration(self):
        assert [u.value for u in field_units(2)] == [1]
        assert [u.value for u in field_units(3)] == [1, 2]
        assert [u.value for u in field_units(5)] == [1, 2, 3, 4]

    def test_nonprime_modulus_rejected(self):
        with pytest.raises(ValueError):
            field_units(4)
        with pytest.raises(ValueError):
            FieldElem(1, 6)

    def test_every_unit_has_an_inverse(self):
        for p in (2, 3, 5, 7):
            for u in field_units(p):
                assert (u.value * u.inv().value) % p == 1


class TestCyclotomic:
    def test_theta_is_a_character(self):
        for p in (2, 3, 5, 7):
            assert theta(0, p) == Cyclotomic.one(p)
            for a in range(p):
                for b in range(p):
                    assert theta(a, p) * theta(b, p) == theta((a + b) % p, p)
                assert theta(a, p).conj() == theta(-a % p, p)
            total = Cyclotomic.zero(p)
            for a in range(p):
                total = total + theta(a, p)
            assert total == Cyclotomic.zero(p)

    def test_zeta_powers_multiply_by_exponent_addition(self):
        for p in (2, 3, 5, 7):
            for i in range(p):
                for j in range(p):
                    got = Cyclotomic.zeta_power(p, i) * Cyclotomic.zeta_power(p, j)
                    assert got == Cyclotomic.zeta_power(p, (i + j) % p)

    def test_conjugation_is_an_involution(self):
        for p in (3, 5):
            x = theta(1, p) + Cyclotomic.from_rational(p, Fraction(2, 3))
            assert x.conj().conj() == x

    def test_rational_embedding(self):
        r = Fraction(-7, 3)
        x = Cyclotomic.from_rational(5, r)
        assert x.as_rational() == r
        assert Cyclotomic.zeta_power(5, 2).as_rational() is None

    def test_inverse(self):
        x = Cyclotomic.one(3) + Cyclotomic.zeta_power(3, 1)
        assert x * x.inv() == Cyclotomic.one(3)
        assert Cyclotomic.zeta_power(7, 3).inv() == Cyclotomic.zeta_power(7, 4)

    def test_json_round_trip(self):
        x = theta(2, 5) + Cyclotomic.from_rational(5, Fraction(1, 2))
        assert Cyclotomic.from_json(x.to_json()) == x


def test_is_prime_small_values():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(1)
    assert not is_prime(0)
