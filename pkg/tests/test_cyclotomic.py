"""Exact arithmetic in Q(z): unit identities, field axioms, text round trips."""

import math
import random

import pytest

from resint.cyclotomic import (
    CycQ,
    KAPPA,
    ONE,
    Rational,
    ZERO,
    ZETA,
    ZETA2,
    eval_divisor,
    parse_rational,
    rat,
)


def _random_cycq(rng, bound=20):
    return CycQ(
        Rational(rng.randint(-bound, bound), rng.randint(1, bound)),
        Rational(rng.randint(-bound, bound), rng.randint(1, bound)),
    )


def test_zeta_square_reduces():
    assert ZETA * ZETA == CycQ(-1, -1)
    assert ZETA * ZETA == ZETA2


def test_zeta_cube_is_one():
    assert ZETA * ZETA * ZETA == ONE
    assert ZETA ** 3 == ONE


def test_unity_sum_vanishes():
    assert ONE + ZETA + ZETA2 == ZERO
    assert (ONE + ZETA) + ZETA * ZETA == ZERO


def test_inverse_of_zeta_is_zeta_squared():
    assert ZETA.inv() == ZETA2
    assert ONE.inv() == ONE


def test_inverse_multiplies_back_to_one():
    a = CycQ(1, 2)
    assert a * a.inv() == ONE
    # spot value from the closed form (a1 - a2 - a2 z) / norm
    assert a.inv() == CycQ(Rational(-1, 3), Rational(-2, 3))


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_divisor_diagonal_vanishes():
    for k in (1, 2, 7, 30):
        assert not eval_divisor(k, k, k)
    assert eval_divisor(0, 0, 0) == ZERO


def test_divisor_units():
    assert eval_divisor(1, 0, 0) == ONE
    assert eval_divisor(0, 1, 0) == ZETA
    assert eval_divisor(0, 0, 1) == ZETA2


def test_field_axioms_random():
    rng = random.Random(101)
    for _ in range(200):
        a, b, c = (_random_cycq(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if a:
            assert a * a.inv() == ONE
            assert (b / a) * a == b


def test_norm_is_exact_and_multiplicative():
    rng = random.Random(55)
    for _ in range(100):
        a, b = _random_cycq(rng), _random_cycq(rng)
        assert (a * b).norm() == a.norm() * b.norm()
    assert ZETA.norm() == 1
    assert CycQ(1, 2).norm() == 3  # 1 - 2 + 4


def test_rationals_stay_reduced():
    rng = random.Random(7)
    for _ in range(100):
        a = _random_cycq(rng) * _random_cycq(rng)
        for q in (a.re, a.ze):
            num, den = int(q.numerator), int(q.denominator)
            assert den >= 1
            assert math.gcd(abs(num), den) == 1 or num == 0


def test_power_negative_exponent():
    a = CycQ(2, 3)
    assert a ** -2 == (a * a).inv()
    assert a ** 0 == ONE


def test_kappa_are_the_three_roots():
    assert KAPPA == (ONE, ZETA, ZETA2)
    for k in KAPPA:
        assert k ** 3 == ONE


def test_text_forms():
    assert str(ZERO) == "0"
    assert str(ONE) == "1"
    assert str(CycQ(Rational(1, 2))) == "1/2"
    assert str(CycQ(0, 1)) == "1*z"
    assert str(CycQ(1, 1)) == "1 + 1*z"
    assert str(CycQ(Rational(1, 2), Rational(-3, 4))) == "1/2 - 3/4*z"


def test_parse_round_trip():
    rng = random.Random(13)
    for _ in range(100):
        a = _random_cycq(rng)
        assert CycQ.parse(str(a)) == a


def test_parse_accepts_whitespace_and_bare_z():
    assert CycQ.parse(" 1/2 + 3/4*z ") == CycQ(Rational(1, 2), Rational(3, 4))
    assert CycQ.parse("z") == ZETA
    assert CycQ.parse("-z") == -ZETA
    assert CycQ.parse("-1/2-z") == CycQ(Rational(-1, 2), -1)


def test_parse_rejects_garbage():
    for bad in ("", "1 + 1", "z + z", "1//2", "a", "1/0"):
        with pytest.raises(ValueError):
            CycQ.parse(bad)


def test_rat_helper():
    assert rat(3, 6) == Rational(1, 2)
    assert rat("2/4") == Rational(1, 2)
    assert parse_rational("-7") == Rational(-7)
    with pytest.raises(ValueError):
        parse_rational("3/0")


def test_immutability():
    a = CycQ(1, 1)
    with pytest.raises(AttributeError):
        a.re = Rational(2)


def test_hash_consistency():
    assert hash(CycQ(1, 2)) == hash(CycQ(Rational(2, 2), Rational(4, 2)))
    seen = {CycQ(1, 2): "x"}
    assert seen[CycQ(1, 2)] == "x"
