"""Sparse parameter polynomials and truncated phase polynomials."""

import random

import pytest

from resint.cyclotomic import CycQ, ONE, Rational, ZERO, ZETA, ZETA2
from resint.polyring import ParamPoly, PhasePoly, apply_vector_field


def _random_poly(rng, nvars=4, nterms=5, maxexp=3):
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randint(0, maxexp) for _ in range(nvars))
        terms[exps] = CycQ(rng.randint(-5, 5), rng.randint(-5, 5))
    return ParamPoly(nvars, terms)


def _random_point(rng, nvars=4):
    return [CycQ(Rational(rng.randint(-4, 4), rng.randint(1, 4))) for _ in range(nvars)]


def test_add_zero_is_identity():
    rng = random.Random(1)
    p = _random_poly(rng)
    assert p + ParamPoly.zero(4) == p


def test_monomial_multiplication():
    m1 = ParamPoly.monomial(3, (1, 0, 2), CycQ(2))
    m2 = ParamPoly.monomial(3, (0, 3, 1), ZETA)
    prod = m1 * m2
    assert prod.terms == {(1, 3, 3): CycQ(2) * ZETA}


def test_difference_of_squares():
    a = ParamPoly.variable(2, 0)
    b = ParamPoly.variable(2, 1)
    assert (a - b) * (a + b) == a * a - b * b


def test_ring_axioms_random():
    rng = random.Random(42)
    for _ in range(30):
        p, q, s = (_random_poly(rng, nterms=3) for _ in range(3))
        assert (p * q) * s == p * (q * s)
        assert p * (q + s) == p * q + p * s
        assert p * q == q * p


def test_canonical_form_drops_zeros():
    p = ParamPoly(2, {(1, 0): ZERO, (0, 1): ONE})
    assert (0, 1) in p.terms and (1, 0) not in p.terms
    q = ParamPoly.variable(2, 0) - ParamPoly.variable(2, 0)
    assert not q
    assert q == ParamPoly.zero(2)


def test_equality_is_term_map_equality():
    rng = random.Random(5)
    p = _random_poly(rng)
    q = ParamPoly(4, dict(p.terms))
    assert p == q
    assert p != p + ParamPoly.one(4)


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        ParamPoly.zero(2) + ParamPoly.zero(3)
    with pytest.raises(ValueError):
        ParamPoly.one(2) * ParamPoly.one(3)


def test_eval_constant_and_variable():
    one = ParamPoly.one(3)
    point = [CycQ(5), CycQ(7), CycQ(-2)]
    assert one.evaluate(point) == ONE
    assert ParamPoly.variable(3, 0).evaluate(point) == CycQ(5)


def test_eval_is_ring_homomorphism():
    rng = random.Random(9)
    for _ in range(20):
        p = _random_poly(rng, nterms=4)
        point = _random_point(rng)
        assert (p * p).evaluate(point) == p.evaluate(point) ** 2
        q = _random_poly(rng, nterms=3)
        assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
        assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)


def test_eval_length_mismatch():
    with pytest.raises(ValueError):
        ParamPoly.one(3).evaluate([ONE, ONE])


def test_term_count_zero_and_split():
    assert ParamPoly.zero(2).term_count() == 0
    # a coefficient with both rational components counts as two terms
    p = ParamPoly(2, {(1, 0): CycQ(1, 1), (0, 1): ZETA})
    assert p.term_count() == 3
    assert p.support_size() == 2


def test_term_count_subadditive():
    rng = random.Random(33)
    for _ in range(50):
        p = _random_poly(rng, nterms=4)
        q = _random_poly(rng, nterms=4)
        assert (p + q).term_count() <= p.term_count() + q.term_count()


def test_text_and_json_round_trip():
    p = ParamPoly(
        2,
        {(2, 0): CycQ(Rational(1, 2)), (0, 1): CycQ(0, Rational(-3, 4))},
    )
    text = p.to_text(["u", "v"])
    assert text == "(-3/4*z) * v + (1/2) * u^2"
    assert ParamPoly.from_json(2, p.to_json()) == p


def test_times_term_matches_monomial_product():
    rng = random.Random(3)
    p = _random_poly(rng)
    delta = (1, 0, 2, 0)
    c = CycQ(2, -1)
    assert p.times_term(delta, c) == p * ParamPoly.monomial(4, delta, c)


# -- phase polynomials -------------------------------------------------------


def test_phase_truncation_invariant():
    rng = random.Random(17)
    for _ in range(20):
        terms_a = {
            (rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3)): CycQ(rng.randint(-3, 3), rng.randint(-3, 3))
            for _ in range(4)
        }
        terms_b = {
            (rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3)): CycQ(rng.randint(-3, 3), rng.randint(-3, 3))
            for _ in range(4)
        }
        a = PhasePoly(5, terms_a)
        b = PhasePoly(5, terms_b)
        for poly in (a + b, a * b, a - b):
            assert all(sum(e) <= 5 for e in poly.terms)


def test_resonant_monomial_annihilated_by_linear_field():
    # the field diag(1, z, z^2) applied to x1 x2 x3 gives (1 + z + z^2) = 0
    linear = [
        PhasePoly(6, {(1, 0, 0): ONE}),
        PhasePoly(6, {(0, 1, 0): ZETA}),
        PhasePoly(6, {(0, 0, 1): ZETA2}),
    ]
    w = PhasePoly(6, {(1, 1, 1): ONE})
    assert not apply_vector_field(linear, w)


def test_derivative_along_radial_component():
    # d/dt of x1^2 along x1' = x1 is 2 x1^2
    field = [PhasePoly(4, {(1, 0, 0): ONE}), PhasePoly.zero(4), PhasePoly.zero(4)]
    p = PhasePoly(4, {(2, 0, 0): ONE})
    assert apply_vector_field(field, p) == PhasePoly(4, {(2, 0, 0): CycQ(2)})


def test_phase_diff():
    p = PhasePoly(5, {(2, 1, 0): CycQ(3)})
    assert p.diff(0) == PhasePoly(5, {(1, 1, 0): CycQ(6)})
    assert p.diff(2) == PhasePoly.zero(5)


def test_phase_mul_with_parampoly_coefficients():
    # coefficients may be parameter polynomials: (a * x1) * (b * x2) = ab x1 x2
    a = ParamPoly.variable(2, 0)
    b = ParamPoly.variable(2, 1)
    pa = PhasePoly(3, {(1, 0, 0): a})
    pb = PhasePoly(3, {(0, 1, 0): b})
    prod = pa * pb
    assert prod.terms == {(1, 1, 0): a * b}


def test_phase_degree_mismatch_raises():
    with pytest.raises(ValueError):
        PhasePoly.zero(3) + PhasePoly.zero(4)
