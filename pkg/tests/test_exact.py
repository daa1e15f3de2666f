from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from g2sugawara.exact import (
    SQRT2,
    ExactScalar,
    ParamPolynomial,
    RationalFunctionU,
    UPoly,
    parse_param_polynomial,
    parse_scalar,
    render_scalar,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)
scalars = st.builds(ExactScalar, rationals, rationals)


def test_difference_of_squares():
    assert (1 + SQRT2) * (SQRT2 - 1) == 1
    assert (3 + 2 * SQRT2) * (3 - 2 * SQRT2) == 1


def test_inverse_of_sqrt2():
    assert SQRT2.inverse() == ExactScalar(0, Fraction(1, 2))
    assert SQRT2 * SQRT2 == 2


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        ExactScalar(1, 1) / ExactScalar(0, 0)


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if x:
        assert x * x.inverse() == 1


@given(scalars)
def test_scalar_round_trip(x):
    assert parse_scalar(render_scalar(x)) == x


def test_scalar_format():
    assert render_scalar(Fraction(-3, 4)) == "-3/4"
    assert parse_scalar("1/2-3/5*s2") == ExactScalar(Fraction(1, 2), Fraction(-3, 5))
    with pytest.raises(ValueError):
        parse_scalar("1.5")


def test_param_polynomial_substitution():
    k = ParamPolynomial.variable("K")
    p = (k + 12) * (k - 1) * 3
    assert p.substitute(K=-12) == 0
    assert parse_param_polynomial(p.render()) == p
    mu = ParamPolynomial.variable("mu1") * ParamPolynomial.variable("mu2")
    assert mu.substitute(mu1=2, mu2=Fraction(1, 2)) == 1


def test_ratfun_derivative_of_pole():
    f = RationalFunctionU.simple_pole(1, 5)
    assert f.derivative() == RationalFunctionU.simple_pole(-1, 5, 2)


def test_ratfun_sum_canonical():
    f = RationalFunctionU.simple_pole(1, 1) + RationalFunctionU.simple_pole(1, -1)
    assert f == RationalFunctionU(UPoly([0, 2]), UPoly([-1, 0, 1]))
    assert f.render() == {"num": ["0/1", "2/1"], "den": ["-1/1", "0/1", "1/1"]}


def test_ratfun_scaled_derivative():
    f = RationalFunctionU.simple_pole(1, Fraction(2, 3))
    assert f.scaled_derivative(2) == RationalFunctionU.simple_pole(1, Fraction(2, 3), 3)
    assert f.scaled_derivative(2) == f.derivative().derivative() * Fraction(1, 2)


def test_ratfun_round_trip_and_evaluation():
    rng = random.Random(3)
    for _ in range(30):
        f = RationalFunctionU.constant(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        for _ in range(3):
            f = f + RationalFunctionU.simple_pole(rng.randint(-3, 3), rng.randint(-4, 4), rng.randint(1, 3))
        assert RationalFunctionU.parse(f.render()) == f
        u = Fraction(rng.randint(10, 20), 7) + Fraction(1, 11)
        assert (f * f)(u) == f(u) ** 2
