from fractions import Fraction

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from koszulmod import GREVLEX, LEX, Polynomial, parse_polynomial, rational
from koszulmod.polycore import (
    PolynomialSyntaxError, VariableMismatch, format_polynomial, lowest_form, order_from_name,
)

from oracles import to_sympy
from strategies import VARS3, polynomials

X = sp.symbols(VARS3)


def same(p, expr) -> bool:
    return sp.expand(to_sympy(p, X) - expr) == 0


@given(polynomials(), polynomials())
def test_ring_operations_agree_with_sympy(p, q):
    a, b = to_sympy(p, X), to_sympy(q, X)
    assert same(p + q, a + b)
    assert same(p - q, a - b)
    assert same(p * q, a * b)


@given(polynomials(), polynomials(), polynomials())
def test_distributive(p, q, r):
    assert p * (q + r) == p * q + p * r


@given(polynomials())
def test_format_then_parse_is_identity(p):
    assert parse_polynomial(format_polynomial(p), VARS3) == p


@given(polynomials(max_degree=2), st.integers(0, 3))
def test_power_matches_repeated_product(p, k):
    expected = Polynomial.constant(1, VARS3)
    for _ in range(k):
        expected = expected * p
    assert p ** k == expected


@given(polynomials(), st.tuples(*[st.fractions(max_denominator=4, min_value=-3, max_value=3)] * 3))
def test_evaluation_is_a_ring_map(p, point):
    q = p * p + p
    v = p.evaluate(point)
    assert q.evaluate(point) == v * v + v
    subs = dict(zip(X, [sp.Rational(c.numerator, c.denominator) for c in point]))
    assert sp.Rational(int(v.numerator), int(v.denominator)) == to_sympy(p, X).subs(subs)


@given(polynomials())
def test_lowest_form_is_homogeneous_of_order(p):
    if p.is_zero():
        return
    low = lowest_form(p)
    assert low.is_homogeneous()
    assert low.degree() == p.order()
    assert (p - low).is_zero() or (p - low).order() > p.order()


def test_grevlex_and_lex_leading_terms():
    p = parse_polynomial("x*z^2 + y^3 + x^2", VARS3)
    assert p.leading_term(GREVLEX)[0] == (0, 3, 0)  # degree 3 ties: y^3 beats x*z^2 in grevlex
    assert p.leading_term(LEX)[0] == (2, 0, 0)


def test_rational_coercion():
    assert rational("3/4") == mpq(3, 4)
    assert rational(Fraction(-1, 6)) == mpq(-1, 6)
    assert rational("−2") == -2
    with pytest.raises(TypeError):
        rational(0.5)
    with pytest.raises(ZeroDivisionError):
        rational("1/0")


@pytest.mark.parametrize("text", ["x +", "w", "x^y", "x/y", "sin(x)", ""])
def test_parse_errors(text):
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial(text, VARS3)


def test_parse_accepts_fractions_and_unicode_minus():
    p = parse_polynomial("1/2*x − (y - z)^2", VARS3)
    assert same(p, sp.Rational(1, 2) * X[0] - (X[1] - X[2]) ** 2)


def test_mixing_rings_is_an_error():
    p = Polynomial.variable("x", ("x", "y"))
    q = Polynomial.variable("x", ("x",))
    with pytest.raises((VariableMismatch, ValueError)):
        p + q


def test_unknown_order_name():
    with pytest.raises(ValueError):
        order_from_name("deglex")


@settings(max_examples=30)
@given(polynomials(coeff=2), polynomials(coeff=2))
def test_hash_respects_equality(p, q):
    if p == q:
        assert hash(p) == hash(q)
    assert hash(p + q - q) == hash(p)
