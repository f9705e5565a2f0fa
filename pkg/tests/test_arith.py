from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from adictop.arith import (INF, LocalContext, MPoly, Poly, RationalFunction, T, Valuation,
                           approximate, as_element, bezout, crt_solve, derive, format_element,
                           local_expand, parse_element, parse_poly, parse_valuation, residue_mod,
                           val, INVERSE_T)
from adictop.errors import DomainError, InfeasibleError, ParseError

from oracles import residue, sym, t_order, vp

rationals = st.fractions(max_denominator=10 ** 6).filter(lambda x: x != 0)
small_primes = st.sampled_from([2, 3, 5, 7, 11, 13])
int_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=5).map(lambda cs: Poly(tuple(cs)))


def rf_from(num, den):
    return RationalFunction(num, den)


# -- valuations -------------------------------------------------------------

@given(rationals, small_primes)
def test_padic_valuation_matches_oracle(x, p):
    assert val(x, Valuation.padic(p)) == vp(x, p)


@given(rationals, rationals, small_primes)
def test_valuation_is_additive_and_ultrametric(x, y, p):
    v = Valuation.padic(p)
    assert val(x * y, v) == val(x, v) + val(y, v)
    if x + y != 0:
        assert val(x + y, v) >= min(val(x, v), val(y, v))


def test_valuation_of_zero_is_infinite():
    assert val(Fraction(0), Valuation.padic(5)) is INF
    assert val(Fraction(0), Valuation.tadic()) is INF


@given(int_polys.filter(lambda f: not f.is_zero()), int_polys.filter(lambda f: not f.is_zero()))
@settings(max_examples=60)
def test_tadic_and_degree_valuations(f, g):
    x = rf_from(f, g)
    e = sym(str(x))
    assert val(x, Valuation.tadic()) == t_order(e)
    num, den = sympy.fraction(sympy.cancel(e))
    assert val(x, Valuation("inf")) == sympy.degree(den, sympy.Symbol("t")) - \
        sympy.degree(num, sympy.Symbol("t"))


def test_pi_adic_valuation():
    v = parse_valuation("pi(t^2+1)")
    x = parse_element("(t^2+1)^2*(t+3)/(t^2+1)^5")
    assert val(x, v) == -3
    assert val(parse_element("t+1"), v) == 0


def test_parse_valuation_forms():
    assert parse_valuation("p5") == Valuation.padic(5)
    assert parse_valuation("7") == Valuation.padic(7)
    assert parse_valuation("t") == Valuation.tadic()
    with pytest.raises(ParseError):
        parse_valuation("q5")
    with pytest.raises(DomainError):
        parse_valuation("p6")


# -- elements and parsing -------------------------------------------------

@given(rationals)
def test_rational_round_trip(x):
    assert parse_element(format_element(x)) == x


@given(int_polys.filter(lambda f: not f.is_zero()), int_polys.filter(lambda f: not f.is_zero()))
@settings(max_examples=60)
def test_rational_function_round_trip(f, g):
    x = as_element(rf_from(f, g))
    assert parse_element(format_element(x)) == x
    assert sympy.simplify(sym(format_element(x)) - sym(str(f)) / sym(str(g))) == 0


def test_rational_function_arithmetic():
    x = (1 + T) / (1 - T)
    assert x * (1 - T) == 1 + T
    assert (T ** 2 - 1) / (T - 1) == T + 1
    assert str(parse_element("(t^2 - 1)/(t - 1)")) == "t + 1"


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        parse_element("1 + * 2")
    assert info.value.position is not None


def test_derivation_inverse_t():
    d = INVERSE_T
    assert derive(T ** 2, d) == 2 * T * (1 / T)
    assert derive(Fraction(3), d) == 0


# -- CRT and weak approximation ----------------------------------------------

@given(st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6).filter(lambda b: b != 0))
def test_bezout_identity(a, b):
    g, x, y = bezout(a, b)
    assert a * x + b * y == g > 0
    assert a % g == 0 and b % g == 0


def test_crt_examples():
    assert crt_solve([(5, 1), (7, 0)]) == 21
    assert crt_solve([(25, 0), (7, 1)]) == 50
    with pytest.raises(InfeasibleError):
        crt_solve([(4, 1), (6, 2)])


@given(st.lists(st.tuples(small_primes, st.fractions(max_denominator=50), st.integers(0, 3)),
                min_size=1, max_size=4, unique_by=lambda c: c[0]))
@settings(max_examples=80)
def test_approximate_meets_every_constraint(cons):
    cons = [(p, tgt, k) for p, tgt, k in cons if vp(tgt, p) is None or vp(tgt, p) >= 0]
    x = approximate([(Valuation.padic(p), tgt, k) for p, tgt, k in cons])
    for p, tgt, k in cons:
        assert x == tgt or vp(x - tgt, p) >= k


def test_approximate_on_function_field():
    v0, v1 = Valuation.tadic(), Valuation.at_point(1)
    x = approximate([(v0, 1, 2), (v1, 0, 1)])
    assert val(x - 1, v0) >= 2 and val(x, v1) >= 1


@given(rationals.filter(lambda x: x.denominator % 7), st.integers(1, 5))
def test_residue_mod_matches_oracle(x, k):
    assert residue_mod(x, 7 ** k) == residue(x, 7 ** k)


# -- local expansions -----------------------------------------------------

@given(rationals.filter(lambda x: x.denominator % 5), rationals.filter(lambda x: x.denominator % 5))
@settings(max_examples=60)
def test_local_arithmetic_is_a_ring_map(x, y):
    ctx = LocalContext.padic(5, 4)
    ex, ey = local_expand(x, ctx), local_expand(y, ctx)
    assert (ex + ey).agrees_with(x + y)
    assert (ex * ey).agrees_with(x * y)


def test_tadic_series_of_inverse():
    ctx = LocalContext.tadic(5)
    e = local_expand(1 / (1 - T), ctx)
    assert e.digits()[:5] == [1, 1, 1, 1, 1]


# -- multivariate polynomials ---------------------------------------------

def test_mpoly_parse_diff_evaluate():
    f = parse_poly("x^2*y - 3*y + 1", ("x", "y"))
    assert isinstance(f, MPoly)
    assert f.evaluate([2, 5]) == 6
    assert f.diff("x").evaluate([2, 5]) == 20
    assert MPoly.from_json(("x", "y"), f.to_json()) == f
