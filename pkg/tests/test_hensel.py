from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adictop.arith import LocalContext, T, parse_element
from adictop.errors import NoConvergenceError, PreconditionError, SingularError
from adictop.hensel import (PolySystem, gt_hensel_probe, hensel_lift, implicit_solve,
                            newton_inverse, probe_polynomial)

from oracles import brute_roots, residue, sym, t_order


def test_sqrt6_mod_25():
    r = hensel_lift("X^2 - 6", 1, LocalContext.padic(5, 2))
    assert r.root == 16 and r.certificate.is_valid()
    assert brute_roots([-6, 0, 1], 5, 2) == [9, 16]


def test_exact_rational_root_is_returned():
    r = hensel_lift("3*X - 7", 4, LocalContext.padic(5, 3))
    assert r.exact and r.root == Fraction(7, 3)
    assert r.certificate.is_valid()


def test_tadic_square_root():
    r = hensel_lift("X^2 - (1 + t)", 1, LocalContext.tadic(3))
    assert r.root == parse_element("-t^2/8 + t/2 + 1")


def test_two_adic_with_positive_derivative_valuation():
    r = hensel_lift("X^2 + 7", 1, LocalContext.padic(2, 4))
    assert r.derivative_valuation == 1
    # unique only modulo 2^(N - e) = 8 among the roots congruent to 1 mod 4
    assert int(r.root) in brute_roots([7, 0, 1], 2, 4)
    assert {x % 8 for x in brute_roots([7, 0, 1], 2, 4) if x % 4 == 1} == {int(r.root) % 8}


def test_hensel_precondition_failure():
    with pytest.raises(NoConvergenceError):
        hensel_lift("X^2 - 2", 1, LocalContext.padic(7, 3))
    with pytest.raises(PreconditionError):
        hensel_lift("X^2 - 1/5", 1, LocalContext.padic(5, 3))


@given(st.sampled_from([3, 5, 7]), st.integers(1, 4),
       st.lists(st.integers(-20, 20), min_size=3, max_size=5))
@settings(max_examples=80, deadline=None)
def test_simple_roots_lift_to_the_unique_brute_force_root(p, n, coeffs):
    f = "+".join(f"({c})*X^{i}" for i, c in enumerate(coeffs))
    df = [i * c for i, c in enumerate(coeffs)][1:]
    for a0 in brute_roots(coeffs, p, 1):
        if sum(c * a0 ** i for i, c in enumerate(df)) % p == 0:
            continue
        r = hensel_lift(f, a0, LocalContext.padic(p, n))
        roots = [x for x in brute_roots(coeffs, p, n) if x % p == a0]
        assert roots == [residue(r.root, p ** n)]


def test_probe_examples():
    assert str(probe_polynomial(3, [5, 10])) == "X^3 + X^2 + 10*X + 5"
    assert gt_hensel_probe(2, [5], LocalContext.padic(5, 2)).root == 4
    r = gt_hensel_probe(3, [0, 0], LocalContext.padic(5, 2))
    assert r.exact and r.root == -1
    assert gt_hensel_probe(2, ["t"], LocalContext.tadic(2)).root == T - 1
    with pytest.raises(PreconditionError):
        gt_hensel_probe(2, [1], LocalContext.padic(5, 2))


def test_inverse_function():
    sq = PolySystem.from_text("x^2", ("x",))
    assert newton_inverse(sq, [1], [6], LocalContext.padic(5, 2)).root == 16
    sys2 = PolySystem.from_text("x1 + x2; x1*x2", ("x1", "x2"))
    r = newton_inverse(sys2, [1, 2], [33, 252], LocalContext.padic(5, 3))
    assert r.values == [21, 12]


def test_implicit_function_examples():
    s = PolySystem.from_text("y^2 - x", ("x", "y"))
    r = implicit_solve(s, ["x"], ["y"], ([4], [2]), [9], LocalContext.padic(5, 4))
    assert r.exact and r.root == -3
    r = implicit_solve(s, ["x"], ["y"], ([1], [1]), ["1 + t"], LocalContext.tadic(3))
    assert r.root == parse_element("1 + t/2 - t^2/8")
    with pytest.raises(SingularError):
        implicit_solve(PolySystem.from_text("y^2 - x", ("x", "y")), ["x"], ["y"], ([0], [0]),
                       [5], LocalContext.padic(5, 2))


def test_system_json_round_trip():
    s = PolySystem.from_text("x*y - 1; y^2 + 3*x", ("x", "y"))
    assert PolySystem.from_json(s.to_json()).polys == s.polys


@given(st.integers(-10, 10), st.integers(-5, 5), st.integers(1, 6))
@settings(max_examples=40, deadline=None)
def test_tadic_implicit_solution_substitutes_to_zero(c, d, n):
    # y^3 + y - (x + c) with y near the root of y^3 + y = c at t = 0 is only
    # solvable when the residue equation has a root, so use y + y^2*x - x
    s = PolySystem.from_text(f"y + y^2*x - x - ({c})*x^2", ("x", "y"))
    x = parse_element(f"({d})*t + t^2")
    r = implicit_solve(s, ["x"], ["y"], ([0], [0]), [x], LocalContext.tadic(n))
    y = sym(str(r.root))
    xs = sym(str(x))
    residual = y + y ** 2 * xs - xs - c * xs ** 2
    order = t_order(residual)
    assert order is None or order >= n
