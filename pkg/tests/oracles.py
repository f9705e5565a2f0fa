"""Independent brute-force oracles used by the tests.

Nothing here imports adictop: the helpers work on plain ints, Fractions and
sympy expressions so that they can judge the library's answers.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

PRIMES_50 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
ODD_PRIMES_30 = [3, 5, 7, 11, 13, 17, 19, 23, 29]
T = sympy.Symbol("t")


def vp(x, p: int):
    """p-adic valuation of a nonzero rational by repeated division."""
    x = Fraction(x)
    if x == 0:
        return None
    n, d, k = x.numerator, x.denominator, 0
    while n % p == 0:
        n //= p
        k += 1
    while d % p == 0:
        d //= p
        k -= 1
    return k


def residue(x, m: int) -> int:
    """x mod m for a rational with denominator prime to m."""
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, m) % m


def in_padic_ball(x, p: int, k: int, center=0) -> bool:
    """val_p(x - center) >= k (0 counts as infinitely divisible)."""
    d = Fraction(x) - Fraction(center)
    return d == 0 or vp(d, p) >= k


def evaluate_int_poly(coeffs, x) -> Fraction:
    """coeffs low-to-high."""
    return sum((Fraction(c) * Fraction(x) ** i for i, c in enumerate(coeffs)), Fraction(0))


def brute_roots(coeffs, p: int, n: int):
    """All residues r mod p^n with f(r) = 0 mod p^n."""
    m = p ** n
    return [r for r in range(m) if int(evaluate_int_poly(coeffs, r)) % m == 0]


def sym(text: str):
    """Element text from the library (``t^2/8 + 1``) as a sympy expression."""
    return sympy.sympify(text.replace("^", "**"), locals={"t": T})


def t_order(expr) -> int | None:
    """Order of vanishing at t = 0 of a rational function; None for 0."""
    expr = sympy.cancel(sympy.together(expr))
    if expr == 0:
        return None
    num, den = sympy.fraction(expr)
    return _poly_order(num) - _poly_order(den)


def _poly_order(f) -> int:
    poly = sympy.Poly(f, T)
    return min(m[0] for m in poly.monoms())


def order_at(expr, point) -> int:
    """Order of a nonzero rational function at a point of P^1 ("inf" allowed)."""
    expr = sympy.cancel(sympy.together(expr))
    num, den = sympy.fraction(expr)
    if point == "inf":
        return sympy.degree(den, T) - sympy.degree(num, T)
    a = sympy.Rational(point)
    return _mult(num, a) - _mult(den, a)


def _mult(f, a) -> int:
    poly, k = sympy.Poly(f, T), 0
    while poly.degree() > 0 and poly.eval(a) == 0:
        poly = sympy.Poly(sympy.quo(poly.as_expr(), T - a), T)
        k += 1
    return k


def crt_point(p: int, primes) -> int:
    """Least x >= 0 with x = 1 mod p and x = 0 mod every prime in ``primes``."""
    q = 1
    for r in primes:
        q *= r
    return q * pow(q, -1, p) % (p * q)


def oracle_rr_dim(terms) -> int:
    """dim H^0(D) by counting solutions f = g/A of the linear conditions in sympy."""
    finite = {p: m for p, m in terms if p != "inf"}
    m_inf = dict(terms).get("inf", 0)
    a = sympy.Integer(1)
    for p, m in finite.items():
        if m > 0:
            a *= (T - p) ** m
    top = sympy.degree(a, T) + m_inf
    if top < 0:
        return 0
    cs = sympy.symbols(f"c0:{top + 1}")
    g = sum(c * T ** i for i, c in enumerate(cs))
    eqs = []
    for p, m in finite.items():
        # a point with m < 0 forces a zero of g of order -m there
        for j in range(max(0, -m)):
            eqs.append(sympy.diff(g, T, j).subs(T, p))
    if not eqs:
        return top + 1
    mat = sympy.Matrix([[sympy.diff(e, c) for c in cs] for e in eqs])
    return top + 1 - mat.rank()


def in_differential_ring(num, den) -> bool:
    """x = num/den (coefficient lists, low to high) lies in R for dt = 1/t.

    R = {x : ord_t(x) >= 0 and ord_t(x'/t) >= 0}, i.e. the Laurent series of
    x has no negative terms and no t^1 term.
    """
    num, den = [Fraction(c) for c in num], [Fraction(c) for c in den]
    if not any(num):
        return True
    on = next(i for i, c in enumerate(num) if c)
    od = next(i for i, c in enumerate(den) if c)
    o = on - od
    if o != 0:
        return o >= 2
    n, d = num[on:] + [Fraction(0)] * 2, den[od:] + [Fraction(0)] * 2
    q0 = n[0] / d[0]
    return n[1] - q0 * d[1] == 0
