"""Genus-0 geometry: divisors on the projective line, Riemann-Roch spaces,
functions with prescribed poles, and approximation on the line and on conics.

Points of P^1(Q) are Fractions or :data:`INFINITY`.  A function ``f`` lies in
``H^0(D)`` when ``ord_P(f) >= -D(P)`` at every point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import certificate as ck
from .arith import (INF, Poly, RationalFunction, Valuation, approximate, as_element,
                    crt_solve, is_prime, val)
from .arith.crt import padic_constraints
from .certificate import Certificate
from .errors import DomainError, PreconditionError
from .linalg import avoid_subspaces
from .rings import MultiAdicInt

INFINITY = "inf"


def as_point(x):
    if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo"):
        return INFINITY
    if x is None:
        return INFINITY
    y = as_element(x)
    if isinstance(y, RationalFunction):
        raise DomainError(f"{x} is not a point of P^1(Q)")
    return y


def place(point) -> Valuation:
    return Valuation.at_point(None if point == INFINITY else point)


def _point_key(p):
    return (1, 0) if p == INFINITY else (0, p)


@dataclass(frozen=True)
class Divisor:
    """Finite formal sum of points with integer multiplicities."""

    terms: tuple  # ((point, multiplicity), ...)

    def __post_init__(self):
        acc = {}
        for p, m in self.terms:
            p = as_point(p)
            acc[p] = acc.get(p, 0) + int(m)
        clean = tuple(sorted(((p, m) for p, m in acc.items() if m), key=lambda e: _point_key(e[0])))
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, mapping) -> Divisor:
        return cls(tuple(mapping.items()) if isinstance(mapping, dict) else tuple(mapping))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.terms)

    def mult(self, point) -> int:
        point = as_point(point)
        return next((m for p, m in self.terms if p == point), 0)

    def __add__(self, other):
        return Divisor(self.terms + other.terms)

    def __sub__(self, other):
        return Divisor(self.terms + tuple((p, -m) for p, m in other.terms))

    def to_json(self):
        return [{"point": str(p), "mult": m} for p, m in self.terms]

    @classmethod
    def from_json(cls, data) -> Divisor:
        return cls(tuple((d["point"], d["mult"]) for d in data))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{m}*({p})" for p, m in self.terms).replace("+ -", "- ")


def _pole_poly(d: Divisor) -> Poly:
    out = Poly((1,))
    for p, m in d.terms:
        if p != INFINITY and m > 0:
            out = out * Poly.linear_root(p) ** m
    return out


def _zero_poly(d: Divisor) -> Poly:
    out = Poly((1,))
    for p, m in d.terms:
        if p != INFINITY and m < 0:
            out = out * Poly.linear_root(p) ** (-m)
    return out


def in_rr_space(f, d: Divisor) -> bool:
    f = as_element(f)
    if f == 0:
        return True
    f = RationalFunction._coerce(f)
    for p, m in d.terms:
        if val(f, place(p)) < -m:
            return False
    # no poles away from the support of D
    return (_pole_poly(d) % f.den).is_zero() and val(f, place(INFINITY)) >= -d.mult(INFINITY)


def rr_space_p1(d: Divisor):
    """Basis ``B*t^i/A`` of ``H^0(D)``, ``i = 0 .. deg D``; returns ``(basis, certificate)``."""
    a, b = _pole_poly(d), _zero_poly(d)
    n = d.degree
    basis = [as_element(RationalFunction(b * Poly.monomial(i), a)) for i in range(n + 1)]
    cert = Certificate(f"H^0({d}) has dimension {max(0, n + 1)}")
    cert.witness("basis", basis)
    for f in basis:
        for p, m in d.terms:
            cert.check(ck.val_ge(f, place(p), -m))
        if not a.is_constant():
            cert.check(ck.den_divides(f, RationalFunction(a)))
    return basis, cert


def _coords(f, d: Divisor, size: int):
    """Coefficients of ``f * A / B`` (a polynomial of degree < size for f in H^0(D))."""
    g = RationalFunction._coerce(as_element(f)) * RationalFunction(_pole_poly(d), _zero_poly(d))
    assert g.is_polynomial()
    return [g.num.coeff(i) for i in range(size)]


def divisor_of(f) -> dict:
    """Full divisor of ``f`` by factorization over Q.

    Returns ``{"zeros": [...], "poles": [...], "degree": n}``; rational points
    are reported as numbers, other closed points by their minimal polynomial
    with its degree.
    """
    import sympy

    f = RationalFunction._coerce(as_element(f))
    if f.is_zero():
        raise DomainError("the zero function has no divisor")
    t = sympy.Symbol("t")

    def places(poly):
        expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** i
                   for i, c in enumerate(poly.coeffs))
        out = []
        if poly.degree < 1:
            return out
        _, factors = sympy.factor_list(sympy.Poly(expr, t, domain="QQ"))
        for fac, mult in factors:
            coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
            q = Poly(coeffs).monic()
            if q.degree == 1:
                out.append({"point": str(-q.coeff(0)), "order": int(mult), "degree": 1})
            else:
                out.append({"point": f"root of {q}", "order": int(mult), "degree": q.degree})
        return out

    zeros, poles = places(f.num), places(f.den)
    oinf = f.den.degree - f.num.degree
    if oinf > 0:
        zeros.append({"point": INFINITY, "order": oinf, "degree": 1})
    elif oinf < 0:
        poles.append({"point": INFINITY, "order": -oinf, "degree": 1})
    degree = sum(z["order"] * z["degree"] for z in zeros)
    assert degree == sum(p["order"] * p["degree"] for p in poles)
    return {"zeros": zeros, "poles": poles, "degree": degree}


def prescribed_function(poles, zero):
    """``f`` with simple poles exactly at ``poles`` and a simple zero at ``zero``.

    Works in ``H^0(D)`` for ``D = p_1 + ... + p_n - q`` and avoids the
    subspaces ``H^0(D - q)`` and ``H^0(D - p_i)``.  Returns ``(f, certificate)``.
    """
    poles = [as_point(p) for p in poles]
    zero = as_point(zero)
    if not poles:
        raise DomainError("need at least one pole")
    if len(set(poles)) != len(poles) or zero in poles:
        raise DomainError("poles and zero must be distinct points")
    n = len(poles)
    d = Divisor(tuple((p, 1) for p in poles) + ((zero, -1),))
    size = d.degree + 1
    basis, _ = rr_space_p1(d)
    vectors = [_coords(f, d, size) for f in basis]
    subs = []
    for smaller in [d - Divisor(((zero, 1),))] + [d - Divisor(((p, 1),)) for p in poles]:
        sb, _ = rr_space_p1(smaller)
        subs.append([_coords(f, d, size) for f in sb])
    c = avoid_subspaces(size, subs, basis=vectors)
    g = Poly(c)
    f = as_element(RationalFunction(_zero_poly(d) * g, _pole_poly(d)))
    div = divisor_of(f)
    cert = Certificate(f"f has simple poles at {', '.join(map(str, poles))} and a simple "
                       f"zero at {zero}")
    cert.witness("f", f).witness("divisor", str(div))
    for p in poles:
        cert.check(ck.val_eq(f, place(p), -1, note=f"simple pole at {p}"))
    cert.check(ck.val_eq(f, place(zero), 1, note=f"simple zero at {zero}"),
               ck.fn_degree(f, n, note="n poles counted with multiplicity"))
    finite = _pole_poly(d)
    if not finite.is_constant():
        cert.check(ck.den_divides(f, RationalFunction(finite), note="no other finite poles"))
    if INFINITY not in poles:
        cert.check(ck.val_ge(f, "inf", 0, note="no pole at infinity"))
    # the pole list of the factorization must be exactly the prescribed one
    got = sorted(str(e["point"]) for e in div["poles"])
    assert got == sorted(str(p) for p in poles) and all(e["order"] == 1 for e in div["poles"])
    return f, cert


def weak_approx_line(constraints):
    """``x`` with ``val_p(x - target) >= k`` for each ``(p, target, k)``."""
    constraints = [(int(p), as_element(tgt), int(k)) for p, tgt, k in constraints]
    if len({p for p, _, _ in constraints}) != len(constraints):
        raise DomainError("primes must be distinct")
    x = approximate(padic_constraints(constraints))
    cert = Certificate("x approximates every target")
    cert.witness("x", x)
    for p, tgt, k in constraints:
        cert.check(ck.val_ge("x - a", f"p{p}", k, env={"x": x, "a": tgt}))
    return x, cert


# -- conics and the IP pattern -----------------------------------------------

@dataclass(frozen=True)
class PatternSpec:
    """``b_i^2 = 1 + a*c_i`` with ``b_i`` near 1 at p and near ``+-1`` at q."""

    constants: tuple
    subset: frozenset
    primes: tuple
    precision: tuple = (1, 1)

    def __post_init__(self):
        cs = tuple(as_element(c) for c in self.constants)
        if any(c == 0 for c in cs) or len(set(cs)) != len(cs):
            raise DomainError("constants must be distinct and nonzero")
        p, q = (int(z) for z in self.primes)
        if p == q or p == 2 or q == 2 or not is_prime(p) or not is_prime(q):
            raise DomainError("need two distinct odd primes")
        s = frozenset(int(i) for i in self.subset)
        if not s <= set(range(1, len(cs) + 1)):
            raise DomainError("subset indices run from 1 to n")
        object.__setattr__(self, "constants", cs)
        object.__setattr__(self, "primes", (p, q))
        object.__setattr__(self, "subset", s)
        object.__setattr__(self, "precision", tuple(int(m) for m in self.precision))


def _pattern_checks(spec: PatternSpec, candidate):
    a, *bs = (as_element(x) for x in candidate)
    (p, q), (m, n) = spec.primes, spec.precision
    zp, zq = MultiAdicInt((p,)), MultiAdicInt((q,))
    pm, qn = Fraction(p) ** m, Fraction(q) ** n
    checks = []
    for i, (c, b) in enumerate(zip(spec.constants, bs), start=1):
        checks.append(ck.eq("b^2", "1 + a*c", env={"a": a, "b": b, "c": c}))
        checks.append(ck.in_neighborhood(zp, pm, 1, b, note=f"b_{i} in U"))
        if i in spec.subset:
            checks.append(ck.in_neighborhood(zq, qn, 1, b, note=f"b_{i} in U'"))
        else:
            checks.append(ck.in_neighborhood(zq, qn, 1, -b, note=f"-b_{i} in U'"))
    return checks


def ip_pattern_verify(spec: PatternSpec, candidate) -> bool:
    """All four condition families, with U = 1 + p^m Z_(p) and U' = 1 + q^n Z_(q)."""
    if len(candidate) != len(spec.constants) + 1:
        return False
    try:
        return all(ck.run_check(c) for c in _pattern_checks(spec, candidate))
    except (DomainError, TypeError):
        return False


def ip_pattern_certificate(spec: PatternSpec, candidate) -> Certificate:
    cert = Certificate(f"(a, b) realizes the sign pattern S = {sorted(spec.subset)}")
    cert.witness("a", candidate[0]).witness("b", list(candidate[1:]))
    cert.check(*_pattern_checks(spec, candidate))
    return cert


def conic_sign_witness(c, p: int, q: int, signs=(1, 1), precision=(1, 1)):
    """A point ``(a, b)`` of ``b^2 = 1 + c*a`` with ``b`` near ``signs`` at p and q.

    ``b`` is the CRT solution in ``[0, p^m q^n)``, shifted past the trivial
    point ``b = 1``.  Returns ``(a, b, certificate)``.
    """
    c = as_element(c)
    if isinstance(c, RationalFunction):
        raise DomainError("c must be rational")
    if c == 0:
        raise DomainError("c must be nonzero")
    p, q = int(p), int(q)
    if p == q or 2 in (p, q) or not is_prime(p) or not is_prime(q):
        raise PreconditionError("need two distinct odd primes")
    for z in (p, q):
        if c.numerator % z == 0 or c.denominator % z == 0:
            raise PreconditionError(f"{z} divides c = {c}")
    ep, eq = (int(s) for s in signs)
    if {ep, eq} - {1, -1}:
        raise DomainError("signs are +1 or -1")
    m, n = (int(k) for k in precision)
    big = p ** m * q ** n
    b = crt_solve([(p ** m, ep), (q ** n, eq)])
    if b == 1:
        b += big
    b = Fraction(b)
    a = (b * b - 1) / c
    zp, zq = MultiAdicInt((p,)), MultiAdicInt((q,))
    cert = Certificate(f"b^2 = 1 + ({c})*a with b = {ep:+d} near {p} and {eq:+d} near {q}")
    cert.witness("a", a).witness("b", b)
    cert.witness(f"val_{p}(a)", val(a, Valuation.padic(p)))
    cert.witness(f"val_{q}(a)", val(a, Valuation.padic(q)))
    cert.check(
        ck.eq("b^2", "1 + c*a", env={"a": a, "b": b, "c": c}),
        ck.in_neighborhood(zp, Fraction(p) ** m, ep, b),
        ck.in_neighborhood(zq, Fraction(q) ** n, eq, b),
        ck.ne(a, 0),
        ck.val_ge(a, f"p{p}", m),
        ck.val_ge(a, f"p{q}", n),
    )
    return a, b, cert


def pattern_from_conic(c, p, q, signs, precision=(1, 1)):
    """Compose the conic witness into an n = 1 pattern: ``(spec, (a, eps_p * b))``."""
    a, b, _ = conic_sign_witness(c, p, q, signs, precision)
    ep, eq = signs
    subset = {1} if ep * eq == 1 else set()
    spec = PatternSpec((c,), frozenset(subset), (p, q), precision)
    return spec, (a, ep * b)
