"""Bezout identities, Chinese remaindering and weak approximation on Q and Q(t)."""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import DomainError, InfeasibleError
from .poly import Poly, RationalFunction, poly_inverse_mod, poly_xgcd
from .valuation import INF, Valuation, val


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) > 0``."""
    if a == 0 and b == 0:
        raise DomainError("bezout(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    assert a * old_x + b * old_y == old_r
    return old_r, old_x, old_y


def crt_solve(congruences) -> int:
    """Least ``x >= 0`` with ``x = r (mod m)`` for every ``(m, r)`` pair.

    Non-coprime moduli are accepted when their residues are compatible; the
    result is then reduced modulo the lcm.
    """
    x, m = 0, 1
    for mod, res in congruences:
        if mod <= 0:
            raise DomainError(f"modulus must be positive, got {mod}")
        g, u, _ = bezout(m, mod)
        diff = res - x
        if diff % g:
            raise InfeasibleError(f"x = {x} mod {m} and x = {res} mod {mod} are incompatible")
        lcm = m // g * mod
        x = (x + m * (diff // g) * u) % lcm
        m = lcm
    for mod, res in congruences:
        if (x - res) % mod:
            raise AssertionError("CRT output failed re-verification")
    return x


def poly_crt(congruences) -> Poly:
    """CRT in Q[t] for pairwise coprime moduli; result has degree < deg(prod)."""
    x, m = Poly(), Poly((1,))
    for mod, res in congruences:
        if mod.is_zero():
            raise DomainError("zero polynomial modulus")
        g, u, _ = poly_xgcd(m, mod)
        if g.degree > 0:
            if not ((res - x) % g).is_zero():
                raise InfeasibleError("incompatible polynomial congruences")
            raise DomainError("polynomial moduli must be coprime")
        x = (x + m * (((res - x) * u) % mod)) % (m * mod)
        m = m * mod
    for mod, res in congruences:
        assert ((x - res) % mod).is_zero()
    return x


def residue_mod(x: Fraction, modulus: int) -> int:
    """Image in Z/modulus of a rational whose denominator is prime to modulus."""
    x = Fraction(x)
    if modulus == 1:
        return 0
    try:
        inv = pow(x.denominator, -1, modulus)
    except ValueError:
        raise DomainError(f"{x} is not integral modulo {modulus}") from None
    return x.numerator * inv % modulus


def rational_reconstruct(r: int, modulus: int):
    """The fraction ``a/b = r (mod modulus)`` with ``|a|, b <= sqrt(modulus/2)``, or None."""
    bound = math.isqrt(modulus // 2)
    r0, r1 = modulus, r % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, s1) != 1:
        return None
    x = Fraction(r1, s1)
    return x if residue_mod(x, modulus) == r % modulus else None


def poly_residue_mod(x, modulus: Poly) -> Poly:
    if isinstance(x, (int, Fraction)):
        return Poly((x,)) % modulus
    x = RationalFunction._coerce(x)
    if modulus.degree == 0:
        return Poly()
    return (x.num * poly_inverse_mod(x.den, modulus)) % modulus


def approximate(constraints):
    """Weak approximation: a single element close to every target at once.

    ``constraints`` is a list of ``(valuation, target, k)``; the returned
    element ``x`` satisfies ``val(x - target) >= k`` for each entry.  All
    valuations must be distinct and of one kind (all p-adic, giving a rational,
    or all pi-adic on Q(t), giving a rational function).
    """
    constraints = [(v, _as_ground(tgt), int(k)) for v, tgt, k in constraints]
    if not constraints:
        return Fraction(0)
    kinds = {v.kind == "p" for v, _, _ in constraints}
    if len(kinds) > 1:
        raise DomainError("cannot mix valuations on Q and Q(t)")
    if len({v for v, _, _ in constraints}) != len(constraints):
        raise DomainError("weak approximation needs distinct valuations")
    if kinds == {True}:
        return _approximate_q(constraints)
    if any(v.kind == "inf" for v, _, _ in constraints):
        raise DomainError("the degree valuation is not supported for approximation")
    return _approximate_qt(constraints)


def _as_ground(x):
    if isinstance(x, int):
        return Fraction(x)
    return x


def _approximate_q(constraints) -> Fraction:
    # clear the negative parts of the targets so everything is integral
    scale = 1
    for v, tgt, _ in constraints:
        vt = val(tgt, v)
        if vt is not INF and vt < 0:
            scale *= v.prime ** (-vt)
    congruences = []
    for v, tgt, k in constraints:
        e = 0 if val(Fraction(scale), v) is INF else val(Fraction(scale), v)
        need = k + e
        if need <= 0:
            continue
        mod = v.prime ** need
        congruences.append((mod, residue_mod(Fraction(tgt) * scale, mod)))
    y = crt_solve(congruences) if congruences else 0
    x = Fraction(y, scale)
    for v, tgt, k in constraints:
        assert val(x - tgt, v) >= k
    return x


def _approximate_qt(constraints):
    scale = Poly((1,))
    for v, tgt, _ in constraints:
        vt = val(tgt, v)
        if vt is not INF and vt < 0:
            scale = scale * v.poly ** (-vt)
    scale_rf = RationalFunction(scale)
    congruences = []
    for v, tgt, k in constraints:
        need = k + val(scale_rf, v)
        if need <= 0:
            continue
        mod = v.poly ** need
        congruences.append((mod, poly_residue_mod(scale_rf * tgt, mod)))
    y = poly_crt(congruences) if congruences else Poly()
    x = RationalFunction(y, scale)
    for v, tgt, k in constraints:
        assert val(x - tgt, v) >= k
    return x


def padic_constraints(targets):
    """Convenience: ``[(p, target, k), ...]`` to valuation triples."""
    return [(Valuation.padic(p), t, k) for p, t, k in targets]
