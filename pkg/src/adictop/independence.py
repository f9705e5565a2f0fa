"""Independent topologies: 1 in U + V, common points and fraction splitting.

Two ring topologies are independent when every nonempty open set of one
meets every nonempty open set of the other.  For localizations at disjoint
sets of primes this is weak approximation, which over Q is the Chinese
remainder theorem.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import certificate as ck
from .arith import Valuation, approximate, as_element, bezout, is_prime, val
from .arith.poly import RationalFunction
from .certificate import Certificate
from .errors import DomainError, NotIndependentError, PreconditionError
from .rings import (MULTI_ADIC, MultiAdicInt, Neighborhood, RAdic, Sum, SumNeighborhood,
                    compare, in_neighborhood, jacobson_generator, normalize, parse_topology,
                    random_element)


def _support(n: Neighborhood):
    ring = normalize(n.ring)
    if not isinstance(ring, MULTI_ADIC):
        raise PreconditionError(f"{ring} is not a multi-adic ring")
    return ring, ring.valuations


def _overlap_error(r1, r2, shared):
    v = sorted(shared, key=str)[0]
    # against a single valuation ring compare() names the relation exactly
    c = compare(RAdic(type(r1)((_gens(r1)[r1.valuations.index(v)],))), RAdic(r2))
    return NotIndependentError(f"{r1} and {r2} share the valuation {v} "
                               f"(compare: {c.outcome}); the opens may be disjoint")


def _gens(ring):
    return ring.primes if isinstance(ring, MultiAdicInt) else ring.irreducibles


@dataclass
class Decomposition:
    u: object
    v: object
    certificate: Certificate

    def __iter__(self):
        return iter((self.u, self.v))


def one_in_sum(U: Neighborhood, V: Neighborhood) -> Decomposition:
    """``1 = u + v`` with ``u in U`` and ``v in V`` for neighborhoods of 0."""
    r1, s1 = _support(U)
    r2, s2 = _support(V)
    if r1.ground != r2.ground:
        raise DomainError("neighborhoods on different ground fields")
    if U.center != 0 or V.center != 0:
        raise PreconditionError("one_in_sum expects neighborhoods centered at 0")
    one = Fraction(1)
    if in_neighborhood(U, one):
        u = one
    elif in_neighborhood(V, one):
        u = Fraction(0)
    else:
        shared = set(s1) & set(s2)
        if shared:
            raise _overlap_error(r1, r2, shared)
        cons = [(v, 0, max(0, val(U.scale, v))) for v in s1]
        cons += [(v, 1, max(0, val(V.scale, v))) for v in s2]
        u = as_element(approximate(cons))
    w = as_element(1 - u)
    cert = Certificate(f"1 lies in ({U.scale})*{r1} + ({V.scale})*{r2}")
    cert.witness("u", u).witness("v", w)
    cert.check(
        ck.eq("u + v", "1", env={"u": u, "v": w}),
        ck.in_neighborhood(r1, U.scale, 0, u),
        ck.in_neighborhood(r2, V.scale, 0, w),
    )
    return Decomposition(u, w, cert)


def independence_witness(U: Neighborhood, V: Neighborhood):
    """A common point of two basic open sets; returns ``(x, certificate)``."""
    r1, s1 = _support(U)
    r2, s2 = _support(V)
    if r1.ground != r2.ground:
        raise DomainError("neighborhoods on different ground fields")
    if in_neighborhood(V, U.center):
        x = U.center
    elif in_neighborhood(U, V.center):
        x = V.center
    else:
        shared = set(s1) & set(s2)
        if shared:
            raise _overlap_error(r1, r2, shared)
        cons = [(v, U.center, val(U.scale, v)) for v in s1]
        cons += [(v, V.center, val(V.scale, v)) for v in s2]
        x = as_element(approximate(cons))
    cert = Certificate(f"{U} and {V} meet")
    cert.witness("point", x)
    cert.check(ck.in_neighborhood(r1, U.scale, U.center, x),
               ck.in_neighborhood(r2, V.scale, V.center, x))
    return x, cert


@dataclass
class Split:
    """``x = p_part + rest``: ``p_part`` has a p-power denominator (so lies in
    Z_(q)) and ``rest`` has denominator prime to p (so lies in Z_(p))."""

    p: int
    q: int
    x: Fraction
    p_part: Fraction
    rest: Fraction
    certificate: Certificate

    def __iter__(self):
        return iter((self.p_part, self.rest))

    def member_of(self) -> dict:
        return {f"Z_({self.q})": self.p_part, f"Z_({self.p})": self.rest}


def split_fraction(primes, x) -> Split:
    """Split ``x = a/b`` as ``x'/s + y/t`` from Bezout on ``b = s*t``.

    ``t`` is the p-part of ``b`` and ``s = b/t``; from ``s*alpha + t*beta = 1``
    we get ``a = s*y + t*x'`` with ``y = a*alpha`` and ``x' = a*beta``.
    """
    p, q = (int(z) for z in primes)
    if p == q or not is_prime(p) or not is_prime(q):
        raise DomainError("split_fraction needs two distinct primes")
    x = as_element(x)
    if isinstance(x, RationalFunction):
        raise DomainError("split_fraction works over Q")
    a, b = x.numerator, x.denominator
    vp = val(Fraction(b), Valuation.padic(p))
    t = p ** vp
    s = b // t
    _, alpha, beta = bezout(s, t)
    y, xp = a * alpha, a * beta
    p_part, rest = Fraction(y, t), Fraction(xp, s)
    zp, zq = MultiAdicInt((p,)), MultiAdicInt((q,))
    cert = Certificate(f"{x} = {p_part} + {rest} with {rest} in Z_({p}) and {p_part} in Z_({q})")
    cert.witness("s", s).witness("t", t).witness(f"in_Z_{p}", rest).witness(f"in_Z_{q}", p_part)
    cert.check(
        ck.eq("x", "y + z", env={"x": x, "y": p_part, "z": rest}),
        ck.eq("s*alpha + t*beta", "1", env={"s": s, "t": t, "alpha": alpha, "beta": beta}),
        ck.contains(zp, rest),
        ck.contains(zq, p_part),
    )
    return Split(p, q, x, p_part, rest, cert)


def sum_topology(tau1, tau2) -> Sum:
    """The topology generated by both; basic opens are pairwise intersections."""
    return Sum(parse_topology(tau1), parse_topology(tau2))


def sum_basic_open(U: Neighborhood, V: Neighborhood) -> SumNeighborhood:
    if normalize(U.ring).ground != normalize(V.ring).ground:
        raise DomainError("neighborhoods on different ground fields")
    return SumNeighborhood(U, V)


# -- x^2 - x is not open at 0 in the sum topology ------------------------------

@dataclass
class NonHenselCertificate:
    p: int
    q: int
    m: int
    n: int
    a: Fraction
    fa: Fraction
    certificate: Certificate


def non_gt_hensel_certificate(p: int, q: int, m: int = 1, n: int = 1) -> NonHenselCertificate:
    """Witness that ``f(x) = x^2 - x`` maps ``U_1 ∩ U_2`` onto no neighborhood of 0.

    ``U_1 = p^m Z_(p)`` and ``U_2 = q^n Z_(q)`` each miss ``1 - U_i``.  The
    point ``a`` is 1 near p and 0 near q, so ``f(a)`` is small in both
    topologies while its two preimages ``a`` and ``1 - a`` avoid ``U_1 ∩ U_2``.
    """
    if p == q:
        raise DomainError("the two primes must differ")
    for z in (p, q):
        if not is_prime(z):
            raise DomainError(f"{z} is not prime")
    if m < 1 or n < 1:
        raise DomainError("exponents must be positive")
    vp, vq = Valuation.padic(p), Valuation.padic(q)
    a = approximate([(vp, 1, m), (vq, 0, n)])
    fa = a * a - a
    zp, zq = MultiAdicInt((p,)), MultiAdicInt((q,))
    pm, qn = Fraction(p) ** m, Fraction(q) ** n
    cert = Certificate(f"x^2 - x is not open at 0 for the sum of the {p}-adic and "
                       f"{q}-adic topologies")
    cert.witness("a", a).witness("f(a)", fa)
    cert.witness("U1", f"{pm}*{zp}").witness("U2", f"{qn}*{zq}")
    cert.check(
        ck.in_neighborhood(zp, pm, 1, a, note="a in 1 - U1'"),
        ck.in_neighborhood(zq, qn, 0, a, note="a in U2'"),
        ck.in_neighborhood(zp, pm, 0, fa, note="f(a) in V1"),
        ck.in_neighborhood(zq, qn, 0, fa, note="f(a) in V2"),
        ck.in_neighborhood(zp, pm, 0, a, expect=False, note="a not in U1"),
        ck.in_neighborhood(zq, qn, 0, 1 - a, expect=False, note="1 - a not in U2"),
        ck.eq("a^2 - a", "(1 - a)^2 - (1 - a)", env={"a": a}, note="f(a) = f(1 - a)"),
        ck.eq("(t - a)*(t - 1 + a)", "t^2 - t - fa", env={"a": a, "fa": fa},
              note="a and 1 - a are the only preimages of f(a)"),
    )
    return NonHenselCertificate(p, q, m, n, a, fa, cert)


# -- the two-prime localization ------------------------------------------------

def factor_two_sided(x, p: int, q: int):
    """``x = s * t`` with ``t`` the p-part of x and ``s`` prime to p (s carries the q-part)."""
    x = as_element(x)
    if x == 0:
        raise DomainError("0 has no factorization")
    e = val(x, Valuation.padic(p))
    t = Fraction(p) ** e
    return x / t, t


def problematic_instance(p: int, q: int, exponents=(2, 1), samples: int = 200,
                         seed: int = 0) -> dict:
    """The domain ``A = Z_(p) ∩ Z_(q)`` with exactly two maximal ideals.

    Checks ``(A ∖ pA)(A ∖ qA) = A ∖ {0}`` on random elements by explicit
    factorization, so the prime of the general construction is 0 and the
    two localizations are Z_(p) and Z_(q).
    """
    if p == q:
        raise DomainError("the two primes must differ")
    ring = MultiAdicInt((p, q))
    rng = random.Random(seed)
    cert = Certificate(f"every nonzero element of {ring} is a product of an element "
                       f"outside {p}A and an element outside {q}A")
    xs = [Fraction(p * p * q)]
    while len(xs) < samples:
        x = random_element(ring, rng)
        if x != 0:
            xs.append(x)
    factorizations = []
    for x in xs:
        s, t = factor_two_sided(x, p, q)
        cert.check(
            ck.eq("x", "s*t", env={"x": x, "s": s, "t": t}),
            ck.contains(ring, s), ck.val_eq(s, f"p{p}", 0),
            ck.contains(ring, t), ck.val_eq(t, f"p{q}", 0),
        )
        factorizations.append({"x": str(x), "s": str(s), "t": str(t)})
    e1, e2 = exponents
    U = Neighborhood(MultiAdicInt((p,)), Fraction(p) ** e1)
    V = Neighborhood(MultiAdicInt((q,)), Fraction(q) ** e2)
    dec = one_in_sum(U, V)
    return {
        "ring": str(ring),
        "maximal_ideals": [f"{p}A", f"{q}A"],
        "jacobson_radical": f"{jacobson_generator(ring)}A",
        "saturating_prime": "0",
        "localizations": [str(MultiAdicInt((p,))), str(MultiAdicInt((q,)))],
        "topologies": [f"p{p}", f"p{q}"],
        "factorizations": factorizations[:5],
        "samples": len(xs),
        "saturation_certificate": cert,
        "independence": {"U": str(U), "V": str(V), "u": str(dec.u), "v": str(dec.v)},
        "independence_certificate": dec.certificate,
    }
