"""Discrete valuations on Q and Q(t), and derivations of Q(t)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from ..errors import DomainError
from .poly import Poly, RationalFunction, T_POLY


@total_ordering
class _PlusInfinity:
    """The value of a valuation at 0.  Compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("adictop.INF")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("inf - inf")
        return self

    def __neg__(self):
        raise ArithmeticError("valuations never take the value -inf")

    def __repr__(self):
        return "INF"

    __str__ = __repr__


INF = _PlusInfinity()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def int_val(n: int, p: int):
    """p-adic valuation of an integer."""
    if n == 0:
        return INF
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def poly_val(f: Poly, pi: Poly):
    """pi-adic valuation of a polynomial."""
    if f.is_zero():
        return INF
    if pi.coeffs == T_POLY.coeffs:
        return f.order()
    k = 0
    while True:
        q, r = divmod(f, pi)
        if not r.is_zero():
            return k
        f, k = q, k + 1


@dataclass(frozen=True)
class Valuation:
    """A discrete valuation: ``p``-adic on Q, or ``pi``-adic / degree on Q(t).

    ``kind`` is one of ``"p"``, ``"t"``, ``"pi"``, ``"inf"``; the t-adic case
    is the ``pi``-adic valuation with ``pi = t`` but keeps its own label.
    """

    kind: str
    prime: int | None = None
    poly: Poly | None = None

    def __post_init__(self):
        if self.kind == "p":
            if not isinstance(self.prime, int) or not is_prime(self.prime):
                raise DomainError(f"{self.prime!r} is not a prime")
        elif self.kind == "t":
            object.__setattr__(self, "poly", T_POLY)
        elif self.kind == "pi":
            if self.poly is None or self.poly.degree < 1:
                raise DomainError("pi-adic valuation needs a non-constant polynomial")
            monic = self.poly.monic()
            if not _is_irreducible(monic):
                raise DomainError(f"{monic} is not irreducible over Q")
            if monic == T_POLY:
                object.__setattr__(self, "kind", "t")
            object.__setattr__(self, "poly", monic)
        elif self.kind != "inf":
            raise DomainError(f"unknown valuation kind {self.kind!r}")

    @classmethod
    def padic(cls, p: int) -> Valuation:
        return cls("p", prime=p)

    @classmethod
    def tadic(cls) -> Valuation:
        return cls("t")

    @classmethod
    def pi_adic(cls, pi: Poly) -> Valuation:
        return cls("pi", poly=pi)

    @classmethod
    def at_point(cls, point) -> Valuation:
        """Order of vanishing at a point of the projective line (``None`` or
        ``"inf"`` for the point at infinity)."""
        if point is None or point == "inf":
            return cls("inf")
        return cls("pi", poly=Poly.linear_root(point))

    @property
    def on_function_field(self) -> bool:
        return self.kind != "p"

    @property
    def uniformizer(self):
        """A uniformizer as a ground element."""
        if self.kind == "p":
            return Fraction(self.prime)
        if self.kind == "inf":
            return RationalFunction(Poly((1,)), T_POLY)
        return RationalFunction(self.poly)

    def __str__(self):
        if self.kind == "p":
            return f"p{self.prime}"
        if self.kind == "t":
            return "t"
        if self.kind == "inf":
            return "inf"
        return f"pi({self.poly})"


def _is_irreducible(p: Poly) -> bool:
    if p.degree == 1:
        return True
    import sympy

    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** i
               for i, c in enumerate(p.coeffs))
    return sympy.Poly(expr, t, domain="QQ").is_irreducible


def val(x, v: Valuation):
    """Exact valuation of a ground element; ``INF`` at zero.

    Rationals may be fed to function-field valuations (Q sits inside Q(t)).
    A non-constant rational function under a p-adic valuation is a domain
    error.
    """
    if isinstance(x, int):
        x = Fraction(x)
    if v.kind == "p":
        if isinstance(x, RationalFunction):
            if not x.is_constant():
                raise DomainError(f"p-adic valuation applied to {x} in Q(t)")
            x = x.constant_value()
        if not isinstance(x, Fraction):
            raise DomainError(f"cannot take p-adic valuation of {x!r}")
        if x == 0:
            return INF
        return int_val(x.numerator, v.prime) - int_val(x.denominator, v.prime)
    if isinstance(x, Fraction):
        return INF if x == 0 else 0
    if not isinstance(x, RationalFunction):
        raise DomainError(f"cannot take valuation of {x!r}")
    if x.is_zero():
        return INF
    if v.kind == "inf":
        return x.den.degree - x.num.degree
    return poly_val(x.num, v.poly) - poly_val(x.den, v.poly)


@dataclass(frozen=True)
class Derivation:
    """The derivation of Q(t) over Q determined by the image of t."""

    image_of_t: RationalFunction

    def __post_init__(self):
        img = self.image_of_t
        if not isinstance(img, RationalFunction):
            object.__setattr__(self, "image_of_t", RationalFunction(Poly((img,))))

    def __call__(self, x):
        return derive(x, self)

    def __str__(self):
        return f"dt={self.image_of_t}"


#: the derivation with t -> 1/t, incompatible with the t-adic valuation
INVERSE_T = Derivation(RationalFunction(Poly((1,)), T_POLY))


def derive(x, d: Derivation):
    """Apply the derivation: ``d(x) = (dx/dt) * d(t)``."""
    if isinstance(x, (int, Fraction)):
        return RationalFunction(Poly())
    if isinstance(x, Poly):
        x = RationalFunction(x)
    if not isinstance(x, RationalFunction):
        raise DomainError(f"cannot differentiate {x!r}")
    return x.derivative() * d.image_of_t
