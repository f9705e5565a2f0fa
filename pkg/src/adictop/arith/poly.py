"""Univariate polynomials over Q and the rational function field Q(t).

Polynomials are stored densely, lowest degree first, with Fraction
coefficients and no trailing zeros.  Rational functions are kept in lowest
terms with a monic denominator, so two equal functions compare equal
syntactically.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

from ..errors import DomainError


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, _RationalABC)):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")


class Poly:
    """Polynomial in t with rational coefficients (immutable)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1) -> Poly:
        return cls([0] * degree + [c])

    @classmethod
    def linear_root(cls, r) -> Poly:
        """The monic polynomial t - r."""
        return cls((-_frac(r), 1))

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def monic(self) -> Poly:
        if self.is_zero():
            raise DomainError("zero polynomial has no monic associate")
        lc = self.lc
        return Poly(c / lc for c in self.coeffs)

    def order(self) -> int | None:
        """t-adic order (index of the lowest nonzero coefficient); None for 0."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result, base = Poly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        inv_lc = 1 / other.lc
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] * inv_lc
            quot[k] = q
            if q:
                for j, c in enumerate(bc):
                    rem[k + j] -= q * c
        return Poly(quot), Poly(rem[:db] if db > 0 else ())

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def truncate(self, n: int) -> Poly:
        """Reduction modulo t^n."""
        return Poly(self.coeffs[:max(n, 0)])

    def shift(self, k: int) -> Poly:
        """Multiply by t^k (k >= 0) or exactly divide by t^-k."""
        if k >= 0:
            return Poly((0,) * k + self.coeffs) if self.coeffs else self
        if any(self.coeffs[:-k]):
            raise DomainError("inexact division by a power of t")
        return Poly(self.coeffs[-k:])

    def derivative(self) -> Poly:
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        """Horner evaluation; x may be any ring element supporting + and *."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- comparison / hashing -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(("Poly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, x, y) with a*x + b*y = g, g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = Poly((1,)), Poly()
    t0, t1 = Poly(), Poly((1,))
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc
    return r0.monic(), s0 * (1 / lc), t0 * (1 / lc)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; plain Euclid without the Bezout cofactors."""
    if a.is_zero():
        return b.monic() if not b.is_zero() else b
    if b.is_zero():
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return Poly((1,))
    r0, r1 = a.monic(), b.monic()
    while not r1.is_zero():
        r = r0 % r1
        r0, r1 = r1, (r.monic() if not r.is_zero() else r)
    return r0


def poly_inverse_mod(a: Poly, m: Poly) -> Poly:
    g, x, _ = poly_xgcd(a % m, m)
    if g != Poly((1,)):
        raise DomainError(f"{a} is not invertible modulo {m}")
    return x % m


T_POLY = Poly((0, 1))


class RationalFunction:
    """Element of Q(t): numerator/denominator in lowest terms, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _normalized=False):
        num = num if isinstance(num, Poly) else Poly((num,))
        if den is None:
            den = Poly((1,))
        elif not isinstance(den, Poly):
            den = Poly((den,))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            if num.is_zero():
                den = Poly((1,))
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lc = den.lc
                if lc != 1:
                    num, den = num * (1 / lc), den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def t(cls) -> RationalFunction:
        return cls(T_POLY)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Poly((other,)), _normalized=True)
        if isinstance(other, Poly):
            return RationalFunction(other, _normalized=True)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError(f"{self} is not a constant")
        return self.num.coeff(0)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(t)")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if self.is_zero():
                raise ZeroDivisionError("zero to a negative power")
            return RationalFunction(self.den ** -e, self.num ** -e)
        return RationalFunction(self.num ** e, self.den ** e, _normalized=True) if e else \
            RationalFunction(Poly((1,)), _normalized=True)

    def derivative(self) -> RationalFunction:
        """d/dt by the quotient rule."""
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x):
        den = self.den(x)
        if den == 0:
            raise ZeroDivisionError(f"{self} has a pole at {x}")
        return self.num(x) / den

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.num.coeff(0))
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den.degree == 0:
            return format_poly(self.num)
        num = format_poly(self.num)
        if len(self.num.coeffs) > 1 and sum(1 for c in self.num.coeffs if c) > 1:
            num = f"({num})"
        den = format_poly(self.den)
        if sum(1 for c in self.den.coeffs if c) > 1 or (self.den.lc != 1):
            den = f"({den})"
        return f"{num}/{den}"


T = RationalFunction.t()
