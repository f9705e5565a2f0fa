"""Truncated completions: Z_p modulo p^N and Q[t]_(pi) modulo pi^N.

A :class:`LocalContext` fixes the valuation and the working precision.
Elements of the valuation ring are represented by *representatives*: a
Python ``int`` in ``[0, p^k)`` for p-adic contexts, a :class:`Poly` of degree
``< k*deg(pi)`` for function-field contexts.  :class:`LocalExpansion` wraps a
representative together with the precision it is known to.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError, PrecisionError
from .crt import poly_residue_mod, residue_mod
from .poly import Poly, RationalFunction, poly_inverse_mod
from .valuation import INF, Valuation, int_val, poly_val, val


@dataclass(frozen=True)
class LocalContext:
    valuation: Valuation
    precision: int

    def __post_init__(self):
        if self.valuation.kind == "inf":
            raise DomainError("completion at infinity is not supported")
        if not isinstance(self.precision, int) or self.precision < 1:
            raise DomainError(f"precision must be a positive integer, got {self.precision!r}")

    @classmethod
    def padic(cls, p: int, precision: int) -> LocalContext:
        return cls(Valuation.padic(p), precision)

    @classmethod
    def tadic(cls, precision: int) -> LocalContext:
        return cls(Valuation.tadic(), precision)

    @property
    def is_padic(self) -> bool:
        return self.valuation.kind == "p"

    def with_precision(self, n: int) -> LocalContext:
        return LocalContext(self.valuation, n)

    # -- representative arithmetic --------------------------------------
    @property
    def zero(self):
        return 0 if self.is_padic else Poly()

    @property
    def one(self):
        return 1 if self.is_padic else Poly((1,))

    @property
    def pi(self):
        return self.valuation.prime if self.is_padic else self.valuation.poly

    def modulus(self, k: int):
        return self.pi ** max(k, 0)

    def reduce(self, r, k: int):
        if k <= 0:
            return self.zero
        if self.is_padic:
            return r % self.modulus(k)
        if self.valuation.kind == "t":
            return r.truncate(k)
        return r % self.modulus(k)

    def rep_val(self, r):
        """Valuation of a representative (INF for zero)."""
        if self.is_padic:
            return int_val(r, self.valuation.prime)
        return poly_val(r, self.valuation.poly)

    def divide_pi(self, r, e: int):
        """Exact division of a representative by pi^e."""
        if e == 0:
            return r
        if self.is_padic:
            m = self.valuation.prime ** e
            if r % m:
                raise DomainError("inexact division by the uniformizer")
            return r // m
        if self.valuation.kind == "t":
            return r.shift(-e)
        q, rem = divmod(r, self.modulus(e))
        if not rem.is_zero():
            raise DomainError("inexact division by the uniformizer")
        return q

    def inverse(self, r, k: int):
        """Inverse of a unit representative modulo pi^k."""
        if self.rep_val(r) != 0:
            raise PrecisionError("only units are invertible in the valuation ring")
        if self.is_padic:
            return pow(r, -1, self.modulus(k))
        if self.valuation.kind == "t":
            return _series_inverse(r, k)
        return poly_inverse_mod(r, self.modulus(k))

    def embed(self, x, k: int | None = None):
        """Representative of an integral ground element modulo pi^k."""
        k = self.precision if k is None else k
        if k <= 0:
            return self.zero
        if self.is_padic:
            if isinstance(x, int):
                return x % self.modulus(k)
            if isinstance(x, RationalFunction):
                x = x.constant_value()
            if val(x, self.valuation) < 0:
                raise PrecisionError(f"{x} is not integral at {self.valuation}")
            return residue_mod(x, self.modulus(k))
        if isinstance(x, (int, Fraction)):
            return self.reduce(Poly((x,)), k)
        if isinstance(x, Poly):
            return self.reduce(x, k)
        v = val(x, self.valuation)
        if v is not INF and v < 0:
            raise PrecisionError(f"{x} is not integral at {self.valuation}")
        if self.valuation.kind == "t":
            return (x.num * _series_inverse(x.den, k)).truncate(k)
        return poly_residue_mod(x, self.modulus(k))

    def lift(self, r):
        """The ground element a representative stands for."""
        if self.is_padic:
            return Fraction(r)
        return RationalFunction(r)

    def uniformizer_power(self, k: int):
        """pi^k as a ground element (k may be negative)."""
        u = self.valuation.uniformizer
        return u ** k


def _series_inverse(p: Poly, k: int) -> Poly:
    """Inverse of a power series with nonzero constant term, modulo t^k."""
    c0 = p.coeff(0)
    if c0 == 0:
        raise PrecisionError("series with zero constant term is not a unit")
    inv = [Fraction(0)] * k
    inv0 = 1 / c0
    inv[0] = inv0
    pc = p.coeffs
    for n in range(1, k):
        s = Fraction(0)
        for i in range(1, min(n, len(pc) - 1) + 1):
            if pc[i]:
                s += pc[i] * inv[n - i]
        inv[n] = -s * inv0
    return Poly(inv)


class LocalExpansion:
    """An element of the completion known modulo pi^precision.

    The element equals ``pi^shift * value`` up to ``pi^precision``, where
    ``value`` is a representative known modulo ``pi^(precision - shift)``.
    ``shift`` is negative only for Laurent expansions.
    """

    __slots__ = ("ctx", "value", "shift", "precision", "laurent")

    def __init__(self, ctx: LocalContext, value, precision: int, shift: int = 0,
                 laurent: bool = False):
        if shift < 0 and not laurent:
            raise PrecisionError("negative valuation requires Laurent mode")
        self.ctx = ctx
        self.precision = precision
        self.shift = shift
        self.laurent = laurent
        self.value = ctx.reduce(value, precision - shift)

    # -- views ---------------------------------------------------------
    def valuation(self):
        """Valuation of the known part, capped at the precision."""
        v = self.ctx.rep_val(self.value)
        if v is INF:
            return self.precision
        return min(self.shift + v, self.precision)

    def is_zero(self) -> bool:
        return self.valuation() >= self.precision

    def to_ground(self):
        return self.ctx.uniformizer_power(self.shift) * self.ctx.lift(self.value)

    def digits(self) -> list:
        """Expansion digits from pi^shift up to pi^(precision-1).

        p-adic: integers in ``[0, p)``; t-adic: rational coefficients;
        pi-adic: polynomials of degree ``< deg(pi)``.
        """
        n = self.precision - self.shift
        ctx = self.ctx
        if ctx.valuation.kind == "t":
            return [self.value.coeff(i) for i in range(n)]
        out, r = [], self.value
        for _ in range(n):
            if ctx.is_padic:
                r, d = divmod(r, ctx.valuation.prime)
            else:
                r, d = divmod(r, ctx.valuation.poly)
            out.append(d)
        return out

    def agrees_with(self, x) -> bool:
        """Does the ground element ``x`` match this expansion to its precision?"""
        return val(self.to_ground() - x, self.ctx.valuation) >= self.precision

    # -- arithmetic ----------------------------------------------------
    def _check(self, other):
        if not isinstance(other, LocalExpansion):
            other = local_expand(other, self.ctx.with_precision(max(self.precision, 1)),
                                 laurent=self.laurent)
        if other.ctx.valuation != self.ctx.valuation:
            raise DomainError("expansions live in different completions")
        return other

    def __add__(self, other):
        other = self._check(other)
        s = min(self.shift, other.shift)
        prec = min(self.precision, other.precision)
        ctx = self.ctx
        value = (self.value * ctx.pi ** (self.shift - s)
                 + other.value * ctx.pi ** (other.shift - s))
        return LocalExpansion(ctx, value, prec, s, self.laurent or other.laurent)

    __radd__ = __add__

    def __neg__(self):
        return LocalExpansion(self.ctx, -self.value, self.precision, self.shift, self.laurent)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        prec = min(self.precision + other.valuation(), other.precision + self.valuation())
        s = self.shift + other.shift
        ctx = self.ctx
        return LocalExpansion(ctx, self.value * other.value, prec, s,
                              self.laurent or other.laurent)

    __rmul__ = __mul__

    def inverse(self) -> LocalExpansion:
        v = self.valuation()
        if v >= self.precision:
            raise PrecisionError("cannot invert an expansion that is zero to its precision")
        if v > 0 and not self.laurent:
            raise PrecisionError("inverting a non-unit needs Laurent mode")
        ctx = self.ctx
        unit = ctx.divide_pi(self.value, v - self.shift)
        rel = self.precision - v
        inv = ctx.inverse(ctx.reduce(unit, rel), rel)
        return LocalExpansion(ctx, inv, self.precision - 2 * v, -v, self.laurent)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __repr__(self):
        return (f"LocalExpansion({self.to_ground()} + O({self.ctx.valuation.uniformizer}"
                f"^{self.precision}))")


def local_expand(x, ctx: LocalContext, laurent: bool = False) -> LocalExpansion:
    """Expand a ground element in the completion, to ``ctx.precision``."""
    if isinstance(x, int):
        x = Fraction(x)
    v = val(x, ctx.valuation)
    n = ctx.precision
    if v is INF:
        return LocalExpansion(ctx, ctx.zero, n, 0, laurent)
    if v >= 0:
        return LocalExpansion(ctx, ctx.embed(x, n), n, 0, laurent)
    if not laurent:
        raise PrecisionError(f"{x} has valuation {v} < 0 at {ctx.valuation}; "
                             "pass laurent=True to expand it")
    y = x * ctx.uniformizer_power(-v)
    return LocalExpansion(ctx, ctx.embed(y, n - v), n, v, True)
