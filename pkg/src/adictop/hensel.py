"""Root lifting in completions.

Univariate Hensel lifting, the gt-henselianity probe polynomial
``X^n + X^(n-1) + c_(n-2) X^(n-2) + ... + c_0`` seeded at -1, and Newton
solvers for the polynomial inverse and implicit function theorems.

All iterations run on exact ground elements truncated to representatives,
and every result is re-checked by substituting the returned point into the
original polynomials.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import certificate as ck
from .arith import (INF, LocalContext, LocalExpansion, MPoly, as_element, parse_poly,
                    rational_reconstruct, val)
from .certificate import Certificate
from .errors import (DomainError, NoConvergenceError, ParseError, PreconditionError,
                     SingularError)
from .linalg import det, local_solve


@dataclass
class PolySystem:
    """Polynomials ``f_1..f_m`` in the variables ``x_1..x_n, y_1..y_m``."""

    polys: list
    variables: tuple

    def __post_init__(self):
        self.variables = tuple(self.variables)
        self.polys = [p if isinstance(p, MPoly) else parse_poly(p, self.variables)
                      for p in self.polys]
        for p in self.polys:
            if p.variables != self.variables:
                raise DomainError("all polynomials must share one variable list")

    @classmethod
    def from_text(cls, text: str, variables) -> PolySystem:
        return cls([s for s in text.split(";") if s.strip()], tuple(variables))

    @classmethod
    def from_json(cls, data) -> PolySystem:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            variables = tuple(data["variables"])
            polys = [MPoly.from_json(variables, mons) for mons in data["polys"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed polynomial system: {exc}") from None
        return cls(polys, variables)

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "polys": [p.to_json() for p in self.polys]}

    def jacobian(self, wrt):
        return [[p.diff(w) for w in wrt] for p in self.polys]


@dataclass
class RootCertificate:
    """A root modulo pi^N together with the data that certifies it."""

    ctx: LocalContext
    variables: tuple
    values: list                 # ground elements (representatives or exact roots)
    approximation: list          # LocalExpansion per component
    residual_valuation: object   # min valuation of the residuals, INF if exact
    derivative_valuation: int    # valuation of f'(root) or of the Jacobian determinant
    iterations: int
    exact: bool
    certificate: Certificate = field(repr=False)

    @property
    def root(self):
        return self.values[0]

    def to_dict(self) -> dict:
        res = self.residual_valuation
        return {
            "variables": list(self.variables),
            "values": {v: str(x) for v, x in zip(self.variables, self.values)},
            "known_modulo": f"{self.ctx.valuation.uniformizer}^{self.approximation[0].precision}",
            "residual_valuation": "inf" if res is INF else res,
            "derivative_valuation": self.derivative_valuation,
            "iterations": self.iterations,
            "exact": self.exact,
        }


def _univariate(f, var: str = "X") -> MPoly:
    if isinstance(f, MPoly):
        if len(f.variables) != 1:
            raise DomainError("expected a univariate polynomial")
        return f
    if isinstance(f, str):
        return parse_poly(f, (var,))
    # low-to-high coefficient list
    return MPoly.univariate([as_element(c) for c in f], var)


def _require_integral(polys, ctx):
    for p in polys:
        for c in p.coefficients():
            v = val(c, ctx.valuation)
            if v is not INF and v < 0:
                raise PreconditionError(f"coefficient {c} is not integral at {ctx.valuation}")


def _require_point_integral(point, ctx):
    for x in point:
        v = val(x, ctx.valuation)
        if v is not INF and v < 0:
            raise PreconditionError(f"{x} is not integral at {ctx.valuation}")


def _ground(ctx, rep):
    return as_element(ctx.lift(rep))


def _symmetric(ctx, rep, k):
    """The representative of least absolute value (p-adic) or the rep itself."""
    if ctx.is_padic:
        m = ctx.modulus(k)
        return rep - m if rep > m // 2 else rep
    return rep


def _exact_candidates(ctx, rep, k):
    yield _ground(ctx, _symmetric(ctx, rep, k))
    if ctx.is_padic:
        x = rational_reconstruct(rep, ctx.modulus(k))
        if x is not None and x.denominator != 1:
            yield x


def _min_val(values, v):
    out = INF
    for x in values:
        out = min(out, val(x, v)) if out is not INF else val(x, v)
    return out


# -- univariate -----------------------------------------------------------

def hensel_lift(f, a0, ctx: LocalContext, var: str = "X") -> RootCertificate:
    """Lift an approximate root ``a0`` of ``f`` to a root modulo pi^N.

    Requires ``val f(a0) > 2 val f'(a0)``.  The root is unique modulo
    ``pi^(N - e)`` with ``e = val f'(a0)``.
    """
    f = _univariate(f, var)
    var = f.variables[0]
    a0 = as_element(a0)
    v, n = ctx.valuation, ctx.precision
    _require_integral([f], ctx)
    _require_point_integral([a0], ctx)
    df = f.diff(var)
    fa = f.evaluate([a0])
    e = val(df.evaluate([a0]), v)
    if fa == 0:
        return _finish_univariate(f, df, a0, a0, ctx, 0 if e is INF else e, 0, exact=True)
    if e is INF:
        raise SingularError(f"f'({a0}) = 0")
    if val(fa, v) <= 2 * e:
        raise NoConvergenceError(
            f"val f(a0) = {val(fa, v)} is not larger than 2*val f'(a0) = {2 * e}")

    work = n + e
    x = ctx.embed(a0, work)
    limit = math.ceil(math.log2(max(n, 1))) + 1
    iters = 0
    while True:
        xg = _ground(ctx, x)
        fx = f.evaluate([xg])
        if fx == 0 or val(fx, v) >= n + e:
            break
        if iters > limit:
            raise NoConvergenceError("Newton iteration did not converge")  # pragma: no cover
        x = ctx.embed(xg - fx / df.evaluate([xg]), work)
        iters += 1

    rep = ctx.reduce(x, n)
    root = _ground(ctx, rep)
    # prefer an exact root when a small representative already is one
    exact = False
    for cand in _exact_candidates(ctx, rep, n):
        if f.evaluate([cand]) == 0:
            root, exact = cand, True
            break
    return _finish_univariate(f, df, a0, root, ctx, e, iters, exact)


def _finish_univariate(f, df, a0, root, ctx, e, iters, exact):
    v, n = ctx.valuation, ctx.precision
    var = f.variables[0]
    res = val(f.evaluate([root]), v)
    cert = Certificate(f"{f} has a root congruent to {root} modulo {v.uniformizer}^{n}")
    cert.witness("root", root).witness("seed", a0)
    env = {var: root}
    if exact:
        cert.check(ck.eq(str(f), "0", env=env, note="exact root"))
    else:
        cert.check(
            ck.val_ge(str(f), v, n, env=env, note="residual"),
            ck.val_eq(str(df), v, e, env=env, note="derivative valuation"),
            ck.val_ge("r - a", v, e + 1, env={"r": root, "a": a0}, note="seed congruence"),
        )
    approx = LocalExpansion(ctx, ctx.embed(root, n), max(n - e, 1)) if not exact \
        else LocalExpansion(ctx, ctx.embed(root, n), n)
    return RootCertificate(ctx, (var,), [root], [approx], res, e, iters, exact, cert)


def probe_polynomial(n: int, coeffs, var: str = "X") -> MPoly:
    """``X^n + X^(n-1) + sum_{i <= n-2} c_i X^i``."""
    if n < 2:
        raise DomainError("the probe polynomial needs n >= 2")
    coeffs = [as_element(c) for c in coeffs]
    if len(coeffs) != n - 1:
        raise DomainError(f"expected {n - 1} coefficients c_0..c_{n - 2}, got {len(coeffs)}")
    return MPoly.univariate(coeffs + [1, 1], var)


def gt_hensel_probe(n: int, coeffs, ctx: LocalContext, gamma: int = 1) -> RootCertificate:
    """Root of the probe polynomial near -1, for coefficients of valuation >= gamma."""
    if gamma < 1:
        raise DomainError("gamma must be at least 1")
    coeffs = [as_element(c) for c in coeffs]
    for i, c in enumerate(coeffs):
        if val(c, ctx.valuation) < gamma:
            raise PreconditionError(f"val(c_{i}) = {val(c, ctx.valuation)} < gamma = {gamma}")
    f = probe_polynomial(n, coeffs)
    return hensel_lift(f, -1, ctx)


# -- multivariate ---------------------------------------------------------

def _newton(polys, variables, start, ctx, what):
    """Newton iteration for ``polys = 0`` from ``start``; Jacobian must be a unit."""
    v, n = ctx.valuation, ctx.precision
    jac = [[p.diff(w) for w in variables] for p in polys]
    x = [ctx.embed(a, n) for a in start]
    limit = math.ceil(math.log2(max(n, 1))) + 1
    iters = 0
    while True:
        xg = [_ground(ctx, r) for r in x]
        vals = [p.evaluate(xg) for p in polys]
        if all(y == 0 or val(y, v) >= n for y in vals):
            return x, iters
        if iters > limit:
            raise NoConvergenceError(f"{what}: Newton iteration did not converge")  # pragma: no cover
        jm = [[ctx.embed(d.evaluate(xg), n) for d in row] for row in jac]
        rhs = [ctx.embed(y, n) for y in vals]
        delta = local_solve(ctx, jm, rhs, n)
        x = [ctx.reduce(a - b, n) for a, b in zip(x, delta)]
        iters += 1


def _det_val(polys, wrt, point, ctx):
    jac = [[p.diff(w).evaluate(point) for w in wrt] for p in polys]
    return val(det(jac), ctx.valuation)


def _finish_system(polys, variables, wrt, fixed, reps, seed, ctx, iters, claim):
    v, n = ctx.valuation, ctx.precision
    values = [_ground(ctx, r) for r in reps]
    sym = [_ground(ctx, _symmetric(ctx, r, n)) for r in reps]
    if ctx.is_padic and not all(p.evaluate(dict(fixed, **dict(zip(wrt, sym)))) == 0
                                for p in polys):
        rat = [rational_reconstruct(r, ctx.modulus(n)) for r in reps]
        if all(x is not None for x in rat):
            sym = rat
    full = dict(fixed)
    full_sym = dict(fixed)
    full.update(zip(wrt, values))
    full_sym.update(zip(wrt, sym))
    exact = all(p.evaluate(full_sym) == 0 for p in polys)
    if exact:
        values, full = sym, full_sym
    residual = _min_val([p.evaluate(full) for p in polys], v)
    dv = _det_val(polys, wrt, full, ctx)
    cert = Certificate(claim)
    for w, x in zip(wrt, values):
        cert.witness(w, x)
    for p in polys:
        if exact:
            cert.check(ck.eq(str(p), "0", env=full))
        else:
            cert.check(ck.val_ge(str(p), v, n, env=full, note="residual"))
    cert.check(ck.jacobian_unit([str(p) for p in polys], variables, wrt, full, v,
                                note="unit Jacobian: solutions congruent mod pi agree mod pi^N"))
    for w, x, s in zip(wrt, values, seed):
        cert.check(ck.val_ge("r - a", v, 1, env={"r": x, "a": s}, note=f"seed congruence for {w}"))
    approx = [LocalExpansion(ctx, ctx.embed(x, n), n) for x in values]
    return RootCertificate(ctx, tuple(wrt), values, approx, residual, dv, iters, exact, cert)


def newton_inverse(system: PolySystem, a, target, ctx: LocalContext) -> RootCertificate:
    """Solve ``F(b) = target`` for ``b`` near ``a`` (inverse function theorem)."""
    variables = system.variables
    polys = system.polys
    if len(polys) != len(variables):
        raise DomainError("the inverse function solver needs a square system")
    a = [as_element(x) for x in a]
    target = [as_element(x) for x in target]
    if len(a) != len(variables) or len(target) != len(polys):
        raise DomainError("point and target must match the system's dimensions")
    _require_integral(polys, ctx)
    _require_point_integral(a + target, ctx)
    point = dict(zip(variables, a))
    if _det_val(polys, variables, point, ctx) != 0:
        raise SingularError("Jacobian determinant at a is not a unit")
    fa = [p.evaluate(point) for p in polys]
    if any(val(y - t, ctx.valuation) < 1 for y, t in zip(fa, target)):
        raise NoConvergenceError("target is not congruent to F(a) modulo the uniformizer")
    shifted = [p - t for p, t in zip(polys, target)]
    reps, iters = _newton(shifted, variables, a, ctx, "newton_inverse")
    return _finish_system(shifted, variables, variables, {}, reps, a, ctx, iters,
                          f"F(b) = target modulo {ctx.valuation.uniformizer}^{ctx.precision}")


def implicit_solve(system: PolySystem, x_vars, y_vars, base, x, ctx: LocalContext) -> RootCertificate:
    """``y = g(x)`` with ``F(x, y) = 0`` near the base point ``(a, b)``."""
    x_vars, y_vars = tuple(x_vars), tuple(y_vars)
    polys = system.polys
    if set(x_vars) | set(y_vars) != set(system.variables) or set(x_vars) & set(y_vars):
        raise DomainError("x and y variables must partition the system's variables")
    if len(polys) != len(y_vars):
        raise DomainError("need as many equations as y variables")
    a, b = [as_element(c) for c in base[0]], [as_element(c) for c in base[1]]
    x = [as_element(c) for c in x]
    if len(a) != len(x_vars) or len(x) != len(x_vars) or len(b) != len(y_vars):
        raise DomainError("point dimensions do not match the variables")
    _require_integral(polys, ctx)
    _require_point_integral(a + b + x, ctx)
    v, n = ctx.valuation, ctx.precision
    base_pt = dict(zip(x_vars, a))
    base_pt.update(zip(y_vars, b))
    if any(val(p.evaluate(base_pt), v) < n for p in polys):
        raise PreconditionError(f"F(a, b) is not 0 modulo {v.uniformizer}^{n}")
    if _det_val(polys, y_vars, base_pt, ctx) != 0:
        raise SingularError("dF/dy is not invertible at the base point")
    if any(val(xi - ai, v) < 1 for xi, ai in zip(x, a)):
        raise NoConvergenceError("x is not congruent to a modulo the uniformizer")
    fixed = dict(zip(x_vars, x))
    restricted = [p.substitute(fixed) for p in polys]
    reps, iters = _newton(restricted, y_vars, b, ctx, "implicit_solve")
    return _finish_system(polys, system.variables, y_vars, fixed, reps, b, ctx, iters,
                          f"F(x, g(x)) = 0 modulo {v.uniformizer}^{n}")
