"""Self-contained, machine-checkable certificates.

A certificate is a claim, a list of named witnesses and a list of *checks*.
Every check is a small declarative statement (an identity, a valuation
bound, a ring membership, ...) written with element strings, so it can be
re-verified from its JSON form alone with exact arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .arith import INF, format_element, parse_element, parse_valuation, val
from .errors import AdictopError

SCHEMA = "adictop/1"


def _s(x) -> str:
    if isinstance(x, str):
        return x
    return format_element(x)


def _env(env):
    return {k: _s(v) for k, v in (env or {}).items()}


# -- check constructors ---------------------------------------------------

def eq(lhs, rhs, env=None, note=None) -> dict:
    return _with(dict(kind="eq", lhs=_s(lhs), rhs=_s(rhs), env=_env(env)), note)


def ne(lhs, rhs, env=None, note=None) -> dict:
    return _with(dict(kind="ne", lhs=_s(lhs), rhs=_s(rhs), env=_env(env)), note)


def val_ge(x, valuation, bound: int, env=None, note=None) -> dict:
    return _with(dict(kind="val_ge", x=_s(x), valuation=str(valuation), bound=int(bound),
                      env=_env(env)), note)


def val_eq(x, valuation, value, env=None, note=None) -> dict:
    value = "inf" if value is INF else int(value)
    return _with(dict(kind="val_eq", x=_s(x), valuation=str(valuation), value=value,
                      env=_env(env)), note)


def val_lt(x, valuation, bound: int, env=None, note=None) -> dict:
    return _with(dict(kind="val_lt", x=_s(x), valuation=str(valuation), bound=int(bound),
                      env=_env(env)), note)


def contains(ring, x, expect: bool = True, note=None) -> dict:
    return _with(dict(kind="contains", ring=str(ring), x=_s(x), expect=bool(expect)), note)


def in_neighborhood(ring, scale, center, x, expect: bool = True, note=None) -> dict:
    return _with(dict(kind="in_neighborhood", ring=str(ring), scale=_s(scale),
                      center=_s(center), x=_s(x), expect=bool(expect)), note)


def subring(small, big, note=None) -> dict:
    return _with(dict(kind="subring", small=str(small), big=str(big)), note)


def not_in_span(vector, span, note=None) -> dict:
    return _with(dict(kind="not_in_span", vector=[_s(v) for v in vector],
                      span=[[_s(v) for v in w] for w in span]), note)


def jacobian_unit(polys, variables, wrt, point, valuation, note=None) -> dict:
    return _with(dict(kind="jacobian_unit", polys=[str(p) for p in polys],
                      variables=list(variables), wrt=list(wrt), point=_env(point),
                      valuation=str(valuation)), note)


def fn_degree(f, degree: int, note=None) -> dict:
    return _with(dict(kind="fn_degree", f=_s(f), degree=int(degree)), note)


def den_divides(f, modulus, note=None) -> dict:
    return _with(dict(kind="den_divides", f=_s(f), modulus=_s(modulus)), note)


def sum_refutation(ring, a, gens, bound: int, note=None) -> dict:
    return _with(dict(kind="sum_refutation", ring=str(ring), a=_s(a),
                      gens=[_s(g) for g in gens], bound=int(bound)), note)


def _with(check, note):
    if not check.get("env"):
        check.pop("env", None)
    if note:
        check["note"] = note
    return check


# -- evaluation -----------------------------------------------------------

def _ev(text, env=None):
    return parse_element(text, env or None)


def run_check(check: dict) -> bool:
    """Re-evaluate one check from its serialized form."""
    kind = check["kind"]
    env = check.get("env")
    if kind == "eq":
        return _ev(check["lhs"], env) == _ev(check["rhs"], env)
    if kind == "ne":
        return _ev(check["lhs"], env) != _ev(check["rhs"], env)
    if kind in ("val_ge", "val_eq", "val_lt"):
        v = val(_ev(check["x"], env), parse_valuation(check["valuation"]))
        if kind == "val_ge":
            return v >= check["bound"]
        if kind == "val_lt":
            return v < check["bound"]
        expected = INF if check["value"] == "inf" else check["value"]
        return v == expected
    if kind == "contains":
        from .rings import contains as ring_contains, parse_ring

        return ring_contains(parse_ring(check["ring"]), _ev(check["x"])) == check["expect"]
    if kind == "in_neighborhood":
        from .rings import Neighborhood, in_neighborhood as nb, parse_ring

        n = Neighborhood(parse_ring(check["ring"]), _ev(check["scale"]), _ev(check["center"]))
        return nb(n, _ev(check["x"])) == check["expect"]
    if kind == "subring":
        from .rings import is_subring, parse_ring

        return is_subring(parse_ring(check["small"]), parse_ring(check["big"]))
    if kind == "not_in_span":
        from .linalg import in_span

        vec = [_ev(x) for x in check["vector"]]
        span = [[_ev(x) for x in w] for w in check["span"]]
        return not in_span(vec, span)
    if kind == "jacobian_unit":
        from .arith import parse_poly
        from .linalg import det

        polys = [parse_poly(p, check["variables"]) for p in check["polys"]]
        point = {k: _ev(v) for k, v in check["point"].items()}
        jac = [[p.diff(w).evaluate(point) for w in check["wrt"]] for p in polys]
        return val(det(jac), parse_valuation(check["valuation"])) == 0
    if kind == "fn_degree":
        from .arith import RationalFunction

        f = RationalFunction._coerce(_ev(check["f"]))
        return max(f.num.degree, f.den.degree) == check["degree"]
    if kind == "den_divides":
        from .arith import RationalFunction

        f = RationalFunction._coerce(_ev(check["f"]))
        m = RationalFunction._coerce(_ev(check["modulus"]))
        return m.is_polynomial() and (m.num % f.den).is_zero()
    if kind == "sum_refutation":
        from .breadth import truncated_infeasible
        from .rings import parse_ring

        return truncated_infeasible(parse_ring(check["ring"]), _ev(check["a"]),
                                    [_ev(g) for g in check["gens"]], check["bound"])
    raise AdictopError(f"unknown check kind {kind!r}")


class CertificateError(AdictopError, AssertionError):
    """A freshly built certificate failed its own re-verification."""

    exit_code = 1


@dataclass
class Certificate:
    claim: str
    witnesses: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    def witness(self, name: str, value) -> Certificate:
        if isinstance(value, (list, tuple)):
            value = [_s(v) if not isinstance(v, (int, list)) else v for v in value]
        elif not isinstance(value, (int, dict)):
            value = _s(value)
        self.witnesses.append({"name": name, "value": value})
        return self

    def check(self, *checks: dict) -> Certificate:
        """Append checks, evaluating each one immediately."""
        for c in checks:
            if not run_check(c):
                raise CertificateError(f"self-check failed for {self.claim!r}: {c}")
            self.checks.append(c)
        return self

    def verify(self) -> list[tuple[dict, bool]]:
        return [(c, run_check(c)) for c in self.checks]

    def is_valid(self) -> bool:
        return all(ok for _, ok in self.verify())

    def get(self, name: str):
        for w in self.witnesses:
            if w["name"] == name:
                return w["value"]
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"claim": self.claim, "witnesses": list(self.witnesses),
                "checks": list(self.checks)}

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        return cls(d["claim"], list(d.get("witnesses", [])), list(d.get("checks", [])))

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)
