"""Sparse multivariate polynomials with coefficients in Q or Q(t)."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError
from .poly import Poly, RationalFunction


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, RationalFunction, Poly))


class MPoly:
    """Polynomial in named variables; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.variables):
                raise DomainError("exponent vector does not match the variables")
            if isinstance(c, int):
                c = Fraction(c)
            elif isinstance(c, Poly):
                c = RationalFunction(c)
            if c != 0:
                clean[exps] = clean.get(exps, 0) + c
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def constant(cls, variables, c) -> MPoly:
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def generator(cls, variables, name: str) -> MPoly:
        variables = tuple(variables)
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: Fraction(1)})

    @classmethod
    def univariate(cls, coeffs, name: str = "X") -> MPoly:
        """From a low-to-high coefficient list."""
        return cls((name,), {(i,): c for i, c in enumerate(coeffs)})

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.variables != self.variables:
                raise DomainError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if _is_scalar(other):
            return MPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.variables, {e: -c for e, c in self.terms.items()})

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
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MPoly(self.variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if not other.is_constant():
                raise DomainError("division by a non-constant polynomial")
            other = other.constant_term()
        if not _is_scalar(other) or other == 0:
            raise DomainError(f"cannot divide a polynomial by {other!r}")
        return MPoly(self.variables, {e: c / other for e, c in self.terms.items()})

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise DomainError("polynomials only take non-negative integer powers")
        result = MPoly.constant(self.variables, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- queries -------------------------------------------------------
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def diff(self, name: str) -> MPoly:
        i = self.variables.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MPoly(self.variables, terms)

    def evaluate(self, point, coeff_map=None, zero=0):
        """Evaluate at ``point`` (sequence aligned with ``variables`` or a dict).

        ``coeff_map`` converts each coefficient into the ring the point lives
        in (e.g. residues modulo p^N); by default coefficients are used as is.
        """
        if isinstance(point, dict):
            point = [point[v] for v in self.variables]
        acc = zero
        for e, c in self.terms.items():
            term = coeff_map(c) if coeff_map else c
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            acc = acc + term
        return acc

    def substitute(self, values: dict) -> MPoly:
        """Substitute ground values for some variables; returns a polynomial in the rest."""
        rest = tuple(v for v in self.variables if v not in values)
        idx = [self.variables.index(v) for v in rest]
        terms = {}
        for e, c in self.terms.items():
            coeff = c
            for v, k in zip(self.variables, e):
                if v in values and k:
                    coeff = coeff * values[v] ** k
            key = tuple(e[i] for i in idx)
            terms[key] = terms.get(key, 0) + coeff
        return MPoly(rest, terms)

    def coefficients(self):
        return list(self.terms.values())

    def to_json(self) -> list[dict]:
        from .parse import format_element

        return [{"coeff": format_element(c), "exponents": list(e)}
                for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, variables, monomials) -> MPoly:
        from .parse import parse_element

        terms = {}
        for m in monomials:
            c = m["coeff"]
            c = parse_element(c) if isinstance(c, str) else Fraction(c)
            e = tuple(m["exponents"])
            terms[e] = terms.get(e, 0) + c
        return cls(variables, terms)

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        from .parse import format_element

        if not self.terms:
            return "0"
        pieces = []
        for e, c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), kv[0])):
            mono = "*".join(v if k == 1 else f"{v}^{k}"
                            for v, k in zip(self.variables, e) if k)
            cs = format_element(c)
            if not mono:
                pieces.append(f"({cs})" if _needs_parens(cs) else cs)
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"({cs})*{mono}" if _needs_parens(cs) else f"{cs}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")


def _needs_parens(s: str) -> bool:
    return any(ch in s[1:] for ch in "+-/")
