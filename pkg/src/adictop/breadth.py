"""Breadth: W_n-conditions, sums of principal submodules, independent families.

An integral domain R is a W_n-domain when every tuple ``a_0..a_n`` of
nonzero elements has an index i with ``a_i`` in the R-submodule generated
by the other entries.  The breadth is the least such n.  For multi-adic
rings membership in ``b_1 R + ... + b_k R`` is a valuation inequality at
each prime; for the differential ring it reduces to finite linear algebra
on Laurent jets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import certificate as ck
from .arith import INF, Poly, RationalFunction, T, Valuation, approximate, as_element, val
from .arith.local import _series_inverse
from .certificate import Certificate
from .errors import DomainError, PreconditionError, UnsupportedError
from .linalg import avoid_subspaces, in_span, intersect_spaces, solve
from .rings import (MULTI_ADIC, DifferentialRing, MultiAdicInt, MultiAdicPoly, contains,
                    normalize, random_element)

TADIC = Valuation.tadic()
ANSATZ_DEGREE = 8
TRUNCATION_BOUND = 16


# -- membership in a sum of principal submodules --------------------------

@dataclass
class Membership:
    """Verdict for ``a in b_1 R + ... + b_k R``."""

    ring: object
    a: object
    gens: list
    outcome: str                 # "yes" | "no" | "unknown"
    witnesses: list = field(default_factory=list)
    reason: dict = field(default_factory=dict)

    def certificate(self) -> Certificate:
        gens = " + ".join(f"({g})*R" for g in self.gens) or "{0}"
        if self.outcome == "yes":
            cert = Certificate(f"{self.a} lies in {gens} for R = {self.ring}")
            names = [f"r{j + 1}" for j in range(len(self.gens))]
            env = {"a": self.a}
            for j, (g, r) in enumerate(zip(self.gens, self.witnesses)):
                env[f"b{j + 1}"] = g
                env[names[j]] = r
                cert.witness(names[j], r)
            rhs = " + ".join(f"b{j + 1}*{names[j]}" for j in range(len(self.gens))) or "0"
            cert.check(ck.eq("a", rhs, env=env))
            for r in self.witnesses:
                cert.check(ck.contains(self.ring, r))
            return cert
        if self.outcome == "no":
            cert = Certificate(f"{self.a} does not lie in {gens} for R = {self.ring}")
            kind = self.reason.get("kind")
            if kind == "empty":
                cert.check(ck.ne(self.a, 0))
            elif kind == "valuation":
                v, bound = self.reason["valuation"], self.reason["bound"]
                cert.witness("valuation", str(v))
                cert.check(ck.val_lt(self.a, v, bound, note="val(a) below every generator"))
                for g in self.gens:
                    cert.check(ck.val_ge(g, v, bound))
            else:
                cert.witness("truncation", self.reason["bound"])
                cert.check(ck.sum_refutation(self.ring, self.a, self.gens, self.reason["bound"]))
            return cert
        cert = Certificate(f"membership of {self.a} undecided within the search bounds")
        cert.witness("bounds", dict(self.reason))
        return cert


def sum_ideal_membership(ring, a, gens, degree: int = ANSATZ_DEGREE,
                         bound: int = TRUNCATION_BOUND) -> Membership:
    """Decide (or semi-decide) ``a in b_1 R + ... + b_k R``."""
    ring = normalize(ring)
    a = as_element(a)
    gens = [as_element(g) for g in gens]
    if any(g == 0 for g in gens):
        raise DomainError("generators must be nonzero")
    if ring.ground == "Q":
        for x in [a] + gens:
            if isinstance(x, RationalFunction):
                raise DomainError(f"{x} is not in Q")
    if not gens:
        if a == 0:
            return Membership(ring, a, gens, "yes")
        return Membership(ring, a, gens, "no", reason={"kind": "empty"})
    if a == 0:
        return Membership(ring, a, gens, "yes", [Fraction(0)] * len(gens))
    if isinstance(ring, MULTI_ADIC):
        return _multiadic_membership(ring, a, gens)
    if isinstance(ring, DifferentialRing):
        return _differential_membership(ring, a, gens, degree, bound)
    raise UnsupportedError(f"sum membership over {ring}")


def _verify_yes(m: Membership) -> Membership:
    total = sum((g * r for g, r in zip(m.gens, m.witnesses)), Fraction(0))
    assert total == m.a, "witness identity failed"
    assert all(contains(m.ring, r) for r in m.witnesses), "witness outside R"
    return m


def _multiadic_membership(ring, a, gens):
    vals = {}
    for v in ring.valuations:
        va = val(a, v)
        mb = min(val(g, v) for g in gens)
        if va < mb:
            return Membership(ring, a, gens, "no",
                              reason={"kind": "valuation", "valuation": v, "bound": mb})
        vals[v] = (va, [val(g, v) for g in gens])
    # assign each valuation to a generator of least valuation there
    owner = {v: bv.index(min(bv)) for v, (_, bv) in vals.items()}
    need = max([1] + [b - va for va, bv in vals.values() for b in bv])
    units = []
    for j in range(len(gens) - 1):
        units.append(approximate([(v, 1 if owner[v] == j else 0, need) for v in ring.valuations]))
    units.append(1 - sum(units, Fraction(0)))
    wit = [as_element(e * a / g) for e, g in zip(units, gens)]
    return _verify_yes(Membership(ring, a, gens, "yes", wit))


def _rf(x):
    return x if isinstance(x, RationalFunction) else RationalFunction(Poly((x,)))


def laurent_coeffs(x, lo: int, hi: int) -> list:
    """Coefficients of t^lo .. t^(hi-1) in the t-adic Laurent expansion of x."""
    x = _rf(x)
    if x.is_zero() or hi <= lo:
        return [Fraction(0)] * max(hi - lo, 0)
    dn = x.den.order()
    den = x.den.shift(-dn)
    top = hi + dn
    ser = (x.num * _series_inverse(den, top)).truncate(top) if top > 0 else Poly()
    return [ser.coeff(i + dn) if i + dn >= 0 else Fraction(0) for i in range(lo, hi)]


def _jet_system(ring, a, gens, k):
    """Linear conditions for ``a = sum b_j r_j`` modulo t^k; returns (columns, solution)."""
    s = ring.jet_order
    lo = min([val(a, TADIC)] + [val(g, TADIC) for g in gens])
    cols = []
    for j, g in enumerate(gens):
        vg = val(g, TADIC)
        for i in [0] + list(range(s + 1, k - vg)):
            if vg + i < k:
                cols.append((j, i, laurent_coeffs(_rf(g) * T ** i, lo, k)))
    rhs = laurent_coeffs(a, lo, k)
    if not cols:
        return cols, (None if any(rhs) else [])
    mat = [[c[2][r] for c in cols] for r in range(k - lo)]
    return cols, solve(mat, rhs)


def _window_start(a, gens):
    return min([val(a, TADIC)] + [val(g, TADIC) for g in gens])


def truncated_infeasible(ring, a, gens, bound: int) -> bool:
    """True when ``a = sum b_j r_j`` has no solution modulo t^(lo + bound)."""
    ring = normalize(ring)
    if not isinstance(ring, DifferentialRing):
        raise UnsupportedError("truncated refutation is only for the differential ring")
    a = as_element(a)
    gens = [as_element(g) for g in gens]
    k = _window_start(a, gens) + bound
    return _jet_system(ring, a, gens, k)[1] is None


def _poly_ansatz(ring, a, gens, degree):
    s = ring.jet_order
    exps = [0] + list(range(s + 1, degree + 1))
    den = _rf(a).den
    for g in gens:
        den = den * _rf(g).den
    lhs = (_rf(a) * den).num
    gpolys = [(_rf(g) * den).num for g in gens]
    cols = [(j, i, gp * Poly.monomial(i)) for j, gp in enumerate(gpolys) for i in exps]
    top = max([lhs.degree] + [c[2].degree for c in cols]) + 1
    mat = [[c[2].coeff(r) for c in cols] for r in range(top)]
    sol = solve(mat, [lhs.coeff(r) for r in range(top)])
    if sol is None:
        return None
    wit = [Poly() for _ in gens]
    for (j, i, _), c in zip(cols, sol):
        wit[j] = wit[j] + Poly.monomial(i, c)
    return [as_element(w) for w in wit]


def _differential_membership(ring, a, gens, degree, bound):
    lo = _window_start(a, gens)
    m = min(val(g, TADIC) for g in gens)
    # agreement modulo t^(m+s+1) already forces membership: t^(s+1) O lies in R
    k = m + ring.jet_order + 1
    decidable = k - lo <= bound
    if decidable:
        cols, sol = _jet_system(ring, a, gens, k)
        if sol is None:
            b = next(b for b in range(1, k - lo + 1) if truncated_infeasible(ring, a, gens, b))
            return Membership(ring, a, gens, "no", reason={"kind": "truncation", "bound": b})
    for d in sorted({min(ring.jet_order + 1, degree), degree}):
        wit = _poly_ansatz(ring, a, gens, d)
        if wit is not None:
            return _verify_yes(Membership(ring, a, gens, "yes", wit))
    if not decidable:
        if truncated_infeasible(ring, a, gens, bound):
            b = next(b for b in range(1, bound + 1) if truncated_infeasible(ring, a, gens, b))
            return Membership(ring, a, gens, "no", reason={"kind": "truncation", "bound": b})
        return Membership(ring, a, gens, "unknown",
                          reason={"ansatz_degree": degree, "truncation": bound})
    # jet completion of the truncated solution
    wit = [Fraction(0)] * len(gens)
    for (j, i, _), c in zip(cols, sol):
        wit[j] = wit[j] + c * T ** i
    rem = a - sum((g * w for g, w in zip(gens, wit)), Fraction(0))
    j0 = min(range(len(gens)), key=lambda j: val(gens[j], TADIC))
    wit[j0] = wit[j0] + rem / gens[j0]
    return _verify_yes(Membership(ring, a, gens, "yes", [as_element(w) for w in wit]))


# -- W_n verdicts ---------------------------------------------------------

@dataclass
class WnVerdict:
    outcome: str                  # "holds" | "fails" | "unknown"
    elements: list
    index: int | None = None
    witnesses: list = field(default_factory=list)
    checks: list = field(default_factory=list)   # Membership per index

    def certificate(self, ring) -> Certificate:
        n = len(self.elements) - 1
        tup = ", ".join(str(x) for x in self.elements)
        if self.outcome == "holds":
            cert = self.checks[self.index].certificate()
            cert.claim = f"({tup}) satisfies the W_{n} condition at index {self.index} in {ring}"
            return cert
        cert = Certificate(f"({tup}) violates the W_{n} condition in {ring}"
                           if self.outcome == "fails" else
                           f"W_{n} condition for ({tup}) undecided in {ring}")
        for i, m in enumerate(self.checks):
            sub = m.certificate()
            cert.witness(f"index_{i}", sub.claim)
            cert.check(*sub.checks)
        return cert

    def to_dict(self) -> dict:
        return {"outcome": self.outcome, "elements": [str(x) for x in self.elements],
                "index": self.index, "witnesses": [str(w) for w in self.witnesses]}


def wn_check_tuple(ring, elements) -> WnVerdict:
    """Least index i with ``a_i`` in the submodule generated by the others."""
    elements = [as_element(x) for x in elements]
    if any(x == 0 for x in elements):
        raise DomainError("W_n tuples consist of nonzero elements")
    checks = []
    for i, a in enumerate(elements):
        others = elements[:i] + elements[i + 1:]
        m = sum_ideal_membership(ring, a, others)
        checks.append(m)
        if m.outcome == "yes":
            return WnVerdict("holds", elements, i, m.witnesses, checks)
    outcome = "unknown" if any(m.outcome == "unknown" for m in checks) else "fails"
    return WnVerdict(outcome, elements, None, [], checks)


# -- random tuples --------------------------------------------------------

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def random_nonzero(ring, rng: random.Random, spread: int = 3):
    """``+- prod pi^e * unit`` with ``e`` uniform in ``[-spread, spread]``."""
    ring = normalize(ring)
    if isinstance(ring, MultiAdicInt):
        x = Fraction(rng.choice((1, -1)))
        for p in ring.primes:
            x *= Fraction(p) ** rng.randint(-spread, spread)
        others = [q for q in _SMALL_PRIMES if q not in ring.primes]
        for q in rng.sample(others, 2):
            x *= Fraction(q) ** rng.randint(-1, 1)
        return x
    if isinstance(ring, MultiAdicPoly):
        x = RationalFunction(Poly((rng.choice((1, -1, 2, -3)),)))
        for q in ring.irreducibles:
            x = x * RationalFunction(q) ** rng.randint(-spread, spread)
        while True:
            u = RationalFunction(Poly((rng.randint(-4, 4), 1)))
            if all(val(u, v) == 0 for v in ring.valuations):
                return x * u ** rng.randint(-1, 1)
    if isinstance(ring, DifferentialRing):
        x = T ** rng.randint(-spread, spread)
        return x * (1 + rng.randint(-3, 3) * T + rng.randint(-3, 3) * T ** 2) \
            + rng.randint(0, 1) * T ** (rng.randint(-spread, spread))
    raise UnsupportedError(f"no random distribution for {ring}")


def _random_tuple(ring, n, rng):
    while True:
        tup = [random_nonzero(ring, rng) for _ in range(n + 1)]
        if all(x != 0 for x in tup):
            return tup


def curated_differential_suite(ring=None, size: int = 60, seed: int = 0):
    """Tuples ``(a_0, a_1, a_2)`` in which some entry is built from the others."""
    ring = ring or DifferentialRing()
    rng = random.Random(seed)
    suite = [[T, Fraction(1), T ** 2], [T, Fraction(1), 1 + T ** 2], [1 / T, T, Fraction(1)]]
    while len(suite) < size:
        b1, b2 = random_nonzero(ring, rng), random_nonzero(ring, rng)
        r1, r2 = random_element(ring, rng), random_element(ring, rng)
        a = b1 * r1 + b2 * r2
        if a == 0:
            continue
        tup = [a, b1, b2]
        rng.shuffle(tup)
        suite.append(tup)
    return suite


def wn_random_test(ring, n: int, samples: int = 1000, seed: int = 0, planted=(),
                   suite=None) -> dict:
    """Run the W_n check on random (or curated) tuples and tally the verdicts.

    Sample i is drawn from ``random.Random(f"{seed}:{i}")`` so reports do not
    depend on how samples are batched.
    """
    counts = {"holds": 0, "fails": 0, "unknown": 0}
    counterexamples = []
    tuples = [list(t) for t in planted]
    if suite is not None:
        tuples += [list(t) for t in suite]
    else:
        tuples += [_random_tuple(ring, n, random.Random(f"{seed}:{i}")) for i in range(samples)]
    for tup in tuples:
        if len(tup) != n + 1:
            raise DomainError(f"W_{n} tuples have {n + 1} entries")
        verdict = wn_check_tuple(ring, tup)
        counts[verdict.outcome] += 1
        if verdict.outcome == "fails":
            counterexamples.append({"tuple": [str(x) for x in tup],
                                    "certificate": verdict.certificate(ring).to_dict()})
    return {"ring": str(ring), "n": n, "verdicts": counts,
            "counterexamples": counterexamples, "seed": seed, "samples": len(tuples)}


# -- breadth of multi-adic rings ------------------------------------------

@dataclass
class BreadthResult:
    breadth: int
    non_w_tuple: list
    non_w_certificate: Certificate
    validation: dict


def breadth_multiadic(ring, samples: int = 10000, seed: int = 0) -> BreadthResult:
    """Breadth k of a ring with k maximal ideals, certified both ways."""
    ring = normalize(ring)
    if not isinstance(ring, MULTI_ADIC):
        raise PreconditionError(f"{ring} is not multi-adic")
    pis = [v.uniformizer for v in ring.valuations]
    k = len(pis)
    # complementary products: entry i is divisible by every uniformizer but the i-th
    tup = []
    for i in range(k):
        x = Fraction(1) if ring.ground == "Q" else RationalFunction(Poly((1,)))
        for j, p in enumerate(pis):
            if j != i:
                x = x * p
        tup.append(as_element(x))
    verdict = wn_check_tuple(ring, tup)
    if verdict.outcome != "fails":  # pragma: no cover - guarded by the valuation argument
        raise AssertionError("complementary products should violate W_(k-1)")
    validation = wn_random_test(ring, k, samples, seed)
    if validation["verdicts"]["holds"] != validation["samples"]:  # pragma: no cover
        raise AssertionError("a random tuple violated W_k")
    return BreadthResult(k, tup, verdict.certificate(ring), validation)


def valuation_ring_certificate(ring, pair) -> Certificate:
    """A pair (x, y) with neither x in yR nor y in xR, so R is not a valuation ring."""
    x, y = (as_element(e) for e in pair)
    m1 = sum_ideal_membership(ring, x, [y])
    m2 = sum_ideal_membership(ring, y, [x])
    if m1.outcome != "no" or m2.outcome != "no":
        raise PreconditionError(f"({x}, {y}) does not witness a non-valuation ring")
    cert = Certificate(f"{ring} is not a valuation ring: ({x}, {y}) are incomparable")
    cert.witness("pair", [x, y])
    cert.check(ck.contains(ring, x / y, expect=False, note="x not in yR"),
               ck.contains(ring, y / x, expect=False, note="y not in xR"))
    return cert


# -- independent families -------------------------------------------------

def _member(oracle, x) -> bool:
    if callable(oracle):
        return bool(oracle(x))
    from .rings import in_neighborhood

    return in_neighborhood(oracle, x)


def independent_family_check(oracles, witnesses) -> bool:
    """``witnesses`` maps each subset S of {1..n} (a frozenset) to ``a_S``."""
    n = len(oracles)
    for r in range(n + 1):
        for combo in combinations(range(1, n + 1), r):
            s = frozenset(combo)
            if s not in witnesses:
                return False
            a = witnesses[s]
            if any(_member(oracles[i - 1], a) != (i in s) for i in range(1, n + 1)):
                return False
    return True


def crt_family_witnesses(primes, exponents=None) -> dict:
    """Witnesses for ``V_i = p_i^(m_i) Z_(p_i)``: a_S in V_i exactly for i in S."""
    exponents = exponents or [1] * len(primes)
    out = {}
    n = len(primes)
    for r in range(n + 1):
        for combo in combinations(range(1, n + 1), r):
            cons = []
            for i, (p, m) in enumerate(zip(primes, exponents), start=1):
                v = Valuation.padic(p)
                cons.append((v, 0, m) if i in combo else (v, 1, 1))
            out[frozenset(combo)] = approximate(cons)
    return out


def _span_member(basis):
    return lambda x: in_span(x, basis)


def cover_rule_counterexample(dim: int, v_basis, vp_basis, w_bases):
    """A vector of V outside every W_i and outside V', or None when V' contains V.

    For proper W_i this decides ``V' ⊇ V ∖ (W_1 ∪ ... ∪ W_n)``, which
    therefore holds exactly when ``V' ⊇ V``.
    """
    v_basis = [list(b) for b in v_basis]
    if all(in_span(b, vp_basis) for b in v_basis):
        return None
    for w in w_bases:
        if all(in_span(b, w) for b in v_basis):
            raise PreconditionError("each W_i must be a proper subspace of V")
    return avoid_subspaces(dim, list(w_bases) + [vp_basis], basis=v_basis)


def extend_independent_family(dim: int, v_bases, witnesses, w_basis) -> dict:
    """Witnesses for ``V_1, ..., V_n, W`` given witnesses for ``V_1, ..., V_n``.

    Requires every ``a_S`` in W and W not containing ``V_1 ∩ ... ∩ V_n``.
    New witnesses: ``a_S`` itself for patterns containing W, and a vector of
    ``∩_{i in S} V_i`` avoiding W and the other ``V_i`` for the rest.
    """
    n = len(v_bases)
    oracles = [_span_member(b) for b in v_bases]
    if not independent_family_check(oracles, witnesses):
        raise PreconditionError("the given witnesses do not realize every pattern")
    if not all(in_span(a, w_basis) for a in witnesses.values()):
        raise PreconditionError("every a_S must lie in W")
    full = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    meet = full
    for b in v_bases:
        meet = intersect_spaces(meet, b, dim)
    if meet and all(in_span(x, w_basis) for x in meet):
        raise PreconditionError("W contains the intersection of the V_i")
    if not meet:
        raise PreconditionError("W contains the intersection of the V_i")
    out = {}
    for s, a in witnesses.items():
        out[s | {n + 1}] = a
        closure = full
        for i in s:
            closure = intersect_spaces(closure, v_bases[i - 1], dim)
        avoid = [v_bases[i - 1] for i in range(1, n + 1) if i not in s] + [w_basis]
        out[s] = avoid_subspaces(dim, avoid, basis=closure)
    assert independent_family_check(oracles + [_span_member(w_basis)], out)
    return out
