"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every criterion is checked against an oracle that does not share code with
the library (brute force, plain integer arithmetic or sympy), and against its
wall-clock limit.
"""

import json
import random
import time
from fractions import Fraction
from itertools import combinations, product

import pytest

from adictop.arith import LocalContext, T
from adictop.breadth import (breadth_multiadic, curated_differential_suite,
                             valuation_ring_certificate, wn_check_tuple, wn_random_test)
from adictop.certificate import Certificate
from adictop.curves import (Divisor, conic_sign_witness, ip_pattern_verify, pattern_from_conic,
                            prescribed_function, rr_space_p1)
from adictop.hensel import PolySystem, gt_hensel_probe, hensel_lift, implicit_solve
from adictop.independence import non_gt_hensel_certificate, one_in_sum, split_fraction
from adictop.rings import DifferentialRing, MultiAdicInt, Neighborhood, compare, parse_topology

from oracles import (ODD_PRIMES_30, PRIMES_50, brute_roots, crt_point, evaluate_int_poly,
                     in_differential_ring, in_padic_ball, oracle_rr_dim, order_at, residue, sym, t_order, vp)


@pytest.fixture
def criterion(capsys):
    """``with criterion(n, title, limit) as c:`` times the block and prints one line."""

    class Run:
        def __init__(self, n, title, limit):
            self.n, self.title, self.limit = n, title, limit
            self.failures, self.count, self.detail = [], 0, ""

        def expect(self, ok, what):
            self.count += 1
            if not ok:
                self.failures.append(what)

        def __enter__(self):
            self.start = time.perf_counter()
            return self

        def __exit__(self, exc_type, exc, tb):
            elapsed = time.perf_counter() - self.start
            ok = exc_type is None and not self.failures and elapsed < self.limit
            status = "PASS" if ok else "FAIL"
            note = f"; first failure: {self.failures[0]}" if self.failures else ""
            if exc_type is not None:
                note = f"; raised {exc_type.__name__}: {exc}"
            with capsys.disabled():
                print(f"\n{status} criterion {self.n} ({self.title}): {self.count} checks, "
                      f"{elapsed:.2f}s (limit {self.limit}s){self.detail}{note}")
            if exc_type is None:
                assert not self.failures, self.failures[:5]
                assert elapsed < self.limit, f"took {elapsed:.2f}s"
            return False

    return Run


# -- 1 ----------------------------------------------------------------------

def test_criterion_1_hensel_oracle_equivalence(criterion):
    rng = random.Random(1)
    with criterion(1, "Hensel lifting vs exhaustive root search", 10) as c:
        r = hensel_lift("X^2 - 6", 1, LocalContext.padic(5, 2))
        c.expect(residue(r.root, 25) == 16 == brute_roots([-6, 0, 1], 5, 2)[1], "sqrt 6 mod 25")
        r = gt_hensel_probe(2, [5], LocalContext.padic(5, 2))
        c.expect(residue(r.root, 25) == 4 and brute_roots([5, 1, 1], 5, 2) == [4, 20],
                 "probe root mod 25")
        for p, n in product((3, 5, 7), (1, 2, 3, 4)):
            m = p ** n
            for _ in range(12):
                coeffs = [rng.randint(-30, 30) for _ in range(rng.randint(3, 5))]
                roots_n = brute_roots(coeffs, p, n)
                deriv = [i * a for i, a in enumerate(coeffs)][1:]
                for a0 in range(p ** 2):
                    fa = int(evaluate_int_poly(coeffs, a0))
                    da = int(evaluate_int_poly(deriv, a0))
                    if da == 0 or fa == 0:
                        continue
                    e = vp(da, p)
                    if vp(fa, p) <= 2 * e or n <= 2 * e:
                        continue
                    if e == 0 and a0 >= p:
                        continue
                    res = hensel_lift(coeffs, a0, LocalContext.padic(p, n))
                    got = residue(res.root, m)
                    near = [x for x in roots_n if (x - a0) % p ** (e + 1) == 0]
                    c.expect(got in near, f"f={coeffs} a0={a0} p={p} N={n}")
                    c.expect(len({x % p ** (n - e) for x in near}) == 1,
                             f"non-unique lift f={coeffs} a0={a0} p={p} N={n}")
            for deg in (2, 3, 4):
                cs = [p * rng.randint(-5, 5) for _ in range(deg - 1)]
                res = gt_hensel_probe(deg, cs, LocalContext.padic(p, n))
                poly = cs + [1, 1]
                near = [x for x in brute_roots(poly, p, n) if (x + 1) % p == 0]
                c.expect(near == [residue(res.root, m)], f"probe n={deg} c={cs} p={p} N={n}")


# -- 2 ----------------------------------------------------------------------

def _random_system(rng, k):
    """Polynomials F_i = G_i - G_i(a, b) with a unit y-Jacobian at (a, b)."""
    names = ["x"] + [f"y{i}" for i in range(1, k + 1)]
    monos = [e for e in product(range(3), repeat=k + 1) if 0 < sum(e) <= 2]
    polys = []
    for _ in range(k):
        terms = {e: rng.randint(-4, 4) for e in rng.sample(monos, min(4, len(monos)))}
        polys.append(terms)
    return names, polys


def _eval(terms, point):
    total = Fraction(0)
    for e, coef in terms.items():
        term = Fraction(coef)
        for x, k in zip(point, e):
            term *= x ** k
        total += term
    return total


def _to_text(terms, names, shift):
    parts = [f"({coef})*" + "*".join(f"{v}^{k}" for v, k in zip(names, e) if k)
             for e, coef in terms.items() if coef]
    parts.append(f"-({shift})")
    return " + ".join(parts)


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def test_criterion_2_implicit_function_contract(criterion):
    rng = random.Random(2)
    done = {"p5": 0, "p7": 0, "t": 0}
    with criterion(2, "implicit function solutions satisfy F(x, g(x)) = 0", 30) as c:
        while sum(done.values()) < 200:
            where = rng.choice(sorted(done))
            k = rng.randint(1, 2)
            names, polys = _random_system(rng, k)
            a = rng.randint(-5, 5)
            b = [rng.randint(-5, 5) for _ in range(k)]
            base = [Fraction(a)] + [Fraction(x) for x in b]
            jac = []
            for terms in polys:
                row = []
                for j in range(1, k + 1):
                    d = Fraction(0)
                    for e, coef in terms.items():
                        if e[j]:
                            de = list(e)
                            de[j] -= 1
                            d += e[j] * _eval({tuple(de): coef}, base)
                    row.append(d)
                jac.append(row)
            dj = _det(jac)
            if dj == 0 or (where != "t" and vp(dj, int(where[1:])) != 0):
                continue
            n = rng.randint(1, 6)
            shifts = [_eval(terms, base) for terms in polys]
            system = PolySystem.from_text(
                "; ".join(_to_text(terms, names, s) for terms, s in zip(polys, shifts)), names)
            if where == "t":
                x = a + rng.randint(-3, 3) * T + rng.randint(-3, 3) * T ** 2
                ctx = LocalContext.tadic(n)
            else:
                p = int(where[1:])
                x = Fraction(a + p * rng.randint(-20, 20))
                ctx = LocalContext.padic(p, n)
            res = implicit_solve(system, ["x"], names[1:], ([a], b), [x], ctx)
            done[where] += 1
            if where == "t":
                point = [sym(str(x))] + [sym(str(y)) for y in res.values]
                for terms, s in zip(polys, shifts):
                    value = sum(coef * _sym_mono(point, e) for e, coef in terms.items()) - s
                    order = t_order(value)
                    c.expect(order is None or order >= n, f"t-adic system {polys} N={n}")
            else:
                point = [x] + list(res.values)
                for terms, s in zip(polys, shifts):
                    value = _eval(terms, point) - s
                    c.expect(value == 0 or vp(value, p) >= n, f"p={p} system {polys} N={n}")
                c.expect(all(y == 0 or vp(y, p) >= 0 for y in res.values), "non-integral root")
        c.detail = f"; systems per completion {done}"


def _sym_mono(point, e):
    out = 1
    for x, k in zip(point, e):
        out = out * x ** k
    return out


# -- 3 ----------------------------------------------------------------------

def _oracle_wn(primes, tup):
    for i, a in enumerate(tup):
        others = tup[:i] + tup[i + 1:]
        if all(vp(a, p) >= min(vp(b, p) for b in others) for p in primes):
            return True
    return False


def test_criterion_3_breadth(criterion):
    with criterion(3, "breadth k for k maximal ideals, W_1 for Z_(p)", 30) as c:
        for primes in ((3,), (5, 7), (2, 3, 5)):
            res = breadth_multiadic(MultiAdicInt(primes), samples=10_000, seed=3)
            k = len(primes)
            c.expect(res.breadth == k, f"breadth of {primes}")
            c.expect(res.non_w_certificate.is_valid(), f"non-W certificate for {primes}")
            if k > 1:
                c.expect(not _oracle_wn(primes, res.non_w_tuple), f"oracle W_{k - 1} {primes}")
            v = res.validation
            c.expect(v["samples"] == 10_000 and v["verdicts"]["holds"] == 10_000,
                     f"W_{k} validation {primes}")
        rng = random.Random(33)
        ring = MultiAdicInt((5,))
        for _ in range(10_000):
            pair = [rng.choice((1, -1)) * Fraction(5) ** rng.randint(-4, 4)
                    * Fraction(rng.randint(1, 99), rng.randint(1, 99)) for _ in range(2)]
            verdict = wn_check_tuple(ring, pair)
            c.expect(verdict.outcome == "holds" and _oracle_wn((5,), pair), f"W_1 pair {pair}")


# -- 4 ----------------------------------------------------------------------

def _in_r_oracle(x):
    if isinstance(x, Fraction):
        return in_differential_ring([x], [1])
    return in_differential_ring(x.num.coeffs, x.den.coeffs)


def test_criterion_4_differential_ring(criterion):
    ring = DifferentialRing()
    with criterion(4, "R_d is not a valuation ring; curated W_2 suite", 10) as c:
        cert = valuation_ring_certificate(ring, (T, 1))
        c.expect(cert.is_valid(), "valuation-ring certificate")
        c.expect(Certificate.from_dict(json.loads(cert.to_json())).is_valid(), "JSON re-check")
        c.expect(not _in_r_oracle(T) and not _in_r_oracle(1 / T) and _in_r_oracle(1 + T ** 2),
                 "oracle: t and 1/t both outside R")
        suite = curated_differential_suite(ring, size=60, seed=4)
        rep = wn_random_test(ring, 2, suite=suite)
        c.expect(rep["verdicts"]["fails"] == 0, f"W_2 failures {rep['verdicts']}")
        c.expect(rep["verdicts"]["holds"] == 60, f"undecided tuples {rep['verdicts']}")
        for tup in suite:
            verdict = wn_check_tuple(ring, tup)
            c.expect(verdict.certificate(ring).is_valid(), f"tuple {tup}")
            for w in verdict.witnesses:
                c.expect(_in_r_oracle(w), f"witness {w} outside R")
        c.detail = f"; verdicts {rep['verdicts']}"


# -- 5 ----------------------------------------------------------------------

def test_criterion_5_one_in_sum(criterion):
    with criterion(5, "1 in U + V for all p < q <= 50, m, n <= 5", 20) as c:
        dec = one_in_sum(Neighborhood(MultiAdicInt((5,)), Fraction(25)),
                         Neighborhood(MultiAdicInt((7,)), Fraction(7)))
        c.expect((dec.u, dec.v) == (50, -49), "(25 Z_(5), 7 Z_(7))")
        for p, q in combinations(PRIMES_50, 2):
            for m, n in product(range(1, 6), repeat=2):
                dec = one_in_sum(Neighborhood(MultiAdicInt((p,)), Fraction(p) ** m),
                                 Neighborhood(MultiAdicInt((q,)), Fraction(q) ** n))
                c.expect(dec.u + dec.v == 1 and in_padic_ball(dec.u, p, m)
                         and in_padic_ball(dec.v, q, n), f"{p}^{m}, {q}^{n}")
                c.expect(dec.certificate.is_valid(), f"certificate {p}^{m}, {q}^{n}")


# -- 6 ----------------------------------------------------------------------

def test_criterion_6_bezout_splitting(criterion):
    rng = random.Random(6)
    with criterion(6, "x = x1 + x2 with x1 in Z_(q), x2 in Z_(p)", 10) as c:
        s = split_fraction((2, 3), Fraction(1, 6))
        c.expect(tuple(s) == (Fraction(1, 2), Fraction(-1, 3)), "1/6 over (2, 3)")
        pairs = set()
        while len(pairs) < 10:
            pairs.add(tuple(rng.sample(PRIMES_50, 2)))
        for p, q in sorted(pairs):
            for _ in range(1000):
                den = p ** rng.randint(0, 4) * q ** rng.randint(0, 3) * rng.randint(1, 60)
                x = Fraction(rng.randint(-10 ** 6, 10 ** 6), den)
                s = split_fraction((p, q), x)
                x1, x2 = s
                c.expect(x1 + x2 == x, f"identity {x} ({p}, {q})")
                c.expect((x1 == 0 or vp(x1, q) >= 0) and (x2 == 0 or vp(x2, p) >= 0),
                         f"memberships {x} ({p}, {q})")
                c.expect(s.certificate.is_valid(), f"certificate {x}")


# -- 7 ----------------------------------------------------------------------

def test_criterion_7_non_gt_hensel(criterion):
    rng = random.Random(7)
    cases = [(5, 7, 1, 1)]
    while len(cases) < 21:
        p, q = rng.sample(PRIMES_50, 2)
        cases.append((p, q, rng.randint(1, 4), rng.randint(1, 4)))
    with criterion(7, "x^2 - x is not open in the sum topology", 10) as c:
        for p, q, m, n in cases:
            cert = non_gt_hensel_certificate(p, q, m, n)
            a, fa = cert.a, cert.fa
            if (p, q, m, n) == (5, 7, 1, 1):
                c.expect((a, fa) == (21, 420), "(5, 7, 1, 1) witness")
            c.expect(in_padic_ball(a, p, m, 1), "a in 1 - U1")
            c.expect(in_padic_ball(a, q, n, 0), "a in U2")
            c.expect(in_padic_ball(fa, p, m) and in_padic_ball(fa, q, n), "f(a) near 0")
            c.expect(not in_padic_ball(a, p, m), "a outside U1")
            c.expect(not in_padic_ball(1 - a, q, n), "1 - a outside U2")
            c.expect(fa == a * a - a == (1 - a) ** 2 - (1 - a), "f(a) = f(1 - a)")
            back = Certificate.from_dict(json.loads(cert.certificate.to_json()))
            c.expect(back.is_valid(), f"re-verify {(p, q, m, n)}")


# -- 8 ----------------------------------------------------------------------

POINTS = [-3, -2, -1, 0, 1, 2, 3, Fraction(1, 2), Fraction(-2, 3), "inf"]


def test_criterion_8_riemann_roch(criterion):
    import sympy

    from oracles import T as ST
    rng = random.Random(8)
    with criterion(8, "dim H^0(D) = max(0, deg D + 1); prescribed divisors", 30) as c:
        for _ in range(100):
            pts = rng.sample(POINTS, rng.randint(1, 5))
            while True:
                terms = [(p, rng.randint(-4, 5)) for p in pts]
                if sum(mm for _, mm in terms) <= 8:
                    break
            d = Divisor(tuple(terms))
            basis, cert = rr_space_p1(d)
            c.expect(len(basis) == max(0, d.degree + 1) == oracle_rr_dim(d.terms), f"dim {d}")
            c.expect(cert.is_valid(), f"certificate {d}")
        f, _ = prescribed_function([0, 1], 2)
        e = sym(str(f))
        num, den = sympy.fraction(sympy.cancel(e))
        zeros = [z for z in sympy.roots(sympy.Poly(num, ST))] + \
            (["inf"] if sympy.degree(den, ST) > sympy.degree(num, ST) else [])
        c.expect(max(sympy.degree(num, ST), sympy.degree(den, ST)) == 2, "degree 2")
        c.expect(len(zeros) == 2 and 2 in zeros, "zero at 2 plus exactly one more")
        for _ in range(50):
            pts = rng.sample(POINTS, rng.randint(2, 6))
            poles, zero = pts[:-1], pts[-1]
            f, cert = prescribed_function(poles, zero)
            e = sym(str(f))
            for p in poles:
                c.expect(order_at(e, p) == -1, f"pole at {p} for {poles}")
            c.expect(order_at(e, zero) == 1, f"zero at {zero}")
            num, den = sympy.fraction(sympy.cancel(e))
            c.expect(max(sympy.degree(num, ST), sympy.degree(den, ST)) == len(poles),
                     f"degree for {poles}")
            c.expect(cert.is_valid(), f"certificate {poles}, {zero}")


# -- 9 ----------------------------------------------------------------------

def test_criterion_9_ip_pattern(criterion):
    with criterion(9, "conic witness composed with the pattern verifier", 20) as c:
        a, b, _ = conic_sign_witness(2, 5, 7, (1, -1))
        c.expect((a, b) == (Fraction(35, 2), 6) and b * b == 1 + 2 * a, "(c=2, (+,-))")
        for p, q in product(ODD_PRIMES_30, repeat=2):
            if p == q:
                continue
            for signs in product((1, -1), repeat=2):
                for m, n in product((1, 2, 3), repeat=2):
                    spec, cand = pattern_from_conic(2, p, q, signs, (m, n))
                    c.expect(ip_pattern_verify(spec, cand), f"{p},{q},{signs},{m},{n}")
                    a, b = cand[0], cand[1] * signs[0]
                    c.expect(b * b == 1 + 2 * a and a != 0, "conic equation")
                    c.expect(residue(b - signs[0], p ** m) == 0
                             and residue(b - signs[1], q ** n) == 0, "sign congruences")


# -- 10 ---------------------------------------------------------------------

def test_criterion_10_trichotomy(criterion):
    with criterion(10, "compare() vs CRT oracle", 10) as c:
        supports = [(q,) for q in PRIMES_50] + list(combinations(PRIMES_50, 2))
        for p in PRIMES_50:
            tau0 = parse_topology(f"p{p}")
            for s in supports:
                forms = [f"radic(Zloc({','.join(map(str, s))}))"]
                if len(s) == 2:
                    forms.append(f"sum(p{s[0]},p{s[1]})")
                for text in forms:
                    res = compare(tau0, parse_topology(text))
                    if p in s:
                        c.expect(res.outcome == "finer-or-equal", f"p{p} vs {text}")
                    else:
                        c.expect(res.outcome == "independent", f"p{p} vs {text}")
                        x = Fraction(res.certificate.get("point"))
                        ref = crt_point(p, s)
                        q = 1
                        for r in s:
                            q *= r
                        c.expect(in_padic_ball(x, p, 1, 1) and all(in_padic_ball(x, r, 1)
                                                                   for r in s),
                                 f"point {x} for p{p} vs {text}")
                        c.expect((x - ref) % (p * q) == 0, f"CRT class of {x} vs {ref}")
                    c.expect(res.certificate.is_valid(), f"certificate p{p} vs {text}")
