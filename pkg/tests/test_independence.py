from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adictop.errors import DomainError, NotIndependentError, PreconditionError
from adictop.independence import (factor_two_sided, independence_witness,
                                  non_gt_hensel_certificate, one_in_sum, problematic_instance,
                                  split_fraction, sum_basic_open, sum_topology)
from adictop.rings import MultiAdicInt, Neighborhood, SumNeighborhood, in_neighborhood

from oracles import PRIMES_50, in_padic_ball, vp

prime_pairs = st.lists(st.sampled_from(PRIMES_50), min_size=2, max_size=2, unique=True)


def nbhd(p, m, center=0):
    return Neighborhood(MultiAdicInt((p,)), Fraction(p) ** m, Fraction(center))


def test_one_in_sum_example():
    u, v = one_in_sum(nbhd(5, 2), nbhd(7, 1))
    assert (u, v) == (50, -49)
    assert one_in_sum(nbhd(3, 1), nbhd(5, 1)).certificate.is_valid()


def test_one_in_sum_trivial_and_overlap():
    dec = one_in_sum(nbhd(5, 0), nbhd(7, 1))
    assert (dec.u, dec.v) == (1, 0)
    with pytest.raises(NotIndependentError):
        one_in_sum(nbhd(5, 1), nbhd(5, 2))
    with pytest.raises(PreconditionError):
        one_in_sum(nbhd(5, 1, center=1), nbhd(7, 1))


@given(prime_pairs, st.integers(0, 6), st.integers(0, 6))
def test_one_in_sum_property(pq, m, n):
    p, q = pq
    u, v = one_in_sum(nbhd(p, m), nbhd(q, n))
    assert u + v == 1
    assert in_padic_ball(u, p, m) and in_padic_ball(v, q, n)


@given(prime_pairs, st.integers(0, 4), st.integers(0, 4), st.integers(-50, 50), st.integers(-50, 50))
def test_independence_witness_property(pq, m, n, c1, c2):
    p, q = pq
    x, cert = independence_witness(nbhd(p, m, c1), nbhd(q, n, c2))
    assert in_padic_ball(x, p, m, c1) and in_padic_ball(x, q, n, c2)
    assert cert.is_valid()


def test_independence_witness_examples():
    assert independence_witness(nbhd(5, 1, 1), nbhd(7, 1))[0] == 21
    assert independence_witness(nbhd(5, 1, 3), nbhd(3, 1, 2))[0] == 8
    assert independence_witness(nbhd(5, 1, 4), nbhd(5, 1, 4))[0] == 4


def test_split_examples():
    s = split_fraction((2, 3), Fraction(1, 6))
    assert tuple(s) == (Fraction(1, 2), Fraction(-1, 3))
    assert s.member_of() == {"Z_(3)": Fraction(1, 2), "Z_(2)": Fraction(-1, 3)}
    assert tuple(split_fraction((5, 7), Fraction(1, 35))) == (Fraction(-2, 5), Fraction(3, 7))
    assert tuple(split_fraction((5, 7), Fraction(12))) == (0, 12)
    with pytest.raises(DomainError):
        split_fraction((5, 5), Fraction(1, 5))


@given(prime_pairs, st.fractions(max_denominator=10 ** 5))
def test_split_property(pq, x):
    p, q = pq
    s = split_fraction((p, q), x)
    p_part, rest = s
    assert p_part + rest == x
    assert rest == 0 or vp(rest, p) >= 0
    assert p_part == 0 or vp(p_part, q) >= 0
    assert s.certificate.is_valid()


def test_sum_topology_and_basic_open():
    tau = sum_topology("p5", "p7")
    assert str(tau) == "sum(radic(Zloc(5)),radic(Zloc(7)))"
    w = sum_basic_open(nbhd(5, 1, 1), nbhd(7, 1))
    assert isinstance(w, SumNeighborhood) and in_neighborhood(w, 21)
    assert not in_neighborhood(w, 1)


def test_non_gt_hensel_example():
    c = non_gt_hensel_certificate(5, 7)
    assert (c.a, c.fa) == (21, 420)
    assert c.certificate.is_valid()
    assert non_gt_hensel_certificate(5, 7, 2, 1).a == 126
    assert non_gt_hensel_certificate(3, 5, 2, 1).a == 10


@given(prime_pairs, st.integers(1, 4), st.integers(1, 4))
@settings(max_examples=50)
def test_non_gt_hensel_property(pq, m, n):
    p, q = pq
    c = non_gt_hensel_certificate(p, q, m, n)
    a = c.a
    assert in_padic_ball(a, p, m, 1) and in_padic_ball(a, q, n, 0)
    assert in_padic_ball(c.fa, p, m) and in_padic_ball(c.fa, q, n)
    assert not in_padic_ball(a, p, m) and not in_padic_ball(1 - a, q, n)


def test_factor_two_sided():
    s, t = factor_two_sided(12, 2, 3)
    assert (s, t) == (3, 4)
    with pytest.raises(DomainError):
        factor_two_sided(0, 2, 3)


def test_problematic_instance():
    rep = problematic_instance(2, 3, samples=40, seed=4)
    assert rep["jacobson_radical"] == "6A"
    assert rep["saturation_certificate"].is_valid()
    assert rep["factorizations"][0] == {"x": "12", "s": "3", "t": "4"}
    u, v = (Fraction(rep["independence"][k]) for k in ("u", "v"))
    assert u + v == 1
    assert problematic_instance(5, 7, samples=5)["independence"]["u"] == "50"
