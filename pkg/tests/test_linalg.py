from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from adictop.arith import LocalContext
from adictop.errors import PreconditionError
from adictop.linalg import (avoid_subspaces, det, in_span, intersect_spaces, local_solve,
                            nullspace, rank, solve)

matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@given(matrices)
@settings(max_examples=60)
def test_det_and_rank_match_sympy(m):
    assert det(m) == sympy.Matrix(m).det()
    assert rank(m) == sympy.Matrix(m).rank()


@given(matrices, st.lists(st.integers(-9, 9), min_size=4, max_size=4))
@settings(max_examples=60)
def test_solve_and_nullspace(m, b):
    n = len(m)
    b = b[:n]
    if det(m) != 0:
        x = solve(m, b)
        assert [sum(Fraction(r[j]) * x[j] for j in range(n)) for r in m] == b
    for v in nullspace(m, n):
        assert all(sum(r[j] * v[j] for j in range(n)) == 0 for r in m)


def test_local_solve_mod_prime_power():
    ctx = LocalContext.padic(5, 3)
    x = local_solve(ctx, [[2, 1], [1, 4]], [1, 2], 3)
    assert [(2 * x[0] + x[1]) % 125, (x[0] + 4 * x[1]) % 125] == [1, 2]


def test_subspace_helpers():
    e1, e2, e3 = [1, 0, 0], [0, 1, 0], [0, 0, 1]
    meet = intersect_spaces([e1, e2], [e2, e3], 3)
    assert len(meet) == 1 and in_span(e2, meet)
    v = avoid_subspaces(3, [[e1, e2], [e2, e3], [[1, 1, 0], e3]])
    assert not any(in_span(v, s) for s in ([e1, e2], [e2, e3], [[1, 1, 0], e3]))
    with pytest.raises(PreconditionError):
        avoid_subspaces(2, [[[1, 0], [0, 1]]])
