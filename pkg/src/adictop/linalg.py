"""Exact Gaussian elimination over Q (or Q(t)) and over residue rings of a completion."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .errors import SingularError


def _q(x):
    return Fraction(x) if isinstance(x, int) else x


def rref(rows):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = [[_q(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def solve(a, b):
    """One solution of ``a @ x = b`` or ``None`` if inconsistent."""
    if not a:
        return [] if all(v == 0 for v in b) else None
    n = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        x[c] = row[n]
    return x


def nullspace(a, ncols: int | None = None):
    """Basis of ``{x : a @ x = 0}``."""
    if not a:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    n = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(red, pivots):
            v[c] = -row[f]
        basis.append(v)
    return basis


def in_span(v, vectors) -> bool:
    vectors = [list(w) for w in vectors]
    if not any(x != 0 for x in v):
        return True
    return rank(vectors + [list(v)]) == rank(vectors)


def det(matrix):
    """Determinant by elimination over a field."""
    m = [[_q(x) for x in r] for r in matrix]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            result = -result
        result = result * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def local_solve(ctx, matrix, rhs, k: int):
    """Solve ``matrix @ x = rhs`` modulo pi^k with unit pivots.

    Entries are representatives in ``ctx``; a pivot column without a unit
    entry means the matrix is not invertible over the valuation ring.
    """
    n = len(matrix)
    m = [[ctx.reduce(x, k) for x in row] + [ctx.reduce(b, k)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        pr = next((i for i in range(c, n) if ctx.rep_val(m[i][c]) == 0), None)
        if pr is None:
            raise SingularError("Jacobian is not invertible modulo the uniformizer")
        m[c], m[pr] = m[pr], m[c]
        inv = ctx.inverse(m[c][c], k)
        m[c] = [ctx.reduce(x * inv, k) for x in m[c]]
        for i in range(n):
            if i != c:
                f = m[i][c]
                if f != 0:
                    m[i] = [ctx.reduce(a - f * b, k) for a, b in zip(m[i], m[c])]
    return [row[n] for row in m]


def _sweep_order(r: int):
    out = [0]
    for i in range(1, r + 1):
        out += [i, -i]
    return out


def integer_sweep(dim: int):
    """Nonzero integer vectors by max-norm; coordinates ordered 0, 1, -1, 2, -2, ..."""
    r = 1
    while True:
        for v in product(_sweep_order(r), repeat=dim):
            if max(abs(c) for c in v) == r:
                yield list(v)
        r += 1


def avoid_subspaces(dim: int, subspaces, basis=None):
    """A vector outside every given subspace.

    ``subspaces`` are spanning sets.  With ``basis`` the search runs over
    integer combinations of the basis vectors, so the result lies in their
    span; each subspace must then miss part of that span.
    """
    from .errors import PreconditionError

    if basis is None:
        basis = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    basis = [list(b) for b in basis]
    subspaces = [[list(w) for w in s] for s in subspaces]
    if not basis or rank(basis) == 0:
        raise PreconditionError("cannot avoid subspaces inside the zero space")
    for s in subspaces:
        if all(in_span(b, s) for b in basis):
            raise PreconditionError("a subspace contains the whole search space")
    for c in integer_sweep(len(basis)):
        v = [sum((ci * b[k] for ci, b in zip(c, basis)), Fraction(0)) for k in range(dim)]
        if all(x == 0 for x in v):
            continue
        if not any(in_span(v, s) for s in subspaces):
            return v


def intersect_spaces(u, w, dim: int):
    """Basis of span(u) ∩ span(w) inside Q^dim."""
    u, w = [list(x) for x in u], [list(x) for x in w]
    if not u or not w:
        return []
    # columns: u_1..u_a, -w_1..-w_b ; kernel gives common vectors
    cols = u + [[-x for x in v] for v in w]
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(dim)]
    out = []
    for coeffs in nullspace(mat, len(cols)):
        vec = [sum((coeffs[j] * u[j][i] for j in range(len(u))), Fraction(0)) for i in range(dim)]
        if any(vec) and not in_span(vec, out):
            out.append(vec)
    return out
