"""Exact linear algebra over any field with ``is_zero`` elements.

The routines run unchanged over Gaussian rationals and over univariate
rational functions; both are needed for the affine systems that compute
maximal extension orders.  Solving is Gauss-Jordan with exact division, and
an inconsistent system is a *result*, not an exception, because inconsistency
of the order-raising systems is what terminates those iterations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .poly import Poly, RationalFunction, poly_gcd
from .scalars import GaussianRational, ONE, ZERO

Matrix = List[List]
Vector = List


def _clone(rows: Sequence[Sequence]) -> Matrix:
    return [list(r) for r in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns (exact)."""
    m = _clone(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r] + m[r:], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


@dataclass(frozen=True)
class LinearSolution:
    """Outcome of an exact linear solve: a particular solution plus a
    nullspace basis, or a flagged inconsistency."""

    consistent: bool
    particular: Optional[Vector]
    nullspace: List[Vector]


def linear_solve_exact(amat: Sequence[Sequence], b: Sequence) -> LinearSolution:
    """Solve ``A x = b`` exactly, describing the full solution set."""
    if not amat:
        return LinearSolution(True, [], [])
    ncols = len(amat[0])
    zero = amat[0][0] - amat[0][0] if ncols else b[0] - b[0]
    if ncols == 0:
        ok = all(x.is_zero() for x in b)
        return LinearSolution(ok, [] if ok else None, [])
    aug = [list(row) + [bv] for row, bv in zip(amat, b)]
    red, pivots = rref(aug)
    # inconsistent iff a pivot lands in the augmented column
    if ncols in pivots:
        return LinearSolution(False, None, [])
    particular = [zero] * ncols
    for r, c in enumerate(pivots):
        particular[c] = red[r][ncols]
    pivot_set = set(pivots)
    null = []
    for fc in range(ncols):
        if fc in pivot_set:
            continue
        vec = [zero] * ncols
        vec[fc] = _unit_like(zero)
        for r, c in enumerate(pivots):
            vec[c] = zero - red[r][fc]
        null.append(vec)
    return LinearSolution(True, particular, null)


def _unit_like(zero):
    if isinstance(zero, GaussianRational):
        return ONE
    if isinstance(zero, RationalFunction):
        return RationalFunction.one(zero.var)
    if isinstance(zero, Poly):
        return Poly.one(zero.var)
    raise TypeError(f"no unit for {type(zero).__name__}")


def nullspace(rows: Sequence[Sequence]) -> List[Vector]:
    if not rows:
        return []
    zero = rows[0][0] - rows[0][0]
    return linear_solve_exact(rows, [zero] * len(rows)).nullspace


def det(rows: Sequence[Sequence]) -> GaussianRational:
    """Determinant by exact elimination (square matrices of field elements)."""
    n = len(rows)
    m = _clone(rows)
    if n == 0:
        return ONE
    result = _unit_like(m[0][0] - m[0][0])
    sign = 1
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            return m[0][0] - m[0][0]
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        result = result * m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                f = m[i][c] / inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    if sign < 0:
        result = -result
    return result


def invert_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Exact inverse of a square matrix of field elements."""
    n = len(rows)
    zero = rows[0][0] - rows[0][0]
    one = _unit_like(zero)
    aug = [list(rows[i]) + [one if j == i else zero for j in range(n)]
           for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red[:n]]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    zero = a[0][0] - a[0][0]
    out = []
    for i in range(len(a)):
        row = []
        for j in range(len(b[0])):
            acc = zero
            for k in range(len(b)):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a: Sequence[Sequence], v: Sequence) -> Vector:
    zero = a[0][0] - a[0][0]
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            acc = acc + x * y
        out.append(acc)
    return out


def same_column_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    """Whether two column families span the same subspace (exact)."""
    cols_a = [[row[j] for row in a] for j in range(len(a[0]))] if a and a[0] else []
    cols_b = [[row[j] for row in b] for j in range(len(b[0]))] if b and b[0] else []
    if not cols_a or not cols_b:
        return not cols_a and not cols_b
    ra = rank(cols_a)
    rb = rank(cols_b)
    return ra == rb == rank(cols_a + cols_b)


def limit_kernel(rows: Sequence[Sequence[Poly]], max_rounds: int = 1000
                 ) -> List[List[GaussianRational]]:
    """Limit at ``t = 0`` of the kernels of a polynomial matrix ``A(t)``.

    The kernel over the rational-function field is computed exactly, each
    basis vector is cleared to a primitive polynomial vector, and the family
    is saturated: whenever the values at 0 become dependent, the dependency
    is divided by ``t`` and the process repeats.  The result spans the limit
    of ``ker A(t)`` as ``t -> 0`` through generic ``t``.
    """
    if not rows:
        return []
    var = None
    for row in rows:
        for x in row:
            var = x.var
            break
        break
    rf_rows = [[RationalFunction(x) for x in row] for row in rows]
    basis = nullspace(rf_rows)
    if not basis:
        return []
    polyvecs: List[List[Poly]] = []
    for vec in basis:
        den = Poly.one(var)
        for x in vec:
            den = den * x.den // poly_gcd(den, x.den)
        pv = [(x.num * (den // x.den)) for x in vec]
        polyvecs.append(_primitive(pv))
    for _ in range(max_rounds):
        values = [[p.coefficient(0) for p in pv] for pv in polyvecs]
        deps = nullspace([list(col) for col in zip(*values)]) if values else []
        if not deps:
            return values
        c = deps[0]
        j = max(i for i, ci in enumerate(c) if not ci.is_zero())
        combo = [Poly.zero(var) for _ in polyvecs[0]]
        for ci, pv in zip(c, polyvecs):
            if not ci.is_zero():
                combo = [acc + p * ci for acc, p in zip(combo, pv)]
        t = Poly.x(var)
        combo = [p // t for p in combo]
        polyvecs[j] = _primitive(combo)
    raise RuntimeError("kernel limit saturation did not stabilise")


def _primitive(pv: List[Poly]) -> List[Poly]:
    g = Poly.zero(pv[0].var)
    for p in pv:
        g = poly_gcd(g, p) if not g.is_zero() else p
    if g.is_zero() or g.degree < 1:
        return pv
    return [p // g for p in pv]
