from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbitforge.linalg import (LinearSolution, det, invert_matrix, limit_kernel,
                               linear_solve_exact, mat_mul, nullspace, rank,
                               rref, same_column_span)
from orbitforge.poly import (Poly, RationalFunction, parse_poly, poly_gcd,
                             rational_roots, squarefree_decomposition)
from orbitforge.scalars import GaussianRational, gr


def P(text, var="v"):
    return parse_poly(text, var)


class TestPoly:
    def test_parse_and_arithmetic(self):
        p = P("1 - 2*v + v^3")
        q = P("v + 1")
        assert p * q == P("1 - v - 2*v^2 + v^3 + v^4")
        assert (p * q) // q == p

    def test_gcd(self):
        a = P("v^2 - 1") * P("v + 2")
        b = P("v^2 + 3*v + 2")  # (v+1)(v+2)
        assert poly_gcd(a, b) == P("v^2 + 3*v + 2")

    def test_eval_exact_and_numeric(self):
        p = P("v^2 + 1")
        assert p(gr(2)) == gr(5)
        assert abs(p(1j)) < 1e-15

    def test_squarefree_decomposition(self):
        f = P("v") ** 3 * P("v - 1") * P("v^2 + 1")
        parts = squarefree_decomposition(f)
        assert sorted((m, str(g)) for g, m in parts) == [
            (1, str((P("v - 1") * P("v^2 + 1")).monic())),
            (3, "v"),
        ]

    def test_rational_roots(self):
        f = P("v") ** 2 * P("2*v - 3") * P("v^2 + 1")
        roots = dict(rational_roots(f))
        assert roots == {Fraction(0): 2, Fraction(3, 2): 1}

    def test_rational_function_reduction(self):
        r = RationalFunction(P("v^2 - 1"), P("v - 1"))
        assert r.num == P("v + 1")
        assert r.den == P("1")
        assert (r - P("v + 1")).is_zero()


class TestLinalg:
    def test_identity_solve(self):
        A = [[gr(1), gr(0)], [gr(0), gr(1)]]
        sol = linear_solve_exact(A, [gr(5), gr(7)])
        assert sol.consistent
        assert sol.particular == [gr(5), gr(7)]
        assert sol.nullspace == []

    def test_rank_one_solve(self):
        A = [[gr(1), gr(1)], [gr(2), gr(2)]]
        sol = linear_solve_exact(A, [gr(1), gr(2)])
        assert sol.consistent
        # particular (1, 0), nullspace spanned by (1, -1) up to scale
        x, y = sol.particular
        assert x + y == gr(1)
        assert len(sol.nullspace) == 1
        a, b = sol.nullspace[0]
        assert a + b == gr(0) and not a.is_zero()

    def test_inconsistent_is_an_outcome(self):
        A = [[gr(1), gr(1)], [gr(1), gr(1)]]
        sol = linear_solve_exact(A, [gr(0), gr(1)])
        assert sol == LinearSolution(False, None, [])

    def test_det_and_inverse(self):
        A = [[gr(1), gr(2)], [gr(3), gr(4)]]
        assert det(A) == gr(-2)
        Ainv = invert_matrix(A)
        assert mat_mul(A, Ainv) == [[gr(1), gr(0)], [gr(0), gr(1)]]

    def test_same_column_span(self):
        A = [[gr(1), gr(0)], [gr(0), gr(1)], [gr(1), gr(1)]]
        B = [[gr(1), gr(1)], [gr(1), gr(-1)], [gr(2), gr(0)]]
        assert same_column_span(A, B)
        C = [[gr(1), gr(0)], [gr(0), gr(1)], [gr(0), gr(0)]]
        assert not same_column_span(A, C)

    @given(st.integers(min_value=0, max_value=3))
    @settings(max_examples=20, deadline=None)
    def test_random_rectangular_solve_residual(self, seed):
        """Exact residual A x - b = 0 and A n = 0 for nullspace vectors."""
        import random

        rng = random.Random(seed)
        A = [[gr(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
              for _ in range(7)] for _ in range(5)]
        xtrue = [gr(rng.randint(-3, 3)) for _ in range(7)]
        b = [sum((A[i][j] * xtrue[j] for j in range(7)), gr(0)) for i in range(5)]
        sol = linear_solve_exact(A, b)
        assert sol.consistent
        resid = [sum((A[i][j] * sol.particular[j] for j in range(7)), gr(0)) - b[i]
                 for i in range(5)]
        assert all(r.is_zero() for r in resid)
        for nv in sol.nullspace:
            img = [sum((A[i][j] * nv[j] for j in range(7)), gr(0)) for i in range(5)]
            assert all(r.is_zero() for r in img)

    def test_limit_kernel_saturation(self):
        # ker [1, -t] over C(t) is spanned by (t, 1); its limit at 0 is (0, 1),
        # not the naive evaluation of an unsaturated basis like (t, 1)*t.
        t = Poly.x("t")
        rows = [[Poly.one("t"), -t]]
        lim = limit_kernel(rows)
        assert len(lim) == 1
        v = lim[0]
        assert v[0] == gr(0) and not v[1].is_zero()

    def test_limit_kernel_needs_saturation(self):
        # kernel of [t, -t] is spanned by (1,1) for all t: limit is (1,1)
        t = Poly.x("t")
        rows = [[t, -t]]
        lim = limit_kernel(rows)
        assert len(lim) == 1
        a, b = lim[0]
        assert a == b and not a.is_zero()
