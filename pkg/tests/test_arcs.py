import random
from fractions import Fraction

import pytest

from orbitforge.arcs import (ArcMatrix, InsufficientTruncation, SingularArc,
                             act_arc_on_form, binary_form_stability,
                             nu_of_arc, one_ps_limit, smith_factorize,
                             two_step_limit)
from orbitforge.catalog import (SEXTIC_WEIGHTS, degenerating_sextic,
                                line_through_origin_pencil, move_infinity_to)
from orbitforge.forms import HomogeneousForm
from orbitforge.scalars import gr
from orbitforge.series import TruncatedSeries, parse_series


def S(text, K=None):
    return parse_series(text, "t", K)


def arc(rows, K=None):
    return ArcMatrix([[S(e, K) for e in row] for row in rows])


def random_arc(rng: random.Random, q=3, K=16, val_range=(-2, 2)) -> ArcMatrix:
    """Seeded random arc with certified-invertible behaviour (retries the
    draw until the determinant is nonzero to truncation)."""
    while True:
        rows = []
        for i in range(q):
            row = []
            for j in range(q):
                val = rng.randint(*val_range)
                n = rng.randint(1, 4)
                coeffs = [gr(rng.randint(-4, 4)) for _ in range(n)]
                row.append(TruncatedSeries("t", val, coeffs, K))
            rows.append(row)
        g = ArcMatrix(rows)
        if not g.det_series().is_zero():
            return g


def random_holomorphic_unit(rng: random.Random, q=3, K=16) -> ArcMatrix:
    """Holomorphic matrix with exactly-invertible value at 0."""
    while True:
        H0 = [[gr(rng.randint(-3, 3)) for _ in range(q)] for _ in range(q)]
        from orbitforge.linalg import det
        if not det(H0).is_zero():
            break
    H1 = [[gr(rng.randint(-2, 2)) for _ in range(q)] for _ in range(q)]
    H2 = [[gr(rng.randint(-2, 2)) for _ in range(q)] for _ in range(q)]
    return ArcMatrix.holomorphic([H0, H1, H2], K)


class TestSmith:
    def test_identity(self):
        fac = smith_factorize(ArcMatrix.identity(3))
        assert fac.weights == (0, 0, 0)
        assert fac.verify(ArcMatrix.identity(3))

    def test_diagonal(self):
        g = arc([["t^2", "0"], ["0", "t^-1"]])
        fac = smith_factorize(g)
        assert fac.weights == (-1, 2)
        assert fac.trace == 1
        assert fac.norm == 2
        # U_1 = span(e_2) carries the weight -1
        flag = fac.flag
        assert flag.weights == (-1, 2)
        first = flag.subspaces[0]
        assert len(first) == 1
        v = first[0]
        assert v[0].is_zero() and not v[1].is_zero()

    def test_unipotent_mixing(self):
        # manual reduction oracle: the unit entry makes the form diag(1, t^2)
        g = arc([["t", "1"], ["0", "t"]], K=8)
        fac = smith_factorize(g)
        assert fac.weights == (0, 2)
        assert fac.verify(g)

    def test_singular_detected(self):
        g = arc([["t", "t"], ["t", "t"]], K=8)
        with pytest.raises(SingularArc):
            smith_factorize(g)

    def test_roundtrip_random(self):
        rng = random.Random(20240601)
        for _ in range(25):
            g = random_arc(rng)
            fac = smith_factorize(g)
            assert fac.verify(g)
            assert sum(fac.weights) == g.det_series().valuation

    def test_pivot_strategies_give_identical_flags(self):
        rng = random.Random(777)
        for _ in range(15):
            g = random_arc(rng)
            fa = smith_factorize(g, "first")
            fb = smith_factorize(g, "last")
            assert fa.weights == fb.weights
            assert fa.flag.same_flag(fb.flag)


class TestAction:
    def test_identity_action(self):
        F = HomogeneousForm(2, 2, {(2, 0): 1, (1, 1): 2})
        out = act_arc_on_form(ArcMatrix.identity(2), F)
        assert out[(2, 0)].matches(S("1"))
        assert out[(1, 1)].matches(S("2"))

    def test_diagonal_action(self):
        g = ArcMatrix.one_ps([1, -1])
        F = HomogeneousForm(2, 2, {(2, 0): 1})
        out = act_arc_on_form(g, F)
        assert list(out) == [(2, 0)]
        assert out[(2, 0)].matches(S("t^-2"))

    def test_unipotent_action(self):
        # g = [[1,0],[t^-1,1]] on x1^2: substitution by g^{-1} spreads terms
        g = arc([["1", "0"], ["t^-1", "1"]])
        F = HomogeneousForm(2, 2, {(0, 2): 1})
        out = act_arc_on_form(g, F)
        assert out[(2, 0)].matches(S("t^-2"))
        assert out[(1, 1)].matches(S("-2*t^-1"))
        assert out[(0, 2)].matches(S("1"))

    def test_nu_examples(self):
        g = ArcMatrix.one_ps([1, -1])
        bal = nu_of_arc(g, HomogeneousForm(2, 2, {(1, 1): 1}))
        assert (bal.nu, bal.norm, bal.psi) == (0, 1, Fraction(0))
        sq = nu_of_arc(g, HomogeneousForm(2, 2, {(2, 0): 1}))
        assert (sq.nu, sq.psi) == (2, Fraction(2))
        assert sq.trace == 0

    def test_nu_equivalence_invariance(self):
        """nu(h * g) = nu(g) for holomorphic h with h(0) invertible."""
        rng = random.Random(4242)
        F = HomogeneousForm(3, 2, {(2, 0, 0): 1, (0, 1, 1): -3})
        g = ArcMatrix.one_ps([2, -1, -1]).truncate(16)
        base = nu_of_arc(g, F)
        for _ in range(10):
            h = random_holomorphic_unit(rng)
            assert nu_of_arc(h @ g, F).nu == base.nu

    def test_psi_reparametrization_invariance(self):
        rng = random.Random(99)
        F = HomogeneousForm(3, 2, {(2, 0, 0): 1, (0, 2, 0): 2, (0, 0, 2): -1})
        g = random_holomorphic_unit(rng) @ ArcMatrix.one_ps([1, 0, -1]).truncate(16)
        inv = nu_of_arc(g, F)
        for k in (2, 3):
            invk = nu_of_arc(g.reparametrize(k), F)
            assert invk.psi == inv.psi


class TestLimits:
    def test_invariant_form(self):
        F = HomogeneousForm(2, 2, {(1, 1): 1})
        lim, nu = one_ps_limit(F, [1, -1], +1)
        assert lim == F and nu == 0

    def test_single_monomial(self):
        F = HomogeneousForm(2, 2, {(2, 0): 1})
        lim, nu = one_ps_limit(F, [-1, 1], +1)
        assert lim == F and nu == -2

    def test_sextic_first_step(self):
        """The minimum-weight part of the degenerating sextic is the five
        pencil lines together with the line at infinity."""
        F = degenerating_sextic()
        lim, nu = one_ps_limit(F, SEXTIC_WEIGHTS, -1)
        assert nu == 3
        expected = HomogeneousForm.variable(3, 2) * HomogeneousForm.product(
            [line_through_origin_pencil(gr(l)) for l in (0, 1, -1, 2, 3)])
        assert lim.proportional_to(expected)

    def test_two_step_concurrent_lines(self):
        """After moving the line at infinity into the pencil, the second
        limit is the product of six lines all vanishing at [0:0:1]."""
        F = degenerating_sextic()
        res = two_step_limit(F, SEXTIC_WEIGHTS, move_infinity_to(5),
                             SEXTIC_WEIGHTS, direction1=-1, direction2=+1)
        expected = HomogeneousForm.product(
            [line_through_origin_pencil(gr(l)) for l in (0, 1, -1, 2, 3, 5)])
        assert res.final_limit.proportional_to(expected)
        # every monomial is z-free: all six lines pass through [0:0:1]
        assert all(e[2] == 0 for e in res.final_limit.support())

    def test_two_step_degenerate_composition(self):
        F = degenerating_sextic()
        ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        res = two_step_limit(F, SEXTIC_WEIGHTS, ident, [0, 0, 0],
                             direction1=-1, direction2=+1)
        assert res.final_limit == res.first_limit
        assert res.first_limit == one_ps_limit(F, SEXTIC_WEIGHTS, -1)[0]

    def test_two_step_idempotence(self):
        rng = random.Random(11)
        coeffs = {}
        from orbitforge.forms import monomial_exponents
        for e in monomial_exponents(3, 4):
            c = rng.randint(-3, 3)
            if c:
                coeffs[e] = gr(c)
        F = HomogeneousForm(3, 4, coeffs)
        w = (1, 1, -2)
        res = two_step_limit(F, w, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], w)
        again, _ = one_ps_limit(res.final_limit, w, +1)
        assert again == res.final_limit


class TestBinaryStability:
    def F2(self, coeffs):
        return HomogeneousForm(2, sum(next(iter(coeffs))), coeffs)

    def test_four_distinct_lines_stable(self):
        # x0 x1 (x0 + x1)(x0 - x1)
        x0 = HomogeneousForm.variable(2, 0)
        x1 = HomogeneousForm.variable(2, 1)
        F = x0 * x1 * (x0 + x1) * (x0 - x1)
        rep = binary_form_stability(F)
        assert rep.verdict == "stable"
        assert rep.oracle_agreement is True

    def test_double_double_semistable(self):
        F = HomogeneousForm(2, 4, {(2, 2): 1})
        rep = binary_form_stability(F)
        assert rep.verdict == "strictly-semistable"
        assert rep.witness.nu == 0
        assert rep.oracle_agreement is True

    def test_triple_line_unstable(self):
        F = HomogeneousForm(2, 4, {(3, 1): 1})
        rep = binary_form_stability(F)
        assert rep.verdict == "unstable"
        assert rep.witness.weight == (-1, 1)
        assert rep.witness.nu == -2
        assert rep.oracle_agreement is True

    def test_irrational_roots_notice(self):
        # (x0^2 - 2 x1^2)^3: irrational double... sextic with multiplicity 3
        g = HomogeneousForm(2, 2, {(2, 0): 1, (0, 2): -2})
        F = g * g * g
        rep = binary_form_stability(F)
        assert rep.verdict == "strictly-semistable"
        assert rep.oracle_agreement is None
        assert rep.notices
