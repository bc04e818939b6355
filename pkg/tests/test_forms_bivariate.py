import pytest

from orbitforge.bivariate import (BivariateSeries, DegenerateTransversal,
                                  NotOnComponent, evaluate_form_on_series,
                                  implicit_series_solve, path_coordinates)
from orbitforge.forms import HomogeneousForm, monomial_exponents
from orbitforge.poly import Poly, RationalFunction, parse_poly
from orbitforge.scalars import gr


def form3(degree, coeffs):
    return HomogeneousForm(3, degree, coeffs)


# the running example: conic P = xz - y^2 with parametrisation (1, v, v^2)
P_CONIC = form3(2, {(1, 0, 1): 1, (0, 2, 0): -1})
B_PATH = [parse_poly("1"), parse_poly("v"), parse_poly("v^2")]


class TestForms:
    def test_monomial_order_graded_lex(self):
        exps = monomial_exponents(3, 2)
        assert exps == ((2, 0, 0), (1, 1, 0), (1, 0, 1),
                        (0, 2, 0), (0, 1, 1), (0, 0, 2))

    def test_product_and_divide(self):
        L = HomogeneousForm.variable(3, 2)  # z
        F = P_CONIC * L
        assert F.degree == 3
        assert F.divide_by(P_CONIC) == L
        assert F.divide_by(HomogeneousForm.variable(3, 0)) is None
        assert F.multiplicity_of_factor(P_CONIC) == 1
        assert (P_CONIC * P_CONIC).multiplicity_of_factor(P_CONIC) == 2

    def test_apply_matrix(self):
        # x <-> y swap
        M = [[gr(0), gr(1), gr(0)], [gr(1), gr(0), gr(0)], [gr(0), gr(0), gr(1)]]
        F = form3(2, {(2, 0, 0): 1})
        assert F.apply_matrix(M) == form3(2, {(0, 2, 0): 1})

    def test_restrict_to_path(self):
        assert P_CONIC.restrict_to_path(B_PATH).is_zero()
        z2 = form3(2, {(0, 0, 2): 1})
        assert z2.restrict_to_path(B_PATH) == parse_poly("v^4")

    def test_extremal_part(self):
        F = form3(2, {(1, 0, 1): 1, (0, 2, 0): -1, (2, 0, 0): 3})
        part, value = F.extremal_part([1, 0, -1], +1)
        assert value == 2
        assert part == form3(2, {(2, 0, 0): 3})
        part, value = F.extremal_part([1, 0, -1], -1)
        assert value == 0
        assert part == form3(2, {(1, 0, 1): 1, (0, 2, 0): -1})

    def test_proportional(self):
        F = form3(2, {(1, 0, 1): 2, (0, 2, 0): -2})
        assert F.proportional_to(P_CONIC)
        assert not F.proportional_to(form3(2, {(1, 0, 1): 1, (0, 2, 0): 1}))


class TestImplicitSolve:
    def test_linear_t_closed_form(self):
        """F = P + t*z^2 along (1, v, v^2 + u): t = -u/ z(path)^2 exactly."""
        terms = {0: P_CONIC, 1: form3(2, {(0, 0, 2): 1})}
        t = implicit_series_solve(terms, B_PATH, [0, 0, 1], K=6)
        # residual check is built in; verify the leading coefficient too:
        # P(path) = u, z(path)^2 = (v^2 + u)^2 -> t = -u/(v^2+u)^2
        lead = t.coefficient(1)
        assert lead == RationalFunction(parse_poly("-1"), parse_poly("v^4"))
        assert t.valuation == 1

    def test_cubic_family_residual(self):
        """F = P*z + t*(x^3+y^3+z^3): the solver certifies the residual."""
        G = form3(3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1})
        terms = {0: P_CONIC * HomogeneousForm.variable(3, 2), 1: G}
        t = implicit_series_solve(terms, B_PATH, [0, 0, 1], K=8)
        assert t.valuation == 1
        # first-order coefficient: -dF0/du / G = -(v^2 ... ) computed independently
        num = parse_poly("-v^2")
        den = parse_poly("1 + v^3 + v^6") + parse_poly("0")
        assert t.coefficient(1) == RationalFunction(num, den)

    def test_not_on_component(self):
        terms = {0: form3(2, {(2, 0, 0): 1}), 1: form3(2, {(0, 0, 2): 1})}
        with pytest.raises(NotOnComponent):
            implicit_series_solve(terms, B_PATH, [0, 0, 1], K=4)

    def test_degenerate_transversal(self):
        """F = P + t^2*z^2 has dF/dt = 0 at t = 0: multiplicity > 1."""
        terms = {0: P_CONIC, 2: form3(2, {(0, 0, 2): 1})}
        with pytest.raises(DegenerateTransversal):
            implicit_series_solve(terms, B_PATH, [0, 0, 1], K=4)

    def test_evaluate_form_on_series(self):
        xs = path_coordinates(B_PATH, [0, 0, 1], K=5)
        s = evaluate_form_on_series(P_CONIC, xs, 5)
        # P(b(v) + u e_z) = u exactly
        assert s.valuation == 1
        assert s.coefficient(1) == RationalFunction.one("v")
        assert s.coefficient(2).is_zero()
