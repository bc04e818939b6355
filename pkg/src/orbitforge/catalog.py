"""Canonical worked objects shared by tests, demos and batch scenarios.

Everything here is exact: the degenerating sextic whose orbit closure is
walked in two one-parameter steps, and the cubic family degenerating to a
conic plus a line which drives the descendant construction.  Keeping these
in one place pins the coefficients that the golden scenarios assert against.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .forms import HomogeneousForm
from .poly import Poly, parse_poly
from .scalars import GaussianRational, ONE, ZERO, gr

X, Y, Z = (HomogeneousForm.variable(3, i) for i in range(3))

#: the conic P = x z - y^2, rational with parametrisation (1, v, v^2)
CONIC = HomogeneousForm(3, 2, {(1, 0, 1): 1, (0, 2, 0): -1})
CONIC_PARAM: Tuple[Poly, ...] = (parse_poly("1"), parse_poly("v"), parse_poly("v^2"))

#: a cubic form with no special relation to the conic
CUBIC_G = HomogeneousForm(3, 3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1})


def line_through_origin_pencil(slope: GaussianRational) -> HomogeneousForm:
    """The line ``x - slope * y`` through the point [0:0:1]."""
    return HomogeneousForm(3, 1, {(1, 0, 0): 1, (0, 1, 0): -slope})


def degenerating_sextic(lambdas: Sequence = (0, 1, -1, 2, 3)) -> HomogeneousForm:
    """``z * prod(x - lambda_i y) + x^6 + y^6``: five branches through [0:0:1].

    Its limit under the inverse of ``diag(t, t, t^-2)`` is the union of the
    five pencil lines and the line at infinity.
    """
    q = HomogeneousForm.product(
        [line_through_origin_pencil(gr(l)) for l in lambdas])
    p = HomogeneousForm(3, 6, {(6, 0, 0): 1, (0, 6, 0): 1})
    return Z * q + p


def move_infinity_to(mu) -> List[List[GaussianRational]]:
    """Involution fixing every line through [0:0:1] and swapping the line at
    infinity with ``x - mu y = z`` (used between the two limit steps)."""
    mu = GaussianRational.coerce(mu)
    return [[ONE, ZERO, ZERO],
            [ZERO, ONE, ZERO],
            [ONE, -mu, -ONE]]


SEXTIC_WEIGHTS = (1, 1, -2)


def worked_cubic_family(transversal_line: str = "y") -> dict:
    """The cubic family ``F = P * L + t * G`` degenerating to conic + line.

    ``transversal_line='y'`` uses the line meeting the conic in two distinct
    points (the configuration whose descendant has an honest node);
    ``'z'`` gives the tangent-line variant used in the vanishing-order unit
    tests.  Returns the ``t``-graded terms and the marked-component data.
    """
    if transversal_line == "y":
        L = Y
    elif transversal_line == "z":
        L = Z
    else:
        raise ValueError("transversal_line must be 'y' or 'z'")
    terms = {0: CONIC * L, 1: CUBIC_G}
    return {
        "terms": terms,
        "degree": 3,
        "P": CONIC,
        "L": L,
        "param": CONIC_PARAM,
        "transversal": (ZERO, ZERO, ONE),
    }
