"""Homogeneous forms in several variables over Q(i).

Points of the projectivised space of degree-``d`` forms in three variables
are plane curves; the whole toolkit degenerates, factorises and integrates
such forms.  A form stores only its nonzero coefficients, keyed by exponent
vector.  Monomials are ordered graded-lex (leading variable major), and that
order is the coordinate order used by every vectorised operation, so results
are deterministic.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import linear_solve_exact
from .poly import Poly
from .scalars import GaussianRational, Scalarish, ZERO, ONE

Exponent = Tuple[int, ...]

_VARNAMES = {2: ("x0", "x1"), 3: ("x", "y", "z")}


@lru_cache(maxsize=None)
def monomial_exponents(nvars: int, degree: int) -> Tuple[Exponent, ...]:
    """All exponent vectors of total degree ``degree``, graded-lex descending."""
    if nvars == 1:
        return ((degree,),)
    out: List[Exponent] = []
    for first in range(degree, -1, -1):
        for rest in monomial_exponents(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


class DimensionMismatch(ValueError):
    """Raised when a form and an operator disagree about the variable count."""


class HomogeneousForm:
    """A homogeneous polynomial of fixed degree in ``nvars`` variables."""

    __slots__ = ("nvars", "degree", "coeffs")

    def __init__(self, nvars: int, degree: int,
                 coeffs: Dict[Exponent, Scalarish]):
        clean: Dict[Exponent, GaussianRational] = {}
        for exp, c in coeffs.items():
            exp = tuple(exp)
            if len(exp) != nvars or sum(exp) != degree or any(e < 0 for e in exp):
                raise ValueError(f"exponent {exp} does not belong to degree {degree} "
                                 f"in {nvars} variables")
            c = GaussianRational.coerce(c)
            if not c.is_zero():
                clean[exp] = clean.get(exp, ZERO) + c
        clean = {e: c for e, c in clean.items() if not c.is_zero()}
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("HomogeneousForm is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(nvars: int, degree: int) -> "HomogeneousForm":
        return HomogeneousForm(nvars, degree, {})

    @staticmethod
    def monomial(nvars: int, exp: Sequence[int], coeff: Scalarish = 1) -> "HomogeneousForm":
        return HomogeneousForm(nvars, sum(exp), {tuple(exp): coeff})

    @staticmethod
    def variable(nvars: int, i: int) -> "HomogeneousForm":
        exp = [0] * nvars
        exp[i] = 1
        return HomogeneousForm(nvars, 1, {tuple(exp): ONE})

    @staticmethod
    def linear(coeffs: Sequence[Scalarish]) -> "HomogeneousForm":
        n = len(coeffs)
        data = {}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            data[tuple(exp)] = c
        return HomogeneousForm(n, 1, data)

    @staticmethod
    def product(forms: Iterable["HomogeneousForm"]) -> "HomogeneousForm":
        forms = list(forms)
        if not forms:
            raise ValueError("empty product")
        acc = forms[0]
        for f in forms[1:]:
            acc = acc * f
        return acc

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> List[Exponent]:
        """Exponents with nonzero coefficient, graded-lex descending."""
        return sorted(self.coeffs, reverse=True)

    def coefficient(self, exp: Sequence[int]) -> GaussianRational:
        return self.coeffs.get(tuple(exp), ZERO)

    def coefficient_vector(self) -> List[GaussianRational]:
        """Coefficients in the global monomial order of this (nvars, degree)."""
        return [self.coeffs.get(e, ZERO) for e in monomial_exponents(self.nvars, self.degree)]

    @staticmethod
    def from_vector(nvars: int, degree: int, vec: Sequence[Scalarish]) -> "HomogeneousForm":
        exps = monomial_exponents(nvars, degree)
        if len(vec) != len(exps):
            raise ValueError("coefficient vector has wrong length")
        return HomogeneousForm(nvars, degree, dict(zip(exps, vec)))

    # -- ring operations --------------------------------------------------

    def _check(self, other: "HomogeneousForm", same_degree=True):
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
        if same_degree and self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        self._check(other)
        data = dict(self.coeffs)
        for e, c in other.coeffs.items():
            data[e] = data.get(e, ZERO) + c
        return HomogeneousForm(self.nvars, self.degree, data)

    def __neg__(self) -> "HomogeneousForm":
        return HomogeneousForm(self.nvars, self.degree,
                               {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return self + (-other)

    def scale(self, c: Scalarish) -> "HomogeneousForm":
        c = GaussianRational.coerce(c)
        return HomogeneousForm(self.nvars, self.degree,
                               {e: c * v for e, v in self.coeffs.items()})

    def __mul__(self, other) -> "HomogeneousForm":
        if isinstance(other, (int, GaussianRational)):
            return self.scale(other)
        self._check(other, same_degree=False)
        data: Dict[Exponent, GaussianRational] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                data[e] = data.get(e, ZERO) + c1 * c2
        return HomogeneousForm(self.nvars, self.degree + other.degree, data)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomogeneousForm":
        if n < 0:
            raise ValueError("negative power of a form")
        result = HomogeneousForm(self.nvars, 0, {(0,) * self.nvars: ONE})
        for _ in range(n):
            result = result * self
        return result

    # -- evaluation and substitution ---------------------------------------

    def __call__(self, point: Sequence):
        """Evaluate at a point; works for exact scalars, complexes, and any
        ring elements supporting ``+``, ``*`` and scalar multiplication."""
        if len(point) != self.nvars:
            raise DimensionMismatch("point has wrong length")
        numeric = all(isinstance(x, (int, float, complex)) for x in point)
        if numeric:
            acc = 0j
            for exp, c in self.coeffs.items():
                term = c.to_complex()
                for x, e in zip(point, exp):
                    term *= x ** e
                acc += term
            return acc
        acc = None
        for exp in self.support():
            c = self.coeffs[exp]
            term = None
            for x, e in zip(point, exp):
                if e:
                    p = x ** e
                    term = p if term is None else term * p
            term = c if term is None else term * c
            acc = term if acc is None else acc + term
        if acc is None:
            return ZERO
        return acc

    def substitute(self, values: Sequence) -> object:
        """Alias of ``__call__`` for ring-valued substitution."""
        return self(values)

    def apply_matrix(self, mat: Sequence[Sequence[Scalarish]]) -> "HomogeneousForm":
        """``F(M x)``: substitute each variable by the matching row of ``M x``."""
        n = self.nvars
        if len(mat) != n or any(len(row) != n for row in mat):
            raise DimensionMismatch("matrix size does not match variable count")
        lin = [HomogeneousForm.linear([GaussianRational.coerce(c) for c in row])
               for row in mat]
        acc = HomogeneousForm.zero(n, self.degree)
        for exp, c in self.coeffs.items():
            term = HomogeneousForm(n, 0, {(0,) * n: c})
            for L, e in zip(lin, exp):
                term = term * L ** e
            acc = acc + term
        return acc

    def partial(self, i: int) -> "HomogeneousForm":
        data: Dict[Exponent, GaussianRational] = {}
        for exp, c in self.coeffs.items():
            if exp[i] == 0:
                continue
            e = list(exp)
            e[i] -= 1
            data[tuple(e)] = c * exp[i]
        return HomogeneousForm(self.nvars, max(self.degree - 1, 0), data)

    # -- weight structure ---------------------------------------------------

    def weight_range(self, w: Sequence[int]) -> Tuple[int, int]:
        if self.is_zero():
            raise ValueError("zero form has no weights")
        vals = [sum(wi * ei for wi, ei in zip(w, exp)) for exp in self.coeffs]
        return min(vals), max(vals)

    def extremal_part(self, w: Sequence[int], direction: int = +1
                      ) -> Tuple["HomogeneousForm", int]:
        """Sub-form of monomials attaining the extremal weight ``<w, a>``.

        ``direction=+1`` keeps the maximum, ``-1`` the minimum; the attained
        value is returned alongside.
        """
        if self.is_zero():
            raise ValueError("zero form has no extremal part")
        scored = {exp: sum(wi * ei for wi, ei in zip(w, exp))
                  for exp in self.coeffs}
        target = max(scored.values()) if direction > 0 else min(scored.values())
        part = {e: self.coeffs[e] for e, s in scored.items() if s == target}
        return HomogeneousForm(self.nvars, self.degree, part), target

    # -- divisibility ---------------------------------------------------------

    def divide_by(self, divisor: "HomogeneousForm") -> Optional["HomogeneousForm"]:
        """Exact quotient ``self / divisor`` if it exists, else ``None``.

        Solved as a linear system in the unknown quotient coefficients; this
        is how component multiplicities in a central fibre are certified.
        """
        self._check(divisor, same_degree=False)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero form")
        qdeg = self.degree - divisor.degree
        if qdeg < 0:
            return None
        qexps = monomial_exponents(self.nvars, qdeg)
        rows_index = monomial_exponents(self.nvars, self.degree)
        row_pos = {e: i for i, e in enumerate(rows_index)}
        cols = []
        for qe in qexps:
            col = [ZERO] * len(rows_index)
            for de, dc in divisor.coeffs.items():
                e = tuple(a + b for a, b in zip(qe, de))
                col[row_pos[e]] = col[row_pos[e]] + dc
            cols.append(col)
        amat = [[cols[j][i] for j in range(len(cols))] for i in range(len(rows_index))]
        b = [self.coeffs.get(e, ZERO) for e in rows_index]
        sol = linear_solve_exact(amat, b)
        if not sol.consistent:
            return None
        return HomogeneousForm(self.nvars, qdeg, dict(zip(qexps, sol.particular)))

    def multiplicity_of_factor(self, factor: "HomogeneousForm", cap: int = 16) -> int:
        m = 0
        current = self
        while m < cap:
            q = current.divide_by(factor)
            if q is None:
                return m
            current = q
            m += 1
        return m

    def proportional_to(self, other: "HomogeneousForm") -> bool:
        """Projective equality: equal up to a nonzero scalar."""
        self._check(other)
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if set(self.coeffs) != set(other.coeffs):
            return False
        e0 = next(iter(self.coeffs))
        ratio = other.coeffs[e0] / self.coeffs[e0]
        return all(other.coeffs[e] == ratio * c for e, c in self.coeffs.items())

    # -- plane-curve specifics ---------------------------------------------

    def restrict_to_path(self, path: Sequence[Poly]) -> Poly:
        """Exact composition ``F(b(v))`` for a polynomial path ``b``."""
        if len(path) != self.nvars:
            raise DimensionMismatch("path has wrong length")
        var = path[0].var
        acc = Poly.zero(var)
        for exp, c in self.coeffs.items():
            term = Poly.constant(c, var)
            for p, e in zip(path, exp):
                if e:
                    term = term * p ** e
            acc = acc + term
        return acc

    def dehomogenized(self, keep: int = 0, var: str = "z") -> Poly:
        """For binary forms: ``f(z) = F(z, 1)`` (``keep=0``) as a univariate."""
        if self.nvars != 2:
            raise DimensionMismatch("dehomogenized expects a binary form")
        out = [ZERO] * (self.degree + 1)
        for exp, c in self.coeffs.items():
            out[exp[keep]] = c
        return Poly(out, var)

    # -- protocol --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return (self.nvars == other.nvars and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        names = _VARNAMES.get(self.nvars) or tuple(f"x{i}" for i in range(self.nvars))
        parts = []
        for exp in self.support():
            c = self.coeffs[exp]
            mono = "*".join(
                (names[i] if e == 1 else f"{names[i]}^{e}")
                for i, e in enumerate(exp) if e)
            cs = str(c)
            if "+" in cs[1:] or "-" in cs[1:] or "i" in cs:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"HomogeneousForm({self})"
