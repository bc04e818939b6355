"""Series in a transversal variable with rational-function coefficients.

Valuations "at the generic point of a curve component" are computed by
expanding along a two-parameter path: ``v`` moves along the component, ``u``
moves off it transversally.  A :class:`BivariateSeries` is a truncated series
in ``u`` whose coefficients are exact rational functions of ``v``; its
``u``-valuation *is* the vanishing order at the generic point, decided by
exact zero-testing of numerator polynomials (never by sampling).

:func:`implicit_series_solve` inverts a family equation ``F(x, t) = 0`` along
such a path, producing ``t`` as a series in ``u`` with ``t(v, 0) = 0``.
Newton iteration doubles the certified order each step; only the
multiplicity-one branch (integer exponents) is supported.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .forms import HomogeneousForm
from .poly import Poly, RationalFunction
from .scalars import GaussianRational


class ZeroBivariate(ZeroDivisionError):
    """Inverting a bivariate series that is zero to truncation."""


class NotOnComponent(ValueError):
    """The path does not lie on the central fibre at ``u = 0``."""


class DegenerateTransversal(ValueError):
    """The equation is not solvable for ``t`` to first order along the path
    (the component meets the family with multiplicity > 1)."""


class TruncationExceeded(RuntimeError):
    """A vanishing order could not be certified within the truncation."""


class BivariateSeries:
    """Truncated series ``sum_k c_k(v) u^k`` with ``c_k`` rational in ``v``."""

    __slots__ = ("val", "coeffs", "K")

    def __init__(self, val: int, coeffs: Sequence, K: int):
        cs = [RationalFunction.coerce(c) for c in coeffs]
        while cs and cs[0].is_zero():
            cs.pop(0)
            val += 1
        if cs and val + len(cs) - 1 > K:
            cs = cs[:K - val + 1]
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            val = 0
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "K", K)

    def __setattr__(self, name, value):
        raise AttributeError("BivariateSeries is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(K: int) -> "BivariateSeries":
        return BivariateSeries(0, (), K)

    @staticmethod
    def constant(c, K: int) -> "BivariateSeries":
        return BivariateSeries(0, (RationalFunction.coerce(c),), K)

    @staticmethod
    def from_poly_in_u(coeffs: Sequence, K: int) -> "BivariateSeries":
        """Coefficients ``c_0..c_n`` of a polynomial in ``u`` (exact input)."""
        return BivariateSeries(0, coeffs, K)

    @staticmethod
    def u_monomial(k: int, c, K: int) -> "BivariateSeries":
        return BivariateSeries(k, (RationalFunction.coerce(c),), K)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> int:
        if not self.coeffs:
            raise ZeroBivariate(f"series is zero to truncation (K={self.K})")
        return self.val

    def valuation_bound(self) -> int:
        return self.val if self.coeffs else self.K + 1

    def coefficient(self, k: int) -> RationalFunction:
        if k > self.K:
            raise ValueError(f"coefficient of u^{k} not certified (K={self.K})")
        i = k - self.val
        if not self.coeffs or i < 0 or i >= len(self.coeffs):
            return RationalFunction.zero()
        return self.coeffs[i]

    def items(self):
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                yield self.val + i, c

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "BivariateSeries":
        if not isinstance(other, BivariateSeries):
            other = BivariateSeries.constant(other, self.K)
        K = min(self.K, other.K)
        if not self.coeffs and not other.coeffs:
            return BivariateSeries.zero(K)
        los = [x.val for x in (self, other) if x.coeffs]
        lo = min(los)
        hi = min(max(x.val + len(x.coeffs) - 1 for x in (self, other) if x.coeffs), K)
        out = [RationalFunction.zero() for _ in range(hi - lo + 1)]
        for x in (self, other):
            for e, c in x.items():
                if e <= hi:
                    out[e - lo] = out[e - lo] + c
        return BivariateSeries(lo, out, K)

    __radd__ = __add__

    def __neg__(self) -> "BivariateSeries":
        return BivariateSeries(self.val, [-c for c in self.coeffs], self.K)

    def __sub__(self, other) -> "BivariateSeries":
        if not isinstance(other, BivariateSeries):
            other = BivariateSeries.constant(other, self.K)
        return self + (-other)

    def __rsub__(self, other) -> "BivariateSeries":
        return (-self) + other

    def scale(self, c) -> "BivariateSeries":
        c = RationalFunction.coerce(c)
        if c.is_zero():
            return BivariateSeries.zero(self.K)
        return BivariateSeries(self.val, [c * x for x in self.coeffs], self.K)

    def __mul__(self, other) -> "BivariateSeries":
        if not isinstance(other, BivariateSeries):
            return self.scale(other)
        K = min(self.K + other.valuation_bound(), other.K + self.valuation_bound())
        if not self.coeffs or not other.coeffs:
            return BivariateSeries.zero(K)
        lo = self.val + other.val
        n = min(len(self.coeffs) + len(other.coeffs) - 1, K - lo + 1)
        if n <= 0:
            return BivariateSeries.zero(K)
        out = [RationalFunction.zero() for _ in range(n)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(min(len(other.coeffs), n - i)):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BivariateSeries(lo, out, K)

    __rmul__ = __mul__

    def invert(self) -> "BivariateSeries":
        if not self.coeffs:
            raise ZeroBivariate(f"cannot invert zero-to-truncation series (K={self.K})")
        v = self.val
        K = self.K - 2 * v
        rel = self.K - v
        lead = self.coeffs[0]
        inv_lead = RationalFunction.one(lead.var) / lead
        out = [inv_lead] + [RationalFunction.zero() for _ in range(rel)]
        for i in range(1, rel + 1):
            acc = RationalFunction.zero()
            for j in range(1, min(i, len(self.coeffs) - 1) + 1):
                pj = self.coeffs[j]
                if not pj.is_zero():
                    acc = acc + pj * out[i - j]
            out[i] = -(inv_lead * acc)
        return BivariateSeries(-v, out, K)

    def __truediv__(self, other) -> "BivariateSeries":
        if not isinstance(other, BivariateSeries):
            return self.scale(RationalFunction.one("v") / RationalFunction.coerce(other))
        return self * other.invert()

    def __pow__(self, n: int) -> "BivariateSeries":
        if n < 0:
            return self.invert() ** (-n)
        big = self.K + abs(self.val) * (n + 1) + 8
        result = BivariateSeries.constant(1, big)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, K: int) -> "BivariateSeries":
        return BivariateSeries(self.val, self.coeffs, min(self.K, K))

    def shift(self, n: int) -> "BivariateSeries":
        return BivariateSeries(self.val + n, self.coeffs, self.K + n)

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return (self.val, self.coeffs, self.K) == (other.val, other.coeffs, other.K)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.items():
            base = "1" if e == 0 else ("u" if e == 1 else f"u^{e}")
            parts.append(f"({c})*{base}")
        return " + ".join(parts)

    def __repr__(self):
        return f"BivariateSeries({self}, K={self.K})"


def path_coordinates(base: Sequence[Poly], direction: Sequence, K: int
                     ) -> list[BivariateSeries]:
    """The path ``x(v, u) = b(v) + u * w`` as exact bivariate series."""
    out = []
    for b, w in zip(base, direction):
        coeffs = [RationalFunction(b)]
        w = GaussianRational.coerce(w)
        if not w.is_zero():
            coeffs.append(RationalFunction.coerce(w))
        out.append(BivariateSeries(0, coeffs, K))
    return out


def evaluate_form_on_series(form: HomogeneousForm, values: Sequence[BivariateSeries],
                            K: int) -> BivariateSeries:
    """Exact substitution of bivariate series into a form."""
    acc = BivariateSeries.zero(K)
    powers = [{0: BivariateSeries.constant(1, K)} for _ in values]
    for exp in form.support():
        c = form.coeffs[exp]
        term = BivariateSeries.constant(c, K)
        for i, e in enumerate(exp):
            if not e:
                continue
            if e not in powers[i]:
                powers[i][e] = (values[i] ** e).truncate(K)
            term = term * powers[i][e]
        acc = acc + term
    return acc.truncate(K)


class FamilyEquation:
    """A polynomial ``F(x, t) = sum_j t^j F_j(x)`` with form coefficients."""

    def __init__(self, terms: dict[int, HomogeneousForm]):
        self.terms = {j: f for j, f in terms.items() if not f.is_zero()}
        if not self.terms:
            raise ValueError("empty family equation")

    def evaluate(self, xs: Sequence[BivariateSeries], t: BivariateSeries,
                 K: int) -> BivariateSeries:
        acc = BivariateSeries.zero(K)
        tpow = {0: BivariateSeries.constant(1, K)}
        for j in sorted(self.terms):
            if j not in tpow:
                tpow[j] = (t ** j).truncate(K)
            fx = evaluate_form_on_series(self.terms[j], xs, K)
            acc = acc + tpow[j] * fx
        return acc.truncate(K)


def implicit_series_solve(terms: dict[int, HomogeneousForm],
                          base: Sequence[Poly], direction: Sequence,
                          K: int) -> BivariateSeries:
    """Solve ``F(x(v,u), t(v,u)) = 0`` for ``t`` with ``t(v, 0) = 0``.

    ``terms`` maps powers of ``t`` to form coefficients; the path is
    ``x(v,u) = base(v) + u*direction``.  Requires ``F(x(v,0), 0) = 0``
    identically in ``v`` and a first-order solvable transversal, i.e.
    ``dF/dt`` nonzero along the path at ``t = 0``.  The residual after
    substituting the result vanishes to order ``K`` in ``u``.
    """
    eq = FamilyEquation(terms)
    if 0 in eq.terms:
        on_fibre = eq.terms[0].restrict_to_path(list(base))
        if not on_fibre.is_zero():
            raise NotOnComponent(
                f"F(x(v,0), 0) = {on_fibre} does not vanish along the path")
    dfdt = {j - 1: f for j, f in eq.terms.items() if j >= 1}
    if not dfdt:
        raise DegenerateTransversal("equation has no t-dependence")
    d0 = dfdt.get(0)
    if d0 is None or d0.restrict_to_path(list(base)).is_zero():
        raise DegenerateTransversal(
            "dF/dt vanishes identically along the path at t = 0 "
            "(component multiplicity > 1; fractional exponents are out of scope)")
    deq = FamilyEquation({j: f.scale(j + 1) for j, f in dfdt.items()})

    xs = path_coordinates(list(base), list(direction), K)
    # Newton: each step doubles the accurate order of the candidate.  The
    # candidate is carried at full working truncation (its high coefficients
    # are provisional); the final residual check below is what certifies it.
    t_cur = BivariateSeries.zero(K)
    order = 1
    guard = 0
    while order <= K:
        guard += 1
        if guard > K + 8:
            raise TruncationExceeded("Newton iteration failed to make progress")
        res = eq.evaluate(xs, t_cur, K)
        dval = deq.evaluate(xs, t_cur, K)
        if res.is_zero():
            break
        if res.valuation < order:
            raise DegenerateTransversal(
                f"residual order {res.valuation} dropped below {order}")
        correction = res * dval.invert()
        updated = t_cur - correction
        t_cur = BivariateSeries(updated.val, updated.coeffs, K)
        order *= 2
    residual = eq.evaluate(xs, t_cur, K)
    if not residual.is_zero():
        raise TruncationExceeded(
            f"Newton iteration left residual of order {residual.valuation} <= K={K}")
    if not t_cur.is_zero() and t_cur.valuation < 1:
        raise DegenerateTransversal("solution does not satisfy t(v, 0) = 0")
    return t_cur
