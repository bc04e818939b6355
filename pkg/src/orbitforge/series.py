"""Truncated Laurent series with certified truncation orders.

A :class:`TruncatedSeries` stores exact Gaussian-rational coefficients for
the exponents ``val .. K`` of a Laurent series in one variable.  ``K`` is the
*certified* order: every arithmetic operation computes the order up to which
its output provably agrees with the exact result and never reports
coefficients beyond it.  The bookkeeping is pessimistic-correct:

* ``a + b`` is certified to ``min(Ka, Kb)``;
* ``a * b`` is certified to ``min(Ka + val(b), Kb + val(a))``;
* ``1 / a`` has valuation ``-val(a)`` and is certified to ``Ka - 2*val(a)``.

A series that is zero as far as its truncation can certify ("zero to
truncation") has unknown valuation ``> K``; this case is threaded through the
arithmetic explicitly.  ``K = None`` marks an exact (finitely supported)
series such as a monomial, for which no information is ever lost.
"""

from __future__ import annotations

import re
from typing import Optional, Sequence

from .scalars import GaussianRational, Scalarish, ZERO, ONE


class ZeroSeries(ZeroDivisionError):
    """Raised when inverting (or dividing by) a series that is zero to truncation."""


def _kmin(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _kadd(k: Optional[int], n) -> Optional[int]:
    if k is None or n is None:
        return None
    return k + n


class TruncatedSeries:
    """Laurent series in one variable, exact up to a certified order."""

    __slots__ = ("var", "val", "coeffs", "K")

    def __init__(self, var: str, val: int, coeffs: Sequence[Scalarish],
                 K: Optional[int] = None):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        # strip leading and trailing zeros; leading strip moves the valuation
        while cs and cs[0].is_zero():
            cs.pop(0)
            val += 1
        while cs and cs[-1].is_zero():
            cs.pop()
        if K is not None and cs:
            if val + len(cs) - 1 > K:
                cs = cs[:K - val + 1]
                while cs and cs[-1].is_zero():
                    cs.pop()
        if not cs:
            val = 0
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "K", K)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(var: str = "t", K: Optional[int] = None) -> "TruncatedSeries":
        return TruncatedSeries(var, 0, (), K)

    @staticmethod
    def one(var: str = "t", K: Optional[int] = None) -> "TruncatedSeries":
        return TruncatedSeries(var, 0, (ONE,), K)

    @staticmethod
    def monomial(var: str = "t", exp: int = 1, coeff: Scalarish = 1,
                 K: Optional[int] = None) -> "TruncatedSeries":
        return TruncatedSeries(var, exp, (coeff,), K)

    @staticmethod
    def constant(var: str, c: Scalarish, K: Optional[int] = None) -> "TruncatedSeries":
        return TruncatedSeries(var, 0, (GaussianRational.coerce(c),), K)

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        """True when no certified coefficient is nonzero."""
        return not self.coeffs

    @property
    def valuation(self) -> int:
        """Exponent of the leading certified nonzero coefficient."""
        if not self.coeffs:
            raise ZeroSeries(f"series is zero to truncation (K={self.K})")
        return self.val

    def valuation_bound(self) -> Optional[int]:
        """A lower bound on the valuation: exact for nonzero series, ``K+1``
        for a zero-to-truncation series, ``None`` (= +inf) for exact zero."""
        if self.coeffs:
            return self.val
        return None if self.K is None else self.K + 1

    def coefficient(self, exp: int) -> GaussianRational:
        """The coefficient of ``var**exp``; raises if ``exp`` is not certified."""
        if self.K is not None and exp > self.K:
            raise ValueError(f"coefficient of order {exp} not certified (K={self.K})")
        i = exp - self.val
        if not self.coeffs or i < 0 or i >= len(self.coeffs):
            return ZERO
        return self.coeffs[i]

    def leading_coefficient(self) -> GaussianRational:
        if not self.coeffs:
            raise ZeroSeries("zero series has no leading coefficient")
        return self.coeffs[0]

    def items(self):
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                yield self.val + i, c

    # -- arithmetic -----------------------------------------------------

    def _check_var(self, other: "TruncatedSeries"):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int,)) or isinstance(other, GaussianRational):
            other = TruncatedSeries.constant(self.var, other)
        self._check_var(other)
        K = _kmin(self.K, other.K)
        if not self.coeffs and not other.coeffs:
            return TruncatedSeries.zero(self.var, K)
        lo = min([v for v in (self.valuation_bound(), other.valuation_bound())
                  if v is not None] or [0])
        lo = min([x.val for x in (self, other) if x.coeffs] or [lo])
        hi = max([x.val + len(x.coeffs) - 1 for x in (self, other) if x.coeffs])
        if K is not None:
            hi = min(hi, K)
        out = [ZERO] * (hi - lo + 1)
        for x in (self, other):
            for e, c in x.items():
                if e <= hi:
                    out[e - lo] = out[e - lo] + c
        return TruncatedSeries(self.var, lo, out, K)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.var, self.val, [-c for c in self.coeffs], self.K)

    def __sub__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, GaussianRational)):
            other = TruncatedSeries.constant(self.var, other)
        return self + (-other)

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def scale(self, c: Scalarish) -> "TruncatedSeries":
        c = GaussianRational.coerce(c)
        if c.is_zero():
            return TruncatedSeries.zero(self.var, self.K)
        return TruncatedSeries(self.var, self.val, [c * x for x in self.coeffs], self.K)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, GaussianRational)):
            return self.scale(other)
        self._check_var(other)
        vb_self = self.valuation_bound()
        vb_other = other.valuation_bound()
        K = _kmin(_kadd(self.K, vb_other), _kadd(other.K, vb_self))
        if not self.coeffs or not other.coeffs:
            return TruncatedSeries.zero(self.var, K)
        lo = self.val + other.val
        n = len(self.coeffs) + len(other.coeffs) - 1
        if K is not None:
            n = min(n, K - lo + 1)
        out = [ZERO] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            jmax = min(len(other.coeffs), n - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.var, lo, out, K)

    __rmul__ = __mul__

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse; certified to ``K - 2*val``."""
        if not self.coeffs:
            raise ZeroSeries(f"cannot invert a series that is zero to truncation (K={self.K})")
        v = self.val
        if len(self.coeffs) == 1 and self.K is None:
            # exact monomial: the inverse is again an exact monomial
            return TruncatedSeries.monomial(self.var, -v,
                                            GaussianRational(1) / self.coeffs[0], None)
        K = None if self.K is None else self.K - 2 * v
        # relative length of the inverse: self is known to relative order K - v
        if self.K is None:
            rel = max(len(self.coeffs) * 8, 16)  # exact input: pick a finite window
            K = -v + rel
        else:
            rel = self.K - v
        lead = self.coeffs[0]
        inv_lead = GaussianRational(1) / lead
        out = [inv_lead] + [ZERO] * rel
        # out satisfies sum_{j<=i} p_j * out_{i-j} = [i == 0], p = relative coeffs
        for i in range(1, rel + 1):
            acc = ZERO
            for j in range(1, min(i, len(self.coeffs) - 1) + 1):
                pj = self.coeffs[j]
                if not pj.is_zero():
                    acc = acc + pj * out[i - j]
            out[i] = -inv_lead * acc
        return TruncatedSeries(self.var, -v, out, K)

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, GaussianRational)):
            return self.scale(GaussianRational(1) / GaussianRational.coerce(other))
        return self * other.invert()

    def shift(self, n: int) -> "TruncatedSeries":
        """Multiply by ``var**n`` (exact; the certified order shifts along)."""
        return TruncatedSeries(self.var, self.val + n, self.coeffs, _kadd(self.K, n))

    def truncate(self, K: int) -> "TruncatedSeries":
        newK = K if self.K is None else min(self.K, K)
        return TruncatedSeries(self.var, self.val, self.coeffs, newK)

    def substitute_power(self, k: int) -> "TruncatedSeries":
        """Replace the variable by its ``k``-th power (reparametrisation)."""
        if k < 1:
            raise ValueError("power must be >= 1")
        K = None if self.K is None else k * self.K + (k - 1)
        out = [ZERO] * (len(self.coeffs) * k)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return TruncatedSeries(self.var, self.val * k, out, K)

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            return self.invert() ** (-n)
        result = TruncatedSeries.one(self.var, None)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- comparison -----------------------------------------------------

    def matches(self, other: "TruncatedSeries") -> bool:
        """Equality of all coefficients both sides can certify."""
        self._check_var(other)
        K = _kmin(self.K, other.K)
        exps = {e for e, _ in self.items()} | {e for e, _ in other.items()}
        for e in exps:
            if K is not None and e > K:
                continue
            if self.coefficient(e) != other.coefficient(e):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.var == other.var and self.val == other.val
                and self.coeffs == other.coeffs and self.K == other.K)

    def __hash__(self):
        return hash((self.var, self.val, self.coeffs, self.K))

    # -- formatting -------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.items():
            cs = str(c)
            if "+" in cs[1:] or "-" in cs[1:] or "i" in cs:
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            else:
                base = self.var if e == 1 else f"{self.var}^{e}"
                parts.append(base if cs == "1" else f"-{base}" if cs == "-1"
                             else f"{cs}*{base}")
        text = " + ".join(parts).replace("+ -", "- ")
        return text

    def __repr__(self):
        K = "exact" if self.K is None else f"K={self.K}"
        return f"TruncatedSeries({self}, {K})"


_POW_RE = re.compile(r"\^(-?\d+)$")


def parse_series(text: str, var: str = "t", K: Optional[int] = None) -> TruncatedSeries:
    """Parse strings like ``"1 - t + 2*t^2"`` or ``"(1+i)*t^-1 + 1/2"``.

    Terms are separated by top-level ``+``/``-``; complex coefficients must be
    parenthesised.  This is the wire format used by the JSON interfaces.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty series string")
    if s == "0":
        return TruncatedSeries.zero(var, K)
    # split on +/- not inside parentheses
    terms, depth, cur = [], 0, ""
    for ch in s.replace(" ", ""):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur not in ("", "(") and not cur.endswith(("*", "^", "(")):
            terms.append(cur)
            cur = ch if ch == "-" else ""
            continue
        cur += ch
    if cur:
        terms.append(cur)
    total = TruncatedSeries.zero(var, K)
    for term in terms:
        neg = term.startswith("-")
        if term.startswith(("+", "-")):
            term = term[1:]
        exp = 0
        if var in term:
            m = _POW_RE.search(term)
            if m:
                exp = int(m.group(1))
                term = term[:m.start()]
            elif term.endswith(var):
                exp = 1
            else:
                raise ValueError(f"cannot parse term {term!r}")
            if not term.endswith(var):
                raise ValueError(f"cannot parse term {term!r}")
            term = term[:-len(var)].rstrip("*")
        coeff_text = term or "1"
        if coeff_text.startswith("(") and coeff_text.endswith(")"):
            coeff_text = coeff_text[1:-1]
        coeff = GaussianRational.parse(coeff_text)
        if neg:
            coeff = -coeff
        total = total + TruncatedSeries.monomial(var, exp, coeff, K)
    return total
