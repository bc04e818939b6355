"""Dense univariate polynomials and rational functions over Q(i).

These are the coefficient rings for the two-variable expansions used when
computing vanishing orders along a marked curve component: series in the
transversal variable ``u`` carry coefficients that are rational functions of
the parameter ``v`` along the component.  Zero-testing is exact (a rational
function vanishes iff its reduced numerator is the zero polynomial), which is
what makes the extension-order linear systems deterministic.
"""

from __future__ import annotations

import re
from typing import Optional, Sequence

from .scalars import GaussianRational, Scalarish, ZERO, ONE


class Poly:
    """Dense polynomial ``c0 + c1*x + ... + cn*x^n`` over GaussianRational."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Sequence[Scalarish], var: str = "v"):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def zero(var: str = "v") -> "Poly":
        return Poly((), var)

    @staticmethod
    def one(var: str = "v") -> "Poly":
        return Poly((ONE,), var)

    @staticmethod
    def constant(c: Scalarish, var: str = "v") -> "Poly":
        return Poly((GaussianRational.coerce(c),), var)

    @staticmethod
    def x(var: str = "v") -> "Poly":
        return Poly((ZERO, ONE), var)

    @staticmethod
    def coerce(x, var: str = "v") -> "Poly":
        if isinstance(x, Poly):
            return x
        return Poly((GaussianRational.coerce(x),), var)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with the convention ``deg 0 = -1``."""
        return len(self.coeffs) - 1

    def leading_coefficient(self) -> GaussianRational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, i: int) -> GaussianRational:
        if i < 0 or i >= len(self.coeffs):
            return ZERO
        return self.coeffs[i]

    def _check_var(self, other: "Poly"):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other) -> "Poly":
        other = Poly.coerce(other, self.var)
        self._check_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coefficient(i) + other.coefficient(i) for i in range(n)],
                    self.var)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other, self.var))

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, GaussianRational)):
            c = GaussianRational.coerce(other)
            return Poly([c * x for x in self.coeffs], self.var)
        self._check_var(other)
        if not self.coeffs or not other.coeffs:
            return Poly.zero(self.var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result = Poly.one(self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check_var(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(self.var), self
        quo = [ZERO] * (dq + 1)
        lead = other.leading_coefficient()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree]
            if c.is_zero():
                continue
            q = c / lead
            quo[k] = q
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - q * b
        return Poly(quo, self.var), Poly(rem, self.var)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def divides(self, other: "Poly") -> bool:
        return other.divmod(self)[1].is_zero()

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (ONE / self.leading_coefficient())

    def derivative(self) -> "Poly":
        return Poly([self.coeffs[i] * i for i in range(1, len(self.coeffs))], self.var)

    def __call__(self, x):
        """Evaluate by Horner; ``x`` may be exact or a numeric complex."""
        if isinstance(x, (int, GaussianRational)):
            acc = ZERO
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c.to_complex()
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly.zero(inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.constant(c, inner.var)
        return acc

    def shift_var(self, var: str) -> "Poly":
        return Poly(self.coeffs, var)

    def __eq__(self, other):
        if isinstance(other, (int, GaussianRational)):
            other = Poly.constant(other, self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            if "+" in cs[1:] or "-" in cs[1:] or "i" in cs:
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                base = self.var if i == 1 else f"{self.var}^{i}"
                parts.append(base if cs == "1" else f"-{base}" if cs == "-1"
                             else f"{cs}*{base}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm over the field Q(i)."""
    a._check_var(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.var)
    return ((a * b) // poly_gcd(a, b)).monic()


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``f = c * prod f_i^i`` with the ``f_i`` squarefree and
    pairwise coprime.  Returns the nonconstant ``(f_i, i)`` pairs, monic."""
    if f.is_zero():
        raise ValueError("zero polynomial has no squarefree decomposition")
    f = f.monic()
    if f.degree < 1:
        return []
    df = f.derivative()
    g = poly_gcd(f, df)
    w = f // g
    out = []
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, g)
        fac = w // y
        if fac.degree > 0:
            out.append((fac.monic(), i))
        w = y
        g = g // y
        i += 1
    return out


def _fraction_divisor_candidates(f: Poly):
    """Rational root candidates p/q from the integerised coefficients."""
    from fractions import Fraction
    from math import lcm

    # use the real or imaginary part, whichever is nonzero
    for pick in (lambda c: c.re, lambda c: c.im):
        coeffs = [pick(c) for c in f.coeffs]
        if any(coeffs):
            break
    else:
        return []
    denom = lcm(*[c.denominator for c in coeffs]) if coeffs else 1
    ints = [int(c * denom) for c in coeffs]
    lo = 0
    while ints[lo] == 0:
        lo += 1
    a0 = abs(ints[lo])
    an = abs(ints[-1])

    def divisors(n):
        out = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.add(d)
                out.add(n // d)
            d += 1
        return out

    cands = {Fraction(0)} if lo > 0 or ints[0] == 0 else set()
    for p in divisors(a0):
        for q in divisors(an):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    return sorted(cands)


def rational_roots(f: Poly) -> list[tuple["Fraction", int]]:
    """All rational roots of ``f`` with multiplicities (exact).

    Gaussian-rational coefficients are allowed; a rational root must kill the
    real and imaginary parts simultaneously.  Roots outside Q (including
    properly complex ones) are not searched for.
    """
    from fractions import Fraction

    if f.is_zero():
        raise ValueError("every point is a root of the zero polynomial")
    roots = []
    for cand in _fraction_divisor_candidates(f):
        val = f(GaussianRational(cand))
        if not val.is_zero():
            continue
        mult = 0
        work = f
        lin = Poly([-cand, 1], f.var)
        while True:
            q, r = work.divmod(lin)
            if not r.is_zero():
                break
            work = q
            mult += 1
        roots.append((Fraction(cand), mult))
    return roots


_PTERM_RE = re.compile(r"\^(\d+)$")


def parse_poly(text: str, var: str = "v") -> Poly:
    """Parse ``"1 - 2*v + v^3"``-style strings (complex coefficients in parens)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return Poly.zero(var)
    terms, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur and not cur.endswith(("*", "^", "(")):
            terms.append(cur)
            cur = ch if ch == "-" else ""
            continue
        cur += ch
    if cur:
        terms.append(cur)
    coeffs = {}
    for term in terms:
        neg = term.startswith("-")
        if term.startswith(("+", "-")):
            term = term[1:]
        exp = 0
        if var in term:
            m = _PTERM_RE.search(term)
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
        c = GaussianRational.parse(coeff_text)
        if neg:
            c = -c
        coeffs[exp] = coeffs.get(exp, ZERO) + c
    out = [ZERO] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return Poly(out, var)


class RationalFunction:
    """Reduced fraction of two :class:`Poly` in the same variable.

    Normal form: the denominator is monic and coprime to the numerator; the
    zero function is ``0/1``.  ``is_zero`` is therefore an exact test.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Optional[Poly] = None):
        if den is None:
            den = Poly.one(num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Poly.one(num.var)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num // g
                den = den // g
            lead = den.leading_coefficient()
            if lead != ONE:
                inv = ONE / lead
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def var(self) -> str:
        return self.num.var

    @staticmethod
    def zero(var: str = "v") -> "RationalFunction":
        return RationalFunction(Poly.zero(var))

    @staticmethod
    def one(var: str = "v") -> "RationalFunction":
        return RationalFunction(Poly.one(var))

    @staticmethod
    def coerce(x, var: str = "v") -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Poly):
            return RationalFunction(x)
        return RationalFunction(Poly.constant(GaussianRational.coerce(x), var))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other) -> "RationalFunction":
        o = RationalFunction.coerce(other, self.var)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-RationalFunction.coerce(other, self.var))

    def __rsub__(self, other) -> "RationalFunction":
        return (-self) + other

    def __mul__(self, other) -> "RationalFunction":
        o = RationalFunction.coerce(other, self.var)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        o = RationalFunction.coerce(other, self.var)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other, self.var) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return (RationalFunction.one(self.var) / self) ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __call__(self, x):
        den = self.den(x)
        num = self.num(x)
        if isinstance(den, GaussianRational):
            return num / den
        return num / den

    def __eq__(self, other):
        if isinstance(other, (int, GaussianRational, Poly)):
            other = RationalFunction.coerce(other, self.var)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == Poly.one(self.var):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"
