"""Exact Gaussian-rational scalars.

Every exact computation in the package runs over Q(i): complex numbers
``a + b*i`` whose real and imaginary parts are arbitrary-precision
rationals.  This is a field, it is closed under conjugation, and it is
large enough to hold every coefficient that appears in the worked
degenerations (hermitian adjoints need ``i``, exactness needs rationals).
Irrational inputs are out of scope by design.

Scalars are immutable and normalised on construction (``fractions.Fraction``
keeps numerator/denominator coprime with positive denominator), so equality
and hashing are structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rationalish = Union[int, Fraction]
Scalarish = Union["GaussianRational", int, Fraction]

_TERM_RE = re.compile(r"^([+-]?(?:\d+(?:/\d+)?)?)(\*?i)?$")


class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rationalish = 0, im: Rationalish = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def coerce(x: Scalarish) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        """Parse ``"p/q"``, ``"p/q+r/s*i"``, ``"i"``, ``"-3*i"`` and friends."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty scalar string")
        # split into signed terms
        terms = re.findall(r"[+-]?[^+-]+", s)
        re_part = Fraction(0)
        im_part = Fraction(0)
        for term in terms:
            m = _TERM_RE.match(term)
            if not m or (not m.group(1) and not m.group(2)):
                raise ValueError(f"bad scalar term {term!r} in {text!r}")
            coeff, imag = m.groups()
            if coeff in (None, "", "+", "-"):
                value = Fraction((coeff or "") + "1")
            else:
                value = Fraction(coeff)
            if imag:
                im_part += value
            else:
                re_part += value
        return GaussianRational(re_part, im_part)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: Scalarish) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: Scalarish) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalarish) -> "GaussianRational":
        return GaussianRational.coerce(other) - self

    def __mul__(self, other: Scalarish) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalarish) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other: Scalarish) -> "GaussianRational":
        return GaussianRational.coerce(other) / self

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            return GaussianRational(1) / self ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    # -- conversions ----------------------------------------------------

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def as_fraction(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    # -- protocol -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = f"{self.im}*i" if abs(self.im) != 1 else "i"
        if not self.re:
            return im if self.im > 0 else "-" + im
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{im}"

    def __repr__(self):
        return f"GaussianRational({self})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gr(re: Rationalish = 0, im: Rationalish = 0) -> GaussianRational:
    """Shorthand constructor used pervasively in tests and demos."""
    return GaussianRational(re, im)
