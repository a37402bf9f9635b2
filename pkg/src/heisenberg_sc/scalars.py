"""Exact scalars in the Gaussian rationals Q(i).

Values are immutable and hashable. Arithmetic accepts ``int`` and
``Fraction`` operands on either side.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union["GaussianRational", int, Fraction]

_RAT = r"[+-]?\d+(?:/\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?=[+-]|$))?(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i)?$"
)


class GaussianRational:
    """An element ``re + im*i`` with ``re`` and ``im`` exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int | str = 0, im: Rational | int | str = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, str):
            return cls.parse(x)
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact; pass strings")
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"p/q"``, ``"p/q+r/si"``, ``"-i"`` and similar forms."""
        s = text.strip().replace(" ", "").replace("*", "")
        if not s:
            raise ValueError("empty scalar string")
        m = _COMPLEX_RE.match(s)
        if m is None or (m.group("re") is None and m.group("im") is None):
            raise ValueError(f"malformed scalar {text!r}")
        re_part = Fraction(m.group("re")) if m.group("re") is not None else Fraction(0)
        im_txt = m.group("im")
        if im_txt is None:
            im_part = Fraction(0)
        elif im_txt in ("", "+"):
            im_part = Fraction(1)
        elif im_txt == "-":
            im_part = Fraction(-1)
        else:
            im_part = Fraction(im_txt)
        return cls(re_part, im_part)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.im:
            return GaussianRational(self.re * o.re, self.im * o.re)
        if not self.im:
            return GaussianRational(self.re * o.re, self.re * o.im)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """The field norm ``re^2 + im^2``."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if not self.im:
            return GaussianRational(1 / self.re)
        n = self.norm()
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- text -------------------------------------------------------------

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gq(x) -> GaussianRational:
    """Shorthand constructor: ``gq(1)``, ``gq("2/3+1/2i")``, ``gq(Fraction(1, 2))``."""
    return GaussianRational.coerce(x)
