"""Exact complex numbers over the rationals.

A ``RationalComplex`` is a pair of ``fractions.Fraction`` values. It supports
the field operations exactly, which is what the rational backend needs:
unimodular points built from the Pythagorean parametrization stay exactly on
the unit circle, and every series coefficient downstream is an exact rational
pair.
"""

from __future__ import annotations

from fractions import Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


class RationalComplex:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("RationalComplex is immutable")

    # -- coercion -------------------------------------------------------

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, RationalComplex):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other, 0)
        return None

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return RationalComplex(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero RationalComplex")
        return RationalComplex(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = RationalComplex(1, 0)
        base = self
        m = n
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    # -- structure ------------------------------------------------------

    def conjugate(self) -> "RationalComplex":
        return RationalComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2 as an exact Fraction."""
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"RationalComplex({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def unimodular_from_t(t) -> RationalComplex:
    """Exact point on the unit circle from the Pythagorean parametrization.

    x = ((1 - t^2) + 2 t i) / (1 + t^2) for rational t, so |x|^2 == 1 exactly.
    Every rational point on the circle except -1 arises this way.
    """
    t = _as_fraction(t)
    d = 1 + t * t
    return RationalComplex((1 - t * t) / d, (2 * t) / d)


def t_from_unimodular(x: RationalComplex) -> Fraction:
    """Inverse of :func:`unimodular_from_t` (half-angle tangent).

    Raises ValueError at x == -1, which the parametrization cannot reach.
    """
    if x.abs2() != 1:
        raise ValueError(f"{x!r} is not unimodular")
    if x.re == -1 and x.im == 0:
        raise ValueError("x = -1 has no rational t parameter")
    return x.im / (1 + x.re)
