"""Arithmetic backends: exact rational complex, or double-precision complex.

Every series and atom system carries one of the two singleton backends below.
The float backend is for randomized sweeps and disk sampling; the rational
backend gives exact equality in regression fixtures (weights, transform
factors, and bound formulas are all rational in rational inputs).
"""

from __future__ import annotations

from fractions import Fraction

from ._rational import RationalComplex


class Backend:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    # scalar: the real number type used for weights, alpha, beta, radii
    # coeff: the series-coefficient type

    def __repr__(self):
        return f"<backend {self.name}>"


class _FloatBackend(Backend):
    scalar_type = float
    coeff_type = complex

    def scalar(self, x) -> float:
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, (int, float, Fraction)):
            return float(x)
        if isinstance(x, str):
            return float(Fraction(x))
        raise TypeError(f"cannot use {type(x).__name__} as a float-backend scalar")

    def coeff(self, re, im=0) -> complex:
        if isinstance(re, complex) and im == 0:
            return re
        return complex(self.scalar(re), self.scalar(im))

    @property
    def zero(self) -> complex:
        return 0j

    @property
    def one(self) -> complex:
        return 1 + 0j

    def is_coeff(self, value) -> bool:
        return isinstance(value, complex)

    def to_complex(self, value) -> complex:
        return complex(value)

    def abs2(self, value) -> float:
        v = complex(value)
        return v.real * v.real + v.imag * v.imag

    def parse_scalar(self, text: str) -> float:
        return float(Fraction(text))

    def format_scalar(self, x) -> str:
        return format(float(x), ".17g")


class _RationalBackend(Backend):
    scalar_type = Fraction
    coeff_type = RationalComplex

    def scalar(self, x) -> Fraction:
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")

    def coeff(self, re, im=0) -> RationalComplex:
        if isinstance(re, RationalComplex) and im == 0:
            return re
        return RationalComplex(self.scalar(re), self.scalar(im))

    @property
    def zero(self) -> RationalComplex:
        return RationalComplex(0, 0)

    @property
    def one(self) -> RationalComplex:
        return RationalComplex(1, 0)

    def is_coeff(self, value) -> bool:
        return isinstance(value, RationalComplex)

    def to_complex(self, value) -> complex:
        return complex(value)

    def abs2(self, value) -> Fraction:
        return value.abs2()

    def parse_scalar(self, text: str) -> Fraction:
        return Fraction(text)

    def format_scalar(self, x) -> str:
        f = Fraction(x)
        return str(f)


FLOAT = _FloatBackend("float")
RATIONAL = _RationalBackend("rational")

_BY_NAME = {"float": FLOAT, "rational": RATIONAL}


def get_backend(name: str) -> Backend:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r} (expected 'float' or 'rational')") from None
