"""Carathéodory-class generators and the iterated integral transform.

Members of the class P (analytic, p(0) = 1, positive real part) are modeled
as finite convex combinations of rotated Moebius kernels,

    p(z) = sum_j  lambda_j (1 + x_j z) / (1 - x_j z),     |x_j| = 1,

whose k-th coefficient is b_k = 2 sum_j lambda_j x_j^k, so |b_k| <= 2 always.
On the rational backend the unimodular points come from the Pythagorean
parametrization (exactly on the circle), or are given outright as exact
points for the few angles the parametrization cannot reach (x = -1).

The iterated integral transform acts diagonally on coefficients: one
application multiplies the k-th coefficient by alpha / (alpha + k), and n
applications by (alpha / (alpha + k))^n, with the constant term fixed at 1.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from ._rational import RationalComplex, t_from_unimodular, unimodular_from_t
from .backends import FLOAT, RATIONAL, Backend
from .series import TruncatedSeries

_WEIGHT_SUM_TOL = 1e-12
_UNIMODULAR_TOL = 1e-12


class HerglotzAtoms:
    """Finite atomic Herglotz data: positive weights on unimodular points."""

    __slots__ = ("backend", "weights", "points")

    def __init__(self, weights, points, *, backend: Backend = FLOAT):
        weights = tuple(backend.scalar(w) for w in weights)
        points = tuple(backend.coeff(x) for x in points)
        if not weights or len(weights) != len(points):
            raise ValueError("need one weight per point, at least one atom")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be positive")
        total = sum(weights)
        if backend is RATIONAL:
            if total != 1:
                raise ValueError(f"weights must sum to 1 exactly, got {total}")
            for x in points:
                if x.abs2() != 1:
                    raise ValueError(f"point {x} is not exactly unimodular")
        else:
            if abs(total - 1.0) > _WEIGHT_SUM_TOL:
                raise ValueError(f"weights must sum to 1, got {total!r}")
            for x in points:
                if abs(abs(x) - 1.0) > _UNIMODULAR_TOL:
                    raise ValueError(f"point {x!r} is not unimodular")
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "points", points)

    def __setattr__(self, name, value):
        raise AttributeError("HerglotzAtoms is immutable")

    def __len__(self):
        return len(self.weights)

    def __eq__(self, other):
        if not isinstance(other, HerglotzAtoms):
            return NotImplemented
        return (
            self.backend is other.backend
            and self.weights == other.weights
            and self.points == other.points
        )

    def __repr__(self):
        return f"HerglotzAtoms({len(self)} atoms, backend={self.backend.name})"

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_angles(cls, weights, angles) -> "HerglotzAtoms":
        """Float-backend atoms from angles in radians."""
        points = [cmath.exp(1j * float(a)) for a in angles]
        return cls(weights, points, backend=FLOAT)

    @classmethod
    def from_rational(cls, weights, ts) -> "HerglotzAtoms":
        """Rational-backend atoms from Pythagorean parameters t."""
        points = [unimodular_from_t(t) for t in ts]
        return cls(weights, points, backend=RATIONAL)

    # -- series -----------------------------------------------------------

    def series(self, order: int) -> TruncatedSeries:
        """1 + sum_k b_k z^k with b_k = 2 sum_j lambda_j x_j^k."""
        backend = self.backend
        coeffs = [backend.one]
        powers = list(self.points)
        for _ in range(order):
            acc = backend.zero
            for w, p in zip(self.weights, powers):
                acc = acc + w * p
            coeffs.append(acc + acc)
            powers = [p * x for p, x in zip(powers, self.points)]
        return TruncatedSeries(coeffs, order, backend=backend)

    # -- serialization ------------------------------------------------------

    def to_document(self) -> dict:
        """JSON-ready atom document.

        Float backend: {"atoms": [{"weight": w, "angle_radians": a}]}.
        Rational backend: weights and points as exact fraction strings; the
        Pythagorean parameter "t" when it exists, otherwise the explicit
        point ("x_re"/"x_im", needed only for x = -1).
        """
        if self.backend is FLOAT:
            atoms = [
                {"weight": float(w), "angle_radians": math.atan2(x.imag, x.real)}
                for w, x in zip(self.weights, self.points)
            ]
            return {"backend": "float", "atoms": atoms}
        atoms = []
        for w, x in zip(self.weights, self.points):
            entry = {"weight": str(Fraction(w))}
            try:
                entry["t"] = str(t_from_unimodular(x))
            except ValueError:
                entry["x_re"] = str(x.re)
                entry["x_im"] = str(x.im)
            atoms.append(entry)
        return {"backend": "rational", "atoms": atoms}

    @classmethod
    def from_document(cls, doc: dict) -> "HerglotzAtoms":
        """Parse an atom document (the inverse of :meth:`to_document`).

        Accepts fraction strings or split numerator/denominator fields for
        rational weights and t parameters.
        """
        if not isinstance(doc, dict) or "atoms" not in doc:
            raise ValueError("atom document must be an object with an 'atoms' list")
        backend = get_doc_backend(doc)
        raw = doc["atoms"]
        if not isinstance(raw, list) or not raw:
            raise ValueError("'atoms' must be a non-empty list")
        weights, points = [], []
        for entry in raw:
            if not isinstance(entry, dict):
                raise ValueError("each atom must be an object")
            if backend is FLOAT:
                weights.append(float(entry["weight"]))
                if "angle_radians" in entry:
                    points.append(cmath.exp(1j * float(entry["angle_radians"])))
                else:
                    raise ValueError("float atom needs 'angle_radians'")
            else:
                weights.append(_read_fraction(entry, "weight"))
                if "t" in entry or "t_num" in entry:
                    points.append(unimodular_from_t(_read_fraction(entry, "t")))
                elif "x_re" in entry and "x_im" in entry:
                    points.append(
                        RationalComplex(Fraction(str(entry["x_re"])), Fraction(str(entry["x_im"])))
                    )
                else:
                    raise ValueError("rational atom needs 't' or 'x_re'/'x_im'")
        return cls(weights, points, backend=backend)


def _read_fraction(entry: dict, key: str) -> Fraction:
    if key in entry:
        return Fraction(str(entry[key]))
    num, den = f"{key}_num", f"{key}_den"
    if num in entry and den in entry:
        return Fraction(int(entry[num]), int(entry[den]))
    raise ValueError(f"atom entry missing {key!r}")


def get_doc_backend(doc: dict) -> Backend:
    if not isinstance(doc, dict):
        raise ValueError(f"atom document must be an object, got {type(doc).__name__}")
    name = doc.get("backend")
    if name is not None:
        return {"float": FLOAT, "rational": RATIONAL}.get(name) or _bad_backend(name)
    # infer from the first atom's fields
    atoms = doc.get("atoms") or [{}]
    first = atoms[0] if isinstance(atoms[0], dict) else {}
    if "angle_radians" in first:
        return FLOAT
    return RATIONAL


def _bad_backend(name):
    raise ValueError(f"unknown backend {name!r} in atom document")


def kernel_series(x, order: int, *, backend: Backend = FLOAT) -> TruncatedSeries:
    """Rotated Moebius kernel (1 + x z) / (1 - x z) = 1 + 2 sum x^k z^k."""
    x = backend.coeff(x)
    if backend is RATIONAL:
        if x.abs2() != 1:
            raise ValueError(f"kernel point {x} is not exactly unimodular")
    elif abs(abs(x) - 1.0) > _UNIMODULAR_TOL:
        raise ValueError(f"kernel point {x!r} is not unimodular")
    coeffs = [backend.one]
    p = backend.one
    for _ in range(order):
        p = p * x
        coeffs.append(p + p)
    return TruncatedSeries(coeffs, order, backend=backend)


def half_hadamard(p: TruncatedSeries, q: TruncatedSeries) -> TruncatedSeries:
    """r = 1 + (1/2) sum_k p_k q_k z^k for two class-P series.

    By the Nehari-Netanyahu composition lemma r is again in P whenever p and
    q are; the tests check that numerically on sampled generators.
    """
    if p.backend is not q.backend or p.order != q.order:
        raise ValueError("half_hadamard needs two series of equal order on one backend")
    backend = p.backend
    if p.coeffs[0] != backend.one or q.coeffs[0] != backend.one:
        raise ValueError("half_hadamard expects constant terms equal to 1")
    half = backend.scalar(Fraction(1, 2))
    coeffs = [backend.one]
    for k in range(1, p.order + 1):
        coeffs.append(half * (p.coeffs[k] * q.coeffs[k]))
    return TruncatedSeries(coeffs, p.order, backend=backend)


@dataclass(frozen=True)
class TransformParams:
    """Iteration count n >= 0 and exponent alpha > 0 for the transform."""

    n: int
    alpha: object

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")


def iterated_transform(p: TruncatedSeries, params: TransformParams) -> TruncatedSeries:
    """Apply the averaging transform n times.

    One application maps p to (alpha / z^alpha) * integral_0^z t^(alpha-1) p(t) dt,
    i.e. multiplies the k-th coefficient by alpha / (alpha + k); n applications
    multiply by (alpha / (alpha + k))^n. The constant term stays 1 by the
    normalization. Exact on the rational backend for rational alpha.
    """
    backend = p.backend
    alpha = backend.scalar(params.alpha)
    n = params.n
    if n == 0:
        return p
    out = [p.coeffs[0]]
    for k in range(1, p.order + 1):
        w = alpha / (alpha + k)
        out.append((w**n) * p.coeffs[k])
    return TruncatedSeries(out, p.order, backend=backend)


def shift_to_beta(p: TruncatedSeries, beta) -> TruncatedSeries:
    """beta + (1 - beta) p for a series with constant term 1."""
    backend = p.backend
    beta = backend.scalar(beta)
    if not (0 <= beta < 1):
        raise ValueError(f"beta must lie in [0, 1), got {beta!r}")
    if p.coeffs[0] != backend.one:
        raise ValueError("shift_to_beta expects constant term 1")
    one_minus = 1 - beta
    coeffs = [backend.one]
    coeffs.extend(one_minus * c for c in p.coeffs[1:])
    return TruncatedSeries(coeffs, p.order, backend=backend)


def min_real_part(p: TruncatedSeries, radius: float, samples: int) -> float:
    """Minimum of Re p over equally spaced points on |z| = radius.

    A numerical witness: evaluation always happens in floating point (the
    sample points are not rational), so rational series are converted first.
    """
    radius = float(radius)
    if not (0 < radius < 1):
        raise ValueError(f"radius must lie in (0, 1), got {radius!r}")
    if not isinstance(samples, int) or samples < 8:
        raise ValueError(f"need at least 8 samples, got {samples!r}")
    q = p.to_float()
    best = math.inf
    for j in range(samples):
        z = radius * cmath.exp(2j * math.pi * j / samples)
        value = q.evaluate(z).real
        if value < best:
            best = value
    return best


def random_herglotz(seed: int, max_atoms: int = 4) -> HerglotzAtoms:
    """Deterministic random atom system on the float backend.

    Draws from ``random.Random(seed)`` only via ``random()`` calls: the atom
    count is uniform on 1..max_atoms, angles are uniform on the circle, and
    the weights are uniform on the probability simplex (normalized
    exponentials). The same seed always yields the same atoms.
    """
    if not isinstance(max_atoms, int) or max_atoms < 1:
        raise ValueError(f"max_atoms must be a positive integer, got {max_atoms!r}")
    rng = random.Random(seed)
    count = min(1 + int(rng.random() * max_atoms), max_atoms)
    angles = [2.0 * math.pi * rng.random() for _ in range(count)]
    raw = [-math.log(1.0 - rng.random()) for _ in range(count)]
    total = sum(raw)
    weights = [w / total for w in raw]
    # renormalize the last weight so the sum is exactly 1.0 in floating point
    weights[-1] = 1.0 - sum(weights[:-1])
    return HerglotzAtoms.from_angles(weights, angles)
