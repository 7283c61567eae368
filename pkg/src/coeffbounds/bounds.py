"""Coefficient-bound formulas and the generator-to-function pipeline.

The function class studied here consists of normalized analytic functions
f(z) = z + a_2 z^2 + ... whose n-fold Salagean-normalized power quotient
D^n(f^alpha) / (alpha^n z^alpha) has real part exceeding beta. Structurally,
f belongs to the class exactly when

    (f(z)/z)^alpha = beta + (1 - beta) p_n(z)

for some Caratheodory generator p, where p_n is the n-fold iterated integral
transform of p. That gives both directions implemented here: rebuilding f
from a generator (``f_from_p``) and checking membership of a given f
(``verify_membership``, which applies the diagonal map ((alpha+k)/alpha)^n to
undo the transform and then samples the real part).

Three bound formulas are provided: the sharp one for alpha > 1
(``sharp_bound``, attained by ``extremal_p``), the piecewise small-alpha one
with its omega regions (``small_alpha_bound``), and the exponential estimate on
the power-quotient coefficients (``growth_estimate``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .backends import FLOAT, RATIONAL, Backend
from .caratheodory import (
    HerglotzAtoms,
    TransformParams,
    iterated_transform,
    min_real_part,
    shift_to_beta,
)
from .series import TruncatedSeries


@dataclass(frozen=True)
class ClassParams:
    """Class parameters: iteration count n >= 0, exponent alpha > 0, order beta."""

    n: int
    alpha: object
    beta: object

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")
        if not (0 <= self.beta < 1):
            raise ValueError(f"beta must lie in [0, 1), got {self.beta!r}")

    def transform(self) -> TransformParams:
        return TransformParams(self.n, self.alpha)


class Region(enum.Enum):
    """Alpha regions of the piecewise small-alpha bound."""

    OMEGA1 = "omega1"
    OMEGA2 = "omega2"
    OMEGA3 = "omega3"
    OUT_OF_RANGE = "out_of_range"


def classify_region(alpha, k: int) -> Region:
    """Locate alpha relative to the omega regions for coefficient index k.

    Boundaries follow the conventions 1/(k-2) = +inf at k = 2 and
    1/(k-3) = +inf at k = 3, so k = 2 is all of (0, inf) and k = 3 splits
    into (0, 1) and [1, inf). Fraction boundaries keep the comparisons exact
    for both backends.
    """
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"coefficient index must be an integer >= 2, got {k!r}")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    lower = Fraction(1, k - 2) if k > 2 else None  # None means +inf
    upper = Fraction(1, k - 3) if k > 3 else None
    if lower is None or alpha < lower:
        return Region.OMEGA1
    if k % 2 == 0:
        if upper is None or alpha <= upper:
            return Region.OMEGA2
    else:
        if upper is None or alpha < upper:
            return Region.OMEGA3
    return Region.OUT_OF_RANGE


def sharp_bound(params: ClassParams, k: int):
    """2 (1 - beta) alpha^(n-1) / (alpha + k - 1)^n for k >= 2.

    The formula evaluates for every alpha > 0; it is the sharp bound for
    alpha > 1 (reports mark it inapplicable otherwise). Exact in rational
    inputs.
    """
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"coefficient index must be an integer >= 2, got {k!r}")
    alpha, beta, n = params.alpha, params.beta, params.n
    return 2 * (1 - beta) * alpha ** (n - 1) / (alpha + k - 1) ** n


@dataclass(frozen=True)
class SmallAlphaBound:
    """Piecewise bound value (None outside the omega regions) plus the region."""

    value: object
    region: Region


def _poly_mul(a, b, order, zero):
    out = []
    for k in range(order + 1):
        acc = zero
        for j in range(k + 1):
            acc = acc + a[j] * b[k - j]
        out.append(acc)
    return out


def small_alpha_bound(params: ClassParams, k: int) -> SmallAlphaBound:
    """Small-alpha piecewise bound on |a_k|.

    With B_m = 2^m (1-beta)^m alpha^(m(n-1)) prod_{j=0}^{m-1} (1 - j alpha) / m!
    and Q the coefficients of powers of sum_{j>=1} z^j / (alpha + j)^n, the
    bound is sum_{m=1}^{k-1} B_m Q_{k-1}^(m) on omega1 and omega2, and the
    shorter sum to k-2 on omega3. Outside the regions no value is fabricated.
    """
    region = classify_region(params.alpha, k)
    if region is Region.OUT_OF_RANGE:
        return SmallAlphaBound(None, region)
    m_top = k - 1 if region in (Region.OMEGA1, Region.OMEGA2) else k - 2
    alpha, beta, n = params.alpha, params.beta, params.n
    zero = alpha * 0
    base = [zero] + [1 / (alpha + j) ** n for j in range(1, k)]
    power = list(base)
    total = zero
    sign_prod = 1 - 0 * alpha  # prod_{j=0}^{m-1} (1 - j alpha), starts at 1
    factorial = 1
    for m in range(1, m_top + 1):
        if m > 1:
            power = _poly_mul(power, base, k - 1, zero)
            sign_prod = sign_prod * (1 - (m - 1) * alpha)
            factorial *= m
        b_m = (2**m) * (1 - beta) ** m * alpha ** (m * (n - 1)) * sign_prod / factorial
        total = total + b_m * power[k - 1]
    return SmallAlphaBound(total, region)


def growth_estimate(alpha, k: int) -> float:
    """exp(0.624 alpha^2 + (2 alpha^2 - 1/2) H_k) with H_k the harmonic sum.

    Estimates the k-th power-quotient coefficient |A_(k+1)(alpha)| (a
    different object from a_k); always evaluated in floating point.
    Saturates to +inf when the exponent exceeds the float range (around
    alpha = 10, k = 14), which keeps the upper-estimate semantics intact.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"index must be a non-negative integer, got {k!r}")
    a = float(alpha)
    if not a > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    harmonic = sum(1.0 / j for j in range(1, k + 1))
    try:
        return math.exp(0.624 * a * a + (2.0 * a * a - 0.5) * harmonic)
    except OverflowError:
        return math.inf


def _generator_series(p, order: int) -> TruncatedSeries:
    if isinstance(p, HerglotzAtoms):
        return p.series(order)
    if isinstance(p, TruncatedSeries):
        if p.order < order:
            raise ValueError(f"generator series order {p.order} is below the needed {order}")
        return p.truncate(order)
    raise TypeError("generator must be HerglotzAtoms or TruncatedSeries")


def f_from_p(p, params: ClassParams, order: int) -> TruncatedSeries:
    """Rebuild the class member from its generator.

    f(z) = z * (beta + (1 - beta) p_n(z))^(1/alpha) where p_n is the n-fold
    transform of p. The result has f_0 = 0, f_1 = 1 and the requested order.
    """
    if not isinstance(order, int) or order < 1:
        raise ValueError(f"order must be a positive integer, got {order!r}")
    q = _generator_series(p, order - 1)
    backend = q.backend
    alpha = backend.scalar(params.alpha)
    q_n = iterated_transform(q, TransformParams(params.n, alpha))
    shifted = shift_to_beta(q_n, params.beta)
    u = shifted.real_power(1 / alpha)
    return TruncatedSeries([backend.zero, *u.coeffs], order, backend=backend)


def a_k_direct(p: TruncatedSeries, params: ClassParams, k: int):
    """k-th coefficient of f straight from the expansion, no root-taking.

    a_k = sum_{m=1}^{k-1} Btilde_m C_{k-1}^(m), where C^(m) are coefficients
    of powers of w(z) = sum_l b_l z^l / (alpha + l)^n and

        Btilde_m = (1-beta)^m alpha^(m(n-1)) prod_{j=0}^{m-1}(1 - j alpha) / m!.

    Independent route used to cross-check the f_from_p pipeline.
    """
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"coefficient index must be an integer >= 2, got {k!r}")
    if not isinstance(p, TruncatedSeries):
        raise TypeError("a_k_direct expects the generator as a TruncatedSeries")
    if p.order < k - 1:
        raise ValueError(f"generator order {p.order} is below k-1 = {k - 1}")
    backend = p.backend
    alpha, beta, n = (backend.scalar(params.alpha), backend.scalar(params.beta), params.n)
    w = TruncatedSeries(
        [backend.zero] + [p.coeffs[l] * (1 / (alpha + l) ** n) for l in range(1, k)],
        k - 1,
        backend=backend,
    )
    total = backend.zero
    power = w
    sign_prod = alpha * 0 + 1
    factorial = 1
    for m in range(1, k):
        if m > 1:
            power = power * w
            sign_prod = sign_prod * (1 - (m - 1) * alpha)
            factorial *= m
        b_m = (1 - beta) ** m * alpha ** (m * (n - 1)) * sign_prod / factorial
        total = total + b_m * power.coeffs[k - 1]
    return total


def verify_membership(f: TruncatedSeries, params: ClassParams, radius: float, samples: int) -> float:
    """Minimum over |z| = radius of Re D^n(f^alpha)/(alpha^n z^alpha) - beta.

    Positive means the sampled circle is consistent with membership. The
    diagonal map ((alpha + k)/alpha)^n on the coefficients of (f/z)^alpha
    realizes the Salagean normalization without evaluating multivalued
    powers.
    """
    backend = f.backend
    if f.order < 1:
        raise ValueError("f must carry at least the z term")
    if backend is RATIONAL:
        if f.coeffs[0] != backend.zero or f.coeffs[1] != backend.one:
            raise ValueError("f must start as z + a_2 z^2 + ...")
    else:
        if abs(f.coeffs[0]) > 1e-12 or abs(f.coeffs[1] - 1) > 1e-12:
            raise ValueError("f must start as z + a_2 z^2 + ...")
    alpha = backend.scalar(params.alpha)
    u = TruncatedSeries(f.coeffs[1:], f.order - 1, backend=backend)
    e = u.real_power(alpha)
    normalized = TruncatedSeries(
        [(((alpha + k) / alpha) ** params.n) * c for k, c in enumerate(e.coeffs)],
        e.order,
        backend=backend,
    )
    return min_real_part(normalized, radius, samples) - float(params.beta)


def extremal_p(k: int, *, backend: Backend = FLOAT) -> HerglotzAtoms:
    """Equal weights on the (k-1)-th roots of unity: the sharpness generator.

    Its series is 1 + 2 z^(k-1) + 2 z^(2(k-1)) + ..., so only the m = 1 term
    feeds a_k and the sharp bound is attained exactly. On the rational
    backend only k = 2 and k = 3 exist (higher k needs irrational roots).
    """
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"coefficient index must be an integer >= 2, got {k!r}")
    count = k - 1
    if backend is RATIONAL:
        if k == 2:
            return HerglotzAtoms([Fraction(1)], [backend.coeff(1)], backend=RATIONAL)
        if k == 3:
            half = Fraction(1, 2)
            return HerglotzAtoms(
                [half, half], [backend.coeff(1), backend.coeff(-1)], backend=RATIONAL
            )
        raise ValueError("rational backend carries the extremal generator only for k in {2, 3}")
    weights = [1.0 / count] * count
    weights[-1] = 1.0 - sum(weights[:-1])
    angles = [2.0 * math.pi * j / count for j in range(count)]
    return HerglotzAtoms.from_angles(weights, angles)


@dataclass(frozen=True)
class BoundReport:
    """Observed |a_k| against the applicable bound at one parameter point."""

    k: int
    a_abs: float
    bound: float
    bound_source: str | None
    region: Region
    margin: float
    sharp_hit: bool
    applicable: bool


def bound_report(params: ClassParams, k: int, a_k, *, backend: Backend, tol: float = 1e-9) -> BoundReport:
    """Pick the applicable bound for (params, k) and compare |a_k| to it.

    alpha > 1 uses the sharp formula; otherwise the omega-region bound if
    alpha falls inside one; otherwise the report is marked inapplicable (the
    open window) and carries no fabricated value.
    """
    region = classify_region(params.alpha, k)
    a_abs = abs(backend.to_complex(a_k))
    if params.alpha > 1:
        bound_exact = sharp_bound(params, k)
        bound = float(bound_exact)
        if backend is RATIONAL:
            hit = backend.abs2(a_k) == bound_exact * bound_exact
        else:
            hit = abs(bound - a_abs) <= tol
        return BoundReport(k, a_abs, bound, "sharp", region, bound - a_abs, hit, True)
    t1 = small_alpha_bound(params, k)
    if t1.value is not None:
        bound = float(t1.value)
        return BoundReport(
            k, a_abs, bound, "small_alpha", region, bound - a_abs, abs(bound - a_abs) <= tol, True
        )
    return BoundReport(k, a_abs, math.nan, None, region, math.nan, False, False)
