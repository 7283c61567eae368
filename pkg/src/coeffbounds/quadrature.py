"""Numerical cross-check for the iterated integral transform.

The closed form multiplies the k-th coefficient by (alpha/(alpha+k))^n. This
module recomputes the transformed series without that formula: it evaluates

    (T g)(z) = alpha * integral_0^1 s^(alpha-1) g(s z) ds

by Gauss-Legendre quadrature (after s = u^2, which removes the endpoint
singularity for alpha = 1/2 and keeps the integrand polynomial for the
half-integer and integer alphas used in tests), nests the quadrature n times,
and then reads coefficients off a circle by discrete Fourier transform.
Used only as an oracle; the library itself applies the closed form.
"""

from __future__ import annotations

import numpy as np

from .series import TruncatedSeries


def _gauss_nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def _eval_iterated(coeffs, alpha, n, z, u, w):
    if n == 0:
        return _horner(coeffs, z)
    inner = _eval_iterated(coeffs, alpha, n - 1, np.outer(z, u * u).ravel(), u, w)
    inner = inner.reshape(len(z), len(u))
    kernel = 2.0 * alpha * w * u ** (2.0 * alpha - 1.0)
    return inner @ kernel


def transform_coefficients_by_quadrature(
    p: TruncatedSeries,
    alpha: float,
    n: int,
    k_max: int,
    *,
    nodes: int = 32,
    circle_points: int = 64,
    radius: float = 0.5,
) -> np.ndarray:
    """Coefficients 0..k_max of the n-fold transform of p, by quadrature.

    ``circle_points`` must comfortably exceed k_max so DFT aliasing (folded
    coefficients at k + j*circle_points, damped by radius^(j*circle_points))
    stays far below the comparison tolerance.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0 < radius < 1:
        raise ValueError("radius must lie in (0, 1)")
    if circle_points <= k_max:
        raise ValueError("need more circle points than coefficients")
    coeffs = np.array([complex(c) for c in p.to_float().coeffs])
    u, w = _gauss_nodes(nodes)
    angles = 2.0 * np.pi * np.arange(circle_points) / circle_points
    z = radius * np.exp(1j * angles)
    values = _eval_iterated(coeffs, float(alpha), n, z, u, w)
    spectrum = np.fft.fft(values) / circle_points
    return spectrum[: k_max + 1] / radius ** np.arange(k_max + 1)
