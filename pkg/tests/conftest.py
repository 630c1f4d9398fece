"""Shared oracle helpers for the test suite.

The oracles deliberately avoid the code paths they check: kernel values come
from adaptive quadrature, norms from frequency-domain quadrature of the
spectral density, densities from a plain-Python sliding count, and extremal
eigenvalues from scipy decompositions of independently assembled matrices.
"""

import bisect
import math

import numpy as np
from scipy.integrate import quad

from bandlim.spectrum import SpectrumSet

TWO_PI = 2.0 * math.pi


def kernel_quad_oracle(spec: SpectrumSet, u: float, tol: float = 1e-13) -> complex:
    """(1/2pi) * integral_S exp(i t u) dt by adaptive quadrature."""
    re = sum(
        quad(lambda t: math.cos(t * u), iv.lo, iv.hi, epsabs=tol, epsrel=tol, limit=200)[0]
        for iv in spec.intervals
    )
    im = sum(
        quad(lambda t: math.sin(t * u), iv.lo, iv.hi, epsabs=tol, epsrel=tol, limit=200)[0]
        for iv in spec.intervals
    )
    return complex(re, im) / TWO_PI


def norm_sq_freq_oracle(spec: SpectrumSet, points: np.ndarray, coeffs: np.ndarray) -> float:
    """||sum_j c_j K_S(. - lambda_j)||^2 via quadrature of the spectral density.

    The synthesised function has spectral density (1/2pi) 1_S(t) sum_j c_j
    exp(-i t lambda_j); its L2(R) norm is 2pi times the L2 norm of that
    density, i.e. (1/2pi) int_S |sum_j c_j exp(-i t lambda_j)|^2 dt.
    """

    def density(t):
        return abs(np.sum(coeffs * np.exp(-1j * t * points))) ** 2 / TWO_PI

    return sum(
        quad(density, iv.lo, iv.hi, epsabs=1e-13, epsrel=1e-13, limit=400)[0]
        for iv in spec.intervals
    )


def norm_sq_time_oracle(
    spec: SpectrumSet, points: np.ndarray, coeffs: np.ndarray, half_width: float = 2000.0
) -> float:
    """Truncated time-domain quadrature of |f|^2; 1/x kernel tails cap the
    attainable accuracy near 1e-3 relative, so use as a coarse cross-check."""
    from bandlim.spectrum import kernel

    grid = np.linspace(-half_width, half_width, int(800 * half_width) + 1)
    vals = np.zeros(grid.shape, dtype=complex)
    for c, p in zip(coeffs, points):
        vals += c * kernel(spec, grid - p)
    return float(np.trapezoid(np.abs(vals) ** 2, grid))


def sliding_density_max_oracle(points, r: float, step: float) -> float:
    """Brute-force max of card((a, a+r))/r over the sliding grid, via bisect."""
    pts = sorted(float(p) for p in points)
    base = pts[0]
    rel = [p - base for p in pts]
    best = 0
    a = -r
    while a <= rel[-1]:
        count = bisect.bisect_left(rel, a + r) - bisect.bisect_right(rel, a)
        best = max(best, count)
        a += step
    return best / r


def top_eigenvalue_oracle(matrix) -> float:
    import scipy.linalg

    return float(scipy.linalg.eigvalsh(matrix)[-1])


def bottom_eigenvalue_oracle(matrix) -> float:
    import scipy.linalg

    return float(scipy.linalg.eigvalsh(matrix)[0])
