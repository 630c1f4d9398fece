"""Well-conditioned subspace extraction from near-orthonormal vector systems.

Given n vectors v_j with ||v_j - u_j|| <= d against an orthonormal basis u_j,
and any alpha in (1, 1/d), the singular value decomposition of the column
matrix T1 = [v_1 ... v_n] yields a subspace X of dimension

    k = n - floor(alpha^2 d^2 n)  >  (1 - alpha^2 d^2) n - 1

(the top-k right singular subspace) on which the synthesis form is bounded
below by a constant independent of n:

    || sum_j c_j v_j ||^2  >=  (1 - 1/alpha)^2 * sum_j |c_j|^2,   c in X.

The chain behind the guarantee: the Hilbert-Schmidt identity gives
sum_j s_j(T2)^2 < d^2 n for T2 = I - T1, hence s_j(T2)^2 <= d^2 n / j; the
additive singular-value perturbation inequality then gives
s_k(T1) >= s_n(I) - s_{n-k+1}(T2) >= 1 - 1/alpha, and the minimax principle
turns s_k into the exact minimum of ||T1 c|| over unit c in X.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CertificateError

# Guards against SVD round-off when a certified bound is met with equality.
_NUMERICAL_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class PerturbedBasis:
    """Columns v_j with a certified perturbation bound ||v_j - u_j|| <= d."""

    vectors: np.ndarray
    d: float

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("vectors must form a square column matrix")
        if not 0 < self.d < 1:
            raise ValueError(f"perturbation bound d must lie in (0, 1), got {self.d}")
        dev = np.linalg.norm(v - np.eye(v.shape[0]), axis=0)
        worst = float(dev.max())
        if worst > self.d * (1 + 1e-9) + 1e-12:
            raise ValueError(
                f"column deviates from the basis by {worst:.6e} > d = {self.d}"
            )
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "d", float(self.d))

    @property
    def n(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True, eq=False)
class WidthCertificate:
    """Extracted subspace with its certified lower bound.

    ``basis`` holds k orthonormal columns spanning X; ``certified_sigma`` is
    s_k(T1), the exact minimum of ||T1 c|| over unit c in X, guaranteed to be
    at least 1 - 1/alpha.
    """

    alpha: float
    k: int
    basis: np.ndarray
    certified_sigma: float


def singular_values(matrix) -> np.ndarray:
    """Descending singular values of a square matrix."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    return np.linalg.svd(m, compute_uv=False)


def extract_subspace(basis: PerturbedBasis, alpha: float) -> WidthCertificate:
    """Extract the certified subspace for a given alpha in (1, 1/d).

    When alpha^2 d^2 n < 1 the integer part is 0 and X is the full space; the
    bound still holds.  A computed s_k below 1 - 1/alpha (beyond round-off)
    cannot happen for a valid PerturbedBasis and raises CertificateError.
    """
    d = basis.d
    if not 1 < alpha < 1.0 / d:
        raise ValueError(f"alpha must lie in (1, 1/d) = (1, {1.0 / d}), got {alpha}")
    n = basis.n
    k = n - math.floor(alpha * alpha * d * d * n)
    _, s, vh = np.linalg.svd(basis.vectors)
    sigma = float(s[k - 1])
    lower = 1.0 - 1.0 / alpha
    if sigma < lower - _NUMERICAL_SLACK:
        raise CertificateError(
            f"certified singular value {sigma:.12f} fell below 1 - 1/alpha = "
            f"{lower:.12f}; the input violates its declared perturbation bound"
        )
    if not k > (1 - alpha * alpha * d * d) * n - 1:
        raise CertificateError("dimension bound arithmetic failed")  # floor(x) <= x
    return WidthCertificate(
        alpha=float(alpha),
        k=int(k),
        basis=vh[:k].conj().T.copy(),
        certified_sigma=sigma,
    )


class WeylReport(NamedTuple):
    passed: bool
    worst_violation: float


def weyl_check(t1, t2, tol: float = 1e-9) -> WeylReport:
    """Verify s_{k+j-1}(T1 + T2) <= s_k(T1) + s_j(T2) over all valid (k, j).

    A self-test of the numerical SVD: reports the worst signed violation
    (positive means the inequality failed by that much).
    """
    a = np.asarray(t1)
    b = np.asarray(t2)
    if a.shape != b.shape:
        raise ValueError("matrices must have equal shapes")
    s1 = np.linalg.svd(a, compute_uv=False)
    s2 = np.linalg.svd(b, compute_uv=False)
    s12 = np.linalg.svd(a + b, compute_uv=False)
    n = s1.size
    best = np.full(n, np.inf)
    for k in range(n):
        best[k:] = np.minimum(best[k:], s1[k] + s2[: n - k])
    worst = float(np.max(s12 - best))
    return WeylReport(passed=bool(worst <= tol), worst_violation=worst)


def saturated_random_basis(n: int, d: float, rng: np.random.Generator) -> PerturbedBasis:
    """v_j = u_j + d * w_j with independent random unit directions w_j."""
    w = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    w /= np.linalg.norm(w, axis=0, keepdims=True)
    return PerturbedBasis(vectors=np.eye(n) + d * w, d=d)


def saturated_drift_basis(n: int, d: float, rng: np.random.Generator) -> PerturbedBasis:
    """Adversarial rank-one drift v_j = u_j - d * w for one fixed unit w."""
    w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    w /= np.linalg.norm(w)
    return PerturbedBasis(vectors=np.eye(n) - d * np.outer(w, np.ones(n)), d=d)
