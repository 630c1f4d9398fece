"""Gram matrices of reproducing-kernel atoms and their spectral constants.

For a point set {lambda_j} and spectrum S, the matrix G with entries
G[j, k] = kernel(S, lambda_j - lambda_k) is the Gram matrix of the kernel
translates under the L2(R) inner product.  Two exact identities drive
everything downstream: for f = sum_j c_j K_S(. - lambda_j),

    ||f||^2_{L2(R)} = c^H G c        and        f(lambda_k) = (G c)_k,

so quadratic forms in G compute true norms and true samples with no
quadrature.  The extreme eigenvalues of G bound the sampling ratio
sum |f(lambda)|^2 / ||f||^2 over the span of the window atoms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import DiscreteSet
from .spectrum import TWO_PI, SpectrumSet, kernel, measure

# Eigenvalues in [-PSD_CLIP_REL * max, 0) are round-off from nearly coincident
# atoms and get clipped to zero; anything below that floor is a real fault.
PSD_CLIP_REL = 1e-10


@dataclass(eq=False)
class GramMatrix:
    """Hermitian PSD matrix of kernel evaluations at point differences.

    The eigendecomposition is computed once on first use and cached; the
    computation is pure, so a concurrent first access at worst repeats it
    with an identical result.
    """

    points: DiscreteSet
    spectrum: SpectrumSet
    entries: np.ndarray
    _eig: tuple | None = field(default=None, init=False, repr=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        """Clipped eigenvalues (ascending) and eigenvectors, cached."""
        if self._eig is None:
            w, v = np.linalg.eigh(self.entries)
            lam_max = float(w[-1])
            floor = -PSD_CLIP_REL * max(lam_max, 0.0)
            if float(w[0]) < floor:
                raise np.linalg.LinAlgError(
                    f"Gram matrix indefinite beyond round-off: min eigenvalue "
                    f"{w[0]:.3e} < {floor:.3e}"
                )
            self._eig = (np.clip(w, 0.0, None), v, float(w[0]))
        return self._eig[0], self._eig[1]

    @property
    def raw_min_eigenvalue(self) -> float:
        self.eigensystem()
        return self._eig[2]


@dataclass(frozen=True)
class SpectralSummary:
    eigenvalues: tuple[float, ...]  # descending
    max: float
    min: float

    def __post_init__(self):
        if self.max < self.min:
            raise ValueError("spectral summary with max < min")


def build(lam: DiscreteSet, spec: SpectrumSet) -> GramMatrix:
    """Assemble the Gram matrix of kernel atoms at the points of lam."""
    if len(lam) == 0:
        raise ValueError("cannot build a Gram matrix on an empty point set")
    pts = lam.points
    diff = pts[:, None] - pts[None, :]
    return GramMatrix(points=lam, spectrum=spec, entries=kernel(spec, diff))


def bessel_constant(gram: GramMatrix) -> float:
    """Largest eigenvalue: the exact supremum of sum |f(lambda_k)|^2 / ||f||^2
    over the span of the window atoms, hence a lower estimate of any global
    sampling/Bessel constant for the full point set."""
    w, _ = gram.eigensystem()
    return float(w[-1])


def frame_lower_bound(gram: GramMatrix) -> float:
    """Smallest clipped eigenvalue.

    Bounds the sampling ratio only over the window atom span, so it is an
    upper estimate of the true infinite-set frame bound (restricting the
    competitors can only raise the minimum).
    """
    w, _ = gram.eigensystem()
    return float(w[0])


def spectral_summary(gram: GramMatrix) -> SpectralSummary:
    w, _ = gram.eigensystem()
    desc = w[::-1]
    return SpectralSummary(
        eigenvalues=tuple(float(x) for x in desc),
        max=float(desc[0]),
        min=float(desc[-1]),
    )


def diagonal_level(spec: SpectrumSet) -> float:
    """Common diagonal entry of every Gram matrix over this spectrum."""
    return measure(spec) / TWO_PI
