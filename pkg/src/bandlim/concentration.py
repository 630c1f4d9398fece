"""Spectra of time-frequency concentration operators.

For a band set S and a time set Q (both finite unions of intervals) the
composition "restrict the spectrum to S, then cut the function to Q" is a
Hermitian contraction whose eigenvalues lie in [0, 1] and measure how much of
a band-limited function's energy can sit inside Q.  On the frequency side the
operator acts on L2(S) with kernel k_Q(t - t'), k_Q(u) = (1/2pi) int_Q
exp(i x u) dx, i.e. the interval-union kernel with the roles of time and
frequency swapped.

Discretisation: composite Gauss-Legendre nodes t_m on S with weights w_m give
the symmetric Nystrom matrix  A[m, n] = sqrt(w_m w_n) * k_Q(t_m - t_n),
whose trace is exactly m(S) m(Q) / (2 pi).  If a subspace of band-limited
functions keeps at least a fraction c of its energy in Q, its dimension is at
most trace / c; counting eigenvalues >= c gives the maximal such dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectrum import TWO_PI, SpectrumSet, kernel, measure

NODES_PER_UNIT = 6
MIN_NODES_PER_INTERVAL = 32
COARSE_REJECT_PER_UNIT = 4
DEFAULT_C_GRID = tuple(round(0.1 * i, 1) for i in range(1, 10))


@dataclass(eq=False)
class ConcentrationProblem:
    """Band set, time set, and the quadrature rule carried on the band set."""

    band: SpectrumSet
    time_set: SpectrumSet
    nodes_per_interval: int | None = None
    nodes: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)
    time_bandwidth: float = field(init=False)

    def __post_init__(self):
        tbp = measure(self.band) * measure(self.time_set) / TWO_PI
        nodes, weights = [], []
        for iv in self.band.intervals:
            share = iv.length * measure(self.time_set) / TWO_PI
            if self.nodes_per_interval is None:
                count = max(MIN_NODES_PER_INTERVAL, math.ceil(NODES_PER_UNIT * share))
            else:
                count = int(self.nodes_per_interval)
                needed = math.ceil(COARSE_REJECT_PER_UNIT * share)
                if count < needed:
                    raise ValueError(
                        f"quadrature too coarse: {count} nodes on [{iv.lo}, {iv.hi}] "
                        f"for a time-bandwidth share of {share:.2f}; "
                        f"use at least {needed} (default would be "
                        f"{max(MIN_NODES_PER_INTERVAL, math.ceil(NODES_PER_UNIT * share))})"
                    )
            x, w = np.polynomial.legendre.leggauss(count)
            half = 0.5 * iv.length
            mid = 0.5 * (iv.lo + iv.hi)
            nodes.append(mid + half * x)
            weights.append(half * w)
        self.nodes = np.concatenate(nodes)
        self.weights = np.concatenate(weights)
        if not np.all(self.weights > 0):
            raise ValueError("quadrature produced nonpositive weights")
        self.time_bandwidth = tbp

    def doubled(self) -> "ConcentrationProblem":
        """Same problem at twice the node count, for convergence checks."""
        per = self.nodes_per_interval
        if per is None:
            per = max(len(self.nodes) // len(self.band.intervals), MIN_NODES_PER_INTERVAL)
        return ConcentrationProblem(self.band, self.time_set, nodes_per_interval=2 * per)


@dataclass(frozen=True, eq=False)
class ConcentrationSpectrum:
    """Eigenvalues (descending, clipped to [0, 1]), their sum, and level counts."""

    eigenvalues: np.ndarray
    trace: float
    counts: dict[float, int]

    def __post_init__(self):
        ev = self.eigenvalues
        if ev.size and (ev.min() < -1e-8 or ev.max() > 1 + 1e-8):
            raise ValueError(
                f"concentration eigenvalues escape [0, 1]: range "
                f"[{ev.min():.3e}, {ev.max():.3e}]"
            )


@dataclass(frozen=True)
class Lemma1Check:
    """count <= m(S) m(Q) / (2 pi c) for the eigencount at level c."""

    c: float
    count: int
    bound: float
    ratio: float
    satisfied: bool


def build_operator(problem: ConcentrationProblem) -> np.ndarray:
    """Symmetrised Nystrom matrix of the band-then-time limiting operator."""
    t = problem.nodes
    k = kernel(problem.time_set, t[:, None] - t[None, :])
    root_w = np.sqrt(problem.weights)
    return root_w[:, None] * k * root_w[None, :]


def spectrum_of(problem: ConcentrationProblem, c_grid=DEFAULT_C_GRID) -> ConcentrationSpectrum:
    """Eigendecompose the operator and count eigenvalues above each level.

    The span of the top-k eigenvectors keeps at least an eigenvalue_k fraction
    of its energy in the time set, so counts[c] is the dimension of the
    largest c-concentrated subspace representable at this discretisation.
    """
    a = build_operator(problem)
    ev = np.linalg.eigvalsh(a)[::-1]
    if ev.size and (ev.min() < -1e-8 or ev.max() > 1 + 1e-8):
        raise ValueError(
            f"discretised operator has eigenvalues outside [0, 1]: "
            f"[{ev.min():.3e}, {ev.max():.3e}]; refine the quadrature"
        )
    clipped = np.clip(ev, 0.0, 1.0)
    clipped.flags.writeable = False
    counts = {float(c): int(np.count_nonzero(clipped >= c)) for c in c_grid}
    return ConcentrationSpectrum(
        eigenvalues=clipped,
        trace=float(clipped.sum()),
        counts=counts,
    )


def dimension_bound(problem: ConcentrationProblem, c: float) -> float:
    """m(Q) m(S) / (2 pi c): the dimension cap for c-concentrated subspaces."""
    if not 0 < c < 1:
        raise ValueError(f"concentration level must lie in (0, 1), got {c}")
    return measure(problem.time_set) * measure(problem.band) / (TWO_PI * c)


def check_lemma1(
    problem: ConcentrationProblem,
    c: float,
    spectrum: ConcentrationSpectrum | None = None,
) -> Lemma1Check:
    """Verify the eigencount at level c against the dimension bound."""
    bound = dimension_bound(problem, c)
    if spectrum is None:
        spectrum = spectrum_of(problem, c_grid=(c,))
    count = int(np.count_nonzero(spectrum.eigenvalues >= c))
    return Lemma1Check(
        c=float(c),
        count=count,
        bound=bound,
        ratio=count / bound,
        satisfied=bool(count <= bound),
    )
