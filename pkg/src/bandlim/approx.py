"""Norm-budgeted approximation of deltas on a window, and bound checking.

Target: coefficients c for f = sum_j c_j K_S(. - lambda_j) making the window
samples f(lambda_k) close to a Kronecker delta at one index xi while keeping
the exact L2 norm of f under control.  With G the window Gram matrix the two
quantities are quadratic forms,

    error^2 = ||G c - e_xi||^2,        norm^2 = c^H G c,

and the regularised problem  min ||G c - e_xi||^2 + mu * c^H G c  is solved by
(G + mu I) c = e_xi.  One Hermitian eigendecomposition of G (cached on the
GramMatrix) serves every target index and every mu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CertificateError
from .gram import PSD_CLIP_REL, GramMatrix
from .lattice import DiscreteSet
from .spectrum import TWO_PI, SpectrumSet, measure

BUDGET_REL_TOL = 1e-6
BUDGET_MAX_ITER = 80
_MONOTONE_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class ApproxSolution:
    """One delta-approximation solve on a window.

    ``error`` is the l2 distance of the window samples from the delta, and
    ``norm`` the exact L2(R) norm of the synthesised function; both are
    recomputable from the coefficients through the Gram matrix.
    """

    xi_index: int
    coefficients: np.ndarray
    error: float
    norm: float
    mu: float
    rank_deficient: bool = False

    def __post_init__(self):
        if not (-1e-12 <= self.error <= 1.0 + 1e-9):
            raise ValueError(f"window error {self.error} outside [0, 1]")


@dataclass(frozen=True)
class TradeoffCurve:
    """(mu, error, norm) triples along a descending mu grid."""

    entries: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        mus = [e[0] for e in self.entries]
        if any(b >= a for a, b in zip(mus, mus[1:])):
            raise ValueError("mu grid must be strictly descending")


@dataclass(frozen=True)
class BoundCheck:
    """Arithmetic of the inequality  m(S) >= 2*pi*(1 - d^2) * density."""

    measure_S: float
    density: float
    d: float
    rhs: float
    margin: float
    satisfied: bool


def _solve_components(gram: GramMatrix, xi: int):
    w, v = gram.eigensystem()
    if not 0 <= xi < gram.n:
        raise IndexError(f"target index {xi} outside window of size {gram.n}")
    b = v[xi, :].conj()  # coordinates of e_xi in the eigenbasis
    return w, v, b


def solve_delta(gram: GramMatrix, xi: int, mu: float) -> ApproxSolution:
    """Minimise ||G c - e_xi||^2 + mu * c^H G c.

    mu = 0 uses the clipped pseudo-inverse: the minimum-norm interpolant when
    G has full numerical rank, a flagged least-squares solution otherwise.
    """
    if mu < 0:
        raise ValueError(f"regularisation weight must be nonnegative, got {mu}")
    w, v, b = _solve_components(gram, xi)
    rank_deficient = False
    if mu == 0:
        cutoff = PSD_CLIP_REL * max(float(w[-1]), 1e-300)
        keep = w > cutoff
        rank_deficient = not bool(keep.all())
        inv = np.zeros_like(w)
        inv[keep] = 1.0 / w[keep]
        filt = inv
    else:
        filt = 1.0 / (w + mu)
    coeff_eig = filt * b
    resid = w * filt - 1.0  # -(mu/(w+mu)), or -1 on the clipped part
    b2 = np.abs(b) ** 2
    err = math.sqrt(float(np.sum(b2 * resid**2)))
    nrm = math.sqrt(max(float(np.sum(b2 * w * filt**2)), 0.0))
    return ApproxSolution(
        xi_index=int(xi),
        coefficients=v @ coeff_eig,
        error=min(err, 1.0),
        norm=nrm,
        mu=float(mu),
        rank_deficient=rank_deficient,
    )


def tradeoff(gram: GramMatrix, xi: int, mu_grid) -> TradeoffCurve:
    """solve_delta along a positive descending mu grid.

    The ridge path is monotone (error falls and norm rises as mu decreases);
    a violation beyond round-off is an internal failure, not repaired.
    """
    mus = [float(m) for m in mu_grid]
    if not mus or any(m <= 0 for m in mus):
        raise ValueError("mu grid must be positive")
    if any(b >= a for a, b in zip(mus, mus[1:])):
        raise ValueError("mu grid must be strictly descending")
    sols = [solve_delta(gram, xi, m) for m in mus]
    for hi, lo in zip(sols, sols[1:]):
        if lo.error > hi.error + _MONOTONE_SLACK or lo.norm < hi.norm - _MONOTONE_SLACK:
            raise CertificateError(
                f"ridge path lost monotonicity between mu={hi.mu} and mu={lo.mu}"
            )
    return TradeoffCurve(entries=tuple((s.mu, s.error, s.norm) for s in sols))


def min_error_with_budget(gram: GramMatrix, xi: int, budget: float) -> ApproxSolution:
    """Smallest window error achievable with norm <= budget.

    The ridge norm is continuous and strictly decreasing in mu, so a bisection
    on mu converges; if the minimum-norm interpolant already fits the budget
    it is returned directly.
    """
    if not budget > 0:
        raise ValueError(f"norm budget must be positive, got {budget}")
    base = solve_delta(gram, xi, 0.0)
    if base.norm <= budget:
        return base
    lo, hi = 0.0, 1.0
    sol_hi = solve_delta(gram, xi, hi)
    grow = 0
    while sol_hi.norm > budget:
        hi *= 4.0
        sol_hi = solve_delta(gram, xi, hi)
        grow += 1
        if grow > 200:  # norm -> 0 as mu -> inf, so this cannot happen
            raise CertificateError("budget bracket failed to close")
    best = sol_hi
    for _ in range(BUDGET_MAX_ITER):
        if abs(best.norm - budget) <= BUDGET_REL_TOL * budget:
            break
        mid = 0.5 * (lo + hi)
        sol = solve_delta(gram, xi, mid)
        if sol.norm <= budget:
            hi, best = mid, sol
        else:
            lo = mid
    return best


def min_norm_with_error(gram: GramMatrix, xi: int, target_error: float) -> ApproxSolution:
    """Smallest-norm solution whose window error stays <= target_error.

    Companion of :func:`min_error_with_budget` used by the end-to-end proof
    pipeline: the error is continuous and strictly increasing in mu, so the
    bisection finds the largest admissible mu (hence the smallest norm).
    """
    if not 0 < target_error < 1:
        raise ValueError(f"target error must lie in (0, 1), got {target_error}")
    base = solve_delta(gram, xi, 0.0)
    if base.error > target_error:
        raise ValueError(
            f"window cannot reach error {target_error}: even the unregularised "
            f"solution has error {base.error:.6f}"
        )
    lo, hi = 0.0, 1.0
    sol_hi = solve_delta(gram, xi, hi)
    grow = 0
    while sol_hi.error <= target_error:
        lo = hi
        hi *= 4.0
        sol_hi = solve_delta(gram, xi, hi)
        grow += 1
        if grow > 200:  # error -> 1 as mu -> inf
            raise CertificateError("error bracket failed to close")
    best = solve_delta(gram, xi, lo) if lo > 0 else base
    for _ in range(BUDGET_MAX_ITER):
        if abs(best.error - target_error) <= BUDGET_REL_TOL * max(target_error, 1e-12):
            break
        mid = 0.5 * (lo + hi)
        sol = solve_delta(gram, xi, mid)
        if sol.error <= target_error:
            lo, best = mid, sol
        else:
            hi = mid
    return best


def check_theorem1(
    spec: SpectrumSet,
    lam: DiscreteSet | None,
    d: float,
    density_estimate: float,
) -> BoundCheck:
    """Fill the bound check  m(S) >= 2*pi*(1 - d^2) * density.

    With finite-window density and error estimates a negative margin reports
    only that the finite data sit outside the inequality, never a
    falsification of the limiting statement.
    """
    if not 0 < d < 1:
        raise ValueError(f"approximation error d must lie in (0, 1), got {d}")
    if density_estimate < 0:
        raise ValueError("density estimate must be nonnegative")
    if lam is not None and math.isfinite(lam.separation):
        hard_cap = 1.0 / lam.separation + 1.0
        if density_estimate > hard_cap * (1 + 1e-9):
            raise ValueError(
                f"density estimate {density_estimate} impossible for separation "
                f"{lam.separation}"
            )
    m = measure(spec)
    rhs = TWO_PI * (1.0 - d * d) * density_estimate
    margin = m - rhs
    return BoundCheck(
        measure_S=m,
        density=float(density_estimate),
        d=float(d),
        rhs=rhs,
        margin=margin,
        satisfied=bool(margin >= -1e-9),
    )
