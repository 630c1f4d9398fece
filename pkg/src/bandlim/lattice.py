"""Uniformly discrete point sets, windowing, and finite-window densities.

All density numbers produced here are finite-data statistics: the estimators
report the value at the window length they were given and never extrapolate
to the infinite-set limit.  For point sets whose limiting densities are known
(integers, dilations, bounded perturbations of integers) the finite-window
deviation is O(1/r).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

# The sliding-window count only changes when a window edge crosses a point,
# so a grid step below the separation finds the exact finite-r maximum.
GRID_STEP_FRACTION = 0.25


@dataclass(frozen=True, eq=False)
class DiscreteSet:
    """Strictly increasing finite point set with a certified minimum gap.

    ``separation`` is a positive lower bound on every consecutive gap.  When
    not supplied it is the exact minimum gap; windows inherit their parent's
    bound, which stays valid (gaps of a subset only grow).
    """

    points: np.ndarray
    separation: float | None = None

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 1:
            raise ValueError("points must be a one-dimensional sequence")
        gaps = np.diff(pts)
        if gaps.size and not np.all(gaps > 0):
            raise ValueError("points must be strictly increasing with no duplicates")
        if self.separation is None:
            sep = float(gaps.min()) if gaps.size else math.inf
        else:
            sep = float(self.separation)
            if not sep > 0:
                raise ValueError(f"separation must be positive, got {sep}")
            if gaps.size and gaps.min() < sep * (1.0 - 1e-12):
                raise ValueError("declared separation exceeds an observed gap")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "separation", sep)

    def __len__(self) -> int:
        return int(self.points.size)

    @property
    def span(self) -> float:
        return float(self.points[-1] - self.points[0]) if len(self) else 0.0


@dataclass(frozen=True)
class DensityReport:
    """Window statistics at one window length r.

    ``dminus`` scans the same sliding grid as ``dplus``; because that grid
    includes windows hanging over the data edges, the minimum of a finite
    truncation is 0.  ``dstar`` is the symmetric-window count at the largest
    admissible half-width span/2.
    """

    r: float
    dplus: float
    dminus: float
    dstar: float
    window_count: int

    def __post_init__(self):
        if not (-1e-12 <= self.dminus <= self.dstar + 1e-12):
            raise ValueError("density report violates dminus <= dstar")
        if not self.dstar <= self.dplus + 1e-12:
            raise ValueError("density report violates dstar <= dplus")


def window(lam: DiscreteSet, a: float, r: float) -> DiscreteSet:
    """Points strictly inside (a - r, a + r); may be empty; separation inherited."""
    if not r > 0:
        raise ValueError(f"window half-width must be positive, got {r}")
    pts = lam.points
    lo = np.searchsorted(pts, a - r, side="right")
    hi = np.searchsorted(pts, a + r, side="left")
    return DiscreteSet(pts[lo:hi], separation=lam.separation)


def _sliding_counts(lam: DiscreteSet, r: float):
    """Counts of points strictly inside (a, a+r) over the sliding grid of a.

    Works in coordinates relative to the first point so that translating the
    whole set by an exactly representable shift reproduces identical counts.
    """
    q = lam.points - lam.points[0]
    step = lam.separation * GRID_STEP_FRACTION
    grid = np.arange(-r, q[-1] + step, step)
    upper = np.searchsorted(q, grid + r, side="left")
    lower = np.searchsorted(q, grid, side="right")
    return upper - lower


def density_plus(lam: DiscreteSet, r: float) -> float:
    """Maximal count per unit length over windows of length r.

    Finite-r estimator of the upper uniform density: exact maximum over all
    window positions (the grid step separation/4 cannot skip a configuration),
    reported at the given r without extrapolation.
    """
    if len(lam) == 0:
        raise ValueError("cannot estimate density of an empty set")
    if not r > 0:
        raise ValueError(f"window length must be positive, got {r}")
    if not r < lam.span:
        raise ValueError(
            f"window length r={r} must be smaller than the data span {lam.span}"
        )
    counts = _sliding_counts(lam, r)
    return float(counts.max() / r)


def density_minus(lam: DiscreteSet, r: float) -> float:
    """Minimal count per unit length over the same sliding grid as density_plus.

    For a finite truncation the grid includes windows beyond the data edges,
    so this statistic is 0; it is reported for completeness only.
    """
    if len(lam) == 0:
        raise ValueError("cannot estimate density of an empty set")
    if not 0 < r < lam.span:
        raise ValueError("window length must lie in (0, span)")
    counts = _sliding_counts(lam, r)
    return float(counts.min() / r)


def density_star(lam: DiscreteSet, a: float) -> float:
    """Symmetric-window count card(points in (-a, a)) / (2a)."""
    if not a > 0:
        raise ValueError(f"half-width must be positive, got {a}")
    if len(lam) == 0:
        raise ValueError("cannot estimate density of an empty set")
    if a > lam.span / 2:
        raise ValueError(f"half-width a={a} exceeds span/2={lam.span / 2}")
    pts = lam.points
    count = np.searchsorted(pts, a, side="left") - np.searchsorted(pts, -a, side="right")
    return float(count / (2.0 * a))


def density_star_curve(lam: DiscreteSet, grid_size: int = 50) -> list[tuple[float, float]]:
    """(a, density_star(a)) over a geometric grid of half-widths, for limsup inspection."""
    amax = lam.span / 2
    if not amax > 0:
        raise ValueError("set too small for a density curve")
    amin = max(lam.separation, amax / 1024)
    avals = np.geomspace(amin, amax, grid_size)
    return [(float(a), density_star(lam, a)) for a in avals]


def density_report(lam: DiscreteSet, r: float) -> DensityReport:
    """Bundle dplus/dminus/dstar at window length r into one report."""
    if len(lam) == 0:
        raise ValueError("cannot estimate density of an empty set")
    if not 0 < r < lam.span:
        raise ValueError("window length must lie in (0, span)")
    counts = _sliding_counts(lam, r)
    return DensityReport(
        r=float(r),
        dplus=float(counts.max() / r),
        dminus=float(counts.min() / r),
        dstar=density_star(lam, lam.span / 2),
        window_count=int(counts.size),
    )


# ---------------------------------------------------------------------------
# Point-set constructors and the config-spec parser.

def integer_range(lo: int, hi: int) -> DiscreteSet:
    """Integers in [lo, hi]."""
    if hi < lo:
        raise ValueError("empty integer range")
    return DiscreteSet(np.arange(lo, hi + 1, dtype=float), separation=1.0)


def arithmetic_progression(start: float, step: float, count: int) -> DiscreteSet:
    if not step > 0 or count < 1:
        raise ValueError("need positive step and at least one point")
    return DiscreteSet(start + step * np.arange(count, dtype=float), separation=step)


def perturbed_integers(ratio: float, n_max: int) -> DiscreteSet:
    """Points n + ratio**(-|n|-1) for |n| <= n_max; an o(1) perturbation of Z."""
    if not ratio > 1:
        raise ValueError(f"ratio must exceed 1, got {ratio}")
    n = np.arange(-n_max, n_max + 1, dtype=float)
    return DiscreteSet(n + ratio ** (-np.abs(n) - 1))


_SPEC_RE = re.compile(r"^\s*(\w+)\s*\(([^)]*)\)\s*$")


def from_spec(spec) -> DiscreteSet:
    """Build a point set from a config literal.

    Accepts an explicit list of reals, a path string ``@file`` with one real
    per line, or a generator string: ``integers(lo,hi)``,
    ``perturbed_integers(R,nmax)``, ``arithmetic(start,step,count)``.
    """
    if isinstance(spec, (list, tuple, np.ndarray)):
        return DiscreteSet(np.sort(np.asarray(spec, dtype=float)))
    if not isinstance(spec, str):
        raise ValueError(f"unsupported point-set spec: {spec!r}")
    if spec.startswith("@"):
        values = np.loadtxt(spec[1:], ndmin=1)
        return DiscreteSet(np.sort(values))
    m = _SPEC_RE.match(spec)
    if m is None:
        raise ValueError(f"cannot parse point-set spec {spec!r}")
    name, raw = m.group(1), m.group(2)
    args = [float(tok) for tok in raw.split(",") if tok.strip()]
    if name == "integers" and len(args) == 2:
        return integer_range(int(args[0]), int(args[1]))
    if name == "perturbed_integers" and len(args) == 2:
        return perturbed_integers(args[0], int(args[1]))
    if name == "arithmetic" and len(args) == 3:
        return arithmetic_progression(args[0], args[1], int(args[2]))
    raise ValueError(f"unknown point-set generator {spec!r}")
