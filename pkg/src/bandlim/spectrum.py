"""Compact frequency sets as finite unions of intervals, and their kernel.

A spectrum is a finite union of closed intervals on the frequency axis, in
angular-frequency units (radians).  The module provides the Lebesgue measure,
the Minkowski dilation ``S + [-delta, delta]``, and the reproducing kernel

    kernel(S, u) = (1/2pi) * integral_S exp(i t u) dt,

normalised so that a band-limited function f whose spectral density lives on S
satisfies f(x) = <f, kernel(S, . - x)> under the plain L2(R) inner product.
Gram matrices of kernel translates therefore reproduce both point values and
exact L2 norms (see :mod:`bandlim.gram`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

# Below this value of |u| * max|endpoint| the closed form subtracts nearly
# equal complex exponentials; a short power series avoids the cancellation.
SERIES_THRESHOLD = 1e-4
_SERIES_TERMS = 6


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with lo < hi, in radians."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError("interval endpoints must be finite")
        if not lo < hi:
            raise ValueError(f"interval needs lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class SpectrumSet:
    """Finite union of intervals, kept sorted and pairwise disjoint.

    Overlapping or exactly touching intervals are merged at construction, so
    the stored intervals are always separated by strictly positive gaps and
    the measure is plainly additive.
    """

    intervals: tuple[Interval, ...]

    def __post_init__(self):
        ivs = sorted(self.intervals, key=lambda iv: (iv.lo, iv.hi))
        if not ivs:
            raise ValueError("spectrum needs at least one interval")
        merged = [ivs[0]]
        for iv in ivs[1:]:
            last = merged[-1]
            if iv.lo <= last.hi:
                merged[-1] = Interval(last.lo, max(last.hi, iv.hi))
            else:
                merged.append(iv)
        object.__setattr__(self, "intervals", tuple(merged))

    @classmethod
    def from_pairs(cls, pairs) -> "SpectrumSet":
        """Build from an ordered list of [lo, hi] pairs (the config format)."""
        return cls(tuple(Interval(float(lo), float(hi)) for lo, hi in pairs))

    def to_pairs(self) -> list[list[float]]:
        return [[iv.lo, iv.hi] for iv in self.intervals]

    @property
    def max_abs_endpoint(self) -> float:
        return max(max(abs(iv.lo), abs(iv.hi)) for iv in self.intervals)


def measure(spec: SpectrumSet) -> float:
    """Total length of the spectrum; strictly positive by construction."""
    return float(sum(iv.length for iv in spec.intervals))


def dilate(spec: SpectrumSet, delta: float) -> SpectrumSet:
    """Minkowski sum with [-delta, delta]; overlaps created by the widening merge."""
    if not delta > 0:
        raise ValueError(f"dilation width must be positive, got {delta}")
    return SpectrumSet(tuple(Interval(iv.lo - delta, iv.hi + delta) for iv in spec.intervals))


def shift(spec: SpectrumSet, s: float) -> SpectrumSet:
    """Translate every interval by s (modulates the kernel by exp(i*s*u))."""
    s = float(s)
    return SpectrumSet(tuple(Interval(iv.lo + s, iv.hi + s) for iv in spec.intervals))


def contains(spec: SpectrumSet, x):
    """Pointwise membership of x (scalar or array) in the closed union."""
    arr = np.asarray(x, dtype=float)
    inside = np.zeros(arr.shape, dtype=bool)
    for iv in spec.intervals:
        inside |= (arr >= iv.lo) & (arr <= iv.hi)
    return bool(inside) if arr.ndim == 0 else inside


def kernel(spec: SpectrumSet, u):
    """Evaluate (1/2pi) * integral_S exp(i*t*u) dt for scalar or array u.

    Closed form per interval, (exp(i*hi*u) - exp(i*lo*u)) / (2*pi*i*u); once
    |u| * max|endpoint| drops below ``SERIES_THRESHOLD`` each interval is
    summed by a six-term power series instead, which keeps the two branches
    within ~1e-15 of each other at the crossover.  kernel(S, 0) equals
    measure(S)/(2pi) and kernel(S, -u) == conj(kernel(S, u)).
    """
    u_arr = np.asarray(u, dtype=float)
    scalar = u_arr.ndim == 0
    u_arr = np.atleast_1d(u_arr)
    out = np.zeros(u_arr.shape, dtype=complex)

    small = np.abs(u_arr) * spec.max_abs_endpoint < SERIES_THRESHOLD
    if not small.all():
        ub = u_arr[~small]
        acc = np.zeros(ub.shape, dtype=complex)
        for iv in spec.intervals:
            acc += np.exp(1j * iv.hi * ub) - np.exp(1j * iv.lo * ub)
        out[~small] = acc / (TWO_PI * 1j * ub)
    if small.any():
        us = u_arr[small]
        acc = np.zeros(us.shape, dtype=complex)
        iu = 1j * us
        for iv in spec.intervals:
            power = np.ones(us.shape, dtype=complex)
            factorial = 1.0
            for m in range(_SERIES_TERMS):
                moment = (iv.hi ** (m + 1) - iv.lo ** (m + 1)) / (m + 1)
                acc += power * (moment / factorial)
                power = power * iu
                factorial *= m + 1
        out[small] = acc / TWO_PI

    return complex(out[0]) if scalar else out
