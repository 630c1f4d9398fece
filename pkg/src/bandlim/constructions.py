"""Explicit band-limited families with extremal approximation behaviour.

Four constructions:

* ``SharpExample`` -- atoms sin(a(x-j))/(pi(x-j)) on the integers, whose
  squared delta-approximation error is exactly 1 - a/pi: the configuration
  that meets the measure-density inequality with equality.
* ``FejerLocalizer`` -- phi(x) = (sin(delta x/2)/(delta x/2))^2, a
  nonnegative localiser bounded by 1 with spectrum in [-delta, delta];
  multiplying by phi(. - xi) never worsens pointwise delta errors while
  widening the spectrum by at most delta.
* ``FastDecayMollifier`` -- an infinite product of sinc factors with summable
  widths inside [-delta, delta], decaying like exp(-c |x|^beta).
* ``Theorem2Family`` -- the two-sideband family on points n + R^(-|n|-1)
  whose spectrum has measure 4*epsilon while the members interpolate deltas
  on a widening window, at the price of norms growing like exp(c|xi|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import zeta

from .spectrum import SpectrumSet, contains, dilate

PI = math.pi

# Factors whose width*|x| falls below this go into the analytic log tail.
_MOLLIFIER_SERIES_CUT = 1e-3


# ---------------------------------------------------------------------------
# Sharp example on the integers.

@dataclass(frozen=True)
class SharpExample:
    """Atoms f_j(x) = sin(a(x-j))/(pi(x-j)) for a in (0, pi)."""

    a: float

    def __post_init__(self):
        if not 0 < self.a < PI:
            raise ValueError(f"band half-width must lie in (0, pi), got {self.a}")

    def spectrum_set(self) -> SpectrumSet:
        return SpectrumSet.from_pairs([[-self.a, self.a]])

    def atom(self, j: int, x):
        """f_j(x); the peak value f_j(j) is a/pi."""
        u = np.asarray(x, dtype=float) - j
        return (self.a / PI) * np.sinc(self.a * u / PI)


def sharp_error(a: float) -> float:
    """Exact squared l2(Z) error of the sharp atoms: 1 - a/pi."""
    if not 0 < a < PI:
        raise ValueError(f"band half-width must lie in (0, pi), got {a}")
    return 1.0 - a / PI


def sharp_error_numeric(a: float, k_max: int) -> float:
    """Partial-sum evaluation of the same error over |k| <= k_max.

    Sums (sin(ak)/(pi k))^2 off-centre plus the (a/pi - 1)^2 centre term; the
    neglected tail is below 2/(pi^2 * k_max).
    """
    if not 0 < a < PI:
        raise ValueError(f"band half-width must lie in (0, pi), got {a}")
    if k_max < 1:
        raise ValueError("need at least one off-centre term")
    k = np.arange(1, k_max + 1, dtype=float)
    side = np.sin(a * k) / (PI * k)
    return float(2.0 * np.sum(side**2) + (a / PI - 1.0) ** 2)


def sharp_error_tail_bound(k_max: int) -> float:
    """Upper bound on the mass dropped by sharp_error_numeric."""
    return 2.0 / (PI * PI * k_max)


# ---------------------------------------------------------------------------
# Fejer localiser.

@dataclass(frozen=True)
class FejerLocalizer:
    """phi(x) = (sin(delta x / 2) / (delta x / 2))^2; phi(0) = 1, 0 <= phi <= 1."""

    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError(f"localiser width must be positive, got {self.delta}")

    def __call__(self, x):
        y = self.delta * np.asarray(x, dtype=float) / 2.0
        return np.sinc(y / PI) ** 2

    def spectrum_support(self) -> SpectrumSet:
        return SpectrumSet.from_pairs([[-self.delta, self.delta]])


def fejer(delta: float, x):
    """Evaluate the localiser; the x = 0 value is the limit 1."""
    return FejerLocalizer(delta)(x)


# ---------------------------------------------------------------------------
# Fast-decay mollifier.

@dataclass(eq=False)
class FastDecayMollifier:
    """Product of sinc(width_j * x) with widths delta * j^(-1/beta) / Z.

    Z = zeta(1/beta) normalises the widths to total delta, so the spectrum
    sits inside [-delta, delta]; psi(0) = 1 and |psi| <= 1 everywhere.  The
    j^(-1/beta) width schedule targets decay like exp(-c |x|^beta).

    Factors are evaluated exactly while width_j * x_max >= 1e-3; the rest of
    the infinite product enters through its power-series logarithm, summed in
    closed form with Hurwitz zeta values, so truncation never costs more than
    ~1e-12 in log-modulus over |x| <= x_max.
    """

    delta: float
    beta: float
    x_max: float = 1e4
    widths: np.ndarray = field(init=False, repr=False)
    truncation: int = field(init=False)

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError(f"total width must be positive, got {self.delta}")
        if not 0 < self.beta < 1:
            raise ValueError(f"decay exponent must lie in (0, 1), got {self.beta}")
        norm = float(zeta(1.0 / self.beta))
        count = max(1, math.ceil((self.delta * self.x_max / (norm * _MOLLIFIER_SERIES_CUT)) ** self.beta))
        j = np.arange(1, count + 1, dtype=float)
        self.widths = self.delta * j ** (-1.0 / self.beta) / norm
        self.truncation = count
        self._norm = norm
        # Hurwitz tails sum_{j > J} j^(-s) for the series part of the product.
        self._tail2 = float(zeta(2.0 / self.beta, count + 1)) * (self.delta / norm) ** 2
        self._tail4 = float(zeta(4.0 / self.beta, count + 1)) * (self.delta / norm) ** 4

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        if np.any(np.abs(arr) > self.x_max * (1 + 1e-12)):
            raise ValueError(
                f"evaluation beyond the configured range |x| <= {self.x_max}; "
                f"construct the mollifier with a larger x_max"
            )
        log_mod = np.zeros(arr.shape)
        sign = np.ones(arr.shape)
        with np.errstate(divide="ignore"):
            chunk = max(1, int(2e7) // max(arr.size, 1))
            for start in range(0, self.widths.size, chunk):
                w = self.widths[start : start + chunk]
                vals = np.sinc(w[:, None] * arr[None, :] / PI)
                log_mod += np.sum(np.log(np.abs(vals)), axis=0)
                sign *= np.prod(np.sign(vals), axis=0)
        # log sinc(z) = -z^2/6 - z^4/180 - ... for the truncated factors
        x2 = arr * arr
        log_mod += -(x2 * self._tail2) / 6.0 - (x2 * x2 * self._tail4) / 180.0
        out = sign * np.exp(log_mod)
        return float(out[0]) if scalar else out


def mollifier(delta: float, beta: float, x):
    """One-shot evaluation; builds the factor schedule for the given range."""
    arr = np.asarray(x, dtype=float)
    x_max = float(np.max(np.abs(arr))) if arr.size else 1.0
    return FastDecayMollifier(delta, beta, x_max=max(x_max, 1.0))(x)


# ---------------------------------------------------------------------------
# Two-sideband interpolation family.

@dataclass(frozen=True)
class Theorem2Family:
    """Functions concentrated on two epsilon-sidebands around +-pi that
    interpolate deltas on the perturbed integers lambda_n = n + R^(-|n|-1).

    The member at index n is

        f_n(x) = sin(pi x)/sin(pi lambda_n)
                 * sinc(w (x - lambda_n))
                 * prod_{|j| <= 2|n|, j != n} sin(w (x - lambda_j))
                                              / sin(w (lambda_n - lambda_j)),

    with every one of its 4|n| + 1 oscillatory factors sharing the width
    w = epsilon / (4|n| + 1).  The widths then total exactly epsilon, which
    keeps the spectrum inside [-pi-eps, -pi+eps] U [pi-eps, pi+eps] (total
    measure 4*epsilon); the n = 0 member uses the single factor of width
    epsilon.  Off-window samples decay like R^(-|k|+|n|) while the sup norm
    near lambda_n grows like R^(|n|+1), i.e. exponentially in the point.
    """

    epsilon: float
    growth: float  # the R parameter; larger R = flatter deltas, faster tails
    n_max: int = 6

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"sideband half-width must lie in (0, 1), got {self.epsilon}")
        if not self.growth > 1:
            raise ValueError(f"perturbation ratio must exceed 1, got {self.growth}")
        if self.n_max < 0:
            raise ValueError("n_max must be nonnegative")

    def spectrum_set(self) -> SpectrumSet:
        e = self.epsilon
        return SpectrumSet.from_pairs([[-PI - e, -PI + e], [PI - e, PI + e]])

    def lam(self, n):
        """The point lambda_n = n + R^(-|n|-1); vectorises over n."""
        n_arr = np.asarray(n, dtype=float)
        return n_arr + self.growth ** (-np.abs(n_arr) - 1.0)

    def nu(self, n: int) -> float:
        """Shared factor width for the member at index n."""
        return self.epsilon / (4.0 * abs(n) + 1.0)

    def factor_count(self, n: int) -> int:
        return 4 * abs(n) + 1

    def bandwidth_budget(self, n: int) -> float:
        """Total sideband width consumed by the member at index n (== epsilon)."""
        if n == 0:
            return self.epsilon
        return self.factor_count(n) * self.nu(n)


def _check_index(fam: Theorem2Family, n: int) -> float:
    if abs(n) > fam.n_max:
        raise ValueError(f"index |n|={abs(n)} exceeds the configured n_max={fam.n_max}")
    lam_n = float(fam.lam(n))
    s = float(np.sin(PI * lam_n))
    if abs(s) < 1e-300:
        raise ValueError(
            f"sin(pi * lambda_n) underflows at n={n}; lower n_max or reduce R "
            f"so that R^(-|n|-1) stays representable"
        )
    return lam_n


def _logsin_pi_at(fam: Theorem2Family, k: int) -> tuple[float, float]:
    """(sign, log|sin(pi * lambda_k)|) computed without forming lambda_k.

    For |k| beyond ~log2(1/eps) the offset h = R^(-|k|-1) drops below the
    float spacing of k, so sin(pi * (k + h)) evaluated directly is rounding
    noise; the reduction sin(pi(k+h)) = (-1)^k sin(pi h) keeps full accuracy
    at every index.
    """
    h = fam.growth ** (-(abs(k) + 1.0))
    if h > 1e-8:
        logmod = math.log(math.sin(PI * h))
    else:  # sin(pi h) = pi h to better than 1e-16 relative
        logmod = math.log(PI) - (abs(k) + 1.0) * math.log(fam.growth)
    sign = 1.0 if k % 2 == 0 else -1.0
    return sign, logmod


def _lattice_gap(fam: Theorem2Family, k: int, j: int) -> float:
    """lambda_k - lambda_j from index arithmetic: (k-j) + (h_k - h_j)."""
    h_k = fam.growth ** (-(abs(k) + 1.0))
    h_j = fam.growth ** (-(abs(j) + 1.0))
    return (k - j) + (h_k - h_j)


def t2_value_at(fam: Theorem2Family, n: int, k: int) -> float:
    """f_n(lambda_k) with the sideband reduction applied at both indices.

    Shares the log-modulus + sign evaluation of :func:`t2_eval` but never
    forms lambda_k explicitly, so the geometric R^(-|k|+|n|) tail comes out
    clean instead of being swamped by the float granularity of large k.
    """
    _check_index(fam, n)
    if k == n:
        return 1.0
    w = fam.nu(n) if n != 0 else fam.epsilon
    if n != 0 and abs(k) <= 2 * abs(n):
        return 0.0  # the j = k factor vanishes identically
    sign_k, log_k = _logsin_pi_at(fam, k)
    sign_n, log_n = _logsin_pi_at(fam, n)
    log_mod = log_k - log_n
    sign = sign_k * sign_n
    central = float(np.sinc(w * _lattice_gap(fam, k, n) / PI))
    if central == 0.0:
        return 0.0
    log_mod += math.log(abs(central))
    sign *= math.copysign(1.0, central)
    if n != 0:
        for j in range(-2 * abs(n), 2 * abs(n) + 1):
            if j == n:
                continue
            num = math.sin(w * _lattice_gap(fam, k, j))
            den = math.sin(w * _lattice_gap(fam, n, j))
            if num == 0.0:
                return 0.0
            log_mod += math.log(abs(num)) - math.log(abs(den))
            sign *= math.copysign(1.0, num) * math.copysign(1.0, den)
    return sign * math.exp(log_mod)


def t2_eval(fam: Theorem2Family, n: int, x):
    """Evaluate the family member at index n, in log-modulus + sign form.

    The raw factors span ~R^(2|n|) of dynamic range, so moduli accumulate in
    log space with a separate running sign; exact zeros (including the
    interpolation zeros at the lambda_j) propagate as zeros, and the value at
    lambda_n is exactly 1 because identical log terms cancel.
    """
    lam_n = _check_index(fam, n)
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr).astype(float)

    w = fam.nu(n) if n != 0 else fam.epsilon
    s_n = float(np.sin(PI * lam_n))
    with np.errstate(divide="ignore"):
        base = np.sin(PI * arr)
        log_mod = np.log(np.abs(base)) - math.log(abs(s_n))
        sign = np.sign(base) * math.copysign(1.0, s_n)
        central = np.sinc(w * (arr - lam_n) / PI)
        log_mod += np.log(np.abs(central))
        sign *= np.sign(central)
        if n != 0:
            for j in range(-2 * abs(n), 2 * abs(n) + 1):
                if j == n:
                    continue
                lam_j = float(fam.lam(j))
                den = float(np.sin(w * (lam_n - lam_j)))
                if den == 0.0:
                    raise ValueError(
                        f"degenerate factor at j={j}: sin(w(lambda_n-lambda_j)) = 0"
                    )
                num = np.sin(w * (arr - lam_j))
                log_mod += np.log(np.abs(num)) - math.log(abs(den))
                sign *= np.sign(num) * math.copysign(1.0, den)
    out = sign * np.exp(log_mod)
    return float(out[0]) if scalar else out


def t2_residuals(fam: Theorem2Family, n: int, k_max: int):
    """Sample indices k in [-k_max, k_max] and the values f_n(lambda_k) - delta_nk."""
    if k_max < 2 * abs(n) + 1:
        raise ValueError(f"window half-width {k_max} below 2|n|+1 = {2 * abs(n) + 1}")
    ks = np.arange(-k_max, k_max + 1)
    vals = np.array([t2_value_at(fam, n, int(k)) for k in ks])
    vals[ks == n] -= 1.0
    return ks, vals


def t2_error(fam: Theorem2Family, n: int, k_max: int) -> float:
    """l2 residual of f_n against the delta at n over the window |k| <= k_max."""
    _, resid = t2_residuals(fam, n, k_max)
    return float(np.linalg.norm(resid))


def t2_growth_proxy(fam: Theorem2Family, n: int, k_max: int, samples_per_unit: int = 16) -> float:
    """max |f_n| on a dense grid over |x| <= k_max; grows like R^(|n|+1)."""
    grid = np.linspace(-k_max, k_max, 2 * k_max * samples_per_unit + 1)
    return float(np.max(np.abs(t2_eval(fam, n, grid))))


# ---------------------------------------------------------------------------
# Numerical spectral-support verification.

def spectral_mass_outside(
    f,
    spec: SpectrumSet,
    margin: float = 0.02,
    half_length: float = 2048.0,
    spacing: float = 0.25,
) -> float:
    """Fraction of spectral power outside the margin-dilated spectrum.

    Samples f on [-half_length, half_length], applies a Gaussian taper
    (sigma = half_length/6, so truncation leakage sits near 1e-16 in power)
    and integrates the FFT power outside dilate(spec, margin).  The margin
    absorbs the taper's own bandwidth; for a function genuinely supported on
    spec the result is limited only by leakage, well below 1e-8.
    """
    if not margin > 0:
        raise ValueError("margin must be positive")
    nyquist = PI / spacing
    needed = spec.max_abs_endpoint + margin
    if nyquist <= needed:
        raise ValueError(
            f"spacing {spacing} cannot represent frequencies up to {needed:.3f}; "
            f"need spacing < {PI / needed:.3f}"
        )
    n = 1 << math.ceil(math.log2(2 * half_length / spacing))
    x = (np.arange(n) - n // 2) * spacing
    sigma = half_length / 6.0
    taper = np.exp(-0.5 * (x / sigma) ** 2)
    vals = np.asarray(f(x), dtype=complex) * taper
    power = np.abs(np.fft.fft(vals)) ** 2
    freqs = 2.0 * PI * np.fft.fftfreq(n, d=spacing)
    inside = contains(dilate(spec, margin), freqs)
    total = float(power.sum())
    if total == 0.0:
        raise ValueError("function is identically zero on the sampling grid")
    return float(power[~inside].sum() / total)
