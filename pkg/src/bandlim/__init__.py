"""Numerical lab for band-limited approximation of deltas on discrete point sets.

The package is organised around a handful of small immutable value types:

* :mod:`bandlim.spectrum`       -- compact frequency sets and their reproducing kernel
* :mod:`bandlim.lattice`        -- uniformly discrete point sets and density estimators
* :mod:`bandlim.gram`           -- Gram matrices of kernel atoms, Bessel/frame estimates
* :mod:`bandlim.approx`         -- norm-budgeted delta-approximation solver, bound checks
* :mod:`bandlim.width`          -- subspace extraction from near-orthonormal systems
* :mod:`bandlim.concentration`  -- time-frequency concentration operator spectra
* :mod:`bandlim.constructions`  -- explicit sharp and fast-decay function families
* :mod:`bandlim.cli`            -- command-line experiments with JSON/CSV reports
"""

__version__ = "0.1.0"

from .spectrum import Interval, SpectrumSet, dilate, kernel, measure
from .lattice import DiscreteSet, DensityReport, density_plus, density_star, window
from .gram import GramMatrix, SpectralSummary, bessel_constant, build, frame_lower_bound
from .approx import (
    ApproxSolution,
    BoundCheck,
    TradeoffCurve,
    check_theorem1,
    min_error_with_budget,
    solve_delta,
    tradeoff,
)
from .width import PerturbedBasis, WidthCertificate, extract_subspace, singular_values, weyl_check
from .concentration import ConcentrationProblem, ConcentrationSpectrum, check_lemma1, spectrum_of
from .constructions import (
    FastDecayMollifier,
    FejerLocalizer,
    SharpExample,
    Theorem2Family,
    fejer,
    mollifier,
    sharp_error,
    t2_error,
    t2_eval,
)

__all__ = [
    "Interval",
    "SpectrumSet",
    "measure",
    "dilate",
    "kernel",
    "DiscreteSet",
    "DensityReport",
    "window",
    "density_plus",
    "density_star",
    "GramMatrix",
    "SpectralSummary",
    "build",
    "bessel_constant",
    "frame_lower_bound",
    "ApproxSolution",
    "TradeoffCurve",
    "BoundCheck",
    "solve_delta",
    "tradeoff",
    "min_error_with_budget",
    "check_theorem1",
    "PerturbedBasis",
    "WidthCertificate",
    "singular_values",
    "extract_subspace",
    "weyl_check",
    "ConcentrationProblem",
    "ConcentrationSpectrum",
    "spectrum_of",
    "check_lemma1",
    "SharpExample",
    "FejerLocalizer",
    "FastDecayMollifier",
    "Theorem2Family",
    "sharp_error",
    "fejer",
    "mollifier",
    "t2_eval",
    "t2_error",
]
