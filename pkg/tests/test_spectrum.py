import math

import numpy as np
import pytest

from bandlim.spectrum import (
    SERIES_THRESHOLD,
    TWO_PI,
    Interval,
    SpectrumSet,
    contains,
    dilate,
    kernel,
    measure,
    shift,
)
from conftest import kernel_quad_oracle

PI = math.pi


class TestConstruction:
    def test_interval_rejects_degenerate(self):
        with pytest.raises(ValueError):
            Interval(1.0, 1.0)
        with pytest.raises(ValueError):
            Interval(2.0, 1.0)

    def test_touching_intervals_merge(self):
        s = SpectrumSet.from_pairs([[0, 1], [1, 2]])
        assert s.to_pairs() == [[0.0, 2.0]]

    def test_overlapping_intervals_merge(self):
        s = SpectrumSet.from_pairs([[0, 1.5], [1, 2], [5, 6]])
        assert s.to_pairs() == [[0.0, 2.0], [5.0, 6.0]]

    def test_disjoint_intervals_kept_sorted(self):
        s = SpectrumSet.from_pairs([[2, 3], [0, 1]])
        assert s.to_pairs() == [[0.0, 1.0], [2.0, 3.0]]


class TestMeasure:
    def test_single_interval(self):
        s = SpectrumSet.from_pairs([[-PI / 2, PI / 2]])
        assert measure(s) == pytest.approx(PI, abs=0)

    def test_two_sidebands(self):
        # two eps-sidebands around +-pi have total measure 4*eps
        eps = 0.1
        s = SpectrumSet.from_pairs([[-PI - eps, -PI + eps], [PI - eps, PI + eps]])
        assert measure(s) == pytest.approx(4 * eps, rel=1e-15)

    def test_two_unit_intervals(self):
        s = SpectrumSet.from_pairs([[0, 1], [2, 3]])
        assert measure(s) == 2.0


class TestDilate:
    def test_single_interval_stretch(self):
        s = dilate(SpectrumSet.from_pairs([[0, 1]]), 0.25)
        assert s.to_pairs() == [[-0.25, 1.25]]

    def test_gap_closes_and_merges(self):
        s = dilate(SpectrumSet.from_pairs([[0, 1], [1.2, 2]]), 0.2)
        assert s.to_pairs() == [[-0.2, 2.2]]

    def test_symmetric_case(self):
        a, d = 1.3, 0.4
        s = dilate(SpectrumSet.from_pairs([[-a, a]]), d)
        assert s.to_pairs() == [[-a - d, a + d]]

    def test_measure_growth_bound(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            edges = np.sort(rng.uniform(-5, 5, 6))
            s = SpectrumSet.from_pairs([[edges[0], edges[1]], [edges[2], edges[3]], [edges[4], edges[5]]])
            d = float(rng.uniform(0.01, 2.0))
            grown = dilate(s, d)
            cap = measure(s) + 2 * d * len(s.intervals)
            assert measure(grown) <= cap + 1e-12
            if len(grown.intervals) == len(s.intervals):
                assert measure(grown) == pytest.approx(cap, rel=1e-12)

    def test_rejects_nonpositive_delta(self):
        s = SpectrumSet.from_pairs([[0, 1]])
        with pytest.raises(ValueError):
            dilate(s, 0.0)
        with pytest.raises(ValueError):
            dilate(s, -0.1)


class TestKernel:
    def test_symmetric_interval_is_real_sinc(self):
        a = 1.1
        s = SpectrumSet.from_pairs([[-a, a]])
        for u in (0.3, 1.0, 7.7, -2.5):
            want = math.sin(a * u) / (PI * u)
            got = kernel(s, u)
            assert got.imag == pytest.approx(0.0, abs=1e-16)
            assert got.real == pytest.approx(want, rel=1e-14)

    def test_value_at_zero_is_measure_over_2pi(self):
        a = 0.9
        s = SpectrumSet.from_pairs([[-a, a]])
        assert kernel(s, 0.0) == pytest.approx(a / PI, rel=1e-15)

    def test_two_interval_value_matches_quadrature(self):
        s = SpectrumSet.from_pairs([[0, 1], [2, 3]])
        got = kernel(s, 1.7)
        want = kernel_quad_oracle(s, 1.7)
        assert abs(got - want) <= 1e-12

    def test_quadrature_agreement_random_spectra(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            edges = np.sort(rng.uniform(-4, 4, 4))
            if edges[1] - edges[0] < 1e-3 or edges[3] - edges[2] < 1e-3 or edges[2] - edges[1] < 1e-3:
                continue
            s = SpectrumSet.from_pairs([[edges[0], edges[1]], [edges[2], edges[3]]])
            u = float(rng.uniform(-20, 20))
            assert abs(kernel(s, u) - kernel_quad_oracle(s, u)) <= 1e-12

    def test_vectorised_evaluation_matches_scalar(self):
        s = SpectrumSet.from_pairs([[0.2, 1.0], [1.5, 2.5]])
        us = np.array([[-3.0, 0.0], [1e-9, 4.2]])
        out = kernel(s, us)
        assert out.shape == us.shape
        for idx in np.ndindex(us.shape):
            assert out[idx] == kernel(s, float(us[idx]))


class TestKernelInvariants:
    def test_peak_at_zero(self):
        rng = np.random.default_rng(17)
        s = SpectrumSet.from_pairs([[-2, -1], [0.5, 2.2]])
        cap = measure(s) / TWO_PI
        us = rng.uniform(-30, 30, 200)
        vals = np.abs(kernel(s, us))
        assert np.all(vals <= cap + 1e-15)
        assert abs(kernel(s, 0.0)) == pytest.approx(cap, rel=1e-15)

    def test_hermitian_symmetry(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            edges = np.sort(rng.uniform(-3, 3, 4))
            if min(edges[1] - edges[0], edges[3] - edges[2]) < 1e-6:
                continue
            s = SpectrumSet.from_pairs([[edges[0], edges[1]], [edges[2], edges[3]]])
            u = float(rng.uniform(-50, 50))
            assert abs(kernel(s, -u) - np.conj(kernel(s, u))) <= 1e-15

    def test_series_closed_form_crossover(self):
        # evaluate both branches at the same u just inside the series regime
        s = SpectrumSet.from_pairs([[0.3, 1.1], [2.0, 3.5]])
        u = 0.999 * SERIES_THRESHOLD / s.max_abs_endpoint
        series_val = kernel(s, u)  # dispatches to the series branch
        closed = sum(
            (np.exp(1j * iv.hi * u) - np.exp(1j * iv.lo * u)) / (TWO_PI * 1j * u)
            for iv in s.intervals
        )
        assert abs(series_val - closed) <= 1e-12

    def test_modulation_covariance(self):
        rng = np.random.default_rng(29)
        s = SpectrumSet.from_pairs([[-1, -0.2], [0.4, 1.7]])
        for _ in range(50):
            shift_by = float(rng.uniform(-5, 5))
            u = float(rng.uniform(-10, 10))
            lhs = kernel(shift(s, shift_by), u)
            rhs = np.exp(1j * shift_by * u) * kernel(s, u)
            assert abs(lhs - rhs) <= 1e-12


def test_contains():
    s = SpectrumSet.from_pairs([[0, 1], [2, 3]])
    assert contains(s, 0.5) and contains(s, 1.0) and contains(s, 2.0)
    assert not contains(s, 1.5)
    flags = contains(s, np.array([0.5, 1.5, 2.5]))
    assert flags.tolist() == [True, False, True]
