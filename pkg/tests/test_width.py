import math

import numpy as np
import pytest

from bandlim.errors import CertificateError
from bandlim.width import (
    PerturbedBasis,
    extract_subspace,
    saturated_drift_basis,
    saturated_random_basis,
    singular_values,
    weyl_check,
)


class TestSingularValues:
    def test_identity(self):
        assert singular_values(np.eye(5)).tolist() == [1.0] * 5

    def test_diagonal(self):
        s = singular_values(np.diag([3.0, 0.0]))
        assert s.tolist() == [3.0, 0.0]

    def test_hilbert_schmidt_identity(self):
        rng = np.random.default_rng(42)
        t = rng.standard_normal((20, 20)) + 1j * rng.standard_normal((20, 20))
        s = singular_values(t)
        frob = float(np.sum(np.abs(t) ** 2))
        assert abs(np.sum(s**2) - frob) <= 1e-10 * frob

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            singular_values(np.ones((2, 3)))


class TestPerturbedBasis:
    def test_accepts_saturating_perturbation(self):
        rng = np.random.default_rng(1)
        basis = saturated_random_basis(30, 0.2, rng)
        dev = np.linalg.norm(basis.vectors - np.eye(30), axis=0)
        assert np.allclose(dev, 0.2, atol=1e-12)

    def test_rejects_oversized_perturbation(self):
        v = np.eye(4)
        v[0, 0] += 0.5
        with pytest.raises(ValueError):
            PerturbedBasis(vectors=v, d=0.2)

    def test_rejects_bad_d(self):
        with pytest.raises(ValueError):
            PerturbedBasis(vectors=np.eye(3), d=0.0)
        with pytest.raises(ValueError):
            PerturbedBasis(vectors=np.eye(3), d=1.0)


class TestExtractSubspace:
    def test_unperturbed_family(self):
        basis = PerturbedBasis(vectors=np.eye(100), d=0.1)
        cert = extract_subspace(basis, 2.0)
        assert cert.k == 96
        assert cert.certified_sigma == pytest.approx(1.0, abs=1e-12)
        assert cert.certified_sigma >= 0.5

    def test_dimension_arithmetic(self):
        basis = PerturbedBasis(vectors=np.eye(100), d=0.1)
        cert = extract_subspace(basis, 2.0)
        assert cert.k == 100 - math.floor(4 * 0.01 * 100)
        assert cert.k > (1 - 0.04) * 100 - 1

    def test_adversarial_drift_randomized_minimum(self):
        rng = np.random.default_rng(5)
        basis = saturated_drift_basis(50, 0.3, rng)
        cert = extract_subspace(basis, 1.5)
        bound = 1 - 1 / 1.5
        assert cert.certified_sigma >= bound
        # randomized minimum over the certified subspace stays above the bound
        c = rng.standard_normal((50, 10_000)) + 1j * rng.standard_normal((50, 10_000))
        proj = cert.basis @ (cert.basis.conj().T @ c)
        proj /= np.linalg.norm(proj, axis=0, keepdims=True)
        norms = np.linalg.norm(basis.vectors @ proj, axis=0)
        assert norms.min() >= bound - 1e-12
        assert norms.min() >= cert.certified_sigma - 1e-9

    def test_exact_minimum_is_sigma_k(self):
        rng = np.random.default_rng(9)
        basis = saturated_random_basis(40, 0.25, rng)
        cert = extract_subspace(basis, 1.8)
        # the k-th right singular vector attains the minimum on X
        _, s, vh = np.linalg.svd(basis.vectors)
        minimiser = vh[cert.k - 1].conj()
        val = np.linalg.norm(basis.vectors @ minimiser)
        assert val == pytest.approx(cert.certified_sigma, rel=1e-12)

    def test_degenerate_small_product_keeps_full_space(self):
        basis = PerturbedBasis(vectors=np.eye(5), d=0.1)
        cert = extract_subspace(basis, 1.2)  # alpha^2 d^2 n < 1
        assert cert.k == 5
        assert cert.basis.shape == (5, 5)

    def test_alpha_range_enforced(self):
        basis = PerturbedBasis(vectors=np.eye(10), d=0.2)
        for alpha in (1.0, 5.0, 0.5):
            with pytest.raises(ValueError):
                extract_subspace(basis, alpha)

    def test_internal_failure_raises(self):
        class Lying(PerturbedBasis):
            def __post_init__(self):  # skips the deviation validation
                object.__setattr__(self, "vectors", np.asarray(self.vectors, complex))
                object.__setattr__(self, "d", float(self.d))

        bad = Lying(vectors=0.05 * np.eye(30), d=0.1)
        with pytest.raises(CertificateError):
            extract_subspace(bad, 2.0)


class TestWeylInequality:
    def test_trivial_pair(self):
        rep = weyl_check(np.eye(6), np.zeros((6, 6)))
        assert rep.passed
        assert rep.worst_violation <= 0

    def test_complement_tail_bound(self):
        # s_j(T2)^2 <= d^2 n / j follows from the Hilbert-Schmidt identity
        rng = np.random.default_rng(13)
        n, d = 40, 0.3
        basis = saturated_random_basis(n, d, rng)
        t2 = np.eye(n) - basis.vectors
        s2 = singular_values(t2)
        j = np.arange(1, n + 1)
        assert np.all(s2**2 <= d * d * n / j + 1e-12)

    def test_random_pair(self):
        rng = np.random.default_rng(17)
        t1 = rng.standard_normal((30, 30)) + 1j * rng.standard_normal((30, 30))
        t2 = rng.standard_normal((30, 30)) + 1j * rng.standard_normal((30, 30))
        rep = weyl_check(t1, t2, tol=1e-9)
        assert rep.passed
        assert rep.worst_violation <= 1e-9

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            weyl_check(np.eye(3), np.eye(4))


class TestLemmaChain:
    def test_synthesis_bound_on_sampled_vectors(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            n = int(rng.integers(15, 80))
            d = float(rng.uniform(0.1, 0.45))
            alpha = float(rng.uniform(1.1, 0.95 / d))
            basis = saturated_random_basis(n, d, rng)
            cert = extract_subspace(basis, alpha)
            c = rng.standard_normal((n, 64)) + 1j * rng.standard_normal((n, 64))
            proj = cert.basis @ (cert.basis.conj().T @ c)
            proj /= np.linalg.norm(proj, axis=0, keepdims=True)
            lhs = np.linalg.norm(basis.vectors @ proj, axis=0) ** 2
            assert np.all(lhs >= (1 - 1 / alpha) ** 2 - 1e-10)

    def test_proof_chain_inequality(self):
        rng = np.random.default_rng(23)
        n, d, alpha = 60, 0.2, 2.0
        basis = saturated_random_basis(n, d, rng)
        cert = extract_subspace(basis, alpha)
        t2 = np.eye(n) - basis.vectors
        s2 = singular_values(t2)
        s1 = singular_values(basis.vectors)
        k = cert.k
        assert s1[k - 1] >= 1.0 - s2[n - k] - 1e-10  # s_k(T1) >= s_n(I) - s_{n-k+1}(T2)

    def test_unitary_invariance(self):
        rng = np.random.default_rng(27)
        n = 25
        basis = saturated_random_basis(n, 0.3, rng)
        q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        s_before = singular_values(basis.vectors)
        s_after = singular_values(q @ basis.vectors)
        assert np.abs(s_before - s_after).max() <= 1e-12
