"""Linear Gaussian arrows: algebra, accuracy, canonical classes, conditionals.

Oracles here are closed-form covariance algebra evaluated independently with
numpy; the Monte-Carlo simulation oracle lives in the acceptance suite.
"""

from __future__ import annotations

import numpy as np
import pytest

from itcat.linear import (
    LinearClass,
    LinearError,
    LinearIT,
    informativeness_witness,
    is_lin_distribution,
    is_psd,
    lin_accuracy_le,
    lin_arrow,
    lin_canonical_class,
    lin_class_equal,
    lin_class_le,
    lin_compose,
    lin_conditional,
    lin_distribution,
    lin_equal,
    lin_identity,
    lin_lift,
    lin_product,
    lin_tensor,
    lin_terminal,
    min_variance_estimator,
    subspace_contains,
)


def rand_psd(rng: np.random.Generator, dim: int, rank: int | None = None) -> np.ndarray:
    cols = dim if rank is None else rank
    m = rng.normal(size=(dim, cols))
    return m @ m.T


def rand_arrow(rng: np.random.Generator, src: int, dst: int, *, noise_rank=None) -> LinearIT:
    return lin_arrow(rng.normal(size=(dst, src)), rand_psd(rng, dst, noise_rank))


@pytest.fixture
def nprng() -> np.random.Generator:
    return np.random.default_rng(42)


class TestConstruction:
    def test_validates_sigma_shape(self):
        with pytest.raises(LinearError):
            lin_arrow([[1.0]], [[1.0, 0.0]])

    def test_validates_sigma_symmetry(self):
        with pytest.raises(LinearError, match="symmetric"):
            lin_arrow(np.eye(2), [[1.0, 0.5], [0.0, 1.0]])

    def test_validates_sigma_psd(self):
        with pytest.raises(LinearError, match="positive semidefinite"):
            lin_arrow([[1.0]], [[-0.5]])

    def test_tiny_asymmetry_is_symmetrised(self):
        eps = 1e-12
        a = lin_arrow(np.eye(2), [[1.0, eps], [0.0, 1.0]])
        assert np.array_equal(a.Sigma, a.Sigma.T)

    def test_arrays_are_read_only(self):
        a = lin_arrow([[1.0]], [[1.0]])
        with pytest.raises(ValueError):
            a.A[0, 0] = 5.0

    def test_lift_identity_terminal_distribution(self):
        lifted = lin_lift([[2.0]])
        assert np.array_equal(lifted.Sigma, np.zeros((1, 1)))
        ident = lin_identity(3)
        assert np.array_equal(ident.A, np.eye(3))
        term = lin_terminal(3)
        assert term.src_dim == 3 and term.dst_dim == 0
        dist = lin_distribution([[2.0]])
        assert is_lin_distribution(dist)
        assert not is_lin_distribution(ident)

    def test_is_psd(self):
        assert is_psd(np.eye(2))
        assert is_psd(np.zeros((2, 2)))
        assert not is_psd(np.array([[1.0, 2.0], [2.0, 1.0]]))


class TestAlgebra:
    def test_compose_worked_example(self):
        a = lin_arrow([[2.0]], [[1.0]])
        b = lin_arrow([[3.0]], [[2.0]])
        got = lin_compose(b, a)
        assert np.allclose(got.A, [[6.0]])
        assert np.allclose(got.Sigma, [[11.0]])

    def test_compose_formula_random(self, nprng):
        for _ in range(20):
            a = rand_arrow(nprng, 3, 2)
            b = rand_arrow(nprng, 2, 4)
            got = lin_compose(b, a)
            assert np.allclose(got.A, b.A @ a.A)
            assert np.allclose(got.Sigma, b.Sigma + b.A @ a.Sigma @ b.A.T)

    def test_compose_of_deterministic_is_deterministic(self):
        a, b = lin_lift([[2.0]]), lin_lift([[3.0]])
        assert np.array_equal(lin_compose(b, a).Sigma, np.zeros((1, 1)))

    def test_identity_neutral(self, nprng):
        a = rand_arrow(nprng, 3, 2)
        assert lin_equal(lin_compose(lin_identity(2), a), a)
        assert lin_equal(lin_compose(a, lin_identity(3)), a)

    def test_compose_dimension_mismatch(self):
        with pytest.raises(LinearError):
            lin_compose(lin_identity(2), lin_identity(3))

    def test_product_worked_example(self):
        a = lin_arrow([[1.0]], [[1.0]])
        b = lin_arrow([[1.0]], [[2.0]])
        p = lin_product(a, b)
        assert np.allclose(p.A, [[1.0], [1.0]])
        assert np.allclose(p.Sigma, [[1.0, 0.0], [0.0, 2.0]])

    def test_product_projection_recovers_factor(self, nprng):
        a = rand_arrow(nprng, 3, 2)
        b = rand_arrow(nprng, 3, 2)
        p = lin_product(a, b)
        proj = lin_lift(np.hstack([np.eye(2), np.zeros((2, 2))]))
        assert lin_equal(lin_compose(proj, p), a)

    def test_product_with_terminal_is_isomorphic(self, nprng):
        a = rand_arrow(nprng, 3, 2)
        p = lin_product(a, lin_terminal(3))
        assert p.dst_dim == 2
        assert lin_equal(p, a)

    def test_tensor_blocks(self, nprng):
        a = rand_arrow(nprng, 2, 2)
        b = rand_arrow(nprng, 1, 3)
        t = lin_tensor(a, b)
        assert t.src_dim == 3 and t.dst_dim == 5
        assert np.allclose(t.A[:2, :2], a.A)
        assert np.allclose(t.A[2:, 2:], b.A)
        assert np.allclose(t.A[:2, 2:], 0)
        assert np.allclose(t.Sigma[:2, :2], a.Sigma)
        assert np.allclose(t.Sigma[2:, 2:], b.Sigma)

    def test_interchange_tensor_product(self, nprng):
        c, d = rand_arrow(nprng, 3, 2), rand_arrow(nprng, 3, 2)
        a, b = rand_arrow(nprng, 2, 2), rand_arrow(nprng, 2, 1)
        lhs = lin_compose(lin_tensor(a, b), lin_product(c, d))
        rhs = lin_product(lin_compose(a, c), lin_compose(b, d))
        assert lin_equal(lhs, rhs, tol=1e-8)


class TestAccuracy:
    def test_deterministic_dominates(self, nprng):
        a = rand_arrow(nprng, 3, 2)
        assert lin_accuracy_le(lin_arrow(a.A, np.zeros((2, 2))), a)

    def test_reflexive(self, nprng):
        a = rand_arrow(nprng, 2, 2)
        assert lin_accuracy_le(a, a)

    def test_larger_noise_not_more_accurate(self):
        small = lin_arrow([[1.0]], [[1.0]])
        large = lin_arrow([[1.0]], [[2.0]])
        assert lin_accuracy_le(small, large)
        assert not lin_accuracy_le(large, small)

    def test_different_A_incomparable(self):
        a = lin_arrow([[1.0]], [[1.0]])
        b = lin_arrow([[2.0]], [[1.0]])
        assert not lin_accuracy_le(a, b)
        assert not lin_accuracy_le(b, a)

    def test_composition_monotone(self, nprng):
        # c more accurate than c' implies c.a more accurate than c'.a.
        for _ in range(10):
            a = rand_arrow(nprng, 3, 2)
            c = rand_arrow(nprng, 2, 2)
            extra = rand_psd(nprng, 2)
            worse = lin_arrow(c.A, c.Sigma + extra)
            assert lin_accuracy_le(c, worse)
            assert lin_accuracy_le(lin_compose(c, a), lin_compose(worse, a))

    def test_product_monotone(self, nprng):
        for _ in range(10):
            a = rand_arrow(nprng, 3, 2)
            b = rand_arrow(nprng, 3, 1)
            worse = lin_arrow(b.A, b.Sigma + rand_psd(nprng, 1))
            assert lin_accuracy_le(lin_product(a, b), lin_product(a, worse))


class TestCanonicalClass:
    def test_scalar_unit_fisher(self):
        cls = lin_canonical_class(lin_arrow([[1.0]], [[1.0]]))
        assert cls.rank == 1
        assert np.allclose(np.abs(cls.Q), [[1.0]])
        assert np.allclose(cls.S, [[1.0]])

    def test_scalar_gain_two(self):
        cls = lin_canonical_class(lin_arrow([[2.0]], [[1.0]]))
        assert np.allclose(cls.S, [[0.25]])

    def test_zero_map_observes_nothing(self):
        cls = lin_canonical_class(lin_arrow(np.zeros((2, 3)), np.eye(2)))
        assert cls.rank == 0
        assert cls.Q.shape == (3, 0)

    def test_zero_noise_gives_zero_error(self):
        cls = lin_canonical_class(lin_lift([[1.0, 0.0]]))
        assert cls.rank == 1
        assert np.allclose(cls.S, [[0.0]])

    def test_singular_nonzero_noise_rejected(self):
        sigma = [[1.0, 0.0], [0.0, 0.0]]
        with pytest.raises(LinearError, match="positive definite or zero"):
            lin_canonical_class(lin_arrow(np.eye(2), sigma))

    def test_class_validation(self):
        with pytest.raises(LinearError, match="orthonormal"):
            LinearClass(2, np.array([[1.0], [1.0]]), np.array([[1.0]]))

    def test_invertible_postprocessing_preserves_class(self, nprng):
        # Well-conditioned draws: the class comparison works at a fixed
        # eigenvalue tolerance, so keep condition numbers modest.
        for _ in range(10):
            q, _ = np.linalg.qr(nprng.normal(size=(3, 3)))
            a = lin_arrow(q @ np.diag([1.0, 2.0, 3.0]), rand_psd(nprng, 3) + np.eye(3))
            r, _ = np.linalg.qr(nprng.normal(size=(3, 3)))
            b = lin_compose(lin_lift(2.0 * r), a)
            assert lin_class_equal(lin_canonical_class(a), lin_canonical_class(b))

    def test_post_processing_never_gains_information(self, nprng):
        for _ in range(10):
            a = rand_arrow(nprng, 3, 3)
            c = rand_arrow(nprng, 3, 2)
            composed = lin_compose(c, a)
            try:
                comp_cls = lin_canonical_class(composed)
            except LinearError:
                continue  # singular-but-nonzero noise is out of scope
            assert lin_class_le(lin_canonical_class(a), comp_cls)

    def test_subspace_contains(self):
        full = np.eye(3)
        line = np.array([[1.0], [0.0], [0.0]])
        assert subspace_contains(full, line)
        assert not subspace_contains(line, full)
        assert subspace_contains(line, line)


class TestWitness:
    def test_witness_round_trip_on_dominated_pairs(self, nprng):
        hits = 0
        for _ in range(100):
            a = rand_arrow(nprng, 3, 3)
            c = rand_arrow(nprng, 3, 2)
            b = lin_compose(c, a)
            try:
                witness = informativeness_witness(a, b)
            except LinearError:
                continue
            assert witness is not None
            assert lin_equal(lin_compose(witness, a), b, tol=1e-6)
            hits += 1
        assert hits >= 80

    def test_witness_none_when_class_order_fails(self):
        noisy = lin_arrow([[1.0]], [[2.0]])
        sharp = lin_arrow([[1.0]], [[1.0]])
        assert informativeness_witness(noisy, sharp) is None
        assert informativeness_witness(sharp, noisy) is not None

    def test_witness_exactness_makes_both_accuracy_notions_agree(self, nprng):
        # Dominance-based and equality-based informativeness coincide here:
        # the constructed witness reproduces b outright, not merely a bound.
        for _ in range(25):
            a = rand_arrow(nprng, 2, 2)
            c = rand_arrow(nprng, 2, 2)
            b = lin_compose(c, a)
            witness = informativeness_witness(a, b)
            assert witness is not None
            composed = lin_compose(witness, a)
            assert lin_equal(composed, b, tol=1e-6)
            assert lin_accuracy_le(composed, b) or lin_equal(composed, b, tol=1e-9)

    def test_no_witness_search_confirms_class_verdict(self, nprng):
        # Completeness spot-check: when the class order says no, random
        # candidates c with A_c A_a = A_b never dominate b either.
        a = lin_arrow([[1.0]], [[2.0]])
        b = lin_arrow([[1.0]], [[1.0]])
        assert not lin_class_le(lin_canonical_class(a), lin_canonical_class(b))
        # A_c A_a = A_b forces A_c = [[1]]; only the candidate noise varies.
        for _ in range(200):
            c = lin_arrow([[1.0]], rand_psd(nprng, 1))
            assert not lin_accuracy_le(lin_compose(c, a), b)

    def test_min_variance_estimator_properties(self, nprng):
        for _ in range(20):
            a = rand_arrow(nprng, 3, 3)
            estimator = min_variance_estimator(a)
            cls = lin_canonical_class(a)
            proj = cls.Q @ cls.Q.T
            assert np.allclose(estimator @ a.A, proj, atol=1e-7)
            assert np.allclose(estimator @ a.Sigma @ estimator.T, cls.Q @ cls.S @ cls.Q.T, atol=1e-7)


class TestConditional:
    def test_worked_scalar_instance(self):
        prior = lin_distribution([[1.0]])
        channel = lin_arrow([[1.0]], [[1.0]])
        posterior = lin_conditional(prior, channel)
        assert np.allclose(posterior.A, [[0.5]])
        assert np.allclose(posterior.Sigma, [[0.5]])

    def test_perfect_observation_inverts(self):
        prior = lin_distribution(np.eye(2))
        channel = lin_lift([[2.0, 0.0], [0.0, 4.0]])
        posterior = lin_conditional(prior, channel)
        assert np.allclose(posterior.A, [[0.5, 0.0], [0.0, 0.25]])
        assert np.allclose(posterior.Sigma, np.zeros((2, 2)), atol=1e-9)

    def test_uninformative_channel_returns_prior(self):
        prior = lin_distribution([[3.0]])
        channel = lin_arrow([[0.0]], [[1.0]])
        posterior = lin_conditional(prior, channel)
        assert np.allclose(posterior.A, [[0.0]])
        assert np.allclose(posterior.Sigma, [[3.0]])

    def test_joint_equation_random(self, nprng):
        # (posterior * i) . observed  ==  (i * channel) . prior, as covariances.
        for _ in range(30):
            dim_d = int(nprng.integers(1, 4))
            dim_r = int(nprng.integers(1, 4))
            prior = lin_distribution(rand_psd(nprng, dim_d))
            channel = rand_arrow(nprng, dim_d, dim_r)
            posterior = lin_conditional(prior, channel)
            observed = lin_compose(channel, prior)
            lhs = lin_compose(lin_product(posterior, lin_identity(dim_r)), observed)
            rhs = lin_compose(lin_product(lin_identity(dim_d), channel), prior)
            assert np.allclose(lhs.Sigma, rhs.Sigma, atol=1e-9)

    def test_joint_equation_with_degenerate_pieces(self, nprng):
        for _ in range(20):
            prior = lin_distribution(rand_psd(nprng, 2, rank=1))
            channel = lin_arrow(nprng.normal(size=(2, 2)), np.zeros((2, 2)))
            posterior = lin_conditional(prior, channel)
            observed = lin_compose(channel, prior)
            lhs = lin_compose(lin_product(posterior, lin_identity(2)), observed)
            rhs = lin_compose(lin_product(lin_identity(2), channel), prior)
            assert np.allclose(lhs.Sigma, rhs.Sigma, atol=1e-9)

    def test_requires_distribution(self):
        not_dist = lin_identity(1)
        with pytest.raises(LinearError):
            lin_conditional(not_dist, lin_identity(1))
