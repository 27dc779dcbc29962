import math

import numpy as np
import pytest

from polyconvex.approx import power_map_samples, uniform_approx_test
from polyconvex.errors import IllConditioned


class TestPowerMapSamples:
    def test_pairs_consistent_with_preimage(self):
        pairs, z = power_map_samples(2, 3, count=100, seed=0)
        assert np.allclose(pairs[:, 0], z ** 2)
        assert np.allclose(pairs[:, 1], np.conj(z) ** 3)

    def test_boundary_ring_present(self):
        _, z = power_map_samples(1, 1, count=50, seed=0, boundary=64)
        assert np.isclose(np.abs(z), 1.0).sum() >= 64

    def test_seeded(self):
        a, _ = power_map_samples(2, 3, count=30, seed=9)
        b, _ = power_map_samples(2, 3, count=30, seed=9)
        assert np.array_equal(a, b)


class TestUniformApproxTest:
    def test_exact_polynomial_target(self):
        # target w is itself a basis element: error ~ 0 from degree 1 on
        pairs, z = power_map_samples(1, 1, count=300, seed=0)
        rep = uniform_approx_test(pairs, np.conj(z), [1, 2], seed=0)
        assert rep.errors[0] < 1e-10

    def test_envelope_monotone(self):
        pairs, z = power_map_samples(2, 3, count=600, seed=0)
        held = power_map_samples(2, 3, count=1200, seed=1)
        rep = uniform_approx_test(pairs, np.conj(z), [1, 2, 3, 4, 5],
                                  held_out=(held[0], np.conj(held[1])))
        assert all(a >= b for a, b in zip(rep.errors, rep.errors[1:]))
        assert all(e <= r + 1e-15 for e, r in zip(rep.errors, rep.raw_errors))

    def test_coprime_powers_error_shrinks(self):
        pairs, z = power_map_samples(2, 3, count=800, seed=0)
        held = power_map_samples(2, 3, count=1600, seed=1)
        rep = uniform_approx_test(pairs, np.conj(z), [1, 3, 5, 7],
                                  held_out=(held[0], np.conj(held[1])))
        assert rep.errors[-1] < 0.6 * rep.errors[0]
        assert rep.errors[-1] < 0.5

    def test_common_factor_obstruction(self):
        # gcd(2, 2) = 2: every algebra element is even, conj(z) is odd, so the
        # sup error over a symmetric set is >= max |z| over that set
        m = n = 2
        pairs, z = power_map_samples(m, n, count=600, seed=0)
        held_z = np.concatenate([z, -z])
        held_pairs = np.stack([held_z ** m, np.conj(held_z) ** n], axis=1)
        rep = uniform_approx_test(pairs, np.conj(z), [1, 2, 3, 4],
                                  held_out=(held_pairs, np.conj(held_z)))
        assert rep.errors[-1] >= 0.95 * np.abs(held_z).max()

    def test_undersampled_raises(self):
        pairs, z = power_map_samples(1, 2, count=10, seed=0, boundary=0)
        with pytest.raises(IllConditioned):
            uniform_approx_test(pairs, np.conj(z), [3])

    def test_mismatched_lengths(self):
        pairs, z = power_map_samples(1, 2, count=50, seed=0)
        with pytest.raises(ValueError):
            uniform_approx_test(pairs, np.conj(z[:-1]), [1])

    def test_internal_holdout_split(self):
        pairs, z = power_map_samples(1, 1, count=400, seed=0)
        rep = uniform_approx_test(pairs, np.conj(z), [1], seed=3)
        assert rep.errors[0] < 1e-10
