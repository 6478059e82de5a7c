import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paulifish import channels, linop


def random_bloch(rng):
    v = rng.normal(size=3)
    return v * rng.uniform(0.0, 1.0) / np.linalg.norm(v)


def y_basis_string(x, n):
    """n-qubit product of sigma_y eigenstates encoding the bits of x."""
    plus = np.array([1.0, 1.0j]) / np.sqrt(2.0)
    minus = np.array([1.0, -1.0j]) / np.sqrt(2.0)
    vec = np.array([1.0], dtype=complex)
    for bit_pos in reversed(range(n)):
        vec = np.kron(vec, minus if (x >> bit_pos) & 1 else plus)
    return vec


class TestBlochState:
    def test_origin_is_maximally_mixed(self):
        np.testing.assert_allclose(channels.bloch_state((0, 0, 0)), np.eye(2) / 2)

    def test_pure_y_state(self):
        rho = channels.bloch_state((0, 1, 0))
        np.testing.assert_allclose(rho, (np.eye(2) + linop.sigma_y()) / 2, atol=1e-15)
        evals = np.linalg.eigvalsh(rho)
        np.testing.assert_allclose(evals, [0.0, 1.0], atol=1e-12)

    def test_half_polarized_spectrum(self):
        evals = np.linalg.eigvalsh(channels.bloch_state((0, 0.5, 0)))
        np.testing.assert_allclose(evals, [0.25, 0.75], atol=1e-12)

    def test_overlong_vector_rejected(self):
        with pytest.raises(ValueError):
            channels.bloch_state((1.0, 0.2, 0.0))


class TestPauliChannel:
    def test_zero_strength_is_identity(self):
        rng = np.random.default_rng(0)
        rho = channels.bloch_state(random_bloch(rng))
        out = channels.apply_pauli_channel(rho, channels.ChannelSpec("z", 0.0), [1])
        np.testing.assert_allclose(out, rho, atol=1e-15)

    def test_phase_flip_shrinks_transverse_bloch_component(self):
        r, lam = 0.7, 0.2
        rho = channels.bloch_state((0, r, 0))
        out = channels.apply_pauli_channel(rho, channels.ChannelSpec("z", lam), [1])
        np.testing.assert_allclose(
            out, channels.bloch_state((0, r * (1 - 2 * lam), 0)), atol=1e-14
        )

    def test_half_strength_fully_dephases(self):
        rho = channels.bloch_state((0, 0.8, 0))
        out = channels.apply_pauli_channel(rho, channels.ChannelSpec("z", 0.5), [1])
        np.testing.assert_allclose(out, np.eye(2) / 2, atol=1e-14)

    def test_z_channel_preserves_diagonal(self):
        rng = np.random.default_rng(1)
        rho = channels.bloch_state(random_bloch(rng))
        joint = linop.tensor([rho, rho])
        out = channels.apply_pauli_channel(joint, channels.ChannelSpec("z", 0.3), [2])
        np.testing.assert_allclose(np.diag(out), np.diag(joint), atol=1e-14)
        assert abs(np.trace(out) - 1) < 1e-12
        assert linop.frobenius_max(out - linop.dagger(out)) < 1e-14

    def test_duplicate_targets_rejected(self):
        rho = np.eye(4) / 4
        with pytest.raises(ValueError, match="duplicate"):
            channels.apply_pauli_channel(rho, channels.ChannelSpec("z", 0.1, 2), [1, 1])

    def test_target_count_must_match_invocation_count(self):
        rho = np.eye(4) / 4
        with pytest.raises(ValueError, match="invocations"):
            channels.apply_pauli_channel(rho, channels.ChannelSpec("z", 0.1, 2), [1])

    def test_x_axis_channel_acts_in_rotated_frame(self):
        r, lam = 0.6, 0.3
        rho = channels.bloch_state((0, 0, r))
        out = channels.apply_pauli_channel(rho, channels.ChannelSpec("x", lam), [1])
        np.testing.assert_allclose(
            out, channels.bloch_state((0, 0, r * (1 - 2 * lam))), atol=1e-14
        )


class TestExtendedChannel:
    @pytest.mark.parametrize("lam", [0.0, 0.3, 0.5, 1.0])
    def test_tracing_ancilla_reproduces_channel(self, lam):
        rng = np.random.default_rng(int(lam * 10) + 2)
        rho = channels.bloch_state(random_bloch(rng))
        ext = channels.extended_channel_state(rho, lam)
        reduced = linop.partial_trace(ext, [1])
        direct = channels.apply_pauli_channel(rho, channels.ChannelSpec("z", lam), [1])
        assert linop.frobenius_max(reduced - direct) < 1e-12

    def test_full_strength_applies_z(self):
        rho = channels.bloch_state((0.3, 0.4, 0.2))
        reduced = linop.partial_trace(channels.extended_channel_state(rho, 1.0), [1])
        z = linop.sigma_z()
        np.testing.assert_allclose(reduced, z @ rho @ z, atol=1e-14)

    @given(
        st.floats(min_value=0.0, max_value=1.0),
        st.integers(min_value=0, max_value=2**31),
    )
    @settings(max_examples=60, deadline=None)
    def test_identity_holds_for_random_states(self, lam, seed):
        rho = channels.bloch_state(random_bloch(np.random.default_rng(seed)))
        reduced = linop.partial_trace(channels.extended_channel_state(rho, lam), [1])
        direct = channels.apply_pauli_channel(rho, channels.ChannelSpec("z", lam), [1])
        assert linop.frobenius_max(reduced - direct) < 1e-12


class TestPreparationUnitary:
    def expected_from_bit_algebra(self, n):
        # independent construction straight from the bit-string algebra:
        # entry (y, z) = (-1)**(y.z + s(z)) / 2**(n/2), s(z) = pairs of set bits
        d = 2**n
        u = np.zeros((d, d), dtype=complex)
        for z in range(d):
            pc = bin(z).count("1")
            s_sign = -1.0 if (pc * (pc - 1) // 2) % 2 else 1.0
            for y in range(d):
                dot = bin(y & z).count("1")
                u[y, z] = s_sign * (-1.0) ** dot
        return u / 2 ** (n / 2)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_matches_bit_algebra_construction(self, n):
        u = channels.preparation_unitary(n)
        assert linop.frobenius_max(u - self.expected_from_bit_algebra(n)) < 1e-12

    @pytest.mark.parametrize("n", [2, 3])
    def test_unitary(self, n):
        u = channels.preparation_unitary(n)
        assert linop.frobenius_max(u @ linop.dagger(u) - np.eye(2**n)) < 1e-12

    def test_two_qubit_plus_plus_splits_between_extremal_states(self):
        u = channels.preparation_unitary(2)
        out = u @ y_basis_string(0, 2)
        expected = np.zeros(4, dtype=complex)
        expected[0] = (1 + 1j) / 2
        expected[3] = (1 - 1j) / 2
        np.testing.assert_allclose(out, expected, atol=1e-14)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_rotated_basis_images_have_exactly_two_amplitudes(self, n):
        u = channels.preparation_unitary(n)
        big_n = 2**n - 1
        for x in range(2**n):
            out = u @ y_basis_string(x, n)
            assert abs(out[x] - (1 + 1j) / 2) < 1e-12
            assert abs(out[big_n - x] - (1 - 1j) / 2) < 1e-12
            rest = np.delete(out, [x, big_n - x])
            assert np.max(np.abs(rest)) < 1e-12

    def test_diagonal_overlap_is_constant(self):
        n = 2
        u = channels.preparation_unitary(n)
        for x in range(2**n):
            amp = np.vdot(np.eye(2**n)[x], u @ y_basis_string(x, n))
            assert abs(amp - (1 + 1j) / 2) < 1e-14

    def test_swap_symmetry(self):
        u = channels.preparation_unitary(3)
        for i, j in [(1, 2), (1, 3), (2, 3)]:
            s = linop.qubit_swap(3, i, j)
            assert linop.frobenius_max(s @ u - u @ s) < 1e-12

    def test_single_qubit_rejected(self):
        with pytest.raises(ValueError):
            channels.preparation_unitary(1)


class TestBitstringWeight:
    def test_unpolarized_is_uniform(self):
        for x in range(8):
            assert abs(channels.bitstring_weight(x, 3, 0.0) - 1 / 8) < 1e-15

    def test_hand_value(self):
        # n=2, r=0.5, x=0: both bits clear, (1.5)**2 / 4
        assert abs(channels.bitstring_weight(0, 2, 0.5) - 0.5625) < 1e-15

    @given(
        st.integers(min_value=2, max_value=8),
        st.floats(min_value=0.0, max_value=0.999),
    )
    @settings(max_examples=60)
    def test_normalization(self, n, r):
        total = sum(channels.bitstring_weight(x, n, r) for x in range(2**n))
        assert abs(total - 1.0) < 1e-12

    def test_pure_polarization_rejected(self):
        with pytest.raises(ValueError):
            channels.bitstring_weight(0, 2, 1.0)


class TestBlocks:
    def test_unpolarized_blocks_are_diagonal_uniform(self):
        for b in channels.prepared_state_blocks(3, 0.0):
            assert b.offdiag_weight == 0.0
            assert abs(b.diag_weight - 1 / 8) < 1e-15
            assert b.offdiag_scale == 1.0

    def test_hand_block_weights(self):
        blocks = channels.prepared_state_blocks(2, 0.5)
        assert abs(blocks[0].diag_weight - 0.3125) < 1e-15
        assert abs(blocks[0].offdiag_weight - 0.25) < 1e-15
        assert blocks[1].offdiag_weight == 0.0

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_dense_reconstruction_matches_conjugation(self, n):
        rng = np.random.default_rng(n)
        r = rng.uniform(0.05, 0.95)
        u = channels.preparation_unitary(n)
        rho_i = linop.tensor([channels.bloch_state((0, r, 0))] * n)
        direct = u @ rho_i @ linop.dagger(u)
        dense = channels.blocks_to_dense(channels.prepared_state_blocks(n, r))
        assert linop.frobenius_max(dense - direct) < 1e-10

    @staticmethod
    def _block_matrix(x, n, r):
        big_n = 2**n - 1
        fx = channels.bitstring_weight(x, n, r)
        fnx = channels.bitstring_weight(big_n - x, n, r)
        m = np.zeros((2**n, 2**n), dtype=complex)
        m[x, x] = m[big_n - x, big_n - x] = (fx + fnx) / 2
        m[x, big_n - x] = 1j * (fx - fnx) / 2
        m[big_n - x, x] = -1j * (fx - fnx) / 2
        return m

    def test_block_supports_are_mutually_orthogonal(self):
        n, r = 3, 0.4
        mats = [self._block_matrix(b.x, n, r) for b in channels.prepared_state_blocks(n, r)]
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                assert linop.frobenius_max(mats[i] @ mats[j]) < 1e-14

    def test_block_of_complement_index_is_the_same_operator(self):
        n, r = 3, 0.6
        big_n = 2**n - 1
        for x in range(big_n // 2 + 1):
            np.testing.assert_allclose(
                self._block_matrix(x, n, r),
                self._block_matrix(big_n - x, n, r),
                atol=1e-15,
            )

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_block_weight_invariants(self, n):
        rng = np.random.default_rng(17 + n)
        for r in rng.uniform(0.0, 0.999, size=5):
            blocks = channels.prepared_state_blocks(n, r)
            assert all(b.diag_weight >= abs(b.offdiag_weight) >= 0.0 for b in blocks)
            assert sum(2 * b.diag_weight for b in blocks) == pytest.approx(1.0, abs=1e-12)

    def test_post_channel_zero_strength_is_noop(self):
        blocks = channels.prepared_state_blocks(3, 0.4)
        assert channels.post_channel_blocks(blocks, 0.0, 2) == blocks

    def test_post_channel_half_strength_kills_offdiagonals(self):
        blocks = channels.post_channel_blocks(
            channels.prepared_state_blocks(3, 0.4), 0.5, 2
        )
        assert all(b.offdiag_scale == 0.0 for b in blocks)

    def test_post_channel_dense_matches_direct_channel(self):
        n, m, lam, r = 3, 2, 0.2, 0.4
        u = channels.preparation_unitary(n)
        rho_i = linop.tensor([channels.bloch_state((0, r, 0))] * n)
        prep = u @ rho_i @ linop.dagger(u)
        direct = channels.apply_pauli_channel(
            prep, channels.ChannelSpec("z", lam, m), list(range(1, m + 1))
        )
        dense = channels.blocks_to_dense(
            channels.post_channel_blocks(channels.prepared_state_blocks(n, r), lam, m)
        )
        assert linop.frobenius_max(dense - direct) < 1e-10

    def test_too_many_invocations_rejected(self):
        with pytest.raises(ValueError):
            channels.post_channel_blocks(channels.prepared_state_blocks(2, 0.3), 0.1, 3)

    def test_correlated_state_derivative_matches_finite_difference(self):
        n, m, r, lam = 3, 2, 0.35, 0.27
        h = 1e-6
        _, drho = channels.correlated_state(n, r, lam, m)
        plus, _ = channels.correlated_state(n, r, lam + h, m)
        minus, _ = channels.correlated_state(n, r, lam - h, m)
        assert linop.frobenius_max(drho - (plus - minus) / (2 * h)) < 1e-6
