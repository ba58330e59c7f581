"""Statevector engine tests against dense matrix-exponential oracles."""

import numpy as np
import pytest
from scipy.linalg import expm

from snapshot_qaoa import (TfimHamiltonian, WeightedGraph, apply_mixer,
                           apply_phase, energy, init_minus, j1j2_tfim,
                           make_schedule, normalize, run_snapshot_qaoa,
                           run_with_angles, snapshot_energies, tfim)

from test_hamiltonian import dense_kron_oracle, single_edge


def dense_circuit_oracle(H, betas, gammas):
    """Final state via dense matrix exponentials (n <= 4)."""
    n = H.n_qubits
    H0 = dense_kron_oracle(TfimHamiltonian(H.graph, c0=1.0, c1=0.0))
    H1 = dense_kron_oracle(TfimHamiltonian(H.graph, c0=0.0, c1=1.0))
    psi = init_minus(n)
    for b, g in zip(betas, gammas):
        psi = expm(-1j * b * H0) @ (expm(-1j * g * H1) @ psi)
    return psi


class TestInitMinus:
    def test_single_qubit(self):
        np.testing.assert_allclose(init_minus(1),
                                   [1 / np.sqrt(2), -1 / np.sqrt(2)])

    def test_two_qubits(self):
        np.testing.assert_allclose(init_minus(2), [0.5, -0.5, -0.5, 0.5])

    def test_energy_under_mixer_term(self):
        for n in (1, 3, 5):
            H = TfimHamiltonian(WeightedGraph(n, ()), c0=1.0, c1=1.0)
            assert energy(init_minus(n), H) == pytest.approx(-n, abs=1e-12)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            init_minus(0)


class TestApplyPhase:
    def test_zero_angle_identity(self):
        H = tfim(single_edge(1.0), 1.0)
        psi = init_minus(2)
        np.testing.assert_allclose(apply_phase(psi.copy(), 0.0, H), psi)

    def test_two_pi_integer_table(self):
        H = tfim(single_edge(1.0), 1.0)
        psi = init_minus(2)
        out = apply_phase(psi.copy(), 2 * np.pi, H)
        np.testing.assert_allclose(out, psi, atol=1e-12)

    def test_quarter_turn_on_basis_state(self):
        H = tfim(single_edge(1.0), 1.0)
        psi = np.array([1, 0, 0, 0], dtype=complex)
        out = apply_phase(psi, np.pi / 2, H)
        np.testing.assert_allclose(out, [-1j, 0, 0, 0], atol=1e-12)

    def test_batched_matches_scalar(self):
        H = j1j2_tfim(3, 3, 1.0, 0.5, 1.0)
        gammas = np.array([0.1, 0.7, 2.3])
        batch = init_minus(9, batch=3)
        apply_phase(batch, gammas, H)
        for i, g in enumerate(gammas):
            single = apply_phase(init_minus(9), g, H)
            np.testing.assert_allclose(batch[i], single, atol=1e-14)


class TestApplyMixer:
    def test_zero_angle_identity(self):
        psi = init_minus(3)
        np.testing.assert_allclose(apply_mixer(psi.copy(), 0.0, 3), psi)

    def test_quarter_turn_single_qubit(self):
        psi = np.array([1, 0], dtype=complex)
        out = apply_mixer(psi, np.pi / 2, 1)
        np.testing.assert_allclose(out, [0, -1j], atol=1e-12)

    def test_minus_state_is_eigenvector(self):
        psi = init_minus(4)
        out = apply_mixer(psi.copy(), 0.83, 4)
        # |-> gains only a global phase under the mixer
        overlap = np.vdot(psi, out)
        assert abs(abs(overlap) - 1.0) <= 1e-12
        np.testing.assert_allclose(out, overlap * psi, atol=1e-12)

    def test_matches_dense_exponential(self):
        H0 = dense_kron_oracle(
            TfimHamiltonian(WeightedGraph(3, ()), c0=1.0, c1=0.0))
        rng = np.random.default_rng(0)
        psi = rng.normal(size=8) + 1j * rng.normal(size=8)
        psi /= np.linalg.norm(psi)
        beta = 0.37
        np.testing.assert_allclose(apply_mixer(psi.copy(), beta, 3),
                                   expm(-1j * beta * H0) @ psi, atol=1e-12)


class TestEnergy:
    def test_product_state_value(self):
        H = j1j2_tfim(3, 3, 1.0, 0.5, 0.8)
        assert energy(init_minus(9), H) == pytest.approx(-9 * 0.8, abs=1e-12)

    def test_basis_state_value(self):
        H = j1j2_tfim(3, 3, 1.0, 0.0, 0.5)
        psi = np.zeros(512, dtype=complex)
        psi[0] = 1.0
        assert energy(psi, H) == pytest.approx(-18.0, abs=1e-12)

    def test_matches_matvec_quadratic_form(self):
        H = j1j2_tfim(3, 3, 1.0, 0.5, 1.0)
        rng = np.random.default_rng(1)
        psi = rng.normal(size=H.dim) + 1j * rng.normal(size=H.dim)
        psi /= np.linalg.norm(psi)
        assert energy(psi, H) == pytest.approx(
            float(np.real(np.vdot(psi, H.matvec(psi)))), abs=1e-10)

    def test_global_phase_invariance(self):
        H = tfim(single_edge(-1.0), 1.0)
        psi, e = run_snapshot_qaoa(H, 3, 1.5)
        assert energy(np.exp(1j * 0.913) * psi, H) == pytest.approx(e,
                                                                    abs=1e-12)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            energy(np.zeros(3, dtype=complex), tfim(single_edge(), 1.0))


class TestRunSnapshotQaoa:
    def test_zero_time_is_initial_state(self):
        H = tfim(single_edge(-1.0), 1.0)
        psi, e = run_snapshot_qaoa(H, 5, 0.0)
        np.testing.assert_allclose(psi, init_minus(2), atol=1e-15)
        assert e == pytest.approx(-2.0, abs=1e-12)

    def test_matches_dense_oracle_p1(self):
        H = tfim(single_edge(-1.0), 1.0)
        sched = make_schedule(1, 1.0, normalize(H).c1_hat)
        psi, e = run_snapshot_qaoa(H, 1, 1.0)
        ref = dense_circuit_oracle(H, sched.betas, sched.gammas)
        np.testing.assert_allclose(psi, ref, atol=1e-12)
        A = dense_kron_oracle(H)
        assert e == pytest.approx(float(np.real(np.vdot(ref, A @ ref))),
                                  abs=1e-12)

    def test_matches_dense_oracle_deeper(self):
        g = WeightedGraph(4, ((0, 1, -1.0), (1, 2, 0.5), (2, 3, -1.0),
                              (0, 2, 0.5)))
        H = tfim(g, 0.6)
        sched = make_schedule(4, 2.3, normalize(H).c1_hat)
        psi, _ = run_snapshot_qaoa(H, 4, 2.3)
        ref = dense_circuit_oracle(H, sched.betas, sched.gammas)
        np.testing.assert_allclose(psi, ref, atol=1e-12)

    def test_norm_preserved_across_many_layers(self):
        H = j1j2_tfim(3, 3, 1.0, 0.5, 1.0)
        psi, _ = run_snapshot_qaoa(H, 250, 7.3)
        assert abs(np.linalg.norm(psi) - 1.0) <= 1e-12

    def test_variational_lower_bound(self):
        from snapshot_qaoa import ground_spectrum
        H = j1j2_tfim(3, 3, 1.0, 0.5, 1.0)
        ground = ground_spectrum(H).ground_energy
        for T in (0.5, 1.5, 3.0):
            _, e = run_snapshot_qaoa(H, 10, T)
            assert e >= ground - 1e-9

    def test_negation_invariance(self):
        H = j1j2_tfim(3, 3, 1.0, 0.5, 1.0)
        sched = make_schedule(6, 2.1, normalize(H).c1_hat)
        _, e = run_with_angles(H, sched.betas, sched.gammas)
        _, e_neg = run_with_angles(H, -sched.betas, -sched.gammas)
        assert e_neg == pytest.approx(e, abs=1e-10)

    def test_layer_order_matters(self):
        # negative control: mixer-then-phase differs from phase-then-mixer
        H = tfim(single_edge(-1.0), 1.0)
        sched = make_schedule(1, 1.0, normalize(H).c1_hat)
        _, e = run_with_angles(H, sched.betas, sched.gammas)
        psi = init_minus(2)
        apply_mixer(psi, sched.betas[0], 2)
        apply_phase(psi, sched.gammas[0], H)
        assert abs(energy(psi, H) - e) > 1e-6

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            run_snapshot_qaoa(tfim(single_edge(), 1.0), 0, 1.0)


class TestSnapshotEnergies:
    def test_matches_single_runs(self):
        H = j1j2_tfim(3, 3, 1.0, 0.5, 1.0)
        Ts = np.linspace(0.0, 3.0, 17)
        batched = snapshot_energies(H, 4, Ts)
        singles = np.array([run_snapshot_qaoa(H, 4, float(t))[1] for t in Ts])
        np.testing.assert_allclose(batched, singles, atol=1e-12)

    def test_chunking_is_invisible(self):
        H = tfim(single_edge(-1.0), 1.0)
        Ts = np.linspace(0.0, 2.0, 23)
        np.testing.assert_allclose(snapshot_energies(H, 3, Ts, chunk=5),
                                   snapshot_energies(H, 3, Ts), atol=1e-15)
