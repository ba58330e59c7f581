"""Optimizer tests: T grid search, adjoint gradients against finite
differences, and BFGS refinement against dense angle scans."""

import numpy as np
import pytest

from snapshot_qaoa import (WeightedGraph, energy_and_gradient, gradient,
                           grid_search_T, make_schedule, normalize,
                           refine_bfgs, run_with_angles, tfim)
from snapshot_qaoa.optimizer import t_grid
from snapshot_qaoa.statevector import (apply_layers, energy, init_minus,
                                       snapshot_energies)

from test_hamiltonian import single_edge


def random_instance(rng, n_max=4):
    n = int(rng.integers(2, n_max + 1))
    edges = tuple((u, v, float(rng.normal()))
                  for u in range(n) for v in range(u + 1, n)
                  if rng.random() < 0.7)
    if not edges:
        edges = ((0, 1, -1.0),)
    return tfim(WeightedGraph(n, edges), float(rng.uniform(0.1, 2.0)))


def fd_gradient(H, betas, gammas, h=1e-5):
    """Central finite differences over all 2p angles."""
    x = np.concatenate([betas, gammas])
    p = len(betas)
    out = np.empty(x.size)
    for i in range(x.size):
        xp = x.copy()
        xp[i] += h
        xm = x.copy()
        xm[i] -= h
        _, ep = run_with_angles(H, xp[:p], xp[p:])
        _, em = run_with_angles(H, xm[:p], xm[p:])
        out[i] = (ep - em) / (2 * h)
    return out


class TestTGrid:
    def test_inclusive_endpoints(self):
        grid = t_grid(0.0, 1.0, 0.01)
        assert grid[0] == 0.0
        assert grid[-1] == pytest.approx(1.0, abs=1e-12)
        assert grid.size == 101

    def test_non_divisible_step_appends_endpoint(self):
        grid = t_grid(0.0, 1.0, 0.3)
        assert grid[-1] == 1.0
        assert grid.size == 5

    def test_rejects_bad_bounds(self):
        with pytest.raises(ValueError):
            t_grid(1.0, 1.0, 0.1)
        with pytest.raises(ValueError):
            t_grid(0.0, 1.0, 0.0)


class TestGridSearch:
    def test_matches_pointwise_evaluation(self):
        H = tfim(single_edge(-1.0), 1.0)
        res = grid_search_T(H, 1, 0.0, 1.0, 0.01)
        grid = t_grid(0.0, 1.0, 0.01)
        energies = snapshot_energies(H, 1, grid)
        assert res.energy == pytest.approx(float(energies.min()), abs=1e-12)
        assert res.t_star_approx == grid[np.argmin(energies)]
        assert res.evaluated_points == grid.size

    def test_finer_grid_dominates_coarser(self):
        H = tfim(single_edge(-1.0), 1.0)
        fine = grid_search_T(H, 2, 0.0, 2.0, 0.01)
        coarse = grid_search_T(H, 2, 0.0, 2.0, 0.1)
        assert fine.energy <= coarse.energy + 1e-12

    def test_tie_break_smallest_T(self):
        # E_p(T) is even in T, so a window symmetric about 0 has exact ties;
        # the reported minimizer must be the smaller (more negative) end
        # only if it comes first, i.e. np.argmin's first occurrence
        H = tfim(single_edge(-1.0), 1.0)
        res = grid_search_T(H, 1, -1.0, 1.0, 0.5)
        grid = t_grid(-1.0, 1.0, 0.5)
        energies = snapshot_energies(H, 1, grid)
        assert res.t_star_approx == grid[np.argmin(energies)]
        # symmetry gives at least one exact tie pair in this window
        assert np.isclose(energies[0], energies[-1], atol=1e-12)

    def test_default_window_is_zero_to_p(self):
        H = tfim(single_edge(-1.0), 1.0)
        res = grid_search_T(H, 3)
        assert res.t_lo == 0.0 and res.t_hi == 3.0
        assert 0.0 <= res.t_star_approx <= 3.0


class TestGradient:
    def test_zero_angles_stationary(self):
        H = tfim(single_edge(-1.0), 1.0)
        g = gradient(H, np.zeros(3), np.zeros(3))
        np.testing.assert_allclose(g, np.zeros(6), atol=1e-12)

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(0)
        for _ in range(5):
            H = random_instance(rng)
            p = int(rng.integers(1, 4))
            betas = rng.uniform(-1, 1, size=p)
            gammas = rng.uniform(-1, 1, size=p)
            e, g = energy_and_gradient(H, betas, gammas)
            _, e_direct = run_with_angles(H, betas, gammas)
            assert e == pytest.approx(e_direct, abs=1e-12)
            np.testing.assert_allclose(g, fd_gradient(H, betas, gammas),
                                       atol=1e-6)

    def test_negation_antisymmetry(self):
        rng = np.random.default_rng(1)
        H = random_instance(rng)
        betas = rng.uniform(-1, 1, size=3)
        gammas = rng.uniform(-1, 1, size=3)
        g_pos = gradient(H, betas, gammas)
        g_neg = gradient(H, -betas, -gammas)
        np.testing.assert_allclose(g_neg, -g_pos, atol=1e-10)

    def test_state_restored_by_reverse_sweep(self):
        # energy_and_gradient mutates its working state; the public wrapper
        # must leave caller arrays untouched
        H = tfim(single_edge(-1.0), 1.0)
        betas = np.array([0.3, 0.1])
        gammas = np.array([0.2, 0.4])
        b0, g0 = betas.copy(), gammas.copy()
        energy_and_gradient(H, betas, gammas)
        np.testing.assert_array_equal(betas, b0)
        np.testing.assert_array_equal(gammas, g0)


class TestRefineBfgs:
    def test_stationary_start_returns_input(self):
        H = tfim(single_edge(-1.0), 1.0)
        sched = make_schedule(2, 0.0, normalize(H).c1_hat)  # all angles zero
        res = refine_bfgs(H, 2, sched)
        assert res.iterations == 0
        np.testing.assert_allclose(res.betas, sched.betas, atol=1e-12)
        np.testing.assert_allclose(res.gammas, sched.gammas, atol=1e-12)
        assert res.monotone_flag

    def test_never_worse_than_start(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            H = random_instance(rng)
            p = int(rng.integers(1, 4))
            T = float(rng.uniform(0.0, p))
            sched = make_schedule(p, T, normalize(H).c1_hat)
            _, e0 = run_with_angles(H, sched.betas, sched.gammas)
            res = refine_bfgs(H, p, sched)
            assert res.energy <= e0 + 1e-12
            assert res.monotone_flag

    def test_reaches_global_minimum_p1(self):
        # dense scan over (beta, gamma) in [0, pi)^2 at 1e-3 resolution,
        # evaluated in batched chunks
        H = tfim(single_edge(-1.0), 1.0)
        step = 1e-3
        axis = np.arange(0.0, np.pi, step)
        best_scan = np.inf
        for start in range(0, axis.size, 200):
            betas = np.repeat(axis[start:start + 200], axis.size)
            gammas = np.tile(axis, betas.size // axis.size)
            psi = init_minus(2, batch=betas.size)
            apply_layers(psi, betas[:, None], gammas[:, None], H)
            best_scan = min(best_scan, float(energy(psi, H).min()))

        gs = grid_search_T(H, 1, 0.0, 1.0, 0.01)
        sched = make_schedule(1, gs.t_star_approx, normalize(H).c1_hat)
        res = refine_bfgs(H, 1, sched)
        assert res.energy <= gs.energy + 1e-12
        assert res.energy == pytest.approx(best_scan, abs=1e-6)

    def test_rejects_length_mismatch(self):
        H = tfim(single_edge(-1.0), 1.0)
        sched = make_schedule(2, 1.0, normalize(H).c1_hat)
        with pytest.raises(ValueError):
            refine_bfgs(H, 3, sched)

    def test_gradient_at_result_is_small_or_flagged(self):
        H = tfim(single_edge(-1.0), 1.0)
        sched = make_schedule(2, 0.7, normalize(H).c1_hat)
        res = refine_bfgs(H, 2, sched, grad_tol=1e-8)
        assert res.grad_norm <= 1e-6 or res.line_search_failed
