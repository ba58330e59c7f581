"""Anneal-time grid search and optional BFGS refinement of the full angle
vectors, seeded from the snapshot schedule.

Gradients are exact and computed by a reverse (adjoint) sweep: after one
forward pass, each layer is un-applied from both the state and the
H-applied costate, so all 2p derivatives cost O(p) layer applications and
a single matvec instead of O(p) full circuit evaluations.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .hamiltonian import TfimHamiltonian
from .schedule import Schedule
from .statevector import apply_mixer, apply_phase, init_minus, snapshot_energies


@dataclass(frozen=True)
class GridSearchResult:
    t_star_approx: float
    energy: float
    evaluated_points: int
    t_lo: float
    t_hi: float
    dt_step: float


@dataclass(frozen=True)
class RefineResult:
    betas: np.ndarray
    gammas: np.ndarray
    energy: float
    iterations: int
    grad_norm: float
    monotone_flag: bool
    line_search_failed: bool = False


def t_grid(t_lo: float, t_hi: float, dt_step: float) -> np.ndarray:
    """Inclusive grid t_lo, t_lo + dt, ..., t_hi."""
    if not (t_lo < t_hi):
        raise ValueError(f"need t_lo < t_hi, got [{t_lo}, {t_hi}]")
    if dt_step <= 0:
        raise ValueError(f"dt_step must be positive, got {dt_step}")
    count = int(np.floor((t_hi - t_lo) / dt_step + 1e-9))
    grid = t_lo + dt_step * np.arange(count + 1)
    if t_hi - grid[-1] > 1e-9 * dt_step:
        grid = np.append(grid, t_hi)
    return grid


def grid_search_T(H: TfimHamiltonian, p: int, t_lo: float = 0.0,
                  t_hi: float = None, dt_step: float = 0.01) -> GridSearchResult:
    """Minimize E_p(T) over the inclusive grid; ties break to smallest T."""
    if t_hi is None:
        t_hi = float(p)
    grid = t_grid(t_lo, t_hi, dt_step)
    energies = snapshot_energies(H, p, grid)
    best = int(np.argmin(energies))  # first minimum = smallest T on ties
    return GridSearchResult(
        t_star_approx=float(grid[best]),
        energy=float(energies[best]),
        evaluated_points=int(grid.size),
        t_lo=float(t_lo),
        t_hi=float(t_hi),
        dt_step=float(dt_step),
    )


def energy_and_gradient(H: TfimHamiltonian, betas, gammas):
    """Energy and all 2p partial derivatives in one forward/backward pass.

    Returns (E, grad) with grad ordered [dE/dbeta_1..p, dE/dgamma_1..p].
    """
    betas = np.asarray(betas, dtype=np.float64)
    gammas = np.asarray(gammas, dtype=np.float64)
    p = betas.size
    psi = init_minus(H.n_qubits)
    for k in range(p):
        apply_phase(psi, gammas[k], H)
        apply_mixer(psi, betas[k], H.n_qubits)
    lam = H.matvec(psi)
    E = float(np.real(np.vdot(psi, lam)))

    grad_b = np.empty(p)
    grad_g = np.empty(p)
    for k in range(p - 1, -1, -1):
        grad_b[k] = 2.0 * float(np.imag(np.vdot(lam, H.apply_h0(psi))))
        apply_mixer(psi, -betas[k], H.n_qubits)
        apply_mixer(lam, -betas[k], H.n_qubits)
        grad_g[k] = 2.0 * float(np.imag(np.vdot(lam, H.apply_h1(psi))))
        apply_phase(psi, -gammas[k], H)
        apply_phase(lam, -gammas[k], H)
    return E, np.concatenate([grad_b, grad_g])


def gradient(H: TfimHamiltonian, betas, gammas) -> np.ndarray:
    """Exact adjoint gradient [dE/dbeta_1..p, dE/dgamma_1..p]."""
    return energy_and_gradient(H, betas, gammas)[1]


def refine_bfgs(H: TfimHamiltonian, p: int, schedule_init: Schedule,
                max_iter: int = 500, grad_tol: float = 1e-8) -> RefineResult:
    """BFGS over the 2p angles starting from the snapshot schedule.

    Returns the best point seen during the search, never worse than the
    starting schedule; if the Wolfe line search fails before reaching
    grad_tol the incumbent is returned with a flag.
    """
    if len(schedule_init.betas) != p or len(schedule_init.gammas) != p:
        raise ValueError("schedule_init angle vectors must have length p")
    x0 = np.concatenate([schedule_init.betas, schedule_init.gammas])
    best = {"x": x0.copy(), "E": None}

    def fun(x):
        E, g = energy_and_gradient(H, x[:p], x[p:])
        if not (np.isfinite(E) and np.all(np.isfinite(g))):
            raise FloatingPointError(
                f"non-finite energy/gradient at angles {x!r}: E={E}"
            )
        if best["E"] is None or E < best["E"]:
            best["E"] = E
            best["x"] = x.copy()
        return E, g

    E0, g0 = fun(x0)
    res = minimize(fun, x0, jac=True, method="BFGS",
                   options={"maxiter": max_iter, "gtol": grad_tol})
    xb = best["x"]
    Eb, gb = energy_and_gradient(H, xb[:p], xb[p:])
    return RefineResult(
        betas=xb[:p],
        gammas=xb[p:],
        energy=Eb,
        iterations=int(res.nit),
        grad_norm=float(np.max(np.abs(gb))),
        monotone_flag=bool(Eb <= E0 + 1e-12),
        line_search_failed=bool(res.status == 2),
    )
