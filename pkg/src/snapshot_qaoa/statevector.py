"""Exact noiseless statevector simulation of the alternating circuit.

States are arrays of 2^n complex128 amplitudes indexed so that qubit j is
bit j of the basis index. All operations also accept a batched array of
shape (batch, 2^n) with per-row angles, which is what the T grid search
uses to amortize numpy overhead.

Within each layer the phase unitary exp(-i*gamma_k*H1) acts before the
mixer exp(-i*beta_k*H0), i.e. the layer product is read right-to-left.
The phase layer uses the bare diagonal table (no c1 factor) and the mixer
the bare sum of X (no c0 factor); coefficients enter only through the
schedule and the final energy.
"""

import numpy as np

from .hamiltonian import QUBIT_CAP, TfimHamiltonian, normalize
from .schedule import Schedule, make_schedule


def init_minus(n: int, batch: int = None) -> np.ndarray:
    """|-> on every qubit: amplitudes (-1)^popcount(z) / sqrt(2^n)."""
    if not (1 <= n <= QUBIT_CAP):
        raise ValueError(f"n must be in [1, {QUBIT_CAP}], got {n}")
    z = np.arange(2 ** n, dtype=np.int64)
    pop = np.bitwise_count(z) if hasattr(np, "bitwise_count") else _popcount(z)
    amps = ((-1.0) ** (pop % 2)) / np.sqrt(2.0 ** n)
    psi = amps.astype(np.complex128)
    if batch is not None:
        psi = np.broadcast_to(psi, (batch, psi.size)).copy()
    return psi


def _popcount(z: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z)
    z = z.copy()
    while np.any(z):
        out += z & 1
        z >>= 1
    return out


def apply_phase(psi: np.ndarray, gamma, H: TfimHamiltonian) -> np.ndarray:
    """In place psi[z] *= exp(-i * gamma * diag_table[z]).

    gamma may be a scalar or, for batched psi, an array of shape (batch,).
    """
    if np.isscalar(gamma) or np.ndim(gamma) == 0:
        psi *= np.exp(-1j * gamma * H.diag_table)
    else:
        gamma = np.asarray(gamma, dtype=np.float64)
        # the diagonal table has few distinct values; exponentiate those
        # once per row and gather
        phases = np.exp(-1j * np.outer(gamma, H._diag_unique))
        psi *= phases[:, H._diag_inverse]
    return psi


def apply_mixer(psi: np.ndarray, beta, n_qubits: int) -> np.ndarray:
    """In place exp(-i * beta * sum_j X_j).

    Per qubit this is the rotation [[cos b, -i sin b], [-i sin b, cos b]]
    across amplitude pairs (z, z ^ (1<<j)).
    """
    c = np.cos(beta)
    s = np.sin(beta)
    if np.ndim(beta) > 0:
        c = c[:, None, None]
        s = s[:, None, None]
    lead = psi.shape[:-1]
    for j in range(n_qubits):
        shaped = psi.reshape(lead + (2 ** (n_qubits - 1 - j), 2, 2 ** j))
        a = shaped[..., 0, :]
        b = shaped[..., 1, :]
        new_a = c * a - 1j * s * b
        new_b = -1j * s * a + c * b
        shaped[..., 0, :] = new_a
        shaped[..., 1, :] = new_b
    return psi


def energy(psi: np.ndarray, H: TfimHamiltonian):
    """<psi| H |psi> for the unnormalized H; real by Hermiticity.

    Returns a scalar for a single state or an array for a batch.
    """
    if psi.shape[-1] != H.dim:
        raise ValueError(f"state length {psi.shape[-1]} != 2^{H.n_qubits}")
    diag_part = (np.abs(psi) ** 2) @ H.diag_table
    lead = psi.shape[:-1]
    off = np.zeros(lead, dtype=np.float64)
    n = H.n_qubits
    for j in range(n):
        shaped = psi.reshape(lead + (2 ** (n - 1 - j), 2, 2 ** j))
        a = shaped[..., 0, :]
        b = shaped[..., 1, :]
        # <psi| X_j |psi> = 2 Re sum over pairs
        off += 2.0 * np.real(np.conj(a) * b).sum(axis=(-2, -1))
    total = H.c1 * diag_part + H.c0 * off
    return float(total) if total.ndim == 0 else total


def apply_layers(psi: np.ndarray, betas: np.ndarray, gammas: np.ndarray,
                 H: TfimHamiltonian) -> np.ndarray:
    """Apply layers k = 1..p: phase(gamma_k) then mixer(beta_k), in place.

    For batched psi, betas/gammas may be (batch, p) arrays.
    """
    betas = np.atleast_1d(np.asarray(betas, dtype=np.float64))
    gammas = np.atleast_1d(np.asarray(gammas, dtype=np.float64))
    if betas.shape != gammas.shape:
        raise ValueError("betas and gammas must have the same shape")
    p = betas.shape[-1]
    for k in range(p):
        apply_phase(psi, gammas[..., k], H)
        apply_mixer(psi, betas[..., k], H.n_qubits)
    return psi


def run_with_angles(H: TfimHamiltonian, betas, gammas):
    """Circuit from |->^n with explicit angle vectors; returns (psi, energy)."""
    psi = init_minus(H.n_qubits)
    apply_layers(psi, betas, gammas, H)
    return psi, energy(psi, H)


def run_snapshot_qaoa(H: TfimHamiltonian, p: int, T: float):
    """Depth-p snapshot-schedule state at anneal time T; (psi, E_p(T))."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    sched = make_schedule(p, T, normalize(H).c1_hat)
    return run_with_angles(H, sched.betas, sched.gammas)


def snapshot_energies(H: TfimHamiltonian, p: int, Ts: np.ndarray,
                      chunk: int = 1024) -> np.ndarray:
    """E_p(T) for many T values at once (batched over chunks of T)."""
    Ts = np.asarray(Ts, dtype=np.float64)
    c1_hat = normalize(H).c1_hat
    k = np.arange(1, p + 1, dtype=np.float64)
    beta_hat = (c1_hat / p) * (1.0 - k * c1_hat / p)   # T = 1 angles
    gamma_hat = (c1_hat / p) * (k * c1_hat / p)
    out = np.empty(Ts.shape, dtype=np.float64)
    flat = Ts.ravel()
    for start in range(0, flat.size, chunk):
        tvals = flat[start:start + chunk]
        psi = init_minus(H.n_qubits, batch=tvals.size)
        betas = np.outer(tvals, beta_hat)
        gammas = np.outer(tvals, gamma_hat)
        apply_layers(psi, betas, gammas, H)
        out.ravel()[start:start + chunk] = energy(psi, H)
    return out
