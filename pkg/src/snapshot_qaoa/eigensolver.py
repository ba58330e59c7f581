"""Ground-state energy and gap via matrix-free Lanczos.

The Hamiltonian is real symmetric in the computational basis (a diagonal
table plus a 0/1 bit-flip pattern scaled by c0), so all Krylov vectors are
kept real. Full reorthogonalization is used: at the dimensions handled
here the O(m^2 * 2^n) cost is negligible and it eliminates ghost copies
of converged eigenvalues.

The small tridiagonal eigenproblems (and the dense test oracle) are solved
in-repo with Householder tridiagonalization followed by QL iteration with
implicit shifts, both implemented from the standard published recurrences;
no external eigensolver is called anywhere in this module.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .hamiltonian import TfimHamiltonian

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 500
DEFAULT_SEED = 0x5EED


class ConvergenceError(RuntimeError):
    def __init__(self, message, best_residual):
        super().__init__(message)
        self.best_residual = best_residual


@dataclass(frozen=True)
class SpectrumResult:
    ground_energy: float
    first_excited_energy: float
    gap: float
    iterations: int
    residual: float
    ground_vector: np.ndarray = None


def householder_tridiagonalize(A: np.ndarray):
    """Reduce a real symmetric matrix to tridiagonal form.

    Returns (d, e): diagonal and subdiagonal (length n-1). A is not
    modified. Similarity transforms preserve the spectrum.
    """
    A = np.array(A, dtype=np.float64)
    n = A.shape[0]
    for k in range(n - 2):
        x = A[k + 1:, k]
        xnorm = np.linalg.norm(x)
        if xnorm == 0.0:
            continue
        alpha = -math.copysign(xnorm, x[0]) if x[0] != 0 else -xnorm
        v = x.copy()
        v[0] -= alpha
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        v /= vnorm
        sub = A[k + 1:, k + 1:]
        w = sub @ v
        kappa = v @ w
        sub -= 2.0 * np.outer(v, w) + 2.0 * np.outer(w, v) - 4.0 * kappa * np.outer(v, v)
        A[k + 1, k] = alpha
        A[k, k + 1] = alpha
        A[k + 2:, k] = 0.0
        A[k, k + 2:] = 0.0
    return np.diag(A).copy(), np.diag(A, -1).copy()


def ql_implicit(d: np.ndarray, e: np.ndarray, z: np.ndarray = None,
                max_sweeps: int = 50):
    """Eigenvalues of a symmetric tridiagonal matrix by QL with implicit
    shifts; if z (an m x m matrix, usually the identity) is given, the
    rotations are accumulated into its columns to produce eigenvectors.

    Returns sorted eigenvalues, and the matching eigenvector columns when
    z was provided.
    """
    n = d.size
    d = d.astype(np.float64).copy()
    e = np.append(e.astype(np.float64), 0.0)
    eps = np.finfo(np.float64).eps
    for l in range(n):
        iters = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            iters += 1
            if iters > max_sweeps:
                raise ConvergenceError(
                    f"QL iteration failed to converge for eigenvalue {l}",
                    best_residual=float(abs(e[l])),
                )
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if z is not None:
                    zi = z[:, i].copy()
                    z[:, i] = c * zi - s * z[:, i + 1]
                    z[:, i + 1] = s * zi + c * z[:, i + 1]
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    order = np.argsort(d, kind="stable")
    if z is not None:
        return d[order], z[:, order]
    return d[order]


def dense_spectrum_oracle(H: TfimHamiltonian) -> np.ndarray:
    """Full sorted spectrum from the dense matrix, for n_qubits <= 12.

    The dense matrix is assembled column by column from the matrix-free
    matvec on basis vectors, then diagonalized with the in-repo
    tridiagonalization + QL routines. Serves as the independent oracle
    against which the Lanczos path is validated.
    """
    if H.n_qubits > 12:
        raise ValueError(f"dense oracle limited to 12 qubits, got {H.n_qubits}")
    dim = H.dim
    A = np.empty((dim, dim), dtype=np.float64)
    basis = np.zeros(dim, dtype=np.float64)
    for j in range(dim):
        basis[j] = 1.0
        A[:, j] = H.matvec(basis)
        basis[j] = 0.0
    d, e = householder_tridiagonalize(A)
    return ql_implicit(d, e)


def _lowest_ritz_pairs(alphas, betas):
    """Two lowest eigenvalues plus the lowest pair's eigenvector of the
    current Lanczos tridiagonal matrix."""
    m = len(alphas)
    d = np.array(alphas)
    e = np.array(betas[:m - 1]) if m > 1 else np.zeros(0)
    vals, vecs = ql_implicit(d, e, z=np.eye(m))
    return vals, vecs[:, 0]


def ground_spectrum(H: TfimHamiltonian, tol: float = DEFAULT_TOL,
                    max_iter: int = DEFAULT_MAX_ITER, seed: int = DEFAULT_SEED,
                    want_vector: bool = False) -> SpectrumResult:
    """Lanczos with full reorthogonalization from a seeded random start.

    Converged when the explicit residual ||H v - theta v|| of the lowest
    Ritz pair is <= tol. Warns when the gap to the second Ritz value is
    below 10*tol (near-degenerate ground space).
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    dim = H.dim
    rng = np.random.default_rng(seed)
    max_iter = min(max_iter, dim + 8)
    V = np.empty((min(max_iter, dim), dim), dtype=np.float64)
    v = rng.normal(size=dim)
    V[0] = v / np.linalg.norm(v)

    alphas = []
    betas = []
    best_residual = math.inf
    w = H.matvec(V[0]).real

    for it in range(1, max_iter + 1):
        m = len(alphas) + 1  # basis vectors in use
        alpha = float(V[m - 1] @ w)
        alphas.append(alpha)
        w = w - alpha * V[m - 1]
        if m > 1:
            w = w - betas[-1] * V[m - 2]
        # full reorthogonalization against the whole basis
        w = w - V[:m].T @ (V[:m] @ w)
        beta = float(np.linalg.norm(w))

        check = m >= 2 and (m % 5 == 0 or beta <= tol or it == max_iter
                            or m == dim)
        if check:
            vals, y0 = _lowest_ritz_pairs(alphas, betas)
            x = V[:m].T @ y0
            x /= np.linalg.norm(x)
            theta = float(vals[0])
            resid = float(np.linalg.norm(H.matvec(x).real - theta * x))
            best_residual = min(best_residual, resid)
            if resid <= tol:
                gap = float(vals[1] - vals[0])
                if gap < 10 * tol:
                    warnings.warn(
                        f"near-degenerate ground space: gap {gap:.3e} < 10*tol",
                        RuntimeWarning,
                    )
                return SpectrumResult(
                    ground_energy=theta,
                    first_excited_energy=float(vals[1]),
                    gap=gap,
                    iterations=it,
                    residual=resid,
                    ground_vector=x if want_vector else None,
                )

        if m == dim or m == V.shape[0]:
            break
        if beta <= 1e-13:
            # Krylov breakdown: invariant subspace found; continue in a
            # fresh random direction orthogonal to everything so far
            w = rng.normal(size=dim)
            w = w - V[:m].T @ (V[:m] @ w)
            nrm = np.linalg.norm(w)
            if nrm <= 1e-13:
                break
            beta = 0.0
            V[m] = w / nrm
        else:
            V[m] = w / beta
        betas.append(beta)
        w = H.matvec(V[m]).real

    raise ConvergenceError(
        f"Lanczos did not reach residual {tol} within {max_iter} iterations "
        f"(best residual {best_residual:.3e})",
        best_residual=best_residual,
    )
