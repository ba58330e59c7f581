"""End-to-end studies: convergence in p, threshold heatmaps over the
(J2, Bx) plane, energy-vs-T curves, T*-vs-p regression, period scaling,
and the TQA Max-Cut curve on a random regular graph.

Each sweep produces plain records (dataclasses of floats/ints) that the
CLI serializes to CSV; nothing here touches files or plotting.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .eigensolver import ground_spectrum
from .graphs import build_random_regular
from .hamiltonian import TfimHamiltonian, j1j2_tfim, normalize
from .optimizer import grid_search_T, refine_bfgs
from .schedule import RationalAngle, make_schedule, period
from .statevector import init_minus, energy as state_energy, snapshot_energies

THRESHOLD_SENTINEL = -1  # heatmap cell that never passed within the p cap


@dataclass(frozen=True)
class ExperimentRecord:
    instance: dict
    p: int
    T_used: float
    energy_unrefined: float
    ground_energy: float
    gap: float
    rel_err: float
    non_monotone: bool
    energy_refined: float = None

    @property
    def best_energy(self):
        return self.energy_unrefined if self.energy_refined is None \
            else self.energy_refined


@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float
    pearson_r: float   # nan when the response has zero variance
    points: tuple = field(default=())


def rel_error(e: float, ground: float) -> float:
    return abs(e - ground) / abs(ground)


def convergence_sweep(H: TfimHamiltonian, p_max: int, refine: bool = False,
                      dt_step: float = 0.01, instance: dict = None,
                      epsilon: float = None, on_record=None):
    """For p = 1..p_max: grid-search T over [0, p], optionally BFGS-refine
    from the resulting schedule, and flag p where the energy worsened.

    When epsilon is given the sweep stops early at the first p whose
    relative error passes the threshold. on_record, if given, is called
    with each record as it is produced (for incremental flushing).
    """
    if p_max < 1:
        raise ValueError(f"p_max must be >= 1, got {p_max}")
    spectrum = ground_spectrum(H)
    c1_hat = normalize(H).c1_hat
    records = []
    prev_energy = None
    for p in range(1, p_max + 1):
        gs = grid_search_T(H, p, 0.0, float(p), dt_step)
        e_ref = None
        if refine:
            sched = make_schedule(p, gs.t_star_approx, c1_hat)
            e_ref = refine_bfgs(H, p, sched).energy
        e_best = gs.energy if e_ref is None else e_ref
        rec = ExperimentRecord(
            instance=dict(instance or {}),
            p=p,
            T_used=gs.t_star_approx,
            energy_unrefined=gs.energy,
            energy_refined=e_ref,
            ground_energy=spectrum.ground_energy,
            gap=spectrum.gap,
            rel_err=rel_error(e_best, spectrum.ground_energy),
            non_monotone=(prev_energy is not None and e_best > prev_energy),
        )
        prev_energy = e_best
        records.append(rec)
        if on_record is not None:
            on_record(rec)
        if epsilon is not None and rec.rel_err <= epsilon:
            break
    return records


def threshold_p(H: TfimHamiltonian, epsilon: float = 0.01, p_cap: int = 250,
                refine: bool = False, dt_step: float = 0.01,
                instance: dict = None):
    """Smallest p whose relative error passes epsilon, with its records.

    Reports 0 when the initial |->^n state already passes (extreme-Bx
    corners); THRESHOLD_SENTINEL when the cap is hit.
    """
    spectrum = ground_spectrum(H)
    e0 = state_energy(init_minus(H.n_qubits), H)
    if rel_error(e0, spectrum.ground_energy) <= epsilon:
        return 0, []
    records = convergence_sweep(H, p_cap, refine=refine, dt_step=dt_step,
                                instance=instance, epsilon=epsilon)
    if records and records[-1].rel_err <= epsilon:
        return records[-1].p, records
    return THRESHOLD_SENTINEL, records


def _heatmap_cell(args):
    rows, cols, J1, J2, Bx, epsilon, p_cap, refine, dt_step = args
    H = j1j2_tfim(rows, cols, J1, J2, Bx)
    instance = {"rows": rows, "cols": cols, "J1": J1, "J2": J2, "Bx": Bx}
    min_p, records = threshold_p(H, epsilon, p_cap, refine, dt_step, instance)
    return J2, Bx, min_p, records


def threshold_heatmap(J2_grid, Bx_grid, epsilon: float = 0.01,
                      p_cap: int = 250, refine: bool = False,
                      rows: int = 3, cols: int = 3, J1: float = 1.0,
                      dt_step: float = 0.01, workers: int = None,
                      on_record=None):
    """Min-p-to-threshold matrix over the (J2, Bx) grid.

    Returns (matrix, records): matrix[i][j] is the minimum p for
    (Bx_grid[i], J2_grid[j]) or THRESHOLD_SENTINEL, and records is the
    flat list of per-p records across all cells.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    tasks = [(rows, cols, J1, float(J2), float(Bx), epsilon, p_cap, refine,
              dt_step)
             for Bx in Bx_grid for J2 in J2_grid]
    if workers is None:
        workers = int(os.environ.get("SNAPSHOT_QAOA_WORKERS", "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_heatmap_cell, tasks))
    else:
        results = [_heatmap_cell(t) for t in tasks]

    matrix = np.empty((len(Bx_grid), len(J2_grid)), dtype=np.int64)
    all_records = []
    by_cell = {(j2, bx): (mp, recs) for j2, bx, mp, recs in results}
    for i, Bx in enumerate(Bx_grid):
        for j, J2 in enumerate(J2_grid):
            min_p, recs = by_cell[(float(J2), float(Bx))]
            matrix[i, j] = min_p
            all_records.extend(recs)
            if on_record is not None:
                for r in recs:
                    on_record(r)
    return matrix, all_records


def energy_vs_T_curve(H: TfimHamiltonian, p: int, t_lo: float, t_hi: float,
                      samples: int = 1000):
    """E_p(T) on an inclusive linear grid of `samples` points."""
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")
    Ts = np.linspace(t_lo, t_hi, samples)
    Es = snapshot_energies(H, p, Ts)
    return list(zip(Ts.tolist(), Es.tolist()))


def linear_fit(points) -> RegressionResult:
    """Ordinary least squares y = slope*x + intercept plus Pearson r.

    pearson_r is nan when y has zero variance (undefined correlation).
    """
    pts = tuple((float(x), float(y)) for x, y in points)
    x = np.array([q[0] for q in pts])
    y = np.array([q[1] for q in pts])
    xc = x - x.mean()
    yc = y - y.mean()
    var_x = float(xc @ xc)
    var_y = float(yc @ yc)
    if var_x == 0.0:
        raise ValueError("regression needs at least two distinct x values")
    slope = float(xc @ yc) / var_x
    intercept = float(y.mean() - slope * x.mean())
    r = float("nan") if var_y == 0.0 else float(xc @ yc) / math.sqrt(var_x * var_y)
    return RegressionResult(slope=slope, intercept=intercept, pearson_r=r,
                            points=pts)


def regression_T_vs_p(H: TfimHamiltonian, p_max: int,
                      dt_step: float = 0.01) -> RegressionResult:
    """Collect (p, T*_approx) for p = 1..p_max and fit a line."""
    if p_max < 2:
        raise ValueError(f"p_max must be >= 2, got {p_max}")
    points = []
    for p in range(1, p_max + 1):
        gs = grid_search_T(H, p, 0.0, float(p), dt_step)
        points.append((p, gs.t_star_approx))
    return linear_fit(points)


def period_scaling(c1_hat, rho0: RationalAngle, rho1: RationalAngle,
                   p_max: int):
    """(p, rho(p)) for p = 1..p_max with exact rational-of-pi periods."""
    c1_hat = Fraction(c1_hat)
    out = []
    for p in range(1, p_max + 1):
        out.append((p, period(p, c1_hat, rho0, rho1)))
    return out


def tqa_maxcut_replication(n: int = 12, degree: int = 3, seed: int = 7,
                           p: int = 5, t_samples: int = 200,
                           t_max: float = None):
    """Approximation-ratio curve <H>/E_H for the TQA special case on a
    random regular graph with H = sum_edges ZZ (all-plus weights, c0 = 0,
    so c1_hat = 1 and tau = T).

    Returns a list of (T, energy, ratio) tuples; ratios never exceed 1
    since E_H < 0 and the energy is variationally bounded below by it.
    """
    if t_max is None:
        t_max = float(p)
    graph = build_random_regular(n, degree, seed)
    H = TfimHamiltonian(graph, c0=0.0, c1=1.0)
    ground = ground_spectrum(H).ground_energy
    Ts = np.linspace(0.0, t_max, t_samples)
    Es = snapshot_energies(H, p, Ts)
    return [(float(t), float(e), float(e / ground)) for t, e in zip(Ts, Es)]
