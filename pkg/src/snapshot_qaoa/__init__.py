"""Statevector simulator and experiment harness for partial-anneal
(snapshot) QAOA on two-term transverse-field Ising Hamiltonians."""

from .graphs import WeightedGraph, build_j1j2_torus, build_random_regular
from .hamiltonian import (NormalizedView, TfimHamiltonian, diag_energies,
                          j1j2_tfim, normalize, snapshot_residual, tfim)
from .eigensolver import (ConvergenceError, SpectrumResult,
                          dense_spectrum_oracle, ground_spectrum)
from .schedule import (RationalAngle, Schedule, default_rho0, default_rho1,
                       make_schedule, mirror_point, period)
from .statevector import (apply_mixer, apply_phase, energy, init_minus,
                          run_snapshot_qaoa, run_with_angles,
                          snapshot_energies)
from .optimizer import (GridSearchResult, RefineResult, energy_and_gradient,
                        gradient, grid_search_T, refine_bfgs)
from . import experiments

__all__ = [
    "WeightedGraph", "build_j1j2_torus", "build_random_regular",
    "NormalizedView", "TfimHamiltonian", "diag_energies", "j1j2_tfim",
    "normalize", "snapshot_residual", "tfim",
    "ConvergenceError", "SpectrumResult", "dense_spectrum_oracle",
    "ground_spectrum",
    "RationalAngle", "Schedule", "default_rho0", "default_rho1",
    "make_schedule", "mirror_point", "period",
    "apply_mixer", "apply_phase", "energy", "init_minus",
    "run_snapshot_qaoa", "run_with_angles", "snapshot_energies",
    "GridSearchResult", "RefineResult", "energy_and_gradient", "gradient",
    "grid_search_T", "refine_bfgs",
    "experiments",
]
