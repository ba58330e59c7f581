"""Two-term Hamiltonians H = c0*H0 + c1*H1 with H0 = sum_j X_j and a
diagonal coupling term H1 = sum_edges w * ZZ.

Conventions (fixed globally):
  * qubit j is bit j of the basis index (least significant bit = qubit 0);
  * Z|0> = +|0>, so spin s_j(z) = +1 when bit j of z is 0.

Energies are always reported against the unnormalized H; the normalized
view (coefficients summing to 1) exists only to express H as the snapshot
of a linear annealing Hamiltonian.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .graphs import WeightedGraph, build_j1j2_torus

QUBIT_CAP = 26  # diagonal table of 2^26 float64 is ~0.5 GiB


def diag_energies(graph: WeightedGraph, cap: int = QUBIT_CAP) -> np.ndarray:
    """Precompute table[z] = sum_(u,v) w_uv * s_u(z) * s_v(z) for all z."""
    n = graph.n_vertices
    if n > cap:
        est_gib = (2 ** n) * 8 / 2 ** 30
        raise ValueError(
            f"{n} qubits exceeds the {cap}-qubit cap "
            f"(diagonal table would need ~{est_gib:.1f} GiB)"
        )
    z = np.arange(2 ** n, dtype=np.int64)
    table = np.zeros(2 ** n, dtype=np.float64)
    for u, v, w in graph.edges:
        su = 1.0 - 2.0 * ((z >> u) & 1)
        sv = 1.0 - 2.0 * ((z >> v) & 1)
        table += w * su * sv
    return table


@dataclass(frozen=True)
class TfimHamiltonian:
    """H = c0 * sum_j X_j + c1 * sum_edges w * ZZ over graph vertices."""

    graph: WeightedGraph
    c0: float
    c1: float = 1.0
    n_qubits: int = field(init=False)
    diag_table: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "n_qubits", self.graph.n_vertices)
        object.__setattr__(self, "diag_table", diag_energies(self.graph))
        self.diag_table.setflags(write=False)
        # unique-value decomposition of the diagonal, used by the fast
        # batched phase application (the table has few distinct values)
        uniq, inv = np.unique(self.diag_table, return_inverse=True)
        object.__setattr__(self, "_diag_unique", uniq)
        object.__setattr__(self, "_diag_inverse", inv.astype(np.intp))

    @property
    def dim(self):
        return 2 ** self.n_qubits

    def apply_h0(self, v: np.ndarray) -> np.ndarray:
        """Bare mixer term: out[z] = sum_j v[z ^ (1<<j)]."""
        n = self.n_qubits
        out = np.zeros_like(v)
        for j in range(n):
            shaped = v.reshape(v.shape[:-1] + (2 ** (n - 1 - j), 2, 2 ** j))
            out += shaped[..., ::-1, :].reshape(v.shape)
        return out

    def apply_h1(self, v: np.ndarray) -> np.ndarray:
        """Bare diagonal term: out[z] = diag_table[z] * v[z]."""
        return self.diag_table * v

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """Matrix-free application of H to a length-2^n vector."""
        v = np.asarray(v)
        if v.shape[-1] != self.dim:
            raise ValueError(f"vector length {v.shape[-1]} != 2^{self.n_qubits}")
        return self.c1 * self.apply_h1(v) + self.c0 * self.apply_h0(v)


def tfim(graph: WeightedGraph, Bx: float) -> TfimHamiltonian:
    """TFIM mapping: c0 = Bx, c1 = 1."""
    return TfimHamiltonian(graph, c0=Bx, c1=1.0)


def j1j2_tfim(rows: int, cols: int, J1: float, J2: float, Bx: float) -> TfimHamiltonian:
    return tfim(build_j1j2_torus(rows, cols, J1, J2), Bx)


@dataclass(frozen=True)
class NormalizedView:
    """Coefficients rescaled so c0_hat + c1_hat = 1."""

    c0_hat: float
    c1_hat: float

    def tau(self, T: float) -> float:
        """Partial anneal time tau = c1_hat * T."""
        return self.c1_hat * T


def normalize(H: TfimHamiltonian) -> NormalizedView:
    s = H.c0 + H.c1
    if s <= 0:
        raise ValueError(
            f"c0 + c1 = {s} must be positive for the normalized view to exist"
        )
    return NormalizedView(c0_hat=H.c0 / s, c1_hat=H.c1 / s)


def snapshot_residual(H: TfimHamiltonian, T: float, samples: int = 8,
                      seed: int = 0) -> float:
    """Max over random unit vectors of ||Hhat v - H_T(tau) v||_2.

    Hhat is the normalized Hamiltonian and H_T(t) = (1-t/T) H0 + (t/T) H1
    evaluated at the partial anneal time tau = c1_hat*T; the identity holds
    exactly, so a correct implementation returns rounding-scale values.
    """
    if T <= 0:
        raise ValueError(f"T must be positive, got {T}")
    view = normalize(H)
    tau = view.tau(T)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        v = rng.normal(size=H.dim) + 1j * rng.normal(size=H.dim)
        v /= np.linalg.norm(v)
        lhs = view.c0_hat * H.apply_h0(v) + view.c1_hat * H.apply_h1(v)
        rhs = (1 - tau / T) * H.apply_h0(v) + (tau / T) * H.apply_h1(v)
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return worst


def hamiltonian_to_spec(H: TfimHamiltonian, torus_params: dict = None) -> str:
    """JSON spec: torus family {rows, cols, J1, J2, Bx} or a generic
    {edge_list_path, c0, c1} referencing an edge-list file."""
    if torus_params is not None:
        keys = {"rows", "cols", "J1", "J2", "Bx"}
        if set(torus_params) != keys:
            raise ValueError(f"torus spec must have exactly keys {sorted(keys)}")
        return json.dumps(torus_params, sort_keys=True)
    raise ValueError("generic Hamiltonians must be serialized via an edge list "
                     "file and the {edge_list_path, c0, c1} form")


def hamiltonian_from_spec(spec: dict) -> TfimHamiltonian:
    if "rows" in spec:
        return j1j2_tfim(spec["rows"], spec["cols"], spec["J1"], spec["J2"],
                         spec["Bx"])
    if "edge_list_path" in spec:
        with open(spec["edge_list_path"]) as fh:
            graph = WeightedGraph.from_edge_list_text(fh.read())
        return TfimHamiltonian(graph, c0=spec["c0"], c1=spec.get("c1", 1.0))
    raise ValueError(
        "Hamiltonian spec must be a torus {rows, cols, J1, J2, Bx} or a "
        "generic {edge_list_path, c0, c1} object"
    )
