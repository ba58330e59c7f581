"""Weighted interaction graphs for the diagonal coupling term.

Two families are provided: the J1-J2 square torus (nearest neighbors with
weight -J1, next-nearest diagonal neighbors with weight +J2) and seeded
random regular graphs with unit weights for Max-Cut style benchmarks.
"""

import random
from dataclasses import dataclass, field


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected simple graph with real edge weights.

    Edges are stored canonically as (u, v, w) with 0 <= u < v < n_vertices,
    sorted, with no duplicate (u, v) pairs.
    """

    n_vertices: int
    edges: tuple = field(default=())

    def __post_init__(self):
        if self.n_vertices <= 0:
            raise ValueError(f"n_vertices must be positive, got {self.n_vertices}")
        canon = []
        seen = set()
        for (u, v, w) in self.edges:
            if not (0 <= u < v < self.n_vertices):
                raise ValueError(
                    f"edge ({u}, {v}) violates 0 <= u < v < {self.n_vertices}"
                )
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            canon.append((int(u), int(v), float(w)))
        canon.sort(key=lambda e: (e[0], e[1]))
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def n_edges(self):
        return len(self.edges)

    def degrees(self):
        deg = [0] * self.n_vertices
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def to_edge_list_text(self) -> str:
        """First line is the vertex count, then one `u v w` line per edge."""
        lines = [str(self.n_vertices)]
        for u, v, w in self.edges:
            lines.append(f"{u} {v} {w:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list_text(cls, text: str) -> "WeightedGraph":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            u, v, w = ln.split()
            edges.append((int(u), int(v), float(w)))
        return cls(n, tuple(edges))


def build_j1j2_torus(rows: int, cols: int, J1: float, J2: float) -> WeightedGraph:
    """Square-lattice torus with NN weight -J1 and NNN (diagonal) weight +J2.

    Vertex (i, j) maps to index i*cols + j. The sign convention is folded
    into the stored weights so the diagonal term is just sum_edges w*ZZ.
    Requires rows, cols >= 3: a 2-wide torus collapses distinct neighbor
    offsets onto the same vertex pair (parallel edges).
    """
    if rows < 3 or cols < 3:
        raise ValueError(
            f"torus dimensions must be >= 3 (got {rows}x{cols}): smaller tori "
            "produce parallel edges between the same vertex pair"
        )

    def idx(i, j):
        return (i % rows) * cols + (j % cols)

    edges = []
    for i in range(rows):
        for j in range(cols):
            a = idx(i, j)
            # each undirected NN/NNN edge is generated from exactly one endpoint
            for di, dj, w in ((1, 0, -J1), (0, 1, -J1), (1, 1, J2), (1, -1, J2)):
                b = idx(i + di, j + dj)
                u, v = (a, b) if a < b else (b, a)
                edges.append((u, v, w))
    return WeightedGraph(rows * cols, tuple(edges))


def build_random_regular(n: int, degree: int, seed: int,
                         max_tries: int = 10000) -> WeightedGraph:
    """Uniform-ish random simple regular graph via the pairing model.

    Each vertex contributes `degree` stubs; a random perfect matching of the
    stubs is drawn and rejected if it contains self-loops or multi-edges.
    All edge weights are +1.0. Deterministic for a fixed seed.
    """
    if degree >= n:
        raise ValueError(f"degree {degree} must be < n {n}")
    if (n * degree) % 2 != 0:
        raise ValueError(f"n*degree must be even, got n={n}, degree={degree}")

    rng = random.Random(seed)
    stubs_template = [v for v in range(n) for _ in range(degree)]
    for _ in range(max_tries):
        stubs = stubs_template[:]
        rng.shuffle(stubs)
        pairs = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in pairs:
                ok = False
                break
            pairs.add(e)
        if ok:
            edges = tuple((u, v, 1.0) for (u, v) in sorted(pairs))
            return WeightedGraph(n, edges)
    raise RuntimeError(
        f"pairing model failed to produce a simple {degree}-regular graph on "
        f"{n} vertices within {max_tries} tries (seed={seed})"
    )
