"""Codes as vertex subsets: distance partitions, complete regularity, spectra."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.sparse.csgraph import dijkstra

from .config import DEFAULT_TOL, Tolerances
from .errors import CRCodesError, LloydViolation, ParameterOutOfRange, TrivialCode
from .exact import Scalar, is_exact, is_zero, tridiagonal_eigenvalues
from .graphs import Graph, bfs_distances, distance_rows
from .spectral import IntersectionArray, Spectrum

BFS_OUTER_LIMIT = 4096


@dataclass(frozen=True, eq=False)
class Code:
    graph: Graph
    vertices: tuple[int, ...]
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_vertices(cls, graph: Graph, vertices, name: str = "") -> "Code":
        vs = sorted({int(v) for v in vertices})
        if not vs:
            raise ParameterOutOfRange("a code must be nonempty")
        if vs[0] < 0 or vs[-1] >= graph.n:
            raise ParameterOutOfRange(f"codeword index out of range for a graph on {graph.n} vertices")
        return cls(graph, tuple(vs), name)

    @classmethod
    def from_words(cls, graph: Graph, words, name: str = "") -> "Code":
        return cls.from_vertices(graph, [graph.vertex(w) for w in words], name)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def trivial(self) -> bool:
        return self.size <= 1 or self.size == self.graph.n

    @property
    def mask(self) -> np.ndarray:
        if "mask" not in self._cache:
            m = np.zeros(self.graph.n, dtype=bool)
            m[list(self.vertices)] = True
            m.setflags(write=False)
            self._cache["mask"] = m
        return self._cache["mask"]

    def distances(self) -> np.ndarray:
        """d(x, C) for every vertex x."""
        if "dist" not in self._cache:
            d = bfs_distances(self.graph, self.vertices)
            d.setflags(write=False)
            self._cache["dist"] = d
        return self._cache["dist"]

    def words(self) -> list[str]:
        return [self.graph.label(v) for v in self.vertices]

    def __len__(self):
        return self.size


# ---------------------------------------------------------------------------
# partition and distances


@dataclass(frozen=True)
class DistancePartition:
    cells: tuple[tuple[int, ...], ...]
    dist: np.ndarray = field(repr=False)

    @property
    def rho(self) -> int:
        return len(self.cells) - 1

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.cells]


def distance_partition(g: Graph, c: Code) -> DistancePartition:
    d = c.distances()
    rho = int(d.max())
    order = np.argsort(d, kind="stable")
    bounds = np.searchsorted(d[order], np.arange(rho + 2))
    cells = tuple(tuple(order[bounds[i]:bounds[i + 1]].tolist()) for i in range(rho + 1))
    return DistancePartition(cells, d)


def covering_radius(g: Graph, c: Code) -> int:
    return int(c.distances().max())


def minimum_distance(g: Graph, c: Code) -> int:
    """Smallest distance between two distinct codewords.

    Uses nearest-codeword labels: a shortest path between the closest pair
    must cross an edge whose ends have different nearest codewords, and any
    such edge (u, v) bounds the distance by d(u,C) + 1 + d(v,C).
    """
    if c.size <= 1:
        raise TrivialCode("minimum distance needs at least two codewords")
    dist, _, sources = dijkstra(g.adjacency, directed=False, indices=list(c.vertices), unweighted=True,
                                min_only=True, return_predecessors=True)
    dist = dist.astype(np.int64)
    src = g.edge_sources()
    dst = g.indices
    cross = sources[src] != sources[dst]
    return int((dist[src][cross] + dist[dst][cross]).min() + 1)


# ---------------------------------------------------------------------------
# quotient matrices


@dataclass(frozen=True)
class QuotientMatrix:
    """Tridiagonal U(C): row i is (gamma_i, alpha_i, beta_i)."""

    gamma: tuple[int, ...]
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        g, a, b = self.gamma, self.alpha, self.beta
        if not (len(g) == len(a) == len(b) >= 1):
            raise ParameterOutOfRange("gamma, alpha, beta must have equal positive length")
        if g[0] != 0 or b[-1] != 0:
            raise ParameterOutOfRange("need gamma_0 = 0 and beta_rho = 0")
        if any(x < 0 for x in g + a + b):
            raise ParameterOutOfRange("quotient parameters must be nonnegative")
        sums = {g[i] + a[i] + b[i] for i in range(len(g))}
        if len(sums) != 1:
            raise ParameterOutOfRange(f"row sums differ: {sorted(sums)}")
        if any(x <= 0 for x in g[1:]) or any(x <= 0 for x in b[:-1]):
            raise ParameterOutOfRange("U must be irreducible: gamma_i > 0 for i >= 1, beta_i > 0 for i < rho")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "QuotientMatrix":
        r = len(rows) - 1
        for i, row in enumerate(rows):
            if any(row[j] != 0 for j in range(len(rows)) if abs(i - j) > 1):
                raise ParameterOutOfRange("quotient matrix must be tridiagonal")
        gamma = tuple(int(rows[i][i - 1]) if i > 0 else 0 for i in range(r + 1))
        alpha = tuple(int(rows[i][i]) for i in range(r + 1))
        beta = tuple(int(rows[i][i + 1]) if i < r else 0 for i in range(r + 1))
        return cls(gamma, alpha, beta)

    @property
    def rho(self) -> int:
        return len(self.gamma) - 1

    @property
    def k(self) -> int:
        return self.gamma[0] + self.alpha[0] + self.beta[0]

    def matrix(self) -> list[list[int]]:
        r = self.rho
        m = [[0] * (r + 1) for _ in range(r + 1)]
        for i in range(r + 1):
            m[i][i] = self.alpha[i]
            if i > 0:
                m[i][i - 1] = self.gamma[i]
            if i < r:
                m[i][i + 1] = self.beta[i]
        return m

    def as_array(self) -> IntersectionArray:
        """Read U as an intersection array (only meaningful when alpha_0 = 0, gamma_1 = 1)."""
        return IntersectionArray(self.beta[:-1], self.gamma[1:], standing=False)

    def __str__(self):
        return str(self.matrix())


@dataclass(frozen=True)
class Witness:
    """Two vertices in the same cell with different (gamma, alpha, beta) counts."""

    cell: int
    x: int
    y: int
    counts_x: tuple[int, int, int]
    counts_y: tuple[int, int, int]

    def __str__(self):
        return f"cell {self.cell}: vertex {self.x} has {self.counts_x}, vertex {self.y} has {self.counts_y}"


def neighbor_counts(g: Graph, c: Code) -> np.ndarray:
    """n x 3 array: neighbors of x at distance d(x)-1, d(x), d(x)+1 from C."""
    d = c.distances()
    src = g.edge_sources()
    delta = d[g.indices] - d[src]
    out = np.zeros((g.n, 3), dtype=np.int64)
    for col, step in enumerate((-1, 0, 1)):
        out[:, col] = np.bincount(src[delta == step], minlength=g.n)
    return out


def _equitable(g: Graph, c: Code) -> QuotientMatrix | Witness:
    dp = distance_partition(g, c)
    counts = neighbor_counts(g, c)
    rows = []
    for i, cell in enumerate(dp.cells):
        cc = counts[list(cell)]
        bad = np.any(cc != cc[0], axis=1)
        if bad.any():
            j = int(np.argmax(bad))
            return Witness(i, cell[0], cell[j], tuple(int(x) for x in cc[0]), tuple(int(x) for x in cc[j]))
        rows.append(cc[0])
    return QuotientMatrix(tuple(int(r[0]) for r in rows), tuple(int(r[1]) for r in rows), tuple(int(r[2]) for r in rows))


def delsarte_verdict(g: Graph, c: Code) -> bool:
    """C is completely regular iff its outer distribution matrix has rho+1 distinct rows."""
    b = outer_distribution_matrix(g, c)
    return np.unique(b, axis=0).shape[0] == covering_radius(g, c) + 1


def is_completely_regular(g: Graph, c: Code, cross_check: bool = True) -> QuotientMatrix | Witness:
    """Neumaier equitability of the distance partition, confirmed by Delsarte's row count."""
    key = ("cr", cross_check)
    if key in c._cache:
        return c._cache[key]
    res = _equitable(g, c)
    if cross_check:
        delsarte = delsarte_verdict(g, c)
        if delsarte != isinstance(res, QuotientMatrix):
            raise CRCodesError(f"equitability ({res}) and Delsarte's criterion ({delsarte}) disagree")
    c._cache[key] = res
    return res


def outer_distribution_matrix(g: Graph, c: Code, method: str = "auto") -> np.ndarray:
    """B[x, i] = |Gamma_i(x) cap C|.

    ``bfs`` counts distances from each codeword directly; ``recurrence``
    uses the distance-regular identity
    A_{i+1} = (A A_i - a_i A_i - b_{i-1} A_{i-1}) / c_{i+1}.
    """
    if method == "auto":
        method = "bfs" if g.n * c.size <= BFS_OUTER_LIMIT**2 else "recurrence"
    if method == "bfs":
        D = g.diameter()
        out = np.zeros((g.n, D + 1), dtype=np.int64)
        verts = list(c.vertices)
        step = max(1, (1 << 22) // g.n)
        for start in range(0, len(verts), step):
            rows = distance_rows(g, verts[start:start + step])
            for i in range(D + 1):
                out[:, i] += (rows == i).sum(axis=0)
        return out
    if method != "recurrence":
        raise ValueError(f"unknown method {method!r}")
    ia = g.intersection_array()
    a = g.adjacency.astype(np.int64)
    cols = [c.mask.astype(np.int64)]
    if ia.D >= 1:
        cols.append(a @ cols[0])
    for i in range(1, ia.D):
        nxt = a @ cols[i] - ia.a[i] * cols[i] - ia.b[i - 1] * cols[i - 1]
        q, r = np.divmod(nxt, ia.c[i])
        assert not r.any()
        cols.append(q)
    return np.stack(cols, axis=1)


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class CodeSpectrum:
    quotient: QuotientMatrix
    graph_spectrum: Spectrum = field(repr=False)
    etas: tuple  # descending, etas[0] = k
    indices: tuple[int, ...]  # indices[j]: position of etas[j] in the graph spectrum
    stdvecs: tuple  # stdvecs[j][i] = u_i(eta_j)

    @property
    def rho(self) -> int:
        return self.quotient.rho

    @property
    def sstar(self) -> tuple[int, ...]:
        return self.indices[1:]

    @property
    def exact(self) -> bool:
        return all(is_exact(e) for e in self.etas)

    def index_of_eta(self, eta, tol: float = DEFAULT_TOL.eigen) -> int:
        for j, e in enumerate(self.etas):
            if (is_exact(e) and is_exact(eta) and e == eta) or (not (is_exact(e) and is_exact(eta)) and abs(e - eta) <= tol):
                return j
        raise ParameterOutOfRange(f"{eta} is not an eigenvalue of the code")

    def stdvec_for_graph_index(self, i: int):
        return self.stdvecs[self.indices.index(i)]


def quotient_eigenvalues(u: QuotientMatrix) -> list[Scalar]:
    if u.rho == 0:
        return [Fraction(u.k)]
    return tridiagonal_eigenvalues(list(u.alpha), list(u.beta[:-1]), list(u.gamma[1:]))


def code_eigenvector(u: QuotientMatrix, eta, tol: Tolerances = DEFAULT_TOL) -> list[Scalar]:
    """u_0 = 1, u_1 = (eta - alpha_0)/beta_0, then the three-term recurrence."""
    if is_exact(eta):
        eta = Fraction(eta)
    v = [Fraction(1)]
    if u.rho >= 1:
        v.append((eta - u.alpha[0]) / u.beta[0])
    for i in range(1, u.rho):
        v.append(((eta - u.alpha[i]) * v[i] - u.gamma[i] * v[i - 1]) / u.beta[i])
    r = u.rho
    resid = (u.gamma[r] * v[r - 1] if r else 0) + (u.alpha[r] - eta) * v[r]
    if not is_zero(resid, tol.residual * max(1, u.k) * (r + 1)):
        raise LloydViolation(f"{eta} is not an eigenvalue of U: terminal residual {float(resid):.3g}")
    return v


def code_spectrum(u: QuotientMatrix, spec: Spectrum, tol: Tolerances = DEFAULT_TOL) -> CodeSpectrum:
    """Eigenvalues of U matched into the graph spectrum (Lloyd's condition)."""
    if u.k != spec.ia.k:
        raise LloydViolation(f"row sum {u.k} of U differs from the valency {spec.ia.k}")
    etas = quotient_eigenvalues(u)
    idx = []
    for e in etas:
        j = spec.index_of(e, tol.eigen)
        if j is None:
            raise LloydViolation(f"eigenvalue {float(e):.10g} of U is not an eigenvalue of the graph")
        idx.append(j)
    if idx[0] != 0 or len(set(idx)) != len(idx):
        raise LloydViolation(f"eigenvalues of U map to graph indices {idx}")
    # snap float eigenvalues onto the graph's representative
    etas = [spec.thetas[j] if not is_exact(e) else e for e, j in zip(etas, idx)]
    vecs = tuple(tuple(code_eigenvector(u, e, tol)) for e in etas)
    return CodeSpectrum(u, spec, tuple(etas), tuple(idx), vecs)


def strength(cs: CodeSpectrum, ordering: Sequence[int]) -> int | None:
    """min{i >= 1 : theta_i in Spec*(C)} - 1 with positions read from ``ordering``.

    ``ordering`` lists graph eigenvalue indices at positions 1..D. Returns
    None when Spec*(C) is empty (C is the whole vertex set).
    """
    if not cs.sstar:
        return None
    pos = {idx: p for p, idx in enumerate(ordering, start=1)}
    return min(pos[i] for i in cs.sstar) - 1


def is_strictly_decreasing(vec) -> bool:
    return all(x > y for x, y in zip(vec, vec[1:]))
