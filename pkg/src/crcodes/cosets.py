"""Additive codes in Hamming graphs, their coset partitions and coset graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .codes import Code, QuotientMatrix, Witness, is_completely_regular
from .errors import FileFormatError, ParameterOutOfRange
from .graphs import Graph, hamming
from .spectral import IntersectionArray, tridiagonal_matrix

MAX_CODEWORDS = 1 << 20


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, int(q**0.5) + 1))


def row_reduce(m: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(q); zero rows dropped."""
    a = np.array(m, dtype=np.int64) % q
    rows, cols = a.shape if a.ndim == 2 else (0, 0)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        p = r + nz[0]
        a[[r, p]] = a[[p, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, q)) % q
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % q
        pivots.append(c)
        r += 1
    return a[:r], pivots


def null_space(m: np.ndarray, q: int, n: int) -> np.ndarray:
    """Basis (as rows) of {x in GF(q)^n : m x = 0}."""
    rref, pivots = row_reduce(np.reshape(m, (-1, n)), q)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for r, p in enumerate(pivots):
            basis[t, p] = (-rref[r, f]) % q
    return basis


@dataclass(frozen=True, eq=False)
class AdditiveCode:
    """A subgroup of Z_q^n (q prime), i.e. a GF(q)-linear code."""

    q: int
    n: int
    basis: np.ndarray  # reduced generator rows
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_generators(cls, words, q: int, n: int | None = None, name: str = "") -> "AdditiveCode":
        if not _is_prime(q):
            raise ParameterOutOfRange(f"alphabet size {q} is not prime")
        rows = [list(w) for w in words]
        if n is None:
            if not rows:
                raise ParameterOutOfRange("length unknown for an empty generator list")
            n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ParameterOutOfRange("generator words have different lengths")
        if any(not 0 <= x < q for r in rows for x in r):
            raise ParameterOutOfRange(f"generator entries must lie in 0..{q - 1}")
        basis, _ = row_reduce(np.array(rows, dtype=np.int64).reshape(len(rows), n), q)
        if q ** len(basis) > MAX_CODEWORDS:
            raise ParameterOutOfRange(f"code has q^{len(basis)} codewords, over the limit {MAX_CODEWORDS}")
        return cls(q, n, basis, name)

    @classmethod
    def from_parity_check(cls, h, q: int, name: str = "") -> "AdditiveCode":
        h = np.array(h, dtype=np.int64)
        return cls.from_generators(null_space(h, q, h.shape[1]).tolist(), q, h.shape[1], name)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.q**self.dimension

    def parity_check(self) -> np.ndarray:
        return null_space(self.basis, self.q, self.n)

    def words(self) -> np.ndarray:
        """All codewords as a (size x n) digit array."""
        if "words" not in self._cache:
            out = np.zeros((1, self.n), dtype=np.int64)
            for b in self.basis:
                out = np.concatenate([(out + c * b) % self.q for c in range(self.q)])
            self._cache["words"] = out
        return self._cache["words"]

    def vertex_ids(self) -> np.ndarray:
        return np.sort(self.words() @ (self.q ** np.arange(self.n - 1, -1, -1, dtype=np.int64)))

    def closure_ok(self) -> bool:
        """Closed under addition and negation and contains zero."""
        ids = set(self.vertex_ids().tolist())
        w = self.words()
        powers = self.q ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        if 0 not in ids:
            return False
        neg = ((-w) % self.q) @ powers
        if not all(int(x) in ids for x in neg):
            return False
        sums = ((w[:, None, :] + self.basis[None, :, :]) % self.q) @ powers
        return all(int(x) in ids for x in sums.ravel())

    def graph(self) -> Graph:
        return hamming(self.n, self.q)

    def as_code(self, g: Graph | None = None) -> Code:
        g = g or self.graph()
        if g.family != "hamming" or g.params != (self.n, self.q):
            raise ParameterOutOfRange(f"code lives in hamming({self.n},{self.q}), not {g.describe()}")
        return Code.from_vertices(g, self.vertex_ids().tolist(), self.name)


def read_generators(path: str, q: int = 2) -> AdditiveCode:
    """One generator word per line over 0..q-1; blank lines and '#' comments ignored."""
    rows = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip().replace(" ", "")
            if not line:
                continue
            if any(not ch.isdigit() or int(ch) >= q for ch in line):
                raise FileFormatError(f"{line!r} is not a word over 0..{q - 1}", line=lineno, path=path)
            if rows and len(line) != len(rows[0]):
                raise FileFormatError("generator words have different lengths", line=lineno, path=path)
            rows.append([int(ch) for ch in line])
    if not rows:
        raise FileFormatError("no generator words", path=path)
    return AdditiveCode.from_generators(rows, q)


def write_generators(c: AdditiveCode, fh) -> None:
    for row in c.basis:
        fh.write("".join(str(int(x)) for x in row) + "\n")


# ---------------------------------------------------------------------------
# coset partition and coset graph


@dataclass(frozen=True)
class CosetPartition:
    labels: np.ndarray  # labels[v] = coset index, cosets numbered by smallest member
    cells: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.cells)


def coset_partition(c: AdditiveCode) -> CosetPartition:
    """Cosets C + x of Z_q^n, found by syndromes."""
    q, n = c.q, c.n
    N = q**n
    v = np.arange(N, dtype=np.int64)
    digits = np.stack([(v // q ** (n - 1 - i)) % q for i in range(n)], axis=1)
    h = c.parity_check()
    synd = (digits @ h.T) % q if len(h) else np.zeros((N, 0), dtype=np.int64)
    key = synd @ (q ** np.arange(synd.shape[1], dtype=np.int64)) if synd.shape[1] else np.zeros(N, dtype=np.int64)
    _, first, inv = np.unique(key, return_index=True, return_inverse=True)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    labels = relabel[inv]
    cells = tuple(tuple(np.nonzero(labels == i)[0].tolist()) for i in range(len(order)))
    return CosetPartition(labels, cells)


def is_completely_regular_partition(g: Graph, cells) -> bool:
    """Every cell completely regular with one common quotient matrix."""
    cells = [tuple(c) for c in cells]
    seen = sorted(v for c in cells for v in c)
    if seen != list(range(g.n)):
        return False
    if len({len(c) for c in cells}) > 1:
        return False
    common = None
    for cell in cells:
        u = is_completely_regular(g, Code.from_vertices(g, cell))
        if isinstance(u, Witness):
            return False
        if common is None:
            common = u
        elif u != common:
            return False
    return True


def coset_graph(g: Graph, c: AdditiveCode, part: CosetPartition | None = None) -> Graph:
    """Simple graph on cosets; loops dropped and parallel edges merged."""
    part = part or coset_partition(c)
    lab = part.labels
    src = lab[g.edge_sources()]
    dst = lab[g.indices]
    keep = src != dst
    pairs = np.unique(np.stack([src[keep], dst[keep]], axis=1), axis=0)
    m = len(part.cells)
    lists = [[] for _ in range(m)]
    for a, b in pairs.tolist():
        lists[a].append(b)
    return Graph.from_neighbor_lists(lists, family="coset", params=(c.name or f"[{c.n},{c.dimension}]_{c.q}",))


def edge_multiplicity(g: Graph, c: AdditiveCode, part: CosetPartition | None = None) -> int:
    """Edges from a fixed word of one coset into an adjacent coset (gamma_1 for a CR code)."""
    part = part or coset_partition(c)
    lab = part.labels
    counts = {}
    for w in g.neighbors(0).tolist():
        if lab[w] != lab[0]:
            counts[int(lab[w])] = counts.get(int(lab[w]), 0) + 1
    vals = set(counts.values())
    if len(vals) != 1:
        raise ParameterOutOfRange(f"edge multiplicities into adjacent cosets differ: {sorted(vals)}")
    return vals.pop()


def quotient_relation_check(u: QuotientMatrix, quotient_ia: IntersectionArray) -> bool:
    """L(quotient) = (U - alpha_0 I) / gamma_1, exactly."""
    if u.rho != quotient_ia.D or u.rho == 0:
        return False
    lq = tridiagonal_matrix(quotient_ia)
    um = u.matrix()
    g1, a0 = Fraction(u.gamma[1]), u.alpha[0]
    for i in range(u.rho + 1):
        for j in range(u.rho + 1):
            lhs = Fraction(um[i][j] - (a0 if i == j else 0)) / g1
            if lhs != lq[i][j]:
                return False
    return True


def rifa_zinoviev(m: int, l: int) -> AdditiveCode:
    """Binary code with parity-check matrix whose columns are the weight-l words of length m.

    Columns are listed in lexicographic order of the words read as strings
    (so 0011 comes before 0101 for m = 4, l = 2).
    """
    if m < 3 or not 2 <= l < m:
        raise ParameterOutOfRange(f"rifa_zinoviev needs m >= 3 and 2 <= l < m, got ({m}, {l})")
    length = comb(m, l)
    if length > 20:
        raise ParameterOutOfRange(f"length C({m},{l}) = {length} exceeds 20, the materialisation limit")
    return AdditiveCode.from_parity_check(rz_parity_check(m, l), 2, name=f"RZ({m},{l})")


def rz_parity_check(m: int, l: int) -> np.ndarray:
    """H^(m,l): m x C(m,l), columns in lexicographic order."""
    cols = sorted(tuple(1 if i in s else 0 for i in range(m)) for s in itertools.combinations(range(m), l))
    return np.array(cols, dtype=np.int64).T
