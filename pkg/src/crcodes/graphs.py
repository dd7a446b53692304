"""Explicit vertex-level graphs and the distance machinery on them.

Vertices are always ``0..n-1``. Families that have a natural encoding keep
it in ``Graph.keys``: Hamming vertices are base-q integers (so the key is
the vertex id itself), set families use bitmasks over the ground set and
cube quotients use the binary word as an integer.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from math import comb

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import shortest_path

from .errors import FileFormatError, ParameterOutOfRange
from .spectral import IntersectionArray, hamming_array, johnson_array, valencies

MAX_VERTICES = 10**6
CACHE_LIMIT = 1 << 16


@dataclass(frozen=True, eq=False)
class Graph:
    indptr: np.ndarray
    indices: np.ndarray
    family: str = "explicit"
    params: tuple = ()
    keys: np.ndarray | None = field(default=None, repr=False)
    array: IntersectionArray | None = field(default=None, repr=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_neighbor_lists(cls, lists, **meta) -> "Graph":
        n = len(lists)
        if n == 0:
            raise ParameterOutOfRange("graph must have at least one vertex")
        if n > MAX_VERTICES:
            raise ParameterOutOfRange(f"{n} vertices exceeds the limit of {MAX_VERTICES}")
        lens = np.fromiter((len(x) for x in lists), dtype=np.int64, count=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(lens, out=indptr[1:])
        indices = np.fromiter(itertools.chain.from_iterable(lists), dtype=np.int64, count=int(indptr[-1]))
        return cls._build(indptr, indices, **meta)

    @classmethod
    def from_neighbor_matrix(cls, nbrs: np.ndarray, **meta) -> "Graph":
        n, k = nbrs.shape
        if n > MAX_VERTICES:
            raise ParameterOutOfRange(f"{n} vertices exceeds the limit of {MAX_VERTICES}")
        indptr = np.arange(0, n * k + 1, k, dtype=np.int64)
        return cls._build(indptr, nbrs.reshape(-1).astype(np.int64), **meta)

    @classmethod
    def from_edges(cls, n: int, edges, **meta) -> "Graph":
        lists = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterOutOfRange(f"edge ({u}, {v}) out of range for {n} vertices")
            lists[u].append(v)
            lists[v].append(u)
        return cls.from_neighbor_lists(lists, **meta)

    @classmethod
    def _build(cls, indptr, indices, **meta) -> "Graph":
        n = len(indptr) - 1
        # sort each neighbor list
        rows = np.repeat(np.arange(n), np.diff(indptr))
        order = np.lexsort((indices, rows))
        indices = indices[order]
        if np.any((rows == indices)):
            v = int(rows[np.argmax(rows == indices)])
            raise ParameterOutOfRange(f"loop at vertex {v}")
        dup = (rows[1:] == rows[:-1]) & (indices[1:] == indices[:-1])
        if np.any(dup):
            v = int(rows[1:][np.argmax(dup)])
            raise ParameterOutOfRange(f"repeated edge at vertex {v}")
        g = cls(indptr, indices, **meta)
        a = g.adjacency
        if (a != a.T).nnz:
            raise ParameterOutOfRange("adjacency is not symmetric")
        dist = bfs_distances(g, [0])
        if np.any(dist < 0):
            raise ParameterOutOfRange(f"graph is disconnected: vertex {int(np.argmax(dist < 0))} unreachable from 0")
        g.indptr.setflags(write=False)
        g.indices.setflags(write=False)
        return g

    # -- basic queries ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def valency(self) -> int | None:
        d = self.degrees
        return int(d[0]) if np.all(d == d[0]) else None

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edge_sources(self) -> np.ndarray:
        if "edge_src" not in self._cache:
            self._cache["edge_src"] = np.repeat(np.arange(self.n), self.degrees)
        return self._cache["edge_src"]

    @property
    def adjacency(self) -> sp.csr_matrix:
        if "adj" not in self._cache:
            data = np.ones(len(self.indices), dtype=np.int32)
            self._cache["adj"] = sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))
        return self._cache["adj"]

    def edges(self):
        src = self.edge_sources()
        keep = src < self.indices
        return list(zip(src[keep].tolist(), self.indices[keep].tolist()))

    def distances_from(self, v: int) -> np.ndarray:
        cache = self._cache.setdefault("bfs", {})
        if v in cache:
            return cache[v]
        d = bfs_distances(self, [v])
        d.setflags(write=False)
        if len(cache) * self.n < CACHE_LIMIT * 64:
            cache[v] = d
        return d

    def distance(self, u: int, v: int) -> int:
        return int(self.distances_from(u)[v])

    def diameter(self) -> int:
        if self.array is not None:
            return self.array.D
        return int(all_pairs_max(self))

    def intersection_array(self) -> IntersectionArray:
        """The generator's closed-form array, or one computed by brute force."""
        if self.array is not None:
            return self.array
        if "ia" not in self._cache:
            res = is_distance_regular(self)
            if isinstance(res, NotDRG):
                raise ParameterOutOfRange(f"graph is not distance-regular: {res}")
            self._cache["ia"] = res
        return self._cache["ia"]

    # -- labels -------------------------------------------------------------

    def label(self, v: int) -> str:
        fam = self.family
        if fam == "hamming":
            n, q = self.params
            return "".join(str(d) for d in _digits(v, n, q))
        if fam in ("johnson", "doubled_odd"):
            return "{" + ",".join(str(i) for i in _bits(int(self.keys[v]))) + "}"
        if fam in ("halved_cube", "folded_cube"):
            width = self.params[0] if fam == "halved_cube" else self.params[0] - 1
            return format(int(self.keys[v]), f"0{width}b")
        return str(v)

    def vertex(self, token: str) -> int:
        """Parse a vertex written in this family's codeword notation."""
        token = token.strip()
        fam = self.family
        if fam == "hamming":
            n, q = self.params
            if len(token) != n or any(not ch.isdigit() or int(ch) >= q for ch in token):
                raise ValueError(f"{token!r} is not a word of length {n} over Z_{q}")
            return int(token, q) if q <= 10 else _from_digits([int(ch) for ch in token], q)
        if fam in ("johnson", "doubled_odd"):
            return self._key_index()[_parse_set(token)]
        if fam == "halved_cube":
            (m,) = self.params
            if len(token) != m or set(token) - {"0", "1"}:
                raise ValueError(f"{token!r} is not a binary word of length {m}")
            return self._key_index()[int(token, 2)]
        if fam == "folded_cube":
            (m,) = self.params
            if set(token) - {"0", "1"} or len(token) not in (m, m - 1):
                raise ValueError(f"{token!r} is not a binary word of length {m} or {m - 1}")
            w = int(token, 2)
            if len(token) == m:
                if w & 1:
                    w ^= (1 << m) - 1
                w >>= 1
            return self._key_index()[w]
        v = int(token)
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range")
        return v

    def _key_index(self) -> dict:
        if "key_index" not in self._cache:
            self._cache["key_index"] = {int(k): i for i, k in enumerate(self.keys)}
        return self._cache["key_index"]

    def describe(self) -> str:
        if self.family == "explicit":
            return f"explicit graph on {self.n} vertices"
        return f"{self.family}({', '.join(map(str, self.params))})"

    def spec_line(self) -> str:
        names = {"hamming": "hamming", "johnson": "johnson", "halved_cube": "halved-cube",
                 "folded_cube": "folded-cube", "doubled_odd": "doubled-odd", "cycle": "cycle"}
        if self.family in names:
            return " ".join([names[self.family], *map(str, self.params)])
        return "explicit"


def _digits(v: int, n: int, q: int) -> list[int]:
    out = []
    for _ in range(n):
        v, r = divmod(v, q)
        out.append(r)
    return out[::-1]


def _from_digits(digits, q: int) -> int:
    v = 0
    for d in digits:
        v = v * q + d
    return v


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _parse_set(token: str) -> int:
    t = token.strip()
    if t.startswith("{") and t.endswith("}"):
        t = t[1:-1]
    elif "," not in t:
        return int(t, 0)
    mask = 0
    for part in t.split(","):
        if part.strip():
            mask |= 1 << int(part)
    return mask


# ---------------------------------------------------------------------------
# BFS


def bfs_distances(g: Graph, sources) -> np.ndarray:
    """Distance to the nearest source for every vertex (-1 if unreachable)."""
    n = g.n
    dist = np.full(n, -1, dtype=np.int64)
    frontier = np.zeros(n, dtype=np.int32)
    src = np.asarray(list(sources), dtype=np.int64)
    dist[src] = 0
    frontier[src] = 1
    a = g.adjacency
    level = 0
    while True:
        reach = a.dot(frontier) > 0
        new = reach & (dist < 0)
        if not new.any():
            break
        level += 1
        dist[new] = level
        frontier = new.astype(np.int32)
    return dist


def distance_rows(g: Graph, sources) -> np.ndarray:
    """Full distance rows for the given sources, as an int matrix."""
    d = shortest_path(g.adjacency, method="D", unweighted=True, directed=False, indices=list(sources))
    return np.asarray(d, dtype=np.int64).reshape(len(sources), g.n)


def _chunks(g: Graph):
    step = max(1, int(2e7 // max(1, len(g.indices))))
    for start in range(0, g.n, step):
        yield list(range(start, min(g.n, start + step)))


def all_pairs_max(g: Graph) -> int:
    return max(int(distance_rows(g, rows).max()) for rows in _chunks(g))


# ---------------------------------------------------------------------------
# distance-regularity


@dataclass(frozen=True)
class NotDRG:
    """Witness that a graph is not distance-regular.

    ``pair`` and ``other`` are two ordered vertex pairs at the same distance
    whose neighbor counts (``values``) differ; for a valency failure the
    pairs are (x, x) and (y, y).
    """

    reason: str
    pair: tuple[int, int]
    other: tuple[int, int]
    distance: int
    values: tuple[int, int]

    def __str__(self):
        return (f"{self.reason} at distance {self.distance}: pairs {self.pair} and {self.other} "
                f"give {self.values[0]} and {self.values[1]}")


def is_distance_regular(g: Graph) -> IntersectionArray | NotDRG:
    """Count c_i and b_i over every ordered pair; return the array or a witness."""
    deg = g.degrees
    if not np.all(deg == deg[0]):
        y = int(np.argmax(deg != deg[0]))
        return NotDRG("valency", (0, 0), (y, y), 0, (int(deg[0]), int(deg[y])))
    n, k = g.n, int(deg[0])
    src = g.edge_sources()
    refs: dict[tuple[str, int], tuple[int, tuple[int, int]]] = {}
    for rows in _chunks(g):
        dm = distance_rows(g, rows)
        nd = dm[:, g.indices]
        dy = dm[:, src]
        counts = {
            "c": (nd == dy - 1).reshape(len(rows), n, k).sum(axis=2),
            "b": (nd == dy + 1).reshape(len(rows), n, k).sum(axis=2),
        }
        for i in range(int(dm.max()) + 1):
            sel = dm == i
            for name, cnt in counts.items():
                vals = cnt[sel]
                key = (name, i)
                if key not in refs:
                    r, c = np.argwhere(sel)[0]
                    refs[key] = (int(vals[0]), (rows[r], int(c)))
                ref, ref_pair = refs[key]
                bad = sel & (cnt != ref)
                if bad.any():
                    r, c = np.argwhere(bad)[0]
                    return NotDRG(f"{name}_{i} not constant", ref_pair, (rows[r], int(c)), i, (ref, int(cnt[r, c])))
    D = max(i for (_, i) in refs)
    for i in range(D + 1):
        if ("b", i) not in refs:
            return NotDRG(f"distance {i} not realised from every vertex", (0, 0), (0, 0), i, (0, 0))
    b = tuple(refs[("b", i)][0] for i in range(D))
    c = tuple(refs[("c", i)][0] for i in range(1, D + 1))
    return IntersectionArray(b, c, standing=False)


# ---------------------------------------------------------------------------
# antipodal 2-covers


@dataclass(frozen=True)
class AntipodalMap:
    pi: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.pi[v]

    def image(self, vertices) -> frozenset[int]:
        return frozenset(self.pi[v] for v in vertices)


@dataclass(frozen=True)
class NotAntipodal:
    reason: str


def antipodal_map(g: Graph, ia: IntersectionArray | None = None) -> AntipodalMap | NotAntipodal:
    """The involution x -> unique vertex at distance D, when it exists.

    Antipodality is read off the array (k_D = 1). The map is then located
    without all-pairs distances: with a set S of BFS sources whose distance
    signatures separate all vertices, pi(y) is the vertex whose signature
    is D - sig(y), because d(s, pi(y)) = D - d(s, y) in an antipodal 2-cover.
    """
    ia = ia or g.intersection_array()
    D = ia.D
    kD = valencies(ia)[-1]
    if kD != 1:
        return NotAntipodal(f"k_D = {kD}: vertices have {kD} vertices at distance D")
    order = np.argsort(g.distances_from(0), kind="stable")
    take = 1 + len(g.neighbors(0))
    while True:
        srcs = order[:take].tolist()
        sig = distance_rows(g, srcs).T  # n x |S|
        if np.unique(sig, axis=0).shape[0] == g.n or take >= g.n:
            break
        take = min(g.n, 2 * take)
    lookup = {row.tobytes(): v for v, row in enumerate(sig)}
    target = D - sig
    pi = np.empty(g.n, dtype=np.int64)
    for v in range(g.n):
        w = lookup.get(target[v].tobytes())
        if w is None:
            return NotAntipodal(f"no vertex at distance {D} from {v}")
        pi[v] = w
    if np.any(pi[pi] != np.arange(g.n)):
        return NotAntipodal("candidate map is not an involution")
    a = g.adjacency
    src = g.edge_sources()
    if not np.all(np.asarray(a[pi[src], pi[g.indices]]).ravel() > 0):
        return NotAntipodal("candidate map is not an automorphism")
    if g.distance(0, int(pi[0])) != D:
        return NotAntipodal("d(0, pi(0)) != D")
    return AntipodalMap(tuple(int(x) for x in pi))


# ---------------------------------------------------------------------------
# families


def hamming(n: int, q: int) -> Graph:
    if n < 1 or q < 2:
        raise ParameterOutOfRange(f"hamming({n},{q}) needs n >= 1 and q >= 2")
    N = q**n
    if N > MAX_VERTICES:
        raise ParameterOutOfRange(f"hamming({n},{q}) has {N} vertices, over the limit {MAX_VERTICES}")
    v = np.arange(N, dtype=np.int64)
    cols = []
    for pos in range(n):
        w = q ** (n - 1 - pos)
        digit = (v // w) % q
        for delta in range(1, q):
            cols.append(v + (((digit + delta) % q) - digit) * w)
    nbrs = np.stack(cols, axis=1)
    nbrs.sort(axis=1)
    ia = hamming_array(n, q) if n >= 2 and n * (q - 1) >= 2 else None
    return Graph.from_neighbor_matrix(nbrs, family="hamming", params=(n, q), keys=v, array=ia)


def johnson(v: int, k: int) -> Graph:
    if not (1 <= k < v):
        raise ParameterOutOfRange(f"johnson({v},{k}) needs 1 <= k < v")
    if comb(v, k) > MAX_VERTICES:
        raise ParameterOutOfRange(f"johnson({v},{k}) has {comb(v, k)} vertices, over the limit")
    masks = [sum(1 << i for i in s) for s in itertools.combinations(range(v), k)]
    index = {m: i for i, m in enumerate(masks)}
    full = (1 << v) - 1
    lists = []
    for m in masks:
        ins = _bits(m)
        outs = _bits(full & ~m)
        lists.append(sorted(index[m ^ (1 << a) ^ (1 << b)] for a in ins for b in outs))
    d = min(k, v - k)
    ia = johnson_array(v, k) if d >= 2 else None
    return Graph.from_neighbor_lists(lists, family="johnson", params=(v, k), keys=np.array(masks, dtype=np.int64), array=ia)


def halved_cube(m: int) -> Graph:
    if m < 2:
        raise ParameterOutOfRange(f"halved_cube({m}) needs m >= 2")
    if 2 ** (m - 1) > MAX_VERTICES:
        raise ParameterOutOfRange(f"halved_cube({m}) is over the vertex limit")
    words = [w for w in range(2**m) if bin(w).count("1") % 2 == 0]
    index = {w: i for i, w in enumerate(words)}
    flips = [(1 << a) | (1 << b) for a, b in itertools.combinations(range(m), 2)]
    lists = [sorted(index[w ^ f] for f in flips) for w in words]
    D = m // 2
    ia = IntersectionArray(tuple(comb(m - 2 * i, 2) for i in range(D)), tuple(comb(2 * i, 2) for i in range(1, D + 1))) if m >= 4 else None
    return Graph.from_neighbor_lists(lists, family="halved_cube", params=(m,), keys=np.array(words, dtype=np.int64), array=ia)


def folded_cube(m: int) -> Graph:
    if m < 2:
        raise ParameterOutOfRange(f"folded_cube({m}) needs m >= 2")
    if 2 ** (m - 1) > MAX_VERTICES:
        raise ParameterOutOfRange(f"folded_cube({m}) is over the vertex limit")
    N = 2 ** (m - 1)
    full = N - 1
    lists = []
    for w in range(N):
        nb = {w ^ (1 << i) for i in range(m - 1)}
        nb.add(w ^ full)
        lists.append(sorted(nb))
    D = m // 2
    ia = None
    if m >= 4:
        c = [i for i in range(1, D + 1)]
        if m % 2 == 0:
            c[-1] = m
        ia = IntersectionArray(tuple(m - i for i in range(D)), tuple(c))
    return Graph.from_neighbor_lists(lists, family="folded_cube", params=(m,), keys=np.arange(N, dtype=np.int64), array=ia)


def doubled_odd(k: int) -> Graph:
    if k < 2:
        raise ParameterOutOfRange(f"doubled_odd({k}) needs k >= 2")
    size = 2 * k - 1
    if 2 * comb(size, k) > MAX_VERTICES:
        raise ParameterOutOfRange(f"doubled_odd({k}) is over the vertex limit")
    small = [sum(1 << i for i in s) for s in itertools.combinations(range(size), k - 1)]
    large = [sum(1 << i for i in s) for s in itertools.combinations(range(size), k)]
    masks = small + large
    index = {m: i for i, m in enumerate(masks)}
    lists = []
    for m in small:
        lists.append(sorted(index[m | (1 << j)] for j in range(size) if not m >> j & 1))
    for m in large:
        lists.append(sorted(index[m & ~(1 << j)] for j in _bits(m)))
    D = 2 * k - 1
    b = [k] + [k - (i + 1) // 2 for i in range(1, D)]
    c = [(i + 1) // 2 for i in range(1, D + 1)]
    return Graph.from_neighbor_lists(lists, family="doubled_odd", params=(k,), keys=np.array(masks, dtype=np.int64),
                                     array=IntersectionArray(tuple(b), tuple(c)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterOutOfRange(f"cycle({n}) needs n >= 3")
    lists = [sorted({(v - 1) % n, (v + 1) % n}) for v in range(n)]
    D = n // 2
    ia = None
    if D >= 2:
        c = [1] * D
        if n % 2 == 0:
            c[-1] = 2
        ia = IntersectionArray(tuple([2] + [1] * (D - 1)), tuple(c))
    return Graph.from_neighbor_lists(lists, family="cycle", params=(n,), array=ia)


def read_graph(path: str) -> Graph:
    with open(path) as fh:
        lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(fh)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise FileFormatError("empty graph file", path=path)
    lineno, head = lines[0]
    try:
        n, m = (int(x) for x in head.split())
    except ValueError:
        raise FileFormatError(f"expected 'n m', got {head!r}", line=lineno, path=path) from None
    body = lines[1:]
    if len(body) != m:
        raise FileFormatError(f"header announces {m} edges, found {len(body)}", line=lineno, path=path)
    edges = []
    for lineno, ln in body:
        try:
            u, v = (int(x) for x in ln.split())
        except ValueError:
            raise FileFormatError(f"expected 'u v', got {ln!r}", line=lineno, path=path) from None
        if not (0 <= u < n and 0 <= v < n):
            raise FileFormatError(f"edge ({u}, {v}) out of range for {n} vertices", line=lineno, path=path)
        edges.append((u, v))
    try:
        return Graph.from_edges(n, edges, family="explicit", params=(os.path.basename(path),))
    except ParameterOutOfRange as exc:
        raise FileFormatError(str(exc), path=path) from None


def write_graph(g: Graph, path_or_file) -> None:
    edges = g.edges()
    text = f"{g.n} {len(edges)}\n" + "".join(f"{u} {v}\n" for u, v in edges)
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        with open(path_or_file, "w") as fh:
            fh.write(text)


FAMILIES = {
    "hamming": hamming,
    "johnson": johnson,
    "halved_cube": halved_cube,
    "folded_cube": folded_cube,
    "doubled_odd": doubled_odd,
    "cycle": cycle,
}


def generate(family: str, *params) -> Graph:
    """Build a named family; ``explicit`` takes a file path."""
    fam = family.replace("-", "_").lower()
    if fam in ("explicit", "file"):
        (path,) = params
        return read_graph(path)
    if fam not in FAMILIES:
        raise ParameterOutOfRange(f"unknown graph family {family!r}; choose from {sorted(FAMILIES)} or explicit")
    try:
        ints = [int(p) for p in params]
    except ValueError:
        raise ParameterOutOfRange(f"{family} parameters must be integers, got {params}") from None
    try:
        return FAMILIES[fam](*ints)
    except TypeError:
        raise ParameterOutOfRange(f"wrong number of parameters for {family}: {params}") from None


def parse_graph_spec(text: str, base_dir: str = ".") -> Graph:
    """'hamming 7 2', 'johnson 5 2', 'halved-cube 4', 'doubled-odd 3', 'file <path>'."""
    parts = text.split()
    if not parts:
        raise ParameterOutOfRange("empty graph specification")
    if parts[0] in ("file", "explicit"):
        path = " ".join(parts[1:])
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        return read_graph(path)
    return generate(parts[0], *parts[1:])
