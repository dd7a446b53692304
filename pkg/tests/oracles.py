"""Independent brute-force reference computations used by the tests.

Nothing here touches the package internals: graphs are plain adjacency
lists and everything is recomputed from scratch by loops or numpy.
"""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np


def hamming_adjacency(n: int, q: int) -> list[list[int]]:
    words = list(itertools.product(range(q), repeat=n))
    index = {w: i for i, w in enumerate(words)}
    adj = []
    for w in words:
        nb = []
        for pos in range(n):
            for a in range(q):
                if a != w[pos]:
                    nb.append(index[w[:pos] + (a,) + w[pos + 1:]])
        adj.append(sorted(nb))
    return adj


def set_adjacency(sets: list[frozenset], adjacent) -> list[list[int]]:
    return [[j for j, t in enumerate(sets) if adjacent(s, t)] for s in sets]


def bfs(adj, sources) -> list[int]:
    dist = [-1] * len(adj)
    dq = deque()
    for s in sources:
        dist[s] = 0
        dq.append(s)
    while dq:
        x = dq.popleft()
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                dq.append(y)
    return dist


def distance_matrix(adj) -> list[list[int]]:
    return [bfs(adj, [x]) for x in range(len(adj))]


def intersection_numbers(adj):
    """(b, c) lists if every pair at distance i has constant counts, else None."""
    dm = distance_matrix(adj)
    b, c = {}, {}
    for x in range(len(adj)):
        for y in range(len(adj)):
            i = dm[x][y]
            cc = sum(1 for z in adj[y] if dm[x][z] == i - 1)
            bb = sum(1 for z in adj[y] if dm[x][z] == i + 1)
            if c.setdefault(i, cc) != cc or b.setdefault(i, bb) != bb:
                return None
    D = max(b)
    return [b[i] for i in range(D)], [c[i] for i in range(1, D + 1)]


def quotient_or_none(adj, code):
    """Neumaier check by plain loops: rows (gamma, alpha, beta) or None."""
    d = bfs(adj, code)
    rows = {}
    for x in range(len(adj)):
        cnt = (sum(1 for y in adj[x] if d[y] == d[x] - 1), sum(1 for y in adj[x] if d[y] == d[x]),
               sum(1 for y in adj[x] if d[y] == d[x] + 1))
        if rows.setdefault(d[x], cnt) != cnt:
            return None
    return [rows[i] for i in range(max(rows) + 1)]


def outer_distribution(adj, code) -> list[tuple[int, ...]]:
    dm = distance_matrix(adj)
    D = max(max(r) for r in dm)
    return [tuple(sum(1 for c in code if dm[x][c] == i) for i in range(D + 1)) for x in range(len(adj))]


def min_pairwise_distance(adj, code) -> int:
    best = None
    for x in code:
        d = bfs(adj, [x])
        for y in code:
            if y != x and (best is None or d[y] < best):
                best = d[y]
    return best


def adjacency_matrix(adj) -> np.ndarray:
    a = np.zeros((len(adj), len(adj)))
    for x, nb in enumerate(adj):
        a[x, nb] = 1
    return a


def eigenspaces(adj, tol=1e-6):
    """Distinct eigenvalues (descending), multiplicities and primitive idempotents."""
    vals, vecs = np.linalg.eigh(adjacency_matrix(adj))
    order = np.argsort(-vals)
    vals, vecs = vals[order], vecs[:, order]
    groups = []
    for i, v in enumerate(vals):
        if groups and abs(groups[-1][0] - v) < tol:
            groups[-1][1].append(i)
        else:
            groups.append((v, [i]))
    thetas = [float(np.mean(vals[g])) for _, g in groups]
    idem = [vecs[:, g] @ vecs[:, g].T for _, g in groups]
    return thetas, [len(g) for _, g in groups], idem


def krein_brute(adj) -> np.ndarray:
    """q_ij^l from E_i o E_j = (1/n) sum_l q_ij^l E_l."""
    n = len(adj)
    _, mult, idem = eigenspaces(adj)
    flat = np.stack([e.ravel() for e in idem])
    d = len(idem)
    q = np.zeros((d, d, d))
    for i in range(d):
        q[i] = ((flat[i] * flat) @ flat.T) * n / np.array(mult)[None, :]
    return q


def intersection_tensor(adj) -> np.ndarray:
    """p_ij^l = |{z : d(x,z)=i, d(z,y)=j}| for any pair at distance l."""
    dm = np.array(distance_matrix(adj))
    D = dm.max()
    A = [(dm == i).astype(np.int64) for i in range(D + 1)]
    p = np.zeros((D + 1, D + 1, D + 1), dtype=np.int64)
    for l in range(D + 1):
        y = int(np.argmax(dm[0] == l))
        for i in range(D + 1):
            for j in range(D + 1):
                p[i, j, l] = int((A[i][0] * A[j][:, y]).sum())
    return p


def standard_vectors(adj):
    """u_i(theta_j) = E_j[x, y] / E_j[x, x] for d(x, y) = i, read off vertex 0."""
    thetas, _, idem = eigenspaces(adj)
    d0 = bfs(adj, [0])
    D = max(d0)
    reps = [d0.index(i) for i in range(D + 1)]
    return [[e[0, y] / e[0, 0] for y in reps] for e in idem]


def qpoly_orderings_brute(q: np.ndarray, tol=1e-8) -> list[tuple[int, ...]]:
    """Orderings E_0, E_{o1}, ... with q_ij^h = 0 off |i-j| <= h <= i+j and q_ij^{i+j} != 0."""
    D = q.shape[0] - 1
    nz = np.abs(q) > tol * np.abs(q).max()
    out = []
    for perm in itertools.permutations(range(1, D + 1)):
        o = (0,) + perm
        ok = True
        for i in range(D + 1):
            for j in range(D + 1):
                for h in range(D + 1):
                    if nz[o[i], o[j], o[h]] and not abs(i - j) <= h <= i + j:
                        ok = False
                if i + j <= D and not nz[o[i], o[j], o[i + j]]:
                    ok = False
        if ok:
            out.append(perm)
    return out


def johnson_adjacency(v: int, k: int):
    sets = [frozenset(s) for s in itertools.combinations(range(v), k)]
    return set_adjacency(sets, lambda s, t: len(s & t) == k - 1)


def cycle_adjacency(n: int):
    return [sorted({(i - 1) % n, (i + 1) % n}) for i in range(n)]


def doubled_odd_adjacency(k: int):
    sets = [frozenset(s) for r in (k - 1, k) for s in itertools.combinations(range(2 * k - 1), r)]
    return set_adjacency(sets, lambda s, t: abs(len(s) - len(t)) == 1 and (s < t or t < s))


def halved_cube_adjacency(m: int):
    words = [w for w in itertools.product((0, 1), repeat=m) if sum(w) % 2 == 0]
    return set_adjacency(words, lambda s, t: sum(a != b for a, b in zip(s, t)) == 2)


def folded_cube_adjacency(m: int):
    # identify x with its complement; classes represented by words with last bit 0
    reps = [w for w in itertools.product((0, 1), repeat=m) if w[-1] == 0]

    def adjacent(s, t):
        d = sum(a != b for a, b in zip(s, t))
        return d == 1 or d == m - 1

    return set_adjacency(reps, adjacent)


def _code_basis(adj, code, tol=1e-9):
    """Graph indices j with E_j x != 0 and the vectors E_j x (x = characteristic vector)."""
    _, _, idem = eigenspaces(adj)
    x = np.zeros(len(adj))
    x[list(code)] = 1
    vecs = [e @ x for e in idem]
    support = [j for j, v in enumerate(vecs) if np.linalg.norm(v) > tol]
    return support, {j: vecs[j] for j in support}


def _coefficients(target, basis):
    m = np.stack(basis, axis=1)
    coef, *_ = np.linalg.lstsq(m, target, rcond=None)
    assert np.linalg.norm(m @ coef - target) < 1e-7 * max(1.0, np.linalg.norm(target))
    return coef


def qpoly_orderings_vertex_level(adj, code, tol=1e-7):
    """Orderings (i_1..i_rho) with u^(p) in span{E_{i_0}x..E_{i_p}x}, the E_{i_p}x part nonzero."""
    support, vecs = _code_basis(adj, code)
    nontrivial = [j for j in support if j != 0]
    found = []
    for perm in itertools.permutations(nontrivial):
        order = [0, *perm]
        basis = [vecs[j] for j in order]
        u = vecs[perm[0]]
        ok = True
        for p in range(len(order)):
            coef = _coefficients(u**p, basis)
            scale = np.abs(coef).max()
            if np.any(np.abs(coef[p + 1:]) > tol * scale) or abs(coef[p]) <= tol * scale:
                ok = False
                break
        if ok:
            found.append(tuple(perm))
    return sorted(found)


def leonard_orderings_vertex_level(adj, code, theta_index, tol=1e-7):
    """Orderings in which u(theta) o E_j x is irreducible tridiagonal in the basis E_l x."""
    support, vecs = _code_basis(adj, code)
    basis_idx = [0] + [j for j in support if j != 0]
    basis = [vecs[j] for j in basis_idx]
    u = vecs[theta_index]
    m = np.stack([_coefficients(u * vecs[j], basis) for j in basis_idx], axis=1)  # m[l, j]
    nz = np.abs(m) > tol * np.abs(m).max()
    r = len(basis_idx)
    found = []
    for perm in itertools.permutations(range(1, r)):
        pos = [0, *perm]
        ok = all((abs(a - b) <= 1) == bool(nz[pos[a], pos[b]]) or a == b
                 for a in range(r) for b in range(r))
        if ok:
            found.append(tuple(basis_idx[p] for p in perm))
    return sorted(found)
