"""Parameter-level spectral machinery of a distance-regular graph.

Everything here is a function of the intersection array alone: the
tridiagonal matrix L, its eigenvalues, the standard eigenvectors, valencies,
multiplicities, Krein parameters and the Q-polynomial orderings.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import NotAnEigenvalue, ParameterOutOfRange
from .exact import Scalar, is_exact, is_zero, tridiagonal_eigenvalues

MAX_ORDERING_DIAMETER = 9


@dataclass(frozen=True)
class IntersectionArray:
    """{b_0, ..., b_{D-1}; c_1, ..., c_D}.

    ``standing=False`` relaxes the k >= 2, D >= 2 requirement; it is used
    for quotient graphs such as complete graphs that legitimately have
    diameter 1.
    """

    b: tuple[int, ...]
    c: tuple[int, ...]
    standing: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        b = tuple(int(x) for x in self.b)
        c = tuple(int(x) for x in self.c)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if len(b) != len(c) or not b:
            raise ParameterOutOfRange(f"b and c must have the same positive length, got {len(b)} and {len(c)}")
        if c[0] != 1:
            raise ParameterOutOfRange(f"c_1 must be 1, got {c[0]}")
        if any(x <= 0 for x in b) or any(x <= 0 for x in c):
            raise ParameterOutOfRange("all b_i (i < D) and c_i must be positive")
        k = b[0]
        for i, a in enumerate(self.a):
            if a < 0:
                raise ParameterOutOfRange(f"a_{i} = {a} is negative")
        if self.standing and (k < 2 or len(b) < 2):
            raise ParameterOutOfRange(f"need valency k >= 2 and diameter D >= 2, got k={k}, D={len(b)}")

    @property
    def k(self) -> int:
        return self.b[0]

    @property
    def D(self) -> int:
        return len(self.b)

    @property
    def b_full(self) -> tuple[int, ...]:
        return self.b + (0,)

    @property
    def c_full(self) -> tuple[int, ...]:
        return (0,) + self.c

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(self.k - bi - ci for bi, ci in zip(self.b_full, self.c_full))

    def __str__(self):
        return "{" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + "}"

    @classmethod
    def parse(cls, text: str, standing: bool = True) -> "IntersectionArray":
        m = re.fullmatch(r"\s*\{\s*([-\d,\s]*);([-\d,\s]*)\}\s*", text)
        if not m:
            raise ParameterOutOfRange(f"cannot parse intersection array {text!r}; expected '{{b0,b1,...;c1,c2,...}}'")
        b = [int(x) for x in m.group(1).split(",") if x.strip()]
        c = [int(x) for x in m.group(2).split(",") if x.strip()]
        return cls(tuple(b), tuple(c), standing=standing)


def hamming_array(n: int, q: int) -> IntersectionArray:
    return IntersectionArray(tuple((n - i) * (q - 1) for i in range(n)), tuple(range(1, n + 1)))


def johnson_array(v: int, k: int) -> IntersectionArray:
    d = min(k, v - k)
    return IntersectionArray(tuple((d - i) * (v - d - i) for i in range(d)), tuple(i * i for i in range(1, d + 1)))


def tridiagonal_matrix(ia: IntersectionArray) -> list[list[int]]:
    D = ia.D
    L = [[0] * (D + 1) for _ in range(D + 1)]
    for i in range(D + 1):
        L[i][i] = ia.a[i]
        if i < D:
            L[i][i + 1] = ia.b[i]
        if i > 0:
            L[i][i - 1] = ia.c[i - 1]
    return L


def eigenvalues(ia: IntersectionArray) -> list[Scalar]:
    """The D+1 eigenvalues of L, descending; integers exact, the rest floats."""
    vals = tridiagonal_eigenvalues(list(ia.a), list(ia.b), list(ia.c))
    assert vals[0] == ia.k
    return vals


def _recurrence(ia: IntersectionArray, theta) -> list[Scalar]:
    a, b, c = ia.a, ia.b, ia.c
    if is_exact(theta):
        theta = Fraction(theta)
    u = [Fraction(1), theta / ia.k]
    for i in range(1, ia.D):
        u.append(((theta - a[i]) * u[i] - c[i - 1] * u[i - 1]) / b[i])
    return u


def standard_eigenvector(ia: IntersectionArray, theta, tol: Tolerances = DEFAULT_TOL) -> list[Scalar]:
    u = _recurrence(ia, theta)
    D = ia.D
    resid = ia.c[D - 1] * u[D - 1] + ia.a[D] * u[D] - theta * u[D]
    if not is_zero(resid, tol.residual * _vertex_count(ia)):
        raise NotAnEigenvalue(f"{theta} is not an eigenvalue of {ia}: terminal residual {float(resid):.3g}")
    return u


def _vertex_count(ia: IntersectionArray) -> Fraction:
    return sum(valencies(ia))


def valencies(ia: IntersectionArray) -> list[Fraction]:
    ks = [Fraction(1)]
    for i in range(1, ia.D + 1):
        ks.append(ks[-1] * ia.b[i - 1] / ia.c[i - 1])
    return ks


def valencies_and_multiplicities(ia: IntersectionArray) -> tuple[list[Fraction], list[Scalar]]:
    sp = spectrum(ia)
    return list(sp.valencies), list(sp.multiplicities)


@dataclass(frozen=True)
class Spectrum:
    ia: IntersectionArray
    thetas: tuple
    valencies: tuple
    multiplicities: tuple
    stdvecs: tuple  # stdvecs[j][i] = u_i(theta_j)
    n: Fraction

    @property
    def D(self) -> int:
        return self.ia.D

    @property
    def exact(self) -> bool:
        return all(is_exact(t) for t in self.thetas)

    @property
    def integral_multiplicities(self) -> bool:
        return all(abs(float(m) - round(float(m))) < 1e-6 for m in self.multiplicities)

    def index_of(self, value, tol: float = DEFAULT_TOL.eigen) -> int | None:
        for j, t in enumerate(self.thetas):
            if is_exact(t) and is_exact(value):
                if t == value:
                    return j
            elif abs(t - value) <= tol:
                return j
        return None


@lru_cache(maxsize=256)
def spectrum(ia: IntersectionArray, tol: Tolerances = DEFAULT_TOL) -> Spectrum:
    thetas = eigenvalues(ia)
    ks = valencies(ia)
    n = sum(ks)
    vecs = tuple(tuple(standard_eigenvector(ia, t, tol)) for t in thetas)
    ms = []
    for u in vecs:
        norm = sum(k * x * x for k, x in zip(ks, u))
        ms.append(n / norm)
    return Spectrum(ia, tuple(thetas), tuple(ks), tuple(ms), vecs, n)


@dataclass(frozen=True)
class KreinTensor:
    q: tuple  # q[i][j][l]
    zero_tolerance: float

    @property
    def D(self) -> int:
        return len(self.q) - 1

    def __getitem__(self, ijl):
        i, j, l = ijl
        return self.q[i][j][l]

    def is_zero(self, i: int, j: int, l: int) -> bool:
        return is_zero(self.q[i][j][l], self.zero_tolerance)

    def nonzero_mask(self) -> np.ndarray:
        D = self.D
        mask = np.zeros((D + 1, D + 1, D + 1), dtype=bool)
        for i, j, l in itertools.product(range(D + 1), repeat=3):
            mask[i, j, l] = not self.is_zero(i, j, l)
        return mask

    def as_array(self) -> np.ndarray:
        return np.array([[[float(x) for x in row] for row in plane] for plane in self.q])


@lru_cache(maxsize=64)
def krein_parameters(ia: IntersectionArray, tol: Tolerances = DEFAULT_TOL) -> KreinTensor:
    """q_ij^l = (m_i m_j / n) sum_h k_h u_h(theta_i) u_h(theta_j) u_h(theta_l)."""
    sp = spectrum(ia, tol)
    D = ia.D
    ks, ms, us, n = sp.valencies, sp.multiplicities, sp.stdvecs, sp.n
    q = [[[None] * (D + 1) for _ in range(D + 1)] for _ in range(D + 1)]
    for i in range(D + 1):
        for j in range(i, D + 1):
            w = [ks[h] * us[i][h] * us[j][h] for h in range(D + 1)]
            scale = ms[i] * ms[j] / n
            for l in range(D + 1):
                val = scale * sum(w[h] * us[l][h] for h in range(D + 1))
                q[i][j][l] = q[j][i][l] = val
    biggest = max(abs(float(x)) for plane in q for row in plane for x in row)
    frozen = tuple(tuple(tuple(row) for row in plane) for plane in q)
    return KreinTensor(frozen, tol.zero * biggest)


def krein_residual(ia: IntersectionArray, kt: KreinTensor | None = None) -> float:
    """max over h, i, j of |m_i m_j u_h(i) u_h(j) - sum_l q_ij^l m_l u_h(l)|."""
    sp = spectrum(ia)
    kt = kt or krein_parameters(ia)
    D = ia.D
    ms, us = sp.multiplicities, sp.stdvecs
    worst = 0.0
    for h, i, j in itertools.product(range(D + 1), repeat=3):
        lhs = ms[i] * ms[j] * us[i][h] * us[j][h]
        rhs = sum(kt.q[i][j][l] * ms[l] * us[l][h] for l in range(D + 1))
        worst = max(worst, abs(float(lhs - rhs)))
    return worst


def orthogonality_residual(sp: Spectrum) -> float:
    worst = 0.0
    for j, jj in itertools.product(range(sp.D + 1), repeat=2):
        s = sum(k * x * y for k, x, y in zip(sp.valencies, sp.stdvecs[j], sp.stdvecs[jj]))
        target = sp.n / sp.multiplicities[j] if j == jj else 0
        worst = max(worst, abs(float(s - target)))
    return worst


def _violates(mask: np.ndarray, order: Sequence[int], D: int, i: int, j: int, l: int) -> bool:
    nz = mask[order[i], order[j], order[l]]
    lo, hi = abs(i - j), i + j
    if nz and not (lo <= l <= hi):
        return True
    if not nz and (l == lo or (l == hi and hi <= D)):
        return True
    return False


def is_qpoly_ordering(kt: KreinTensor, ordering: Sequence[int]) -> bool:
    """Check both Q-polynomial conditions for E_0, E_{ordering[0]}, ...

    ``ordering`` lists the eigenvalue indices placed at positions 1..D.
    """
    D = kt.D
    order = (0,) + tuple(ordering)
    if sorted(order) != list(range(D + 1)):
        raise ValueError(f"{ordering} is not a permutation of 1..{D}")
    mask = kt.nonzero_mask()
    return not any(_violates(mask, order, D, i, j, l) for i, j, l in itertools.product(range(D + 1), repeat=3))


def qpoly_orderings(ia: IntersectionArray, tol: Tolerances = DEFAULT_TOL) -> list[tuple[int, ...]]:
    """All Q-polynomial orderings, natural one first if it qualifies.

    Exhaustive depth-first search over permutations of 1..D; a partial
    ordering is abandoned as soon as a condition among already placed
    positions fails.
    """
    D = ia.D
    if D > MAX_ORDERING_DIAMETER:
        raise ParameterOutOfRange(
            f"exhaustive Q-polynomial ordering search is limited to D <= {MAX_ORDERING_DIAMETER} (got D={D}); "
            "check a specific ordering with is_qpoly_ordering instead"
        )
    mask = krein_parameters(ia, tol).nonzero_mask()
    found = []
    order = [0]

    def consistent(p: int) -> bool:
        # every triple whose largest position is p
        for i in range(p + 1):
            for j in range(p + 1):
                for l in range(p + 1):
                    if max(i, j, l) == p and _violates(mask, order, D, i, j, l):
                        return False
        return True

    def extend(remaining):
        p = len(order)
        if not remaining:
            found.append(tuple(order[1:]))
            return
        for idx in sorted(remaining):
            order.append(idx)
            if consistent(p):
                extend(remaining - {idx})
            order.pop()

    if consistent(0):
        extend(frozenset(range(1, D + 1)))
    natural = tuple(range(1, D + 1))
    if natural in found:
        found.remove(natural)
        found.insert(0, natural)
    return found
