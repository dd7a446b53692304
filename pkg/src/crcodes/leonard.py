"""Algebraic classification of completely regular codes.

Everything here works in the (rho+1)-dimensional cell coordinates of the
outer distribution module: a vector is a function on the cells C_0..C_rho,
the standard eigenvectors u(eta_j) form a basis, and entrywise products of
basis vectors are expanded back into that basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .codes import (Code, CodeSpectrum, QuotientMatrix, Witness, code_spectrum, distance_partition,
                    DistancePartition, is_completely_regular, quotient_eigenvalues, strength)
from .config import DEFAULT_TOL, Tolerances
from .errors import (DegenerateEigenvector, GraphNotQPoly, InconsistentData, LemmaViolation,
                     NonTermination, NotCompletelyRegular, ParameterOutOfRange, TheoremViolation)
from .exact import SingularMatrix, all_exact, is_zero, near, solve, to_int
from .graphs import AntipodalMap, Graph, antipodal_map
from .spectral import (KreinTensor, MAX_ORDERING_DIAMETER, is_qpoly_ordering, krein_parameters,
                       qpoly_orderings, spectrum)

EXHAUSTIVE_LIMIT = 8
DEFAULT_MAX_RHO = 64
# float reconstruction: relative slack for quantities derived through the recurrence
DERIVED_SLACK = 1e-6


# ---------------------------------------------------------------------------
# expansions


def _nonzero(vec, tol: Tolerances) -> list[bool]:
    if all_exact(vec):
        return [x != 0 for x in vec]
    scale = max(abs(float(x)) for x in vec) or 1.0
    return [abs(float(x)) > tol.zero * scale for x in vec]


def expand(cs: CodeSpectrum, vec) -> list:
    """Coefficients of a cell vector in the basis u(eta_0), ..., u(eta_rho)."""
    r = cs.rho
    basis = [[cs.stdvecs[j][i] for j in range(r + 1)] for i in range(r + 1)]
    try:
        return solve(basis, list(vec))
    except SingularMatrix as exc:  # distinct eigenvalues give independent eigenvectors
        raise AssertionError(f"standard eigenvectors of U are dependent: {exc}") from None


def _hadamard(*vecs):
    out = [Fraction(1)] * len(vecs[0])
    for v in vecs:
        out = [x * y for x, y in zip(out, v)]
    return out


def expand_in_eigenbasis(u: QuotientMatrix, cs: CodeSpectrum, eta1, power: int, tol: Tolerances = DEFAULT_TOL) -> list:
    """Expansion of the entrywise power u(eta1)^power; coefficients follow ``cs.etas``."""
    j = cs.index_of_eta(eta1, tol.eigen)
    if j == 0:
        raise ParameterOutOfRange("eta1 must be a nontrivial eigenvalue of the code")
    coeffs = expand(cs, [x**power for x in cs.stdvecs[j]])
    total = sum(coeffs)
    assert near(total, 1, 1e-9 * (cs.rho + 1)), f"coefficients sum to {total}, not 1"
    return coeffs


@dataclass(frozen=True)
class EigenExpansion:
    """u(eta_1)^2 = sum lambda_i u(eta_i) and u(eta_1)^3 = sum tau_i u(eta_i).

    ``etas`` is the code spectrum reordered so that the chosen eigenvalue
    sits at index 1 (eta_0 = k first, the rest descending); ``indices``
    gives the matching graph eigenvalue indices.
    """

    etas: tuple
    lambdas: tuple
    taus: tuple
    indices: tuple[int, ...] = ()


def eigen_expansion(u: QuotientMatrix, cs: CodeSpectrum, eta1=None, tol: Tolerances = DEFAULT_TOL) -> EigenExpansion:
    if cs.rho < 1:
        raise ParameterOutOfRange("expansions need covering radius at least 1")
    j1 = 1 if eta1 is None else cs.index_of_eta(eta1, tol.eigen)
    order = [0, j1] + [j for j in range(1, cs.rho + 1) if j != j1]
    lam = expand_in_eigenbasis(u, cs, cs.etas[j1], 2, tol)
    tau = expand_in_eigenbasis(u, cs, cs.etas[j1], 3, tol)
    return EigenExpansion(tuple(cs.etas[j] for j in order), tuple(lam[j] for j in order),
                          tuple(tau[j] for j in order), tuple(cs.indices[j] for j in order))


def is_nondegenerate(stdvec: Sequence, tol: Tolerances = DEFAULT_TOL) -> bool:
    """u_{i-1} != u_i for 1 <= i <= rho and u_{i-1} != u_{i+1} for 1 <= i < rho."""
    t = tol.zero * max(1.0, max(abs(float(x)) for x in stdvec))
    n = len(stdvec)
    for i in range(1, n):
        if near(stdvec[i - 1], stdvec[i], t):
            return False
        if i + 1 < n and near(stdvec[i - 1], stdvec[i + 1], t):
            return False
    return True


# ---------------------------------------------------------------------------
# Q-polynomial and Leonard tests


@dataclass(frozen=True)
class QPolyVerdict:
    flag: bool
    orderings: tuple[tuple[int, ...], ...]  # graph eigenvalue indices i_1..i_rho
    method: str


@dataclass(frozen=True)
class LeonardVerdict:
    flag: bool
    theta: object
    matrix: tuple  # coefficient matrix, rows/columns in the first valid ordering (else descending)
    orderings: tuple[tuple[int, ...], ...]


def _power_supports(cs: CodeSpectrum, tol: Tolerances) -> dict[int, list[list[bool]]]:
    """For each start j: nonzero pattern of the expansion of u(eta_j)^p, p = 0..rho."""
    out = {}
    for j in range(1, cs.rho + 1):
        base = cs.stdvecs[j]
        out[j] = [_nonzero(expand(cs, [x**p for x in base]), tol) for p in range(cs.rho + 1)]
    return out


def _qpoly_valid(supports, order: Sequence[int]) -> bool:
    pos = [0, *order]
    rows = supports[order[0]]
    for p, nz in enumerate(rows):
        allowed = set(pos[:p + 1])
        if any(nz[l] for l in range(len(nz)) if l not in allowed):
            return False
        if not nz[pos[p]]:
            return False
    return True


def _qpoly_chain(supports, start: int, rho: int) -> list[int] | None:
    placed = [0, start]
    rows = supports[start]
    for p in range(2, rho + 1):
        new = [l for l, nz in enumerate(rows[p]) if nz and l not in placed]
        if len(new) != 1:
            return None
        placed.append(new[0])
    return placed[1:]


def _search(rho: int, valid, chain, starts, limit: int) -> tuple[list[tuple[int, ...]], str]:
    chained = set()
    for s in starts:
        order = chain(s)
        if order is not None and valid(order):
            chained.add(tuple(order))
    if rho > limit:
        return sorted(chained), "chain"
    exhaustive = {perm for perm in itertools.permutations(range(1, rho + 1)) if perm[0] in starts and valid(perm)}
    if exhaustive != chained:
        raise TheoremViolation(f"chain-following found {sorted(chained)}, exhaustive search found {sorted(exhaustive)}")
    return sorted(exhaustive), "exhaustive"


def qpoly_test(u: QuotientMatrix, cs: CodeSpectrum, tol: Tolerances = DEFAULT_TOL,
               limit: int = EXHAUSTIVE_LIMIT) -> QPolyVerdict:
    """Orderings eta_{i_1}, ..., eta_{i_rho} in which u(eta_{i_1})^p spans step by step.

    An ordering is accepted when, for every p, the expansion of the p-th
    entrywise power has no component beyond position p and a nonzero one at
    position p (so the powers are independent and their spans grow one
    eigenspace at a time).
    """
    r = cs.rho
    if r == 0:
        return QPolyVerdict(True, ((),), "trivial")
    supports = _power_supports(cs, tol)
    found, method = _search(r, lambda o: _qpoly_valid(supports, o), lambda s: _qpoly_chain(supports, s, r),
                            range(1, r + 1), limit)
    orderings = tuple(tuple(cs.indices[j] for j in o) for o in found)
    return QPolyVerdict(bool(orderings), orderings, method)


def leonard_matrix(cs: CodeSpectrum, j_theta: int) -> list[list]:
    """M[l][j] = coefficient of u(eta_l) in u(theta) o u(eta_j)."""
    r = cs.rho
    cols = [expand(cs, _hadamard(cs.stdvecs[j_theta], cs.stdvecs[j])) for j in range(r + 1)]
    return [[cols[j][l] for j in range(r + 1)] for l in range(r + 1)]


def _tridiagonal_valid(nz, order: Sequence[int]) -> bool:
    pos = [0, *order]
    r = len(pos)
    for a in range(r):
        for b in range(r):
            gap = abs(a - b)
            if gap > 1 and nz[pos[a]][pos[b]]:
                return False
            if gap == 1 and not nz[pos[a]][pos[b]]:
                return False
    return True


def _tridiagonal_chain(nz, rho: int) -> list[int] | None:
    placed = [0]
    for p in range(rho):
        col = placed[p]
        new = [l for l in range(rho + 1) if nz[l][col] and l not in placed]
        if len(new) != 1:
            return None
        placed.append(new[0])
    return placed[1:]


def leonard_test(u: QuotientMatrix, cs: CodeSpectrum, theta, tol: Tolerances = DEFAULT_TOL,
                 limit: int = EXHAUSTIVE_LIMIT) -> LeonardVerdict:
    """Is multiplication by u(theta) irreducible tridiagonal in some ordering of the basis?"""
    r = cs.rho
    jt = cs.index_of_eta(theta, tol.eigen)
    if jt == 0:
        raise ParameterOutOfRange("theta must be a nontrivial eigenvalue of the code")
    m = leonard_matrix(cs, jt)
    cols_nz = [_nonzero([m[l][j] for l in range(r + 1)], tol) for j in range(r + 1)]
    nz = [[cols_nz[j][l] for j in range(r + 1)] for l in range(r + 1)]
    found, _ = _search(r, lambda o: _tridiagonal_valid(nz, o), lambda s: _tridiagonal_chain(nz, r),
                       range(1, r + 1), limit)
    pos = [0, *found[0]] if found else list(range(r + 1))
    shown = tuple(tuple(m[a][b] for b in pos) for a in pos)
    orderings = tuple(tuple(cs.indices[j] for j in o) for o in found)
    return LeonardVerdict(bool(found), cs.etas[jt], shown, orderings)


# ---------------------------------------------------------------------------
# harmonic / arithmetic / filters


def harmonic_test(cs: CodeSpectrum, ordering: Sequence[int] | None, kt: KreinTensor | None = None) -> int | None:
    """Step t with S*(C) at positions {t, 2t, ..., rho t} of the graph's Q-polynomial ordering."""
    if not ordering:
        raise GraphNotQPoly("harmonic test needs a Q-polynomial ordering of the graph")
    if kt is not None and not is_qpoly_ordering(kt, ordering):
        raise GraphNotQPoly(f"{tuple(ordering)} is not a Q-polynomial ordering of the graph")
    if not cs.sstar:
        return None
    pos = {idx: p for p, idx in enumerate(ordering, start=1)}
    places = sorted(pos[i] for i in cs.sstar)
    t = places[0]
    return t if places == [t * j for j in range(1, len(places) + 1)] else None


def arithmetic_test(cs: CodeSpectrum, tol: Tolerances = DEFAULT_TOL):
    """t > 0 with eta_j = k - j t for all j, else None."""
    if cs.rho < 1:
        return None
    k = cs.etas[0]
    t = k - cs.etas[1]
    if not all(near(e, k - j * t, tol.eigen) for j, e in enumerate(cs.etas)):
        return None
    return to_int(t) if to_int(t) is not None else t


def gap_filter(sstar: Sequence[int], ordering: Sequence[int] | None = None) -> bool:
    """i_j - i_{j-1} <= i_1 for the sorted indices with i_0 = 0.

    Indices are positions in the natural ordering unless ``ordering`` maps
    them to positions in another one.
    """
    if ordering is not None:
        pos = {idx: p for p, idx in enumerate(ordering, start=1)}
        sstar = [pos[i] for i in sstar]
    idx = [0, *sorted(sstar)]
    if len(idx) == 1:
        return True
    return all(b - a <= idx[1] for a, b in zip(idx, idx[1:]))


def antipodal_parity_filter(sstar: Sequence[int], pi: AntipodalMap, c: Code, dp: DistancePartition) -> bool:
    """Parity pattern of {0, i_1, ..., i_rho} forced by pi(C) = C or pi(C) = C_rho."""
    idx = [0, *sorted(sstar)]
    image = pi.image(c.vertices)
    if image == frozenset(c.vertices):
        return all(i % 2 == 0 for i in idx)
    if image == frozenset(dp.cells[-1]):
        return all(i % 2 == j % 2 for j, i in enumerate(idx))
    raise LemmaViolation("antipodal image of the code is neither the code nor its last cell")


@dataclass(frozen=True)
class SupportCheck:
    ok: bool
    kind: str | None = None
    index: int | None = None

    def __bool__(self):
        return self.ok


def krein_support_check(exp: EigenExpansion, kt: KreinTensor, sstar: Sequence[int] | None = None) -> SupportCheck:
    """lambda_j != 0 needs q_{i1 i1}^{ij} != 0; tau_j != 0 needs a two-step Krein path.

    ``sstar`` lists graph indices aligned with the expansion (index 0
    first); it defaults to ``exp.indices``.
    """
    idx = list(sstar) if sstar is not None else list(exp.indices)
    if len(idx) == len(exp.etas) - 1:
        idx = [0, *idx]
    i1 = idx[1]
    lam_nz = _nonzero(exp.lambdas, DEFAULT_TOL)
    tau_nz = _nonzero(exp.taus, DEFAULT_TOL)
    for j, ij in enumerate(idx):
        if lam_nz[j] and kt.is_zero(i1, i1, ij):
            return SupportCheck(False, "lambda", j)
        if tau_nz[j] and not any(not kt.is_zero(i1, i1, il) and not kt.is_zero(il, i1, ij) for il in idx):
            return SupportCheck(False, "tau", j)
    return SupportCheck(True)


# ---------------------------------------------------------------------------
# reconstruction


def reconstruct_parameters(k: int, etas: Sequence, exp: EigenExpansion, tol: Tolerances = DEFAULT_TOL,
                           max_rho: int = DEFAULT_MAX_RHO) -> QuotientMatrix:
    """Rebuild U(C) from k, the spectrum and the lambda/tau expansions of eta_1.

    Row 0 comes from alpha_0 + beta_0 = k and the first entries of the
    eigenvector and square relations. Each later row solves the moment
    system sum over the three nodes u_m, u_{m+1}, u_{m+2} of (1, x, x^2, x^3)
    weighted by (gamma, alpha, beta) = (k, eta_1 u_{m+1}, R_lambda, R_tau);
    the row with beta = 0 ends the induction.
    """
    lam, tau = list(exp.lambdas), list(exp.taus)
    etas = list(etas)
    if len(etas) < 2 or len(lam) != len(etas) or len(tau) != len(etas):
        raise ParameterOutOfRange("need eta_0, eta_1 and matching lambda/tau vectors")
    exact = all_exact(etas) and all_exact(lam) and all_exact(tau)
    conv = Fraction if exact else float
    etas, lam, tau = [conv(x) for x in etas], [conv(x) for x in lam], [conv(x) for x in tau]
    k = conv(k)
    eta1 = etas[1]

    def zero(x, scale=1.0):
        return is_zero(x, tol.zero * max(1.0, abs(float(scale))))

    S = sum(l * e for l, e in zip(lam, etas))
    if zero(eta1 - k, k):
        raise DegenerateEigenvector("eta_1 equals k")
    u1 = (S - k) / (eta1 - k) - 1
    if zero(u1 - 1):
        raise DegenerateEigenvector("u_1(eta_1) = u_0(eta_1)")
    beta0 = (eta1 - k) / (u1 - 1)
    alpha0 = k - beta0
    gamma, alpha, beta = [conv(0)], [alpha0], [beta0]
    us = [[conv(1)] * len(etas), [(e - alpha0) / beta0 for e in etas]]

    def integral(x):
        if exact:
            return to_int(x) is not None and x >= 0
        return abs(x - round(x)) <= DERIVED_SLACK * max(1.0, abs(x)) and x > -DERIVED_SLACK

    m = 0
    while True:
        if not all(integral(x) for x in (gamma[-1], alpha[-1], beta[-1])):
            raise InconsistentData(f"row {m} = ({gamma[-1]}, {alpha[-1]}, {beta[-1]}) is not a nonnegative integer triple")
        if m >= 2 * max_rho:
            raise NonTermination(f"no row with beta = 0 after {m} steps")
        a, b = us[m][1], us[m + 1][1]
        if zero(a - b):
            raise DegenerateEigenvector(f"u_{m}(eta_1) = u_{m + 1}(eta_1)")
        r_lam = sum(l * e * x for l, e, x in zip(lam, etas, us[m + 1]))
        r_tau = sum(t * e * x for t, e, x in zip(tau, etas, us[m + 1]))
        num = r_tau - r_lam * (a + b) + eta1 * b * b * a
        den = r_lam + k * b * a - eta1 * b * (a + b)
        scale = max(abs(float(r_lam)), abs(float(k * a * b)), abs(float(eta1 * b * (a + b))))
        if zero(den, scale):
            g = b * (eta1 - k) / (a - b)
            al = k - g
            gamma.append(g), alpha.append(al), beta.append(conv(0))
            checks = [g * a * a + al * b * b - r_lam, g * a**3 + al * b**3 - r_tau]
            checks += [g * um + al * um1 - e * um1 for e, um, um1 in zip(etas, us[m], us[m + 1])]
            slack = 0.0 if exact else DERIVED_SLACK * max(scale, float(k))
            if not all(abs(x) <= slack for x in checks):
                raise InconsistentData(f"final row {m + 1} does not satisfy the square/cube/eigenvector relations")
            break
        w = num / den
        if zero(w - a) or zero(w - b):
            raise DegenerateEigenvector(f"u_{m + 2}(eta_1) repeats u_{m}(eta_1) or u_{m + 1}(eta_1)")
        g = (r_lam + k * w * b - eta1 * b * (w + b)) / ((a - w) * (a - b))
        al = (r_lam + k * w * a - eta1 * b * (w + a)) / ((b - w) * (b - a))
        be = (r_lam + k * b * a - eta1 * b * (b + a)) / ((w - b) * (w - a))
        gamma.append(g), alpha.append(al), beta.append(be)
        us.append([((e - al) * um1 - g * um) / be for e, um, um1 in zip(etas, us[m], us[m + 1])])
        m += 1

    def as_int(x):
        if exact:
            v = to_int(x)
        else:
            v = round(x) if abs(x - round(x)) <= DERIVED_SLACK * max(1.0, abs(x)) else None
        if v is None or v < 0:
            raise InconsistentData(f"reconstructed parameter {x} is not a nonnegative integer")
        return int(v)

    try:
        return QuotientMatrix(tuple(map(as_int, gamma)), tuple(map(as_int, alpha)), tuple(map(as_int, beta)))
    except ParameterOutOfRange as exc:
        raise InconsistentData(str(exc)) from None


def reconstruct_from_qpoly_data(k: int, eta1, eta2, l0, l1, t1, t2, tol: Tolerances = DEFAULT_TOL) -> QuotientMatrix:
    """U(C) of a Q-polynomial code from (k, eta_1, eta_2, lambda_0, lambda_1, tau_1, tau_2).

    lambda_2 = 1 - lambda_0 - lambda_1, tau_0 = lambda_0 lambda_1 and
    tau_3 = 1 - tau_0 - tau_1 - tau_2; alpha_0 and beta_0 come from the
    square relation, then eta_3 from the first entry of the cube relation.
    ``eta2`` may be None for covering radius 1.
    """
    conv = Fraction if all_exact([k, eta1, l0, l1, t1, t2] + ([eta2] if eta2 is not None else [])) else float
    k, eta1, l0, l1, t1, t2 = map(conv, (k, eta1, l0, l1, t1, t2))
    l2 = 1 - l0 - l1
    t0 = l0 * l1
    t3 = 1 - t0 - t1 - t2

    def zero(x):
        return is_zero(x, tol.zero)

    if eta2 is None:
        if not (zero(l2) and zero(t2) and zero(t3)):
            raise InconsistentData("without eta_2 the expansions must stop at eta_1")
        etas, lam, tau = [k, eta1], [l0, l1], [t0, t1]
    else:
        eta2 = conv(eta2)
        S = l0 * k + l1 * eta1 + l2 * eta2
        try:
            u1 = (S - k) / (eta1 - k) - 1
            beta0 = (eta1 - k) / (u1 - 1)
        except ZeroDivisionError:
            raise InconsistentData("degenerate step-0 data") from None
        alpha0 = k - beta0
        x1 = (eta1 - alpha0) / beta0
        x2 = (eta2 - alpha0) / beta0
        rest = x1**3 - t0 - t1 * x1 - t2 * x2
        if zero(t3):
            if not zero(rest):
                raise InconsistentData(f"tau_3 = 0 but the cube relation leaves residual {rest}")
            etas, lam, tau = [k, eta1, eta2], [l0, l1, l2], [t0, t1, t2]
        else:
            eta3 = alpha0 + beta0 * rest / t3
            etas, lam, tau = [k, eta1, eta2, eta3], [l0, l1, l2, 0], [t0, t1, t2, t3]
    exp = EigenExpansion(tuple(etas), tuple(lam), tuple(tau))
    try:
        u = reconstruct_parameters(k, etas, exp, tol)
    except (DegenerateEigenvector, NonTermination, ParameterOutOfRange) as exc:
        raise InconsistentData(f"recursion failed: {exc}") from None
    # the reconstructed U must reproduce the input data
    spec_u = quotient_eigenvalues(u)
    for e in etas:
        if not any(near(e, s, 1e-9) for s in spec_u):
            raise InconsistentData(f"{e} is not an eigenvalue of the reconstructed quotient matrix")
    return u


# ---------------------------------------------------------------------------
# full report


@dataclass(frozen=True)
class ClassificationReport:
    graph: str
    code: str
    size: int
    quotient: QuotientMatrix
    rho: int
    etas: tuple
    sstar: tuple[int, ...]
    graph_orderings: tuple[tuple[int, ...], ...]
    ordering: tuple[int, ...] | None  # graph ordering used for strength / harmonic
    strength: int | None
    qpoly: QPolyVerdict
    leonard: tuple[LeonardVerdict, ...]
    harmonic_t: int | None
    arithmetic_t: object
    nondegenerate: tuple[bool, ...]
    filters: dict
    expansion: EigenExpansion | None
    krein_support: bool | None
    notes: tuple[str, ...] = field(default=())

    @property
    def is_qpoly(self) -> bool:
        return self.qpoly.flag

    @property
    def is_leonard(self) -> bool:
        return any(v.flag for v in self.leonard)

    @property
    def leonard_thetas(self) -> tuple:
        return tuple(v.theta for v in self.leonard if v.flag)

    @property
    def leonard_orderings(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted({o for v in self.leonard for o in v.orderings}))


def graph_qpoly_orderings(ia, tol: Tolerances = DEFAULT_TOL) -> tuple[list[tuple[int, ...]], str | None]:
    """All orderings when the search is affordable, else only the natural one if it qualifies."""
    if ia.D <= MAX_ORDERING_DIAMETER:
        return qpoly_orderings(ia, tol), None
    natural = tuple(range(1, ia.D + 1))
    kt = krein_parameters(ia, tol)
    found = [natural] if is_qpoly_ordering(kt, natural) else []
    return found, f"D = {ia.D} exceeds the exhaustive ordering search; only the natural ordering was checked"


def classify(g: Graph, c: Code, tol: Tolerances = DEFAULT_TOL, ordering: str = "natural",
             limit: int = EXHAUSTIVE_LIMIT) -> ClassificationReport:
    """Run every test on a completely regular code.

    ``ordering`` picks the graph ordering used for strength and the
    harmonic test: ``natural`` uses theta_0 > theta_1 > ... when that is
    Q-polynomial, ``search`` tries every Q-polynomial ordering and keeps the
    first that makes the code harmonic.
    """
    if ordering not in ("natural", "search"):
        raise ParameterOutOfRange(f"ordering must be 'natural' or 'search', not {ordering!r}")
    u = is_completely_regular(g, c)
    if isinstance(u, Witness):
        raise NotCompletelyRegular(u)
    ia = g.intersection_array()
    sp = spectrum(ia, tol)
    cs = code_spectrum(u, sp, tol)
    if len(cs.sstar) != u.rho:
        raise TheoremViolation(f"|S*| = {len(cs.sstar)} but rho = {u.rho}")
    notes = []
    orderings, note = graph_qpoly_orderings(ia, tol)
    if note:
        notes.append(note)
    natural = tuple(range(1, ia.D + 1))
    natural_ok = natural in orderings

    qv = qpoly_test(u, cs, tol, limit)
    if u.rho > limit:
        notes.append(f"rho = {u.rho} > {limit}: orderings from chain-following only")
    lv = tuple(leonard_test(u, cs, cs.etas[j], tol, limit) for j in range(1, u.rho + 1))
    leonard_orders = sorted({o for v in lv for o in v.orderings})
    if u.rho >= 1 and sorted(qv.orderings) != leonard_orders:
        raise TheoremViolation(f"Q-polynomial orderings {qv.orderings} differ from Leonard orderings {leonard_orders}")

    chosen = None
    harmonic = None
    if ordering == "natural":
        chosen = natural if natural_ok else None
        if chosen is not None:
            harmonic = harmonic_test(cs, chosen)
    else:
        for cand in orderings:
            t = harmonic_test(cs, cand)
            if chosen is None:
                chosen = cand
            if t is not None:
                chosen, harmonic = cand, t
                break

    filters = {"lloyd": True, "gap": gap_filter(cs.sstar) if natural_ok else None, "parity": None}
    if ia.D >= 2:
        pi = antipodal_map(g, ia)
        if isinstance(pi, AntipodalMap):
            filters["parity"] = antipodal_parity_filter(cs.sstar, pi, c, distance_partition(g, c))

    exp = eigen_expansion(u, cs, tol=tol) if u.rho >= 1 else None
    kcheck = None
    if exp is not None:
        kcheck = krein_support_check(exp, krein_parameters(ia, tol)).ok

    return ClassificationReport(
        graph=g.describe(),
        code=c.name or f"{c.size} codewords",
        size=c.size,
        quotient=u,
        rho=u.rho,
        etas=cs.etas,
        sstar=cs.sstar,
        graph_orderings=tuple(orderings),
        ordering=chosen,
        strength=strength(cs, chosen) if chosen else None,
        qpoly=qv,
        leonard=lv,
        harmonic_t=harmonic,
        arithmetic_t=arithmetic_test(cs, tol),
        nondegenerate=tuple(is_nondegenerate(v, tol) for v in cs.stdvecs),
        filters=filters,
        expansion=exp,
        krein_support=kcheck,
        notes=tuple(notes),
    )
