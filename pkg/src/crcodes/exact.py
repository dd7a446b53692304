"""Exact-first scalar arithmetic.

Scalars are ``Fraction`` whenever the value is rational and ``float``
otherwise. Python's mixed arithmetic degrades a ``Fraction`` to ``float``
the moment a float enters, so callers do not need to branch on the type;
only zero tests and equality tests do, through :func:`is_zero` and
:func:`near`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

from .errors import EigenFailure

Scalar = Union[Fraction, float]


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def all_exact(xs) -> bool:
    return all(is_exact(x) for x in xs)


def as_scalar(x) -> Scalar:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return float(x)


def is_zero(x, tol: float = 0.0) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


def near(x, y, tol: float = 0.0) -> bool:
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(x - y) <= tol


def to_int(x) -> int | None:
    """Return ``x`` as an int when it is exactly integral, else None."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return None


def fmt(x):
    """JSON-friendly rendering: ints stay ints, other rationals become 'p/q'."""
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return float(x)


def parse_scalar(text: str) -> Scalar:
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


# ---------------------------------------------------------------------------
# polynomials, coefficient lists from low to high degree


def poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def tridiagonal_charpoly(diag, upper, lower) -> list[int]:
    """Characteristic polynomial det(xI - T) of a tridiagonal matrix.

    ``upper[i]`` is T[i][i+1] and ``lower[i]`` is T[i+1][i]. Only the
    products upper[i]*lower[i] enter, via the usual three-term recurrence.
    """
    prev = [1]
    cur = [-diag[0], 1]
    for i in range(1, len(diag)):
        e = upper[i - 1] * lower[i - 1]
        nxt = [0] * (len(cur) + 1)
        for j, c in enumerate(cur):
            nxt[j + 1] += c
            nxt[j] -= diag[i] * c
        for j, c in enumerate(prev):
            nxt[j] -= e * c
        prev, cur = cur, nxt
    return cur


def _sturm_count(diag, offsq, x) -> int:
    """Number of eigenvalues strictly below ``x`` (symmetrized tridiagonal)."""
    count = 0
    d = diag[0] - x
    if d == 0.0:
        d = -1e-300
    if d < 0:
        count += 1
    for i in range(1, len(diag)):
        d = diag[i] - x - offsq[i - 1] / d
        if d == 0.0:
            d = -1e-300
        if d < 0:
            count += 1
    return count


def _bisect_eigenvalues(diag, offsq, lo, hi) -> list[float]:
    n = len(diag)
    out = []
    for idx in range(n):
        # idx-th smallest: smallest x with count(x) > idx; bisect to machine precision
        a, b = lo, hi
        while b - a > 4e-16 * max(1.0, abs(a), abs(b)):
            mid = 0.5 * (a + b)
            if mid == a or mid == b:
                break
            if _sturm_count(diag, offsq, mid) > idx:
                b = mid
            else:
                a = mid
        out.append(0.5 * (a + b))
    return out


def tridiagonal_eigenvalues(diag, upper, lower, separation: float = 1e-9) -> list[Scalar]:
    """Distinct eigenvalues of an integer tridiagonal matrix, descending.

    The matrix must have ``upper[i] * lower[i] > 0`` (so it is similar to a
    real symmetric one and its spectrum is real and simple). Integer roots are
    found exactly: the characteristic polynomial is monic with integer
    coefficients, so every rational root is an integer, and every root lies
    in the Gershgorin disc of radius ``max row sum``. The remaining roots are
    isolated by Sturm-count bisection down to machine precision.
    """
    n = len(diag)
    offsq = [float(upper[i] * lower[i]) for i in range(n - 1)]
    if any(e <= 0 for e in offsq):
        raise EigenFailure("tridiagonal matrix is not irreducible with positive off-diagonal products")
    bound = 0
    for i in range(n):
        row = abs(diag[i])
        if i > 0:
            row += abs(lower[i - 1])
        if i < n - 1:
            row += abs(upper[i])
        bound = max(bound, row)
    bound = int(math.ceil(bound))
    poly = tridiagonal_charpoly(diag, upper, lower)
    int_roots = {r for r in range(-bound, bound + 1) if poly_eval(poly, r) == 0}

    approx = _bisect_eigenvalues([float(d) for d in diag], offsq, -bound - 1.0, bound + 1.0)
    approx.sort(reverse=True)
    values: list[Scalar] = []
    used = set()
    for v in approx:
        r = int(round(v))
        if r in int_roots and abs(v - r) < 1e-6 and r not in used:
            values.append(Fraction(r))
            used.add(r)
        else:
            values.append(v)
    if used != int_roots:
        raise EigenFailure(f"could not match integer roots {sorted(int_roots - used)} to isolated eigenvalues")
    for x, y in zip(values, values[1:]):
        if not x - y > separation:
            raise EigenFailure(f"eigenvalues {float(x)} and {float(y)} are not separated")
    if len(values) != n:
        raise EigenFailure(f"isolated {len(values)} eigenvalues, expected {n}")
    return values


# ---------------------------------------------------------------------------
# linear systems


class SingularMatrix(ArithmeticError):
    pass


def solve(a: Sequence[Sequence], b: Sequence) -> list[Scalar]:
    """Solve a square system by Gaussian elimination.

    Exact over ``Fraction`` when every input is rational; otherwise floats
    with partial pivoting.
    """
    n = len(a)
    exact = all(all_exact(row) for row in a) and all_exact(b)
    if exact:
        m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    else:
        m = [[float(x) for x in row] + [float(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        if exact:
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        else:
            piv = max(range(col, n), key=lambda r: abs(m[r][col]))
            if abs(m[piv][col]) < 1e-300:
                piv = None
        if piv is None:
            raise SingularMatrix(f"singular at column {col}")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / p
                row_r, row_c = m[r], m[col]
                for c in range(col, n + 1):
                    row_r[c] -= f * row_c[c]
    return [m[i][n] / m[i][i] for i in range(n)]
