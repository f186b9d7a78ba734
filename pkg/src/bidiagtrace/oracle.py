"""Dense brute-force references for every recurrence engine.

Nothing here shares code with the recurrences: inverse powers are built from
an explicit back-substituted ``B^-1``, path sums enumerate index sequences
term by term, and the minimal singular value comes from Sturm-count bisection.
"""

from __future__ import annotations

import math

import numpy as np

from .core import BidiagonalMatrix
from .errors import ComplexityGuard, Overflow

DEFAULT_BUDGET = 10**7


def _check_finite(a: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(a)):
        raise Overflow(f"{what} has entries outside the representable range")
    return a


def invert_bidiagonal(b: BidiagonalMatrix) -> np.ndarray:
    """``S = B^-1`` by back substitution on the explicit entries ``sqrt(q)``, ``sqrt(e)``."""
    n = b.n
    d = np.sqrt(b.q)
    u = np.sqrt(b.e)
    s = np.zeros((n, n))
    with np.errstate(over="ignore", invalid="ignore"):
        s[n - 1, n - 1] = 1.0 / d[n - 1]
        for i in range(n - 2, -1, -1):
            # row i of B S = I: d_i S[i, :] + u_i S[i + 1, :] = e_i^T
            s[i, :] = -u[i] * s[i + 1, :] / d[i]
            s[i, i] = 1.0 / d[i]
    return _check_finite(s, "B^-1")


def gram_inverse_power(b: BidiagonalMatrix, side: str, m: int) -> np.ndarray:
    """``(B^T B)^-m`` for ``side="upper"``, ``(B B^T)^-m`` for ``side="lower"``."""
    if m < 1:
        raise ValueError("power m must be >= 1")
    s = invert_bidiagonal(b)
    if side == "upper":
        base = s @ s.T
    elif side == "lower":
        base = s.T @ s
    else:
        raise ValueError(f"side must be 'upper' or 'lower', not {side!r}")
    base = 0.5 * (base + base.T)
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.linalg.matrix_power(base, m)
    out = 0.5 * (out + out.T)
    return _check_finite(out, f"Gram inverse power {m}")


def trace_oracle(b: BidiagonalMatrix, m: int, side: str = "upper") -> float:
    return float(np.trace(gram_inverse_power(b, side, m)))


def _walk(a: list[list[float]], idx: range, pivot: int, depth: int) -> float:
    # sum over j_1..j_depth in idx of a[pivot][j_1] a[j_1][j_2] ... a[j_depth][pivot]
    def rec(prev: int, left: int, acc: float) -> float:
        if left == 0:
            return acc * a[prev][pivot]
        total = 0.0
        row = a[prev]
        for j in idx:
            total += rec(j, left - 1, acc * row[j])
        return total

    return rec(pivot, depth, 1.0)


def _path_sum(b, i, m, budget, gram, side, idx):
    if not 0 <= i < b.n:
        raise IndexError(f"index {i} outside 0..{b.n - 1}")
    if m < 2:
        raise ValueError("path sums are defined for m >= 2")
    terms = len(idx) ** (m - 1)
    if terms > budget:
        raise ComplexityGuard(f"{terms} terms exceed the enumeration budget {budget}")
    if len(idx) == 0:
        return 0.0
    a = gram if gram is not None else gram_inverse_power(b, side, 1)
    return float(_walk(np.asarray(a).tolist(), idx, i, m - 1))


def path_sum_gtilde(
    b: BidiagonalMatrix, i: int, m: int, *, budget: int = DEFAULT_BUDGET, gram=None
) -> float:
    """Nested sum of ``W[i,j1] W[j1,j2] ... W[j_{m-1},i]`` over ``j < i``.

    ``W = (B B^T)^-1``; ``i`` is a 0-based row index.  Pass ``gram`` to reuse
    a precomputed ``W``.
    """
    return _path_sum(b, i, m, budget, gram, "lower", range(0, i))


def path_sum_g(
    b: BidiagonalMatrix, i: int, m: int, *, budget: int = DEFAULT_BUDGET, gram=None
) -> float:
    """Mirror of :func:`path_sum_gtilde` with ``V = (B^T B)^-1`` and ``j > i``."""
    return _path_sum(b, i, m, budget, gram, "upper", range(i + 1, b.n))


def _negcount(q: np.ndarray, e: np.ndarray, shift: float) -> int:
    # pivots of B^T B - shift I = L D L^T in differential (dstqds) form
    count = 0
    s = -shift
    tiny = float(np.finfo(float).tiny)
    n = len(q)
    for i in range(n - 1):
        d = q[i] + s
        if d == 0.0:
            d = -tiny
        if d < 0.0:
            count += 1
        # after a zero pivot s is infinite and s / d tends to 1
        ratio = 1.0 if math.isinf(d) else s / d
        s = e[i] * ratio - shift
    if q[n - 1] + s < 0.0:
        count += 1
    return count


def sigma_min_oracle(b: BidiagonalMatrix, rtol: float = 1e-14) -> float:
    """Smallest singular value via bisection on the Sturm count of ``B^T B``."""
    q = b.q.tolist()
    e = b.e.tolist()
    # any diagonal entry of B^T B bounds the smallest eigenvalue from above
    diag = [q[0]] + [q[i] + e[i - 1] for i in range(1, b.n)]
    hi = min(diag)
    while _negcount(q, e, hi) < 1:
        hi *= 2.0
    lo = hi
    while _negcount(q, e, lo) > 0:
        lo *= 0.5
    for _ in range(5000):
        if hi - lo <= rtol * hi:
            break
        mid = math.sqrt(lo * hi) if hi > 2.0 * lo else 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _negcount(q, e, mid) > 0:
            hi = mid
        else:
            lo = mid
    return math.sqrt(0.5 * (lo + hi))
