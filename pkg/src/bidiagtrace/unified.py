"""Factorial-free, subtraction-free trace formula and the identities tying the engines together.

Variant ``"tilde"`` runs the forward sweep (tables ``g~`` and ``G~``), variant
``"plain"`` the backward mirror (``g`` and ``G``).  In both, the trace of the
``M``-th inverse power is the plain sum of the big row of order ``M``.

The backward sweep runs ``i = N-1, ..., 1`` (1-based), the mirror image of the
forward one, so that the base case ``g_N = 0`` seeds it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import BidiagonalMatrix, ratios, relative_deviation
from .errors import Overflow
from .ykyy14 import h_tables

VARIANTS = ("tilde", "plain")


@dataclass(frozen=True, eq=False)
class UnifiedTables:
    """``small[m - 1]`` and ``big[m - 1]`` are the order-``m`` rows."""

    small: np.ndarray
    big: np.ndarray
    variant: str

    def at(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        return self.small[order - 1], self.big[order - 1]

    def traces(self) -> np.ndarray:
        return np.array([float(np.sum(row)) for row in self.big])


def _raw(b: BidiagonalMatrix, order_max: int, variant: str, stop: bool):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, not {variant!r}")
    if order_max < 1:
        raise ValueError("order_max must be >= 1")
    r = ratios(b)
    return _backend.kernels().unified(
        r.b_check, r.f, r.f_tilde, order_max, variant == "plain", stop
    )


def unified_tables(b: BidiagonalMatrix, order_max: int, variant: str = "tilde") -> UnifiedTables:
    small, big = _raw(b, order_max, variant, stop=True)
    rows = np.all(np.isfinite(big), axis=1) & np.all(np.isfinite(small), axis=1)
    if not np.all(rows):
        raise Overflow("unified table overflowed", order=int(np.argmin(rows)) + 1)
    return UnifiedTables(small, big, variant)


def trace_new(b: BidiagonalMatrix, order: int, variant: str = "tilde") -> float:
    return float(np.sum(unified_tables(b, order, variant).big[order - 1]))


def reach(b: BidiagonalMatrix, cap: int, variant: str = "tilde") -> int:
    """Largest order ``<= cap`` whose big row and trace are finite."""
    small, big = _raw(b, cap, variant, stop=True)
    ok = np.all(np.isfinite(big), axis=1) & np.all(np.isfinite(small), axis=1)
    ok &= np.isfinite(big.sum(axis=1))
    return cap if np.all(ok) else int(np.argmin(ok))


@dataclass
class TransformReport:
    order_max: int
    h_vs_gtilde: float
    htilde_vs_g: float
    big_h_vs_big_gtilde: float
    big_htilde_vs_big_g: float

    @property
    def worst(self) -> float:
        return max(
            self.h_vs_gtilde, self.htilde_vs_g, self.big_h_vs_big_gtilde, self.big_htilde_vs_big_g
        )


def _max_rel(a: np.ndarray, b: np.ndarray) -> float:
    worst = 0.0
    for x, y in zip(a.ravel().tolist(), b.ravel().tolist()):
        worst = max(worst, relative_deviation(x, y))
    return worst


def verify_transforms(b: BidiagonalMatrix, order_max: int) -> TransformReport:
    """Largest relative gaps in ``h = m! g~``, ``h~ = m! g``, ``H = (m-1)! G~``, ``H~ = (m-1)! G``.

    The small-table relations are checked for ``m >= 2``, the big-table ones
    for ``m >= 1``.
    """
    hp = h_tables(b, order_max, "plain")
    ht = h_tables(b, order_max, "tilde")
    ut = unified_tables(b, order_max, "tilde")
    up = unified_tables(b, order_max, "plain")
    fact = np.array([float(math.factorial(m)) for m in range(order_max + 1)])
    small_scale = fact[1:, None]  # m! for m = 1..M
    big_scale = fact[:-1, None]  # (m-1)!
    return TransformReport(
        order_max,
        _max_rel(hp.h[1:], small_scale[1:] * ut.small[1:]),
        _max_rel(ht.h[1:], small_scale[1:] * up.small[1:]),
        _max_rel(hp.big_h, big_scale * ut.big),
        _max_rel(ht.big_h, big_scale * up.big),
    )


@dataclass
class SmallTraceReport:
    j2_g: float
    j2_h: float
    j3_g: float
    j3_h: float

    @property
    def j2_deviation(self) -> float:
        return relative_deviation(self.j2_g, self.j2_h)

    @property
    def j3_deviation(self) -> float:
        return relative_deviation(self.j3_g, self.j3_h)


def trace_identities_j2_j3(b: BidiagonalMatrix) -> SmallTraceReport:
    """``J_2`` and ``J_3`` through the closed forms in ``g~`` and in ``h``."""
    ut = unified_tables(b, 3, "tilde")
    hp = h_tables(b, 3, "plain")
    g2, g3 = ut.small[1], ut.small[2]
    h1, h2, h3 = hp.h[0], hp.h[1], hp.h[2]
    return SmallTraceReport(
        j2_g=float(np.sum(2.0 * g2 + h1**2)),
        j2_h=float(np.sum(h2 + h1**2)),
        j3_g=float(np.sum(3.0 * g3 + 3.0 * g2 * h1 + h1**3)),
        j3_h=0.5 * float(np.sum(h3 + 3.0 * h2 * h1 + 2.0 * h1**3)),
    )
