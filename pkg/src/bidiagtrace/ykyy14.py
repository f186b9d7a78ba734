"""Determinant-derivative trace formula with binomial and factorial scaling.

Variant ``"plain"`` sweeps forward with the tilde ratios and yields the traces
of ``(B^T B)^-p``; variant ``"tilde"`` sweeps backward and yields those of
``(B B^T)^-p``.  Either way

    J_p = sum(H[p - 1]) / (p - 1)!

so ``H`` grows like ``(p - 1)!`` times the trace and overflows long before the
trace itself does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .core import BidiagonalMatrix, ratios
from .errors import FactorialOverflow

# (M - 1)! must fit in binary64: 170! ~ 7.3e306, 171! overflows
MAX_ORDER = 171
VARIANTS = ("plain", "tilde")


@dataclass(frozen=True)
class BinomialCache:
    """Exact Pascal triangle rows ``0..order``."""

    order: int
    rows: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def build(cls, order: int) -> "BinomialCache":
        rows = [(1,)]
        for n in range(1, order + 1):
            prev = rows[-1]
            rows.append((1,) + tuple(prev[k - 1] + prev[k] for k in range(1, n)) + (1,))
        return cls(order, tuple(rows))

    def __call__(self, n: int, k: int) -> int:
        return self.rows[n][k]

    def as_float(self) -> np.ndarray:
        out = np.zeros((self.order + 1, self.order + 1))
        for n, row in enumerate(self.rows):
            for k, c in enumerate(row):
                try:
                    out[n, k] = float(c)
                except OverflowError:
                    raise FactorialOverflow(
                        f"binomial C({n},{k}) exceeds binary64", order=n
                    ) from None
        return out


@dataclass(frozen=True, eq=False)
class HTables:
    """``h[p - 1]`` and ``big_h[p - 1]`` are the order-``p`` rows."""

    h: np.ndarray
    big_h: np.ndarray
    variant: str

    def at(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        return self.h[order - 1], self.big_h[order - 1]


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, not {variant!r}")


def _raw(b: BidiagonalMatrix, order_max: int, variant: str, stop: bool):
    r = ratios(b)
    binom = BinomialCache.build(order_max).as_float()
    return _backend.kernels().ykyy14(
        r.b_check, r.f, r.f_tilde, order_max, variant == "tilde", binom, stop
    )


def h_tables(b: BidiagonalMatrix, order_max: int, variant: str = "plain") -> HTables:
    _check_variant(variant)
    if order_max < 1:
        raise ValueError("order_max must be >= 1")
    if order_max > MAX_ORDER:
        raise FactorialOverflow(
            f"order {order_max} needs ({order_max} - 1)! which exceeds binary64", order=MAX_ORDER + 1
        )
    h, big = _raw(b, order_max, variant, stop=True)
    rows = np.all(np.isfinite(big), axis=1) & np.all(np.isfinite(h), axis=1)
    if not np.all(rows):
        p = int(np.argmin(rows)) + 1
        raise FactorialOverflow(f"H table overflowed at order {p}", order=p)
    return HTables(h, big, variant)


def traces_from_h(tables: HTables) -> np.ndarray:
    """``J_1..J_M`` from an H table."""
    out = np.empty(tables.big_h.shape[0])
    for p in range(1, out.size + 1):
        out[p - 1] = float(np.sum(tables.big_h[p - 1])) / float(math.factorial(p - 1))
    return out


def trace_ykyy14(b: BidiagonalMatrix, order: int, variant: str = "plain") -> float:
    tables = h_tables(b, order, variant)
    return float(np.sum(tables.big_h[order - 1])) / float(math.factorial(order - 1))


def reach(b: BidiagonalMatrix, cap: int = MAX_ORDER, variant: str = "plain") -> int:
    """Largest order whose H row (and hence trace) is finite, at most ``min(cap, 171)``."""
    _check_variant(variant)
    top = min(cap, MAX_ORDER)
    h, big = _raw(b, top, variant, stop=True)
    rows = np.all(np.isfinite(big), axis=1) & np.all(np.isfinite(h), axis=1)
    return top if np.all(rows) else int(np.argmin(rows))
