"""One entry point for ``J_1..J_M`` from any engine, with per-order notes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kyn11, oracle, ykn12, ykyy14, unified
from .core import BidiagonalMatrix
from .errors import Overflow

METHODS = ("kyn11", "ykn12", "ykyy14", "new", "oracle")


@dataclass
class TraceTable:
    """``values[m - 1]`` is ``J_m``; ``notes`` maps an order to a warning tag."""

    method: str
    values: np.ndarray
    notes: dict[int, str] = field(default_factory=dict)

    @property
    def order_max(self) -> int:
        return int(self.values.size)

    def __getitem__(self, order: int) -> float:
        return float(self.values[order - 1])


def trace_table(
    b: BidiagonalMatrix,
    order_max: int,
    method: str = "new",
    *,
    variant: str | None = None,
    z_direction: str = "forward",
    side: str = "upper",
    mark_overflow: bool = False,
) -> TraceTable:
    """Traces of orders ``1..order_max`` from ``method``.

    kyn11 never raises on cancellation: orders whose diagonals came out
    nonpositive are tagged ``"cancellation"``.  With ``mark_overflow`` an
    overflow fills the remaining orders with NaN tagged ``"overflow"`` instead
    of raising.
    """
    if order_max < 1:
        raise ValueError("order_max must be >= 1")
    notes: dict[int, str] = {}
    try:
        values = _compute(b, order_max, method, variant, z_direction, side, notes)
    except Overflow as exc:
        if not mark_overflow:
            raise
        values = np.full(order_max, math.nan)
        first = exc.order
        # a static guard can fire before the true first failure; shrink until clean
        while True:
            first = max(1, min(first if first is not None else 1, order_max))
            if first == 1:
                break
            try:
                values[: first - 1] = _compute(
                    b, first - 1, method, variant, z_direction, side, notes
                )
                break
            except Overflow as inner:
                first = inner.order if inner.order is not None and inner.order < first else first - 1
        for m in range(first, order_max + 1):
            notes[m] = "overflow"
    return TraceTable(method, values, notes)


def _compute(b, order_max, method, variant, z_direction, side, notes):
    if method == "kyn11":
        table = kyn11._tables(b, order_max, z_direction)
        for m in table.nonpositive_orders():
            if m >= 1:
                notes[m] = "cancellation"
        rows = table.v if side == "upper" else table.w
        return np.array([float(np.sum(rows[m])) for m in range(1, order_max + 1)])
    if method == "ykn12":
        v1, _ = kyn11.diag_first_order(b)
        out = [float(np.sum(v1))]
        if order_max >= 2:
            table = ykn12.diag_powers_subfree(b, order_max)
            out += [float(np.sum(table.v[m])) for m in range(2, order_max + 1)]
        return np.array(out)
    if method == "ykyy14":
        return ykyy14.traces_from_h(ykyy14.h_tables(b, order_max, variant or "plain"))
    if method == "new":
        return unified.unified_tables(b, order_max, variant or "tilde").traces()
    if method == "oracle":
        return np.array([oracle.trace_oracle(b, m, side) for m in range(1, order_max + 1)])
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def overflow_reach(b: BidiagonalMatrix, method: str, cap: int = 4000) -> int:
    """Largest order the engine completes without overflow (``ykyy14`` stops at 171)."""
    if method == "new":
        return unified.reach(b, cap)
    if method == "ykyy14":
        return ykyy14.reach(b, cap)
    raise ValueError(f"overflow reach is tracked for 'new' and 'ykyy14', not {method!r}")
