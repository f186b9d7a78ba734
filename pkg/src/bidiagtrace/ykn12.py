"""Subtraction-free diagonal recurrence with the convolution tables ``g`` and ``gt``.

``g[r - 1, i]`` and ``gt[r - 1, i]`` hold the order-``r`` auxiliaries; the last
entry of every ``g`` row and the first entry of every ``gt`` row are zero by
definition.  Every other quantity is built from sums and products of positive
numbers only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import BidiagonalMatrix, ratios
from .errors import Overflow
from .kyn11 import DiagTable, diag_first_order


@dataclass(frozen=True, eq=False)
class GTables:
    g: np.ndarray
    g_tilde: np.ndarray

    def at(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        return self.g[order - 1], self.g_tilde[order - 1]


def _run(b: BidiagonalMatrix, order_max: int):
    if order_max < 1:
        raise ValueError("order_max must be >= 1")
    r = ratios(b)
    v, w, g, gt = _backend.kernels().ykn12(r.b_check, r.f, r.f_tilde, order_max)
    for name, arr in (("g", g), ("g_tilde", gt), ("v", v), ("w", w)):
        rows = np.all(np.isfinite(arr), axis=1)
        if not np.all(rows):
            raise Overflow(f"{name} table overflowed", order=int(np.argmin(rows)))
    return v, w, g, gt


def g_tables(b: BidiagonalMatrix, order_max: int) -> GTables:
    _, _, g, gt = _run(b, order_max)
    return GTables(g, gt)


def diag_powers_subfree(b: BidiagonalMatrix, order_max: int) -> DiagTable:
    if order_max < 2:
        raise ValueError("the subtraction-free recurrence starts at order 2")
    v, w, _, _ = _run(b, order_max)
    return DiagTable(order_max, v, w, None, "ykn12")


def subfree_all(b: BidiagonalMatrix, order_max: int) -> tuple[DiagTable, GTables]:
    """Diagonal table and g tables from one pass."""
    v, w, g, gt = _run(b, order_max)
    return DiagTable(order_max, v, w, None, "ykn12"), GTables(g, gt)


def trace_ykn12(b: BidiagonalMatrix, order: int) -> float:
    if order < 1:
        raise ValueError("order must be >= 1")
    if order == 1:
        v1, _ = diag_first_order(b)
        return float(np.sum(v1))
    return float(np.sum(diag_powers_subfree(b, order).v[order]))
