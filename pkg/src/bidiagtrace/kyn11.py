"""Subtractive recurrence for the diagonals of Gram inverse powers.

``v[m, i]`` is the ``i``-th diagonal entry of ``(B^T B)^-m`` and ``w[m, i]``
that of ``(B B^T)^-m``.  For ``m >= 2`` the recurrence subtracts, so in floating
point it can lose every significant digit on graded matrices; a nonpositive
entry (impossible in exact arithmetic) is reported as a
:class:`~bidiagtrace.errors.CancellationWarning`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import BidiagonalMatrix
from .errors import CancellationWarning, Overflow


@dataclass(frozen=True, eq=False)
class DiagTable:
    """Diagonal entries of Gram inverse powers, rows indexed by the power.

    ``v`` and ``w`` have ``order_max + 1`` rows (row 0 is all ones).  ``z`` holds
    the auxiliary sums of the subtractive recurrence (row ``p`` is order ``p``)
    and is ``None`` for engines that do not use it.
    """

    order_max: int
    v: np.ndarray
    w: np.ndarray
    z: np.ndarray | None
    method: str

    def nonpositive_orders(self) -> list[int]:
        bad = np.any(self.v <= 0, axis=1) | np.any(self.w <= 0, axis=1)
        return [int(m) for m in np.flatnonzero(bad)]


def diag_first_order(b: BidiagonalMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Diagonals of ``(B^T B)^-1`` and ``(B B^T)^-1``."""
    v1, w1 = _backend.kernels().first_order(b.q, b.e)
    if not (np.all(np.isfinite(v1)) and np.all(np.isfinite(w1))):
        raise Overflow("first-order diagonal overflowed", order=1)
    return v1, w1


def _tables(b: BidiagonalMatrix, order_max: int, z_direction: str) -> DiagTable:
    if order_max < 1:
        raise ValueError("order_max must be >= 1")
    if z_direction not in ("forward", "backward"):
        raise ValueError(f"z_direction must be 'forward' or 'backward', not {z_direction!r}")
    v, w, z = _backend.kernels().kyn11(b.q, b.e, order_max, z_direction == "backward")
    finite = np.all(np.isfinite(v), axis=1) & np.all(np.isfinite(w), axis=1)
    if not np.all(finite):
        raise Overflow("diagonal recurrence overflowed", order=int(np.argmin(finite)))
    return DiagTable(order_max, v, w, z, "kyn11")


def diag_powers_subtractive(
    b: BidiagonalMatrix, order_max: int, z_direction: str = "forward"
) -> DiagTable:
    table = _tables(b, order_max, z_direction)
    bad = table.nonpositive_orders()
    if bad:
        warnings.warn(
            f"nonpositive diagonal entries at orders {bad}: catastrophic cancellation",
            CancellationWarning,
            stacklevel=2,
        )
    return table


def trace_kyn11(
    b: BidiagonalMatrix, order: int, z_direction: str = "forward", both: bool = False
):
    """``J_order`` as the sum of ``v``; with ``both=True`` also the sum of ``w``."""
    table = diag_powers_subtractive(b, order, z_direction)
    tv = float(np.sum(table.v[order]))
    if both:
        return tv, float(np.sum(table.w[order]))
    return tv
