"""Lower bounds ``theta_M = J_M ** (-1 / (2 M))`` of the minimal singular value."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import BidiagonalMatrix, relative_deviation
from .engines import METHODS, trace_table
from .errors import BidiagError, MonotonicityViolation, TraceBreakdown
from .oracle import sigma_min_oracle

DEFAULT_BACKEND = "new"
MONOTONE_SLACK = 1e-12


def theta_from_trace(j: float, order: int) -> float:
    if not (j > 0.0 and math.isfinite(j)):
        raise TraceBreakdown(f"J_{order} = {j!r} does not define a bound")
    return math.exp(-math.log(j) / (2 * order))


def theta(b: BidiagonalMatrix, order: int, backend: str = DEFAULT_BACKEND) -> float:
    return theta_from_trace(trace_table(b, order, backend)[order], order)


@dataclass
class BoundSequence:
    thetas: np.ndarray
    method: str
    sigma_min_ref: float | None = None

    def gaps(self) -> np.ndarray | None:
        if self.sigma_min_ref is None:
            return None
        return (self.sigma_min_ref - self.thetas) / self.sigma_min_ref


def check_monotone(thetas, slack: float = MONOTONE_SLACK) -> None:
    for m in range(1, len(thetas)):
        if thetas[m] < thetas[m - 1] * (1.0 - slack):
            raise MonotonicityViolation(
                f"theta_{m + 1} = {thetas[m]!r} < theta_{m} = {thetas[m - 1]!r}"
            )


def theta_sequence(
    b: BidiagonalMatrix,
    order_max: int,
    backend: str = DEFAULT_BACKEND,
    *,
    with_reference: bool = False,
) -> BoundSequence:
    table = trace_table(b, order_max, backend)
    thetas = np.array([theta_from_trace(table[m], m) for m in range(1, order_max + 1)])
    check_monotone(thetas)
    ref = sigma_min_oracle(b) if with_reference else None
    return BoundSequence(thetas, backend, ref)


@dataclass
class BoundReport:
    order_max: int
    sigma_min: float
    sequences: dict[str, BoundSequence] = field(default_factory=dict)
    failures: dict[str, str] = field(default_factory=dict)

    def cross_deviation(self) -> np.ndarray:
        """Per order, the largest relative spread between any two backends."""
        seqs = list(self.sequences.values())
        out = np.zeros(self.order_max)
        for m in range(self.order_max):
            for i in range(len(seqs)):
                for j in range(i + 1, len(seqs)):
                    out[m] = max(out[m], relative_deviation(seqs[i].thetas[m], seqs[j].thetas[m]))
        return out


def bound_report(b: BidiagonalMatrix, order_max: int, backends=METHODS) -> BoundReport:
    backends = list(backends)
    if not backends:
        raise ValueError("at least one backend is required")
    report = BoundReport(order_max, sigma_min_oracle(b))
    for name in backends:
        try:
            seq = theta_sequence(b, order_max, name)
        except BidiagError as exc:
            report.failures[name] = f"{type(exc).__name__}: {exc}"
            continue
        seq.sigma_min_ref = report.sigma_min
        report.sequences[name] = seq
    return report
