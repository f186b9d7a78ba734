"""Positive upper bidiagonal matrices and their derived ratios.

A matrix ``B`` of order ``N`` is stored through the squares of its entries:
``q[i]`` is the square of the ``i``-th diagonal entry and ``e[i]`` the square of
the ``i``-th superdiagonal entry.  Storage is 0-based; ``e`` has ``N - 1``
entries.

The text format used by the command line tool is::

    # optional comment lines
    3
    1.0 2.0 3.0
    0.5 0.25

The third line is absent or empty when ``N == 1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    NonFiniteEntry,
    NonPositiveEntry,
    Overflow,
    ParseError,
    ValidationError,
)


def _frozen(values: Iterable[float]) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BidiagonalMatrix:
    """Validated parameter pair ``(q, e)``; arrays are read-only."""

    q: np.ndarray
    e: np.ndarray

    @property
    def n(self) -> int:
        return int(self.q.shape[0])

    def dense(self) -> np.ndarray:
        """Explicit ``N x N`` matrix with ``sqrt(q)`` on the diagonal."""
        b = np.diag(np.sqrt(self.q))
        if self.n > 1:
            b[np.arange(self.n - 1), np.arange(1, self.n)] = np.sqrt(self.e)
        return b

    def scaled(self, c: float) -> "BidiagonalMatrix":
        return make_bidiagonal(self.q * c, self.e * c)

    def __repr__(self) -> str:
        return f"BidiagonalMatrix(n={self.n}, q={self.q.tolist()}, e={self.e.tolist()})"


@dataclass(frozen=True, eq=False)
class Ratios:
    """``b_check[i] = 1/q[i]``, ``f[i] = e[i]/q[i]``, ``f_tilde[i-1] = e[i-1]/q[i]``.

    ``f_tilde`` has ``N - 1`` entries; entry ``j`` belongs to matrix row ``j + 1``.
    """

    b_check: np.ndarray
    f: np.ndarray
    f_tilde: np.ndarray


def make_bidiagonal(q: Sequence[float], e: Sequence[float]) -> BidiagonalMatrix:
    try:
        qa = np.asarray(q, dtype=np.float64).reshape(-1)
        ea = np.asarray(e, dtype=np.float64).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"matrix parameters must be real numbers: {exc}") from None
    if qa.size == 0:
        raise DimensionMismatch("q must contain at least one entry")
    if ea.size != qa.size - 1:
        raise DimensionMismatch(
            f"e must have exactly len(q) - 1 = {qa.size - 1} entries, got {ea.size}"
        )
    for name, arr in (("q", qa), ("e", ea)):
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise NonFiniteEntry(f"{name}[{bad}] = {arr[bad]!r} is not finite")
        if np.any(arr <= 0):
            bad = int(np.flatnonzero(arr <= 0)[0])
            raise NonPositiveEntry(f"{name}[{bad}] = {arr[bad]!r} must be positive")
    return BidiagonalMatrix(_frozen(qa), _frozen(ea))


def ratios(b: BidiagonalMatrix) -> Ratios:
    with np.errstate(over="ignore"):
        b_check = 1.0 / b.q
        f = b.e / b.q[:-1]
        f_tilde = b.e / b.q[1:]
    for name, arr in (("1/q", b_check), ("e/q", f), ("e/q", f_tilde)):
        if not np.all(np.isfinite(arr)):
            raise Overflow(f"ratio {name} is not representable; matrix is out of numeric range")
    return Ratios(_frozen(b_check), _frozen(f), _frozen(f_tilde))


# -- text format ------------------------------------------------------------


def _numbers(line: str, lineno: int) -> list[float]:
    out = []
    for m in re.finditer(r"\S+", line):
        try:
            out.append(float(m.group()))
        except ValueError:
            raise ParseError(f"not a number: {m.group()!r}", lineno, m.start() + 1) from None
    return out


def parse_matrix_text(text: str) -> BidiagonalMatrix:
    """Parse the three-line text format; ``#`` lines are ignored."""
    lines = [
        (no, raw.strip())
        for no, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty matrix description", 1)
    no, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"first line must be the order N, got {head!r}", no, 1) from None
    if n < 1:
        raise ParseError(f"order N must be >= 1, got {n}", no, 1)
    if len(lines) < 2:
        raise ParseError("missing q line", no + 1)
    qno, qline = lines[1]
    q = _numbers(qline, qno)
    if len(q) != n:
        raise ParseError(f"length rule: expected N = {n} q values, got {len(q)}", qno)
    if len(lines) > 3:
        raise ParseError("unexpected extra content after the e line", lines[3][0])
    if len(lines) == 3:
        eno, eline = lines[2]
        e = _numbers(eline, eno)
    else:
        eno, e = qno + 1, []
    if len(e) != n - 1:
        raise ParseError(f"length rule: expected N - 1 = {n - 1} e values, got {len(e)}", eno)
    try:
        return make_bidiagonal(q, e)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def parse_inline(text: str) -> BidiagonalMatrix:
    """Parse ``"q1,q2,...;e1,e2,..."`` (the part after ``;`` may be empty)."""
    qpart, _, epart = text.partition(";")

    def floats(part: str) -> list[float]:
        part = part.strip()
        if not part:
            return []
        try:
            return [float(x) for x in part.split(",")]
        except ValueError as exc:
            raise ParseError(f"inline matrix: {exc}") from None

    q, e = floats(qpart), floats(epart)
    if len(e) != max(len(q) - 1, 0) or not q:
        raise ParseError(
            f"length rule: inline matrix needs N q values and N - 1 e values, got {len(q)} and {len(e)}"
        )
    try:
        return make_bidiagonal(q, e)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def format_matrix_text(b: BidiagonalMatrix, comment: str | None = None) -> str:
    parts = []
    if comment:
        parts.extend(f"# {c}" for c in comment.splitlines())
    parts.append(str(b.n))
    parts.append(" ".join(repr(float(x)) for x in b.q))
    parts.append(" ".join(repr(float(x)) for x in b.e))
    return "\n".join(parts) + "\n"


def load_matrix(path: str | Path) -> BidiagonalMatrix:
    return parse_matrix_text(Path(path).read_text())


def save_matrix(b: BidiagonalMatrix, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_matrix_text(b, comment))


def relative_deviation(a: float, b: float) -> float:
    """``|a - b| / max(|a|, |b|)``, zero when both are zero."""
    scale = max(abs(a), abs(b))
    if scale == 0.0:
        return 0.0
    if math.isinf(scale):
        return 0.0 if a == b else math.inf
    return abs(a - b) / scale
