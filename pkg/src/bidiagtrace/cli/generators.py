"""Seeded random matrix families for the command line and the test suites."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import BidiagonalMatrix, make_bidiagonal


@dataclass(frozen=True)
class Distribution:
    kind: str  # uniform | loguniform | graded
    lo: float = 0.0
    hi: float = 0.0
    ratio: float = 0.0

    def __str__(self) -> str:
        if self.kind == "graded":
            return f"graded:{self.ratio:g}"
        return f"{self.kind}:{self.lo:g}:{self.hi:g}"


def parse_distribution(text: str) -> Distribution:
    """``uniform:LO:HI``, ``loguniform:LO:HI`` or ``graded:RATIO``."""
    parts = text.split(":")
    kind = parts[0].strip().lower()
    try:
        nums = [float(p) for p in parts[1:]]
    except ValueError:
        raise ValueError(f"bad distribution {text!r}") from None
    if kind in ("uniform", "loguniform"):
        if len(nums) != 2:
            raise ValueError(f"{kind} needs two bounds, e.g. {kind}:0.5:2")
        lo, hi = nums
        if not (lo > 0 and hi >= lo):
            raise ValueError(f"{kind} support must be positive with lo <= hi, got [{lo}, {hi}]")
        return Distribution(kind, lo=lo, hi=hi)
    if kind == "graded":
        if len(nums) != 1 or not nums[0] > 0:
            raise ValueError("graded needs one positive ratio, e.g. graded:10")
        return Distribution(kind, ratio=nums[0])
    raise ValueError(f"unknown distribution {kind!r}; use uniform, loguniform or graded")


def draw(dist: Distribution, n: int, rng: np.random.Generator) -> BidiagonalMatrix:
    if n < 1:
        raise ValueError("matrix order must be >= 1")
    if dist.kind == "uniform":
        return make_bidiagonal(rng.uniform(dist.lo, dist.hi, n), rng.uniform(dist.lo, dist.hi, n - 1))
    if dist.kind == "loguniform":
        a, b = np.log(dist.lo), np.log(dist.hi)
        return make_bidiagonal(np.exp(rng.uniform(a, b, n)), np.exp(rng.uniform(a, b, n - 1)))
    # q_i = ratio^-(i-1), unit superdiagonal; no randomness
    q = float(dist.ratio) ** -np.arange(n, dtype=float)
    return make_bidiagonal(q, np.ones(n - 1))


def random_graded(rng: np.random.Generator, n: int, decades: float = 10.0) -> BidiagonalMatrix:
    """Diagonal squares spread over ``decades`` orders of magnitude, superdiagonal tied to a neighbour."""
    if n == 1:
        return make_bidiagonal([10.0 ** -rng.uniform(0, decades)], [])
    s = np.sort(rng.uniform(0.0, decades, n))
    s[0], s[-1] = 0.0, decades
    if rng.random() < 0.5:
        s = s[::-1]
    q = 10.0**-s
    anchor = q[:-1] if rng.random() < 0.5 else q[1:]
    return make_bidiagonal(q, anchor * rng.uniform(0.5, 2.0, n - 1))


def suite(seed: int, count: int, sizes=(1, 2, 3, 5, 10, 20), lo: float = 0.5, hi: float = 2.0):
    """``count`` matrices with orders cycling through ``sizes`` and entries uniform in ``[lo, hi]``."""
    rng = np.random.default_rng(seed)
    dist = Distribution("uniform", lo=lo, hi=hi)
    return [draw(dist, sizes[k % len(sizes)], rng) for k in range(count)]
