"""The density constant c_k and the order thresholds n0(k), n1(k).

Comparisons of the form ``x >= c_k * sqrt(n)`` are done in exact integer
arithmetic. Writing ``c_k * sqrt(n) = sqrt(A) + sqrt(B)`` with
``A = k^2 (k-1) n`` and ``B = 2 k (k-1) n`` turns the test into two squarings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def c_k(k: int) -> float:
    # (sqrt(k) + sqrt(2)) * sqrt(k(k-1)) == k*sqrt(k-1) + sqrt(2k(k-1)); exact 4.0 at k=2
    return k * math.sqrt(k - 1) + math.sqrt(2 * k * (k - 1))


def ge_sqrt_sum(x: int | Fraction, a: int, b: int) -> bool:
    """Exact test of ``x >= sqrt(a) + sqrt(b)`` for nonnegative integers ``a``, ``b``."""
    x = Fraction(x)
    if x < 0:
        return False
    # x >= sqrt(a)+sqrt(b)  <=>  x^2 - a - b >= 2 sqrt(ab)
    lhs = x * x - a - b
    return lhs >= 0 and lhs * lhs >= 4 * a * b


def dense_condition(delta: int | Fraction, n: int, k: int) -> bool:
    """``delta >= c_k * sqrt(n)``, exactly."""
    return ge_sqrt_sum(delta, k * k * (k - 1) * n, 2 * k * (k - 1) * n)


def _least_order(k: int, offset: int) -> int:
    # least n0 with n - 4 c_k sqrt(n) - offset >= 0 for all n >= n0; with offset > 0 the
    # quadratic in sqrt(n) has one positive root, so ok() is a monotone step
    def ok(n: int) -> bool:
        return dense_condition(Fraction(n - offset, 4), n, k)

    hi = 1
    while not ok(hi):
        hi *= 2
    lo = hi // 2 + 1 if hi > 1 else 1
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True)
class Thresholds:
    k: int
    c_k: float
    n0: int
    n1: int

    def to_dict(self) -> dict:
        return {"k": self.k, "c_k": self.c_k, "n0": self.n0, "n1": self.n1}


@lru_cache(maxsize=None)
def thresholds(k: int) -> Thresholds:
    if k < 2:
        raise ValueError(f"class bound k must be >= 2, got {k}")
    n1 = _least_order(k, 12 * k - 14)
    n0 = _least_order(k, 2 * k * k + 4 * k + 4)
    return Thresholds(k=k, c_k=c_k(k), n0=n0, n1=n1)
