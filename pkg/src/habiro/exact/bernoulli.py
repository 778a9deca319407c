"""Bernoulli numbers and polynomials over exact rationals.

Uses the B_1 = -1/2 convention throughout.  Even-index values come from the
integer tangent-number triangle, which avoids rational arithmetic in the
quadratic-cost part of the recurrence.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

_lock = threading.Lock()
# _tangent[j] is the j-th tangent number for j >= 1; index 0 is padding.
_tangent: list[int] = [0, 1]


def _extend_tangent(n: int) -> None:
    """Grow the tangent-number table to hold T_1 .. T_n.  Caller holds _lock."""
    if len(_tangent) > n:
        return
    # Rebuild from scratch; the in-place triangle recurrence does not extend.
    t = [0] * (n + 1)
    t[1] = 1
    for k in range(2, n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    _tangent[:] = t


def bernoulli_number(k: int) -> Fraction:
    """Return B_k as a Fraction, with B_1 = -1/2."""
    if k < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if k == 0:
        return Fraction(1)
    if k == 1:
        return Fraction(-1, 2)
    if k % 2 == 1:
        return Fraction(0)
    n = k // 2
    with _lock:
        if len(_tangent) <= n:
            _extend_tangent(max(n, 2 * (len(_tangent) - 1)))
        t = _tangent[n]
    sign = 1 if n % 2 == 1 else -1
    return Fraction(sign * k * t, (1 << k) * ((1 << k) - 1))


def bernoulli_poly(k: int, x: Fraction | int) -> Fraction:
    """Evaluate the Bernoulli polynomial B_k(x) exactly."""
    if k < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    x = Fraction(x)
    # Horner evaluation of sum_j C(k,j) B_j x^(k-j).
    acc = Fraction(0)
    for j in range(k + 1):
        acc = acc * x + comb(k, j) * bernoulli_number(j)
    return acc
