"""Unsigned Stirling numbers of the first kind."""

from __future__ import annotations

import threading

_lock = threading.Lock()
# _rows[n][m] holds the unsigned first-kind value for cycle count m.
_rows: list[list[int]] = [[1]]


def stirling_first(n: int, m: int) -> int:
    """Return the unsigned Stirling number of the first kind.

    Counts permutations of n elements with exactly m cycles; values outside
    0 <= m <= n are 0.
    """
    if n < 0:
        raise ValueError("row index must be nonnegative")
    if m < 0 or m > n:
        return 0
    with _lock:
        while len(_rows) <= n:
            r = len(_rows) - 1
            prev = _rows[r]
            row = [0] * (r + 2)
            for j in range(r + 1):
                row[j + 1] += prev[j]
                row[j] += r * prev[j]
            _rows.append(row)
        return _rows[n][m]
