"""Range-maximum queries and maxima over non-neighborhoods."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any

import numpy as np

from .errors import InputError


class RangeMaxIndex:
    """Sparse table answering range-argmax queries in O(1).

    Ties resolve to the smallest position. Values can be any mutually
    comparable numbers, including Fractions.
    """

    def __init__(self, values: Sequence[Any]):
        self.values = list(values)
        n = len(self.values)
        arr = np.array(self.values, dtype=object if any(not isinstance(x, (int, float)) for x in self.values) else float)
        self._arr = arr
        level = np.arange(n, dtype=np.int64)
        self._table = [level]
        span = 1
        while 2 * span <= n:
            left = level[: n - 2 * span + 1]
            right = level[span : n - span + 1]
            level = np.where(arr[left] >= arr[right], left, right)
            self._table.append(level)
            span *= 2

    def __len__(self) -> int:
        return len(self.values)

    def argmax(self, i: int, j: int) -> int:
        """Position of the maximum over ``values[i..j]`` (inclusive)."""
        if not 0 <= i <= j < len(self.values):
            raise InputError(f"bad range [{i}, {j}] for length {len(self.values)}")
        k = (j - i + 1).bit_length() - 1
        a = int(self._table[k][i])
        b = int(self._table[k][j - (1 << k) + 1])
        return a if self.values[a] >= self.values[b] else b

    def query(self, i: int, j: int) -> Any:
        return self.values[self.argmax(i, j)]


def max_over_nonneighbors(
    adjacency: Sequence[Sequence[int]] | Any,
    kappa: Sequence[Any],
    *,
    closed: bool = False,
    default: Any = 0,
) -> tuple[list[Any], list[int]]:
    """For every vertex u, the maximum of ``kappa`` over ``V \\ N(u)``.

    The vertex u itself is part of ``V \\ N(u)``; pass ``closed=True`` to
    exclude it as well. The complement of a sorted neighbor list splits into
    at most ``deg(u) + 1`` index ranges, each answered by one sparse-table
    query, so the whole pass costs ``O(n + m)`` after preprocessing.

    Args:
        adjacency: Sorted neighbor lists, or a ``Graph``.
        kappa: One comparable value per vertex.
        closed: Also exclude u itself.
        default: Value reported when the complement is empty.

    Returns:
        Per-vertex maxima and the smallest vertex attaining each (``-1``
        when the complement is empty).
    """
    adj = getattr(adjacency, "adjacency", adjacency)
    n = len(adj)
    if len(kappa) != n:
        raise InputError("kappa must have one value per vertex")
    table = RangeMaxIndex(kappa)
    best_vals: list[Any] = []
    best_idx: list[int] = []
    for u in range(n):
        cut = sorted(set(adj[u]) | {u}) if closed else adj[u]
        best, arg = None, -1
        start = 0
        for w in list(cut) + [n]:
            if start <= w - 1:
                a = table.argmax(start, w - 1)
                if arg < 0 or kappa[a] > best or (kappa[a] == best and a < arg):
                    best, arg = kappa[a], a
            start = w + 1
        best_vals.append(default if arg < 0 else best)
        best_idx.append(arg)
    return best_vals, best_idx
