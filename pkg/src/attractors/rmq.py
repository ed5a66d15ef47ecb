"""Sparse-table range minimum queries over integer arrays.

Queries return the position of a leftmost minimum so callers can recurse
on sub-ranges (occurrence reporting needs the argmin, not just the value).
"""

from __future__ import annotations

import numpy as np


class RangeMin:
    """O(n log n) preprocessing, O(1) argmin queries.

    `start` shifts the coordinate system: with start=1 the structure
    serves 1-based arrays stored with a dummy element at index 0.
    """

    def __init__(self, values, start: int = 0):
        self.start = start
        a = np.asarray(values[start:], dtype=np.int64)
        self.values = a
        n = len(a)
        levels = max(1, n.bit_length())
        table = [np.arange(n, dtype=np.int64)]
        span = 1
        for _ in range(levels - 1):
            prev = table[-1]
            if 2 * span > n:
                break
            lo = prev[: n - 2 * span + 1]
            hi = prev[span : n - span + 1]
            table.append(np.where(a[lo] <= a[hi], lo, hi))
            span *= 2
        self.table = table

    def argmin(self, l: int, r: int) -> int:
        """Position (in the caller's coordinates) of a minimum of values[l..r]."""
        l -= self.start
        r -= self.start
        if l > r:
            raise ValueError("empty range")
        j = (r - l + 1).bit_length() - 1
        t = self.table[j]
        a = int(t[l])
        b = int(t[r - (1 << j) + 1])
        best = a if self.values[a] <= self.values[b] else b
        return best + self.start

    def min(self, l: int, r: int) -> int:
        return int(self.values[self.argmin(l, r) - self.start])

    def min_many(self, lo, hi) -> np.ndarray:
        """Vectorized range minima for parallel arrays of bounds (inclusive)."""
        lo = np.asarray(lo, dtype=np.int64) - self.start
        hi = np.asarray(hi, dtype=np.int64) - self.start
        lens = hi - lo + 1
        if np.any(lens <= 0):
            raise ValueError("empty range")
        levels = (np.frexp(lens.astype(np.float64))[1] - 1).astype(np.int64)
        out = np.empty(len(lo), dtype=np.int64)
        for j in np.unique(levels):
            mask = levels == j
            t = self.table[j]
            a = t[lo[mask]]
            b = t[hi[mask] - (1 << int(j)) + 1]
            out[mask] = np.minimum(self.values[a], self.values[b])
        return out


class MinTable:
    """Value-only range minima: same sparse-table scheme as RangeMin but
    storing minima instead of argmin indices, so the levels can use the
    narrowest dtype that holds `cap` (e.g. one byte when values <= k+1).
    """

    def __init__(self, values, start: int = 0, cap: int = None):
        self.start = start
        dtype = np.int64 if cap is None else np.min_scalar_type(cap)
        a = np.asarray(values[start:], dtype=dtype)
        n = len(a)
        levels = [a]
        span = 1
        while 2 * span <= n:
            prev = levels[-1]
            levels.append(np.minimum(prev[: n - 2 * span + 1],
                                     prev[span : n - span + 1]))
            span *= 2
        # flattened levels allow answering a query batch with two gathers
        # instead of one masked pass per level
        self._flat = np.concatenate(levels) if n else a
        self._offsets = np.cumsum([0] + [len(lv) for lv in levels[:-1]],
                                  dtype=np.int64)

    def min_many(self, lo, hi) -> np.ndarray:
        lo = np.asarray(lo, dtype=np.int64) - self.start
        hi = np.asarray(hi, dtype=np.int64) - self.start
        lens = hi - lo + 1
        if np.any(lens <= 0):
            raise ValueError("empty range")
        js = (np.frexp(lens.astype(np.float64))[1] - 1).astype(np.int64)
        off = self._offsets[js]
        spans = np.left_shift(np.int64(1), js)
        return np.minimum(self._flat[off + lo], self._flat[off + hi - spans + 1])
