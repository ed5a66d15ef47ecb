"""Attractor sets, the successor-distance D array, and the candidate
machinery built from context-equivalence classes.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ParameterError
from .text_index import RemappedText, SuffixIndex


@dataclass(frozen=True)
class AttractorSet:
    """A sorted, deduplicated set of 1-based text positions."""

    positions: Tuple[int, ...]
    n: int

    def __contains__(self, p: int) -> bool:
        i = bisect_left(self.positions, p)
        return i < len(self.positions) and self.positions[i] == p

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def successor(self, p: int) -> Optional[int]:
        """Smallest attractor position >= p, or None."""
        i = bisect_left(self.positions, p)
        return self.positions[i] if i < len(self.positions) else None


def load_attractor(positions: Iterable[int], n: int) -> AttractorSet:
    out = sorted(set(positions))
    for p in out:
        if not 1 <= p <= n:
            raise ParameterError(f"attractor position {p} out of range [1..{n}]")
    return AttractorSet(positions=tuple(out), n=n)


def parse_attractor_text(data: str, n: int) -> AttractorSet:
    """Attractor file format: one 1-based decimal position per line;
    blank lines and lines starting with '#' are ignored."""
    positions = []
    for lineno, line in enumerate(data.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            positions.append(int(line))
        except ValueError:
            raise ParameterError(f"malformed position on line {lineno}: {line!r}")
    return load_attractor(positions, n)


@dataclass
class DArray:
    """values[r] = min(successor(Gamma, SA[r]) - SA[r], cap), cap = k + 1.

    values[r] = 0 iff SA[r] is an attractor position. Stored 1-based with
    a dummy at index 0; the backing container is a list for small texts
    and a numpy array for large ones.
    """

    values: Sequence[int]
    cap: int


_NUMPY_D_THRESHOLD = 4096


def build_d_array(index: SuffixIndex, gamma: AttractorSet, k: int) -> DArray:
    n = index.n
    if not 1 <= k <= n:
        raise ParameterError(f"k must be in [1..{n}], got {k}")
    if gamma.n != n:
        raise ParameterError("attractor set built for a different text length")
    cap = k + 1
    if n <= _NUMPY_D_THRESHOLD:
        nxt = [cap] * (n + 2)
        member = [False] * (n + 1)
        for p in gamma.positions:
            member[p] = True
        dist = cap
        values = [0] * (n + 1)
        nxt_dist = [cap] * (n + 1)
        for p in range(n, 0, -1):
            if member[p]:
                dist = 0
            elif dist < cap:
                dist += 1
            nxt_dist[p] = min(dist, cap)
        sa = index.sa
        for r in range(1, n + 1):
            values[r] = nxt_dist[sa[r]]
        return DArray(values=values, cap=cap)
    gpos = np.asarray(gamma.positions, dtype=np.int64)
    # nxt[p] = smallest attractor position >= p (sentinel keeps the capped
    # distance at cap when there is none)
    nxt = np.full(n + 2, n + cap + 1, dtype=np.int64)
    nxt[gpos] = gpos
    nxt = np.minimum.accumulate(nxt[::-1])[::-1]
    sa = index.sa_array()
    values = np.empty(n + 1, dtype=np.min_scalar_type(cap))
    values[0] = 0
    values[1:] = np.minimum(nxt[sa] - sa, cap)
    return DArray(values=values, cap=cap)


@dataclass
class EquivClasses:
    """Positions grouped by padded context windows of width 2k-1.

    class_of[i] is the class id of position i; representatives[c] is the
    smallest position in class c, listed in ascending order.
    """

    class_of: List[int]
    representatives: List[int]
    k: int


def build_equiv_classes(text: RemappedText, k: int) -> EquivClasses:
    n = len(text)
    if not 1 <= k <= n:
        raise ParameterError(f"k must be in [1..{n}], got {k}")
    # pad with code 0, strictly below every remapped symbol
    padded = (0,) * (k - 1) + text.symbols + (0,) * (k - 1)
    class_of = [0] * (n + 1)
    seen: Dict[Tuple[int, ...], int] = {}
    reps: List[int] = []
    for i in range(1, n + 1):
        ctx = padded[i - 1 : i + 2 * k - 2]
        cid = seen.get(ctx)
        if cid is None:
            cid = len(reps)
            seen[ctx] = cid
            reps.append(i)
        class_of[i] = cid
    return EquivClasses(class_of=class_of, representatives=reps, k=k)


def swap_check(gamma: AttractorSet, j: int, j2: int, classes: EquivClasses) -> AttractorSet:
    """Replace j by the context-equivalent position j2; validity is preserved."""
    if j not in gamma:
        raise ParameterError(f"position {j} not in the attractor set")
    if classes.class_of[j] != classes.class_of[j2]:
        raise ParameterError(f"positions {j} and {j2} are not context-equivalent")
    positions = set(gamma.positions)
    positions.discard(j)
    positions.add(j2)
    return load_attractor(positions, gamma.n)
