"""k-attractor validity checks, straddling-occurrence reporting, sharp
verification, and the brute-force oracles used as ground truth in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .attractor_model import AttractorSet, DArray, build_d_array
from .errors import ParameterError
from .rmq import MinTable, RangeMin
from .text_index import RemappedText, SuffixIndex, TruncatedEdge


@dataclass
class Verdict:
    valid: bool
    witness: Optional[TruncatedEdge] = None


@dataclass
class SharpVerdict:
    valid: bool
    witness: Optional[Tuple[int, ...]] = None
    witness_start: Optional[int] = None
    witness_interval: Optional[Tuple[int, int]] = None


def edge_label(index: SuffixIndex, edge: TruncatedEdge) -> Tuple[int, ...]:
    """The string s(e), reconstructed from (SA[l_e], lam)."""
    start = index.sa[edge.l]
    return index.text.symbols[start - 1 : start - 1 + edge.lam]


_NUMPY_VERIFY_THRESHOLD = 4096


def edge_minima(index: SuffixIndex, darray: DArray, k: int):
    """min(D[l_e..r_e]) for every edge of the k-universe, by edge id.

    Computed bottom-up over the interval tree (child minima fold into
    parents), which is linear in the number of nodes.
    """
    topo = index.topology
    values = darray.values
    n = index.n
    if n > _NUMPY_VERIFY_THRESHOLD:
        mt = MinTable(values, start=1, cap=darray.cap)
        l, r, _, _ = index.universe_arrays(k)
        return mt.min_many(l, r)
    num_nodes = len(topo)
    mind = [darray.cap + 1] * num_nodes
    end_node = topo.end_node
    for r in range(1, n + 1):
        u = end_node[r]
        v = values[r]
        if v < mind[u]:
            mind[u] = v
    parent = topo.parent
    for v in topo.close_order:
        p = parent[v]
        if p != -1 and mind[v] < mind[p]:
            mind[p] = mind[v]
    return [mind[e.node] for e in index.universe(k)]


def is_k_attractor(index: SuffixIndex, gamma: AttractorSet, k: int) -> Verdict:
    """Valid iff every k-universe edge e satisfies lam(e) > min(D[l_e..r_e])."""
    darray = build_d_array(index, gamma, k)
    mins = edge_minima(index, darray, k)
    if index.n > _NUMPY_VERIFY_THRESHOLD:
        _, _, lam, _ = index.universe_arrays(k)
        bad = np.nonzero(lam <= mins)[0]
        if len(bad) == 0:
            return Verdict(valid=True)
        return Verdict(valid=False, witness=index.edge_at(k, int(bad[0])))
    for e, m in zip(index.universe(k), mins):
        if e.lam <= m:
            return Verdict(valid=False, witness=e)
    return Verdict(valid=True)


def report_occurrences(index: SuffixIndex, gamma: AttractorSet, i: int, j: int,
                       limit: int, darray: Optional[DArray] = None) -> List[int]:
    """Positions i' with S[i'..i'+(j-i)] = S[i..j] straddling some attractor
    position, up to `limit` of them."""
    if limit <= 0:
        return []
    from .text_index import pattern_range

    plen = j - i + 1
    if darray is None:
        darray = build_d_array(index, gamma, plen)
    rm = RangeMin(darray.values, start=1)
    l, r = pattern_range(index, i, j)
    out: List[int] = []
    stack = [(l, r)]
    while stack and len(out) < limit:
        lo, hi = stack.pop()
        if lo > hi:
            continue
        m = rm.argmin(lo, hi)
        if plen > darray.values[m]:
            out.append(index.sa[m])
            stack.append((lo, m - 1))
            stack.append((m + 1, hi))
    return out


def is_k_sharp_attractor(index: SuffixIndex, gamma: AttractorSet, k: int) -> SharpVerdict:
    """Valid iff every distinct length-k substring has a straddled occurrence.

    Distinct k-mers are the maximal SA runs with LCP >= k among suffixes of
    length >= k; the Lemma-6 style test min(D[l..r]) < k applies per run.
    """
    n = index.n
    if not 1 <= k <= n:
        raise ParameterError(f"k must be in [1..{n}], got {k}")
    darray = build_d_array(index, gamma, k)
    values = darray.values
    sa = index.sa
    lcp = index.lcp
    groups = []
    start = 1
    for r in range(2, n + 1):
        if lcp[r] < k:
            groups.append((start, r - 1))
            start = r
    groups.append((start, n))

    best_start = None
    best_interval = None
    for l, r in groups:
        if n - sa[l] + 1 < k:
            continue
        mn = min(values[l : r + 1]) if not isinstance(values, np.ndarray) else int(values[l : r + 1].min())
        if mn >= k:
            p = min(sa[l : r + 1])
            if best_start is None or p < best_start:
                best_start = p
                best_interval = (l, r)
    if best_start is None:
        return SharpVerdict(valid=True)
    witness = index.text.symbols[best_start - 1 : best_start - 1 + k]
    return SharpVerdict(valid=False, witness=witness, witness_start=best_start,
                        witness_interval=best_interval)


# -- brute-force oracles ----------------------------------------------------


def _symbols_of(text) -> Sequence:
    return text.symbols if isinstance(text, RemappedText) else text


def coverage_masks(text, k: int, exact: bool = False) -> List[int]:
    """For each distinct substring of length <= k (== k when exact), a
    bitmask over positions 1..n (bit p-1) covered by some occurrence."""
    s = _symbols_of(text)
    n = len(s)
    masks = {}
    lengths = [k] if exact else range(1, k + 1)
    for ln in lengths:
        for i in range(n - ln + 1):
            sub = s[i : i + ln]
            window = ((1 << ln) - 1) << i
            masks[sub] = masks.get(sub, 0) | window
    return list(masks.values())


def brute_force_is_k_attractor(text, gamma, k: int) -> bool:
    """Literal Definition-1 check; intended for small texts."""
    positions = gamma.positions if isinstance(gamma, AttractorSet) else gamma
    gmask = 0
    for p in positions:
        gmask |= 1 << (p - 1)
    return all(m & gmask for m in coverage_masks(text, k))


def brute_force_min_k_attractor(text, k: int) -> Tuple[int, List[int]]:
    """Exhaustive minimum k-attractor; returns (size, first witness in
    lexicographic position order)."""
    s = _symbols_of(text)
    n = len(s)
    masks = coverage_masks(text, k)
    for t in range(1, n + 1):
        for combo in combinations(range(1, n + 1), t):
            gmask = 0
            for p in combo:
                gmask |= 1 << (p - 1)
            if all(m & gmask for m in masks):
                return t, list(combo)
    raise AssertionError("unreachable: the full position set is an attractor")
