"""Marker graph between candidate positions and truncated-tree edges, and
the three solvers built on it: minimal (peeling), greedy (bucket-queue set
cover), and exact minimum (bounded subset search).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Set

from .attractor_model import AttractorSet, EquivClasses, load_attractor
from .errors import BudgetExceededError, ParameterError
from .text_index import SuffixIndex


DEFAULT_BUDGET = 10**8


def _configured_budget(budget: Optional[int]) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("ATTRACTOR_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class MarkerGraph:
    """Bipartite marking relation: candidates on the left, edge ids of the
    k-universe on the right. (j, e) present iff an occurrence of s(e)
    straddles j."""

    candidates: List[int]
    num_edges: int
    cand_edges: Dict[int, List[int]] = field(default_factory=dict)
    edge_cands: List[Set[int]] = field(default_factory=list)

    def has_edge(self, j: int, edge_id: int) -> bool:
        return j in self.edge_cands[edge_id]

    @property
    def size(self) -> int:
        return sum(len(v) for v in self.cand_edges.values())


def build_marker_graph(index: SuffixIndex, classes: EquivClasses, k: int) -> MarkerGraph:
    """For each candidate j, walk i from j down to j-k+1; from the locus of
    S[i..i+k-1], climb parent edges while the occurrence at i still
    straddles j, stopping at the first edge already linked to j (its
    ancestors were linked by an earlier i)."""
    if classes.k != k:
        raise ParameterError(f"classes built for k={classes.k}, expected {k}")
    n = index.n
    topo = index.topology
    isa = index.isa
    edges = index.universe(k)
    cands = list(classes.representatives)
    graph = MarkerGraph(candidates=cands, num_edges=len(edges))
    graph.edge_cands = [set() for _ in edges]
    for j in cands:
        incident: List[int] = []
        for i in range(j, max(1, j - k + 1) - 1, -1):
            d = min(k, n - i + 1)
            v = topo.node_at_depth(topo.end_node[isa[i]], d)
            e = index.edge_of_node(v, k)
            while e is not None and e.lam > j - i and j not in graph.edge_cands[e.id]:
                graph.edge_cands[e.id].add(j)
                incident.append(e.id)
                e = edges[e.parent_edge] if e.parent_edge is not None else None
        graph.cand_edges[j] = incident
    return graph


def find_minimal(index: SuffixIndex, classes: EquivClasses, k: int) -> AttractorSet:
    """Peel removable candidates until only necessary positions remain.

    Start from the full candidate set (a valid attractor). Positions that
    are the sole marker of some edge are locked in; the rest are discarded
    one by one in increasing position order, locking in any neighbor that
    becomes a sole marker at that moment.
    """
    graph = build_marker_graph(index, classes, k)
    active: Set[int] = set(graph.candidates)
    gamma: Set[int] = set()

    for adj in graph.edge_cands:
        if len(adj) == 1:
            (j,) = adj
            if j in active:
                active.remove(j)
                gamma.add(j)

    for j in graph.candidates:
        if j not in active:
            continue
        for eid in graph.cand_edges[j]:
            adj = graph.edge_cands[eid]
            if len(adj) == 2:
                (j2,) = adj - {j}
                if j2 in active:
                    active.remove(j2)
                    gamma.add(j2)
        active.remove(j)
        for eid in graph.cand_edges[j]:
            graph.edge_cands[eid].discard(j)
    return load_attractor(gamma, index.n)


class BucketQueue:
    """Max-priority queue for integer priorities that only ever decrease
    by one. Buckets are sets; pop breaks ties toward the smallest element."""

    def __init__(self, priorities: Dict[int, int]):
        self.priority = dict(priorities)
        m = max(self.priority.values(), default=0)
        self.buckets: List[Set[int]] = [set() for _ in range(m + 1)]
        for x, p in self.priority.items():
            self.buckets[p].add(x)
        self.max = m

    def __len__(self) -> int:
        return len(self.priority)

    def pop(self) -> int:
        while self.max > 0 and not self.buckets[self.max]:
            self.max -= 1
        x = min(self.buckets[self.max])
        self.buckets[self.max].remove(x)
        del self.priority[x]
        return x

    def dec(self, x: int) -> None:
        p = self.priority.get(x)
        if p is None:
            return
        self.buckets[p].remove(x)
        self.priority[x] = p - 1
        self.buckets[p - 1].add(x)


def greedy_approx(index: SuffixIndex, classes: EquivClasses, k: int) -> AttractorSet:
    """Greedy set cover over the marker graph: repeatedly take the
    candidate marking the most still-unmarked edges. The cover size is
    within H(k(k+1)/2) of the minimum."""
    graph = build_marker_graph(index, classes, k)
    covered = [False] * graph.num_edges
    remaining = graph.num_edges
    queue = BucketQueue({j: len(graph.cand_edges[j]) for j in graph.candidates})
    gamma: List[int] = []
    while remaining:
        j = queue.pop()
        gamma.append(j)
        for eid in graph.cand_edges[j]:
            if covered[eid]:
                continue
            covered[eid] = True
            remaining -= 1
            for j2 in graph.edge_cands[eid]:
                if j2 != j:
                    queue.dec(j2)
    return load_attractor(gamma, index.n)


def find_minimum(index: SuffixIndex, classes: EquivClasses, k: int,
                 upper_bound: Optional[int] = None,
                 budget: Optional[int] = None) -> AttractorSet:
    """Exact minimum by subset enumeration over the candidate set, in
    increasing cardinality and lexicographic candidate order.

    The search is capped by upper_bound (default: the greedy solution
    size, which always succeeds) and guarded by a work budget on the
    number of subset evaluations; exceeding it raises BudgetExceededError.
    """
    graph = build_marker_graph(index, classes, k)
    cands = graph.candidates
    if upper_bound is None:
        upper_bound = len(greedy_approx(index, classes, k))
    bound = min(upper_bound, len(cands))
    limit = _configured_budget(budget)
    total = sum(comb(len(cands), t) for t in range(1, bound + 1))
    if total > limit:
        raise BudgetExceededError(candidates=len(cands), bound=bound, budget=limit)

    masks = {j: 0 for j in cands}
    for j in cands:
        for eid in graph.cand_edges[j]:
            masks[j] |= 1 << eid
    full = (1 << graph.num_edges) - 1

    m = len(cands)
    mask_list = [masks[j] for j in cands]
    for t in range(1, bound + 1):
        found = _search_subsets(mask_list, m, t, full)
        if found is not None:
            return load_attractor([cands[i] for i in found], index.n)
    raise AssertionError("unreachable: the greedy solution bounds the search")


def _search_subsets(masks: List[int], m: int, t: int, full: int) -> Optional[List[int]]:
    """First size-t index subset (lexicographic) whose mask union is full."""
    chosen: List[int] = []

    def rec(start: int, acc: int) -> Optional[List[int]]:
        if len(chosen) == t:
            return list(chosen) if acc == full else None
        need = t - len(chosen)
        for i in range(start, m - need + 1):
            chosen.append(i)
            out = rec(i + 1, acc | masks[i])
            if out is not None:
                return out
            chosen.pop()
        return None

    return rec(0, 0)
