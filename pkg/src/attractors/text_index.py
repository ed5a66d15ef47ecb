"""Suffix-based structures: alphabet remapping, suffix array, LCP,
suffix-tree topology, truncated-edge enumeration, and locus lookup.

Conventions used throughout the package:

* positions and array indices are 1-based (index 0 of the stored lists is
  a dummy), matching the usual string-index convention;
* no terminator sentinel is appended, so a suffix that is a proper prefix
  of another sorts first;
* the suffix tree is the LCP-interval tree over all n suffixes. A suffix
  that ends exactly at an internal node does not get a zero-length leaf
  edge; its SA rank still belongs to the node's interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class RemappedText:
    """Input text over the dense alphabet [1..sigma]."""

    symbols: Tuple[int, ...]
    sigma: int
    original_to_code: Dict[object, int]

    def __len__(self) -> int:
        return len(self.symbols)


def remap_alphabet(raw) -> RemappedText:
    """Map input symbols to [1..sigma] by order of first occurrence.

    Accepts str, bytes, or any sequence of hashable symbols. The mapping
    is injective, so a position set is a k-attractor for the output iff
    it is one for the input.
    """
    if len(raw) == 0:
        raise ParameterError("empty text")
    codes: Dict[object, int] = {}
    out = []
    for ch in raw:
        code = codes.get(ch)
        if code is None:
            code = len(codes) + 1
            codes[ch] = code
        out.append(code)
    return RemappedText(symbols=tuple(out), sigma=len(codes), original_to_code=codes)


@dataclass
class TruncatedEdge:
    """A suffix-tree edge e with SA interval <l, r> and string depth lam.

    `lam` is the string depth of the first character on the edge label
    (parent depth + 1); `node` identifies the child node below the edge.
    """

    id: int
    l: int
    r: int
    lam: int
    parent_edge: Optional[int]
    node: int


class SuffixTreeTopology:
    """Explicit nodes of the LCP-interval tree plus binary-lifting tables."""

    def __init__(self, parent: List[int], depth: List[int], left: List[int],
                 right: List[int], end_node: List[int], close_order: List[int]):
        self.parent = parent
        self.depth = depth
        self.left = left
        self.right = right
        # end_node[rank] = node where the suffix of SA rank `rank` ends
        self.end_node = end_node
        # node ids in closing order: every child precedes its parent
        self.close_order = close_order
        self.root = 0
        self._up: Optional[List[List[int]]] = None

    def __len__(self) -> int:
        return len(self.parent)

    def _lift_tables(self) -> List[List[int]]:
        if self._up is None:
            up = [self.parent]
            levels = max(1, len(self.parent).bit_length())
            for _ in range(levels - 1):
                prev = up[-1]
                up.append([prev[p] if p != -1 else -1 for p in prev])
            self._up = up
        return self._up

    def node_at_depth(self, node: int, d: int) -> int:
        """Shallowest ancestor-or-self of `node` with string depth >= d."""
        up = self._lift_tables()
        v = node
        for j in range(len(up) - 1, -1, -1):
            p = up[j][v]
            if p != -1 and self.depth[p] >= d:
                v = p
        return v


class SuffixIndex:
    """Suffix array, inverse, LCP, RMQ and suffix-tree topology for one text."""

    def __init__(self, text: RemappedText):
        self.text = text
        n = len(text)
        self.n = n
        sa0 = _suffix_array(text.symbols)
        self.sa: List[int] = [0] + [p + 1 for p in sa0]
        self.isa: List[int] = [0] * (n + 1)
        for r in range(1, n + 1):
            self.isa[self.sa[r]] = r
        self.lcp: List[int] = _lcp_array(text.symbols, self.sa, self.isa)
        self.topology = _build_topology(self.sa, self.lcp, n)
        self._rmq = None
        self._universe: Dict[int, Tuple[List[TruncatedEdge], Dict[int, TruncatedEdge]]] = {}
        self._universe_np: Dict[int, Tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
        self._sa_np = None

    def sa_array(self) -> np.ndarray:
        """sa[1..n] as a cached numpy array (0-based storage: entry i is SA[i+1])."""
        if self._sa_np is None:
            self._sa_np = np.asarray(self.sa[1:], dtype=np.int64)
        return self._sa_np

    @property
    def rmq(self):
        """Range-minimum structure over the LCP array (lazy)."""
        if self._rmq is None:
            from .rmq import RangeMin

            self._rmq = RangeMin(self.lcp, start=1)
        return self._rmq

    def universe(self, k: int) -> List[TruncatedEdge]:
        """Edges of the k-truncated suffix tree, with dense stable ids."""
        return self._universe_for(k)[0]

    def edge_of_node(self, node: int, k: int) -> TruncatedEdge:
        return self._universe_for(k)[1][node]

    def _universe_for(self, k: int):
        if not 1 <= k <= self.n:
            raise ParameterError(f"k must be in [1..{self.n}], got {k}")
        cached = self._universe.get(k)
        if cached is not None:
            return cached
        topo = self.topology
        edges: List[TruncatedEdge] = []
        by_node: Dict[int, TruncatedEdge] = {}
        for v in range(len(topo)):
            p = topo.parent[v]
            if p == -1:
                continue
            lam = topo.depth[p] + 1
            if lam <= k:
                e = TruncatedEdge(id=len(edges), l=topo.left[v], r=topo.right[v],
                                  lam=lam, parent_edge=None, node=v)
                edges.append(e)
                by_node[v] = e
        for e in edges:
            p = topo.parent[e.node]
            if p != topo.root:
                e.parent_edge = by_node[p].id
        self._universe[k] = (edges, by_node)
        return self._universe[k]

    def universe_arrays(self, k: int):
        """(l, r, lam, node) of the k-universe as numpy arrays.

        Computed straight from the topology arrays; entry order matches
        the dense edge ids of universe(k) without materializing the edge
        objects.
        """
        if k not in self._universe_np:
            topo = self.topology
            parent = np.asarray(topo.parent, dtype=np.int64)
            depth = np.asarray(topo.depth, dtype=np.int64)
            lam_all = np.where(parent >= 0, depth[parent] + 1, 0)
            nodes = np.nonzero((parent >= 0) & (lam_all <= k))[0]
            left = np.asarray(topo.left, dtype=np.int64)
            right = np.asarray(topo.right, dtype=np.int64)
            self._universe_np[k] = (left[nodes], right[nodes], lam_all[nodes], nodes)
        return self._universe_np[k]

    def edge_at(self, k: int, edge_id: int) -> TruncatedEdge:
        """Single universe edge by id, without building the full edge list."""
        if k in self._universe:
            return self._universe[k][0][edge_id]
        l, r, lam, nodes = self.universe_arrays(k)
        v = int(nodes[edge_id])
        p = self.topology.parent[v]
        parent_edge = None
        if p != self.topology.root:
            parent_edge = int(np.searchsorted(nodes, p))
        return TruncatedEdge(id=edge_id, l=int(l[edge_id]), r=int(r[edge_id]),
                             lam=int(lam[edge_id]), parent_edge=parent_edge, node=v)


def build_suffix_index(text: RemappedText) -> SuffixIndex:
    if len(text) == 0:
        raise ParameterError("empty text")
    return SuffixIndex(text)


def enumerate_universe(index: SuffixIndex, k: int) -> List[TruncatedEdge]:
    """All suffix-tree edges with string depth lam <= k."""
    return index.universe(k)


def locus_edge(index: SuffixIndex, i: int, depth: int) -> TruncatedEdge:
    """The edge on which the path labeled S[i..i+d-1] ends, d = min(depth, n-i+1)."""
    n = index.n
    if not 1 <= i <= n:
        raise ParameterError(f"position {i} out of range [1..{n}]")
    if depth < 1:
        raise ParameterError(f"depth must be positive, got {depth}")
    d = min(depth, n - i + 1)
    topo = index.topology
    v = topo.node_at_depth(topo.end_node[index.isa[i]], d)
    # the edge id is dense within the universe of the requested depth
    return index.edge_of_node(v, min(depth, n))


def pattern_range(index: SuffixIndex, i: int, j: int) -> Tuple[int, int]:
    """SA interval of the suffixes prefixed by S[i..j]."""
    n = index.n
    if not 1 <= i <= j <= n:
        raise ParameterError(f"invalid pattern range [{i}..{j}] for n={n}")
    topo = index.topology
    v = topo.node_at_depth(topo.end_node[index.isa[i]], j - i + 1)
    return topo.left[v], topo.right[v]


# -- construction helpers ---------------------------------------------------

_NUMPY_SA_THRESHOLD = 512


def _suffix_array(symbols: Sequence[int]) -> List[int]:
    """0-based suffix array; proper prefixes sort before their extensions."""
    n = len(symbols)
    if n <= _NUMPY_SA_THRESHOLD:
        return sorted(range(n), key=lambda p: symbols[p:])
    return _suffix_array_doubling(symbols)


def _suffix_array_doubling(symbols: Sequence[int]) -> List[int]:
    a = np.asarray(symbols, dtype=np.int64)
    n = len(a)
    rank = np.unique(a, return_inverse=True)[1].astype(np.int64)
    span = 1
    while True:
        # key2 = rank of the suffix `span` positions ahead, -1 past the end
        key2 = np.full(n, -1, dtype=np.int64)
        key2[: n - span] = rank[span:]
        order = np.lexsort((key2, rank))
        pair = rank[order] * (n + 1) + key2[order] + 1
        newrank = np.empty(n, dtype=np.int64)
        newrank[order] = np.cumsum(np.concatenate(([0], np.diff(pair) != 0)))
        rank = newrank
        if rank[order[-1]] == n - 1:
            return order.tolist()
        span *= 2


def _lcp_array(symbols: Sequence[int], sa: List[int], isa: List[int]) -> List[int]:
    """Kasai's algorithm; lcp[r] = lcp of suffixes sa[r-1], sa[r], lcp[1] = 0."""
    n = len(symbols)
    lcp = [0] * (n + 1)
    h = 0
    for i in range(1, n + 1):
        r = isa[i]
        if r > 1:
            j = sa[r - 1]
            # compare suffixes i, j starting at offset h (0-based in symbols)
            while i + h <= n and j + h <= n and symbols[i + h - 1] == symbols[j + h - 1]:
                h += 1
            lcp[r] = h
        else:
            h = 0
        if h > 0:
            h -= 1
    return lcp


def _build_topology(sa: List[int], lcp: List[int], n: int) -> SuffixTreeTopology:
    """Stack-based interval sweep over SA+LCP.

    Open nodes live on the stack in increasing string depth; a node is
    closed (right boundary fixed, parent assigned) when the LCP drops
    below its depth. Suffixes whose length equals the depth of the open
    top node end there and produce no separate leaf.
    """
    parent = [-1]
    depth = [0]
    left = [1]
    right = [0]
    stack = [0]
    end_node = [0] * (n + 1)
    close_order: List[int] = []

    for i in range(1, n + 1):
        h = lcp[i]
        last = -1
        while depth[stack[-1]] > h:
            v = stack.pop()
            right[v] = i - 1
            close_order.append(v)
            if last != -1:
                parent[last] = v
            last = v
        top = stack[-1]
        if depth[top] == h:
            if last != -1:
                parent[last] = top
        else:
            u = len(depth)
            parent.append(-1)
            depth.append(h)
            left.append(left[last])
            right.append(0)
            parent[last] = u
            stack.append(u)
        slen = n - sa[i] + 1
        if slen > depth[stack[-1]]:
            leaf = len(depth)
            parent.append(-1)
            depth.append(slen)
            left.append(i)
            right.append(0)
            stack.append(leaf)
            end_node[i] = leaf
        else:
            end_node[i] = stack[-1]

    last = -1
    while stack:
        v = stack.pop()
        right[v] = n
        close_order.append(v)
        if last != -1:
            parent[last] = v
        last = v

    return SuffixTreeTopology(parent, depth, left, right, end_node, close_order)
