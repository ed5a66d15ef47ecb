"""Sharp-attractor algorithms: exact minimum for k=2 via edge cover on the
bigram graph, an exhaustive oracle for small texts, and the set-cover
hardness gadget with its constructive attractor families.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .attractor_model import AttractorSet, load_attractor
from .errors import BudgetExceededError, ParameterError
from .optimizer import _configured_budget
from .text_index import RemappedText, build_suffix_index, remap_alphabet
from .verifier import coverage_masks, is_k_sharp_attractor


def _symbols_of(text) -> Sequence:
    return text.symbols if isinstance(text, RemappedText) else text


@dataclass
class BigramGraph:
    """Distinct 2-mers as vertices; one edge per length-3 window, annotated
    with the window's center position; boundary self-loops at positions 1
    and n. An annotated position covers exactly its incident 2-mers."""

    vertices: List[Tuple]
    edges: Dict[Tuple[Tuple, Tuple], int]  # unordered distinct pair -> min center
    loops: Dict[Tuple, int]  # vertex -> min covering loop position


def build_bigram_graph(text) -> BigramGraph:
    s = _symbols_of(text)
    n = len(s)
    if n < 2:
        raise ParameterError("no 2-mers")
    vertices: List[Tuple] = []
    seen: Set[Tuple] = set()
    for i in range(n - 1):
        b = tuple(s[i : i + 2])
        if b not in seen:
            seen.add(b)
            vertices.append(b)
    edges: Dict[Tuple[Tuple, Tuple], int] = {}
    loops: Dict[Tuple, int] = {}

    def note_loop(v: Tuple, pos: int) -> None:
        if v not in loops or pos < loops[v]:
            loops[v] = pos

    note_loop(tuple(s[0:2]), 1)
    for i in range(n - 2):
        u = tuple(s[i : i + 2])
        v = tuple(s[i + 1 : i + 3])
        center = i + 2
        if u == v:
            note_loop(u, center)
            continue
        key = (u, v) if u <= v else (v, u)
        if key not in edges or center < edges[key]:
            edges[key] = center
    note_loop(tuple(s[n - 2 : n]), n)
    return BigramGraph(vertices=vertices, edges=edges, loops=loops)


_SMALL_MATCHING_EDGES = 20


def _max_matching_small(pairs: List[Tuple[Tuple, Tuple]]) -> List[int]:
    """Exact maximum matching by branching over the edge list; only used
    for tiny graphs, where it beats blossom contraction by a wide margin."""
    best: List[int] = []
    m = len(pairs)
    used: Set[Tuple] = set()
    cur: List[int] = []

    def rec(i: int) -> None:
        nonlocal best
        if len(cur) + (m - i) <= len(best):
            return
        if i == m:
            best = list(cur)
            return
        u, v = pairs[i]
        if u not in used and v not in used:
            used.add(u)
            used.add(v)
            cur.append(i)
            rec(i + 1)
            cur.pop()
            used.discard(u)
            used.discard(v)
        rec(i + 1)

    rec(0)
    return best


def min_2_sharp_attractor(text) -> AttractorSet:
    """Minimum 2-sharp attractor via minimum edge cover of the bigram graph.

    Maximum matching on the loop-free graph, then one extra incident edge
    per unmatched vertex; vertices reachable only through self-loops take
    the loop. The Gallai identity makes the cover, hence the attractor,
    minimum.
    """
    s = _symbols_of(text)
    n = len(s)
    bg = build_bigram_graph(text)

    pairs = list(bg.edges.keys())
    matched: Set[Tuple] = set()
    positions: Set[int] = set()
    if len(pairs) <= _SMALL_MATCHING_EDGES:
        for i in _max_matching_small(pairs):
            u, v = pairs[i]
            positions.add(bg.edges[(u, v)])
            matched.add(u)
            matched.add(v)
    else:
        g = nx.Graph()
        g.add_nodes_from(bg.vertices)
        for (u, v), center in bg.edges.items():
            g.add_edge(u, v, center=center)
        for u, v in nx.max_weight_matching(g, maxcardinality=True):
            positions.add(g[u][v]["center"])
            matched.add(u)
            matched.add(v)

    incident: Dict[Tuple, int] = {}
    for (u, v), center in bg.edges.items():
        for w in (u, v):
            if w not in incident or center < incident[w]:
                incident[w] = center
    for v, pos in bg.loops.items():
        if v not in incident or pos < incident[v]:
            incident[v] = pos
    for v in bg.vertices:
        if v not in matched:
            positions.add(incident[v])

    gamma = load_attractor(positions, n)
    index = build_suffix_index(text if isinstance(text, RemappedText) else remap_alphabet(s))
    assert is_k_sharp_attractor(index, gamma, 2).valid
    return gamma


def brute_force_min_k_sharp(text, k: int, budget: Optional[int] = None) -> Tuple[int, List[int]]:
    """Exhaustive minimum k-sharp attractor for small texts."""
    s = _symbols_of(text)
    n = len(s)
    masks = coverage_masks(text, k, exact=True)
    if not masks:
        return 0, []
    limit = _configured_budget(budget)
    if 2**n - 1 > limit:
        raise BudgetExceededError(candidates=n, bound=n, budget=limit)
    for t in range(1, n + 1):
        for combo in combinations(range(1, n + 1), t):
            gmask = 0
            for p in combo:
                gmask |= 1 << (p - 1)
            if all(m & gmask for m in masks):
                return t, list(combo)
    raise AssertionError("unreachable: the full position set covers everything")


# -- set-cover gadget -------------------------------------------------------


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe [1..n_u] and sets C_1..C_m, each of size <= k."""

    n_u: int
    sets: Tuple[Tuple[int, ...], ...]
    k: int

    @property
    def m(self) -> int:
        return len(self.sets)


def parse_set_cover_text(data: str) -> SetCoverInstance:
    """Instance format: first line "n_u m k", then m lines of
    space-separated universe elements."""
    lines = [ln for ln in (raw.strip() for raw in data.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise ParameterError("empty set-cover instance")
    head = lines[0].split()
    if len(head) != 3:
        raise ParameterError(f"malformed header: {lines[0]!r}")
    try:
        n_u, m, k = (int(x) for x in head)
    except ValueError:
        raise ParameterError(f"malformed header: {lines[0]!r}")
    if len(lines) - 1 != m:
        raise ParameterError(f"expected {m} set lines, found {len(lines) - 1}")
    sets = []
    for idx, ln in enumerate(lines[1:], start=1):
        try:
            elems = sorted({int(x) for x in ln.split()})
        except ValueError:
            raise ParameterError(f"malformed set {idx}: {ln!r}")
        for e in elems:
            if not 1 <= e <= n_u:
                raise ParameterError(f"set {idx}: element {e} outside [1..{n_u}]")
        sets.append(tuple(elems))
    return SetCoverInstance(n_u=n_u, sets=tuple(sets), k=k)


@dataclass
class GadgetLayout:
    """Absolute 1-based positions of the landmarks each attractor family
    is phrased in terms of."""

    block_start: List[int]  # start of each block i (index 0 dummy)
    sep_occurrences: Dict[Tuple[int, int], List[int]]  # (i, j) -> positions
    x_first: Dict[Tuple[int, int], int]  # (i, j) -> position of the j-th element's x block


@dataclass
class Gadget:
    text: Tuple[int, ...]
    k: int
    t: int
    m: int
    layout: GadgetLayout
    legend: Dict[int, str]
    instance: SetCoverInstance


def gen_sharp_gadget(instance: SetCoverInstance, k: int) -> Gadget:
    """Text S = R * S_1 ... S_m reducing set cover to minimum k-sharp
    attractor: covering block i cheaply leaves its element strings
    uncovered, paying one extra position covers them all.
    """
    if k < 3:
        raise ParameterError(f"k must be >= 3, got {k}")
    covered: Set[int] = set()
    for idx, c in enumerate(instance.sets, start=1):
        if len(c) > k:
            raise ParameterError(f"set {idx} has {len(c)} elements, more than k={k}")
        covered.update(c)
    if covered != set(range(1, instance.n_u + 1)):
        missing = sorted(set(range(1, instance.n_u + 1)) - covered)
        raise ParameterError(f"sets do not cover the universe; missing {missing}")

    hash_sym = 1
    dollar_sym = 2

    def x_sym(u: int, j: int) -> int:
        return 2 + (u - 1) * k + j

    sep_base = 2 + instance.n_u * k
    sep_code: Dict[Tuple[int, int], int] = {}
    legend = {hash_sym: "#", dollar_sym: "$"}
    for u in range(1, instance.n_u + 1):
        for j in range(1, k + 1):
            legend[x_sym(u, j)] = f"x_{u}^({j})"
    code = sep_base
    for i, c in enumerate(instance.sets, start=1):
        for j in range(1, len(c) + 2):
            code += 1
            sep_code[(i, j)] = code
            legend[code] = f"$_{i},{j}"

    text: List[int] = []
    sep_occ: Dict[Tuple[int, int], List[int]] = {key: [] for key in sep_code}
    x_first: Dict[Tuple[int, int], int] = {}
    block_start = [0]

    def emit(sym: int) -> int:
        text.append(sym)
        return len(text)

    # R = #^k $ $ #^(k-1)
    for _ in range(k):
        emit(hash_sym)
    emit(dollar_sym)
    emit(dollar_sym)
    for _ in range(k - 1):
        emit(hash_sym)

    for i, c in enumerate(instance.sets, start=1):
        n_i = len(c)
        block_start.append(len(text) + 1)
        for j in range(1, n_i + 1):
            for _ in range(k - 1):
                emit(hash_sym)
            for jj in range(1, j + 1):
                sep_occ[(i, jj)].append(emit(sep_code[(i, jj)]))
            u = c[j - 1]
            x_first[(i, j)] = len(text) + 1
            for jj in range(1, k + 1):
                emit(x_sym(u, jj))
            sep_occ[(i, j)].append(emit(sep_code[(i, j)]))
        for _ in range(k - 1):
            emit(hash_sym)
        for jj in range(1, n_i + 2):
            sep_occ[(i, jj)].append(emit(sep_code[(i, jj)]))
        for _ in range(k - 1):
            emit(hash_sym)

    layout = GadgetLayout(block_start=block_start, sep_occurrences=sep_occ, x_first=x_first)
    t = sum(len(c) for c in instance.sets)
    return Gadget(text=tuple(text), k=k, t=t, m=instance.m, layout=layout,
                  legend=legend, instance=instance)


def build_gadget_attractor(gadget: Gadget, chosen: Set[int]) -> AttractorSet:
    """Gamma_R plus, per block, the tight 2n_i+1 family (set not chosen) or
    the universal 2n_i+2 family (set chosen); the total size is
    2t + m + |chosen| + 2.
    """
    for i in chosen:
        if not 1 <= i <= gadget.m:
            raise ParameterError(f"set index {i} outside [1..{gadget.m}]")
    k = gadget.k
    lay = gadget.layout
    positions: Set[int] = {k, k + 2}
    for i, c in enumerate(gadget.instance.sets, start=1):
        n_i = len(c)
        if i in chosen:
            for j in range(1, n_i + 1):
                positions.add(lay.x_first[(i, j)])
                positions.add(lay.sep_occurrences[(i, j)][1])
            positions.add(lay.sep_occurrences[(i, n_i + 1)][0])
            positions.add(lay.sep_occurrences[(i, 1)][-1])
        else:
            for j in range(1, n_i + 1):
                positions.add(lay.sep_occurrences[(i, j)][0])
                positions.add(lay.sep_occurrences[(i, j)][1])
            positions.add(lay.sep_occurrences[(i, n_i + 1)][0])
    return load_attractor(positions, len(gadget.text))
