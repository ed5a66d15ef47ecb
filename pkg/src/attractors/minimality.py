"""Minimality testing through a colored grid of attractor-successor points
and a wavelet decomposition answering "one or two distinct colors in a box".

Each suffix contributes up to two points: its nearest attractor position at
distance D and the one after that, both colored by the attractor position
they refer to. An edge e leaves position c removable unless some box query
[l_e..r_e] x [0..lam(e)-1] sees c as its only color.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .attractor_model import AttractorSet
from .errors import ParameterError
from .text_index import SuffixIndex
from .verifier import Verdict, is_k_attractor


@dataclass
class ColoredGrid:
    """Rank-reduced point set: x and y coordinates are each a permutation
    of [1..v]. Colors are dense ids [1..|Gamma|] in position order.
    """

    points: List[Tuple[int, int, int]]  # (original x = SA rank, original y, color)
    v: int
    xs: List[int]  # original x keys sorted by (x, y)
    ys: List[int]  # original y keys sorted by (y, x)
    color_position: List[int]  # color id -> attractor position (index 0 dummy)

    def reduce_x_range(self, x_lo: int, x_hi: int) -> Tuple[int, int]:
        return bisect_left(self.xs, x_lo) + 1, bisect_right(self.xs, x_hi)

    def reduce_y_range(self, y_lo: int, y_hi: int) -> Tuple[int, int]:
        return bisect_left(self.ys, y_lo) + 1, bisect_right(self.ys, y_hi)


class _WaveletNode:
    __slots__ = ("a", "b", "mid", "right_rank", "colors", "flips", "left", "right")

    def __init__(self, a: int, b: int, values: List[int], colors: List[int]):
        self.a = a
        self.b = b
        self.colors = colors
        # flips[i] = number of adjacent color changes among the first i colors
        flips = [0] * (len(colors) + 1)
        for i in range(2, len(colors) + 1):
            flips[i] = flips[i - 1] + (colors[i - 1] != colors[i - 2])
        self.flips = flips
        if a == b:
            self.mid = a
            self.right_rank = None
            self.left = None
            self.right = None
            return
        mid = (a + b) // 2
        self.mid = mid
        rr = [0] * (len(values) + 1)
        lv: List[int] = []
        lc: List[int] = []
        rv: List[int] = []
        rc: List[int] = []
        for i, (val, col) in enumerate(zip(values, colors), start=1):
            if val > mid:
                rv.append(val)
                rc.append(col)
            else:
                lv.append(val)
                lc.append(col)
            rr[i] = len(rv)
        self.right_rank = rr
        self.left = _WaveletNode(a, mid, lv, lc)
        self.right = _WaveletNode(mid + 1, b, rv, rc)

    def bits(self) -> List[int]:
        """B[1] = 0; B flips exactly where adjacent colors differ."""
        return [f & 1 for f in self.flips[1:]]


@dataclass
class ColorReport:
    kind: str  # "none" | "one" | "two"
    colors: Tuple[int, ...] = ()


@dataclass
class WaveletGrid:
    root: Optional[_WaveletNode]
    v: int


def build_grid(index: SuffixIndex, gamma: AttractorSet, k: int) -> Tuple[ColoredGrid, WaveletGrid]:
    """Points (SA rank, successor distance, color) for the first and second
    attractor successors of each suffix; distances beyond k are dropped."""
    if len(gamma) == 0:
        raise ParameterError("empty attractor set has no colors")
    n = index.n
    color_of = {p: c for c, p in enumerate(gamma.positions, start=1)}
    points: List[Tuple[int, int, int]] = []
    for r in range(1, n + 1):
        p = index.sa[r]
        s1 = gamma.successor(p)
        if s1 is None or s1 - p > k:
            continue
        points.append((r, s1 - p, color_of[s1]))
        s2 = gamma.successor(s1 + 1)
        if s2 is not None and s2 - p <= k:
            points.append((r, s2 - p, color_of[s2]))

    v = len(points)
    # equal y values are ordered by x, making both coordinates permutations
    order = sorted(range(v), key=lambda i: (points[i][1], points[i][0]))
    ry = [0] * v
    for rank, i in enumerate(order, start=1):
        ry[i] = rank
    order_x = sorted(range(v), key=lambda i: (points[i][0], points[i][1]))
    values = [ry[i] for i in order_x]
    colors = [points[i][2] for i in order_x]

    grid = ColoredGrid(
        points=points,
        v=v,
        xs=[points[i][0] for i in order_x],
        ys=[points[i][1] for i in order],
        color_position=[0] + list(gamma.positions),
    )
    root = _WaveletNode(1, v, values, colors) if v else None
    return grid, WaveletGrid(root=root, v=v)


def _first_flip(node: _WaveletNode, l: int, r: int) -> int:
    """Smallest i in (l..r] where colors[i] != colors[i-1]; caller ensures one exists."""
    f = node.flips
    target = f[l]
    lo, hi = l + 1, r
    while lo < hi:
        mid = (lo + hi) // 2
        if f[mid] > target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def two_distinct_colors(wg: WaveletGrid, x_lo: int, x_hi: int,
                        y_lo: int, y_hi: int) -> ColorReport:
    """Up to two distinct point colors in the reduced-coordinate box."""
    if wg.root is None or x_lo > x_hi or y_lo > y_hi:
        return ColorReport(kind="none")
    found: List[int] = []

    stack = [(wg.root, x_lo, x_hi)]
    while stack:
        node, l, r = stack.pop()
        if node is None or l > r or y_lo > node.b or y_hi < node.a:
            continue
        if y_lo <= node.a and node.b <= y_hi:
            # canonical node: all colors of C[l..r] are in the box
            if node.flips[r] - node.flips[l] > 0:
                i = _first_flip(node, l, r)
                return ColorReport(kind="two",
                                   colors=(node.colors[i - 2], node.colors[i - 1]))
            c = node.colors[l - 1]
            if c not in found:
                found.append(c)
                if len(found) == 2:
                    return ColorReport(kind="two", colors=tuple(found))
            continue
        rr = node.right_rank
        rl, rh = rr[l - 1], rr[r]
        stack.append((node.left, l - rr[l - 1], r - rr[r]))
        stack.append((node.right, rl + 1, rh))
    if not found:
        return ColorReport(kind="none")
    return ColorReport(kind="one", colors=(found[0],))


@dataclass
class MinimalityVerdict:
    status: str  # "minimal" | "not_minimal" | "not_attractor"
    removable: Tuple[int, ...] = ()
    necessary: Tuple[int, ...] = ()
    invalid_witness: Optional[object] = None


def is_minimal_k_attractor(index: SuffixIndex, gamma: AttractorSet, k: int) -> MinimalityVerdict:
    """Minimal iff valid and every position is the unique color of some
    edge box. Removable positions are relative to the full set: peel at
    most one at a time, then re-check.
    """
    verdict: Verdict = is_k_attractor(index, gamma, k)
    if not verdict.valid:
        return MinimalityVerdict(status="not_attractor", invalid_witness=verdict.witness)
    grid, wg = build_grid(index, gamma, k)
    needed = [False] * (len(gamma) + 1)
    for e in index.universe(k):
        x_lo, x_hi = grid.reduce_x_range(e.l, e.r)
        y_lo, y_hi = grid.reduce_y_range(0, e.lam - 1)
        rep = two_distinct_colors(wg, x_lo, x_hi, y_lo, y_hi)
        if rep.kind == "one":
            needed[rep.colors[0]] = True
    necessary = tuple(grid.color_position[c] for c in range(1, len(gamma) + 1) if needed[c])
    removable = tuple(grid.color_position[c] for c in range(1, len(gamma) + 1) if not needed[c])
    if removable:
        return MinimalityVerdict(status="not_minimal", removable=removable, necessary=necessary)
    return MinimalityVerdict(status="minimal", necessary=necessary)
