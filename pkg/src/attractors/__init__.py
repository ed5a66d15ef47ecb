"""Tools for verifying, minimizing, and approximating string k-attractors.

A k-attractor of a string S is a set of positions such that every distinct
substring of length at most k has an occurrence crossing one of them. The
package verifies candidate sets in near-linear time, decides minimality,
computes minimal / greedy-approximate / exact-minimum attractors through a
set-cover view of the truncated suffix tree, and handles the sharp variant
(substrings of length exactly k), including an exact k=2 solver and a
set-cover hardness gadget generator.
"""

from .attractor_model import (AttractorSet, DArray, EquivClasses, build_d_array,
                              build_equiv_classes, load_attractor,
                              parse_attractor_text, swap_check)
from .errors import BudgetExceededError, ParameterError
from .minimality import (ColoredGrid, MinimalityVerdict, WaveletGrid, build_grid,
                         is_minimal_k_attractor, two_distinct_colors)
from .optimizer import (BucketQueue, MarkerGraph, build_marker_graph, find_minimal,
                        find_minimum, greedy_approx)
from .sharp import (BigramGraph, Gadget, SetCoverInstance, brute_force_min_k_sharp,
                    build_bigram_graph, build_gadget_attractor, gen_sharp_gadget,
                    min_2_sharp_attractor, parse_set_cover_text)
from .text_index import (RemappedText, SuffixIndex, TruncatedEdge, build_suffix_index,
                         enumerate_universe, locus_edge, pattern_range, remap_alphabet)
from .verifier import (SharpVerdict, Verdict, brute_force_is_k_attractor,
                       brute_force_min_k_attractor, edge_label, is_k_attractor,
                       is_k_sharp_attractor, report_occurrences)

__all__ = [
    "AttractorSet", "BigramGraph", "BucketQueue", "BudgetExceededError",
    "ColoredGrid", "DArray", "EquivClasses", "Gadget", "MarkerGraph",
    "MinimalityVerdict", "ParameterError", "RemappedText", "SetCoverInstance",
    "SharpVerdict", "SuffixIndex", "TruncatedEdge", "Verdict", "WaveletGrid",
    "brute_force_is_k_attractor", "brute_force_min_k_attractor",
    "brute_force_min_k_sharp", "build_bigram_graph", "build_d_array",
    "build_equiv_classes", "build_gadget_attractor", "build_grid",
    "build_marker_graph", "build_suffix_index", "edge_label",
    "enumerate_universe", "find_minimal", "find_minimum", "gen_sharp_gadget",
    "greedy_approx", "is_k_attractor", "is_k_sharp_attractor",
    "is_minimal_k_attractor", "load_attractor", "locus_edge",
    "min_2_sharp_attractor", "parse_attractor_text", "parse_set_cover_text",
    "pattern_range", "remap_alphabet", "report_occurrences", "swap_check",
    "two_distinct_colors",
]

__version__ = "1.0.0"
