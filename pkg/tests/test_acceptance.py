"""Acceptance gate: ten end-to-end criteria, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -s` to see the lines as they
complete. Several criteria sweep exhaustive corpora and take minutes; the
stated runtime budget is asserted alongside the correctness property.
"""

import hashlib
import itertools
import json
import random
import time

from click.testing import CliRunner

import attractors as A
from attractors.cli import main as cli_main
from attractors.verifier import coverage_masks, edge_minima
from oracles import canonical_texts, harmonic, naive_marks

BINARY = "AB"


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"\n[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {detail}", flush=True)
    assert ok, f"criterion {num}: {detail}"


def _binary_texts(lo, hi):
    for n in range(lo, hi + 1):
        for bits in itertools.product(BINARY, repeat=n):
            yield "".join(bits)


def _gamma_mask(positions):
    g = 0
    for p in positions:
        g |= 1 << (p - 1)
    return g


# -- criterion 1: reference-figure fixtures ---------------------------------

def test_criterion_01_reference_fixtures(tmp_path):
    start = time.perf_counter()
    t = A.remap_alphabet("BBBABA")
    ix = A.build_suffix_index(t)
    ok = True
    for gam in ([2, 5, 6], [3, 4]):
        g = A.load_attractor(gam, 6)
        ok &= A.is_k_attractor(ix, g, 6).valid
        ok &= A.is_minimal_k_attractor(ix, g, 6).status == "minimal"
    text_file = tmp_path / "fig1.txt"
    text_file.write_bytes(b"BBBABA")
    res = CliRunner().invoke(cli_main, ["minimum", str(text_file), "6", "--format", "json"])
    ok &= res.exit_code == 0 and json.loads(res.output)["size"] == 2
    elapsed = time.perf_counter() - start
    ok &= elapsed < 1.0
    _report(1, ok, f"fixtures valid+minimal, minimum size 2 ({elapsed:.2f}s < 1s)")


# -- criterion 2: verifier == definition on the binary corpus ---------------

def test_criterion_02_verifier_oracle_equivalence():
    rng = random.Random(2)
    start = time.perf_counter()
    checks = 0
    disagreements = 0
    for n in range(2, 13):
        small_subsets = [()]
        small_subsets += [(p,) for p in range(1, n + 1)]
        small_subsets += list(itertools.combinations(range(1, n + 1), 2))
        for bits in itertools.product(BINARY, repeat=n):
            s = "".join(bits)
            t = A.remap_alphabet(s)
            ix = A.build_suffix_index(t)
            for k in range(1, n + 1):
                masks = coverage_masks(t, k)
                gammas = list(small_subsets)
                for _ in range(50):
                    m = rng.randint(0, n)
                    gammas.append(tuple(sorted(rng.sample(range(1, n + 1), m))))
                for positions in gammas:
                    g = A.AttractorSet(positions=positions, n=n)
                    got = A.is_k_attractor(ix, g, k).valid
                    gm = _gamma_mask(positions)
                    want = all(mk & gm for mk in masks)
                    checks += 1
                    if got != want:
                        disagreements += 1
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and elapsed < 300
    _report(2, ok, f"{checks} checks, {disagreements} disagreements ({elapsed:.0f}s < 300s)")


# -- criterion 3: per-edge marking test == definition scan ------------------

def test_criterion_03_per_edge_marking():
    rng = random.Random(3)
    start = time.perf_counter()
    bad = 0
    for _ in range(200):
        n = rng.randint(1, 200)
        s = "".join(rng.choice("ABCD") for _ in range(n))
        t = A.remap_alphabet(s)
        ix = A.build_suffix_index(t)
        k = rng.randint(1, n)
        g = A.load_attractor(rng.sample(range(1, n + 1), rng.randint(1, n)), n)
        gset = set(g.positions)
        mins = edge_minima(ix, A.build_d_array(ix, g, k), k)
        for e, m in zip(ix.universe(k), mins):
            marked = bool(naive_marks(t.symbols, A.edge_label(ix, e)) & gset)
            if (e.lam > m) != marked:
                bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 30
    _report(3, ok, f"200 triples, {bad} edge mismatches ({elapsed:.0f}s < 30s)")


# -- criterion 4: minimality == naive remove-one loop -----------------------

def _random_valid_gamma(rng, n, masks):
    positions = set(p for p in range(1, n + 1) if rng.random() < 0.5)
    gm = _gamma_mask(positions)
    free = [p for p in range(1, n + 1) if p not in positions]
    rng.shuffle(free)
    while not all(m & gm for m in masks):
        p = free.pop()
        positions.add(p)
        gm |= 1 << (p - 1)
    return tuple(sorted(positions))


def test_criterion_04_minimality_oracle_equivalence():
    rng = random.Random(4)
    start = time.perf_counter()
    trials = 0
    bad = 0
    for n in range(1, 13):
        for bits in itertools.product(BINARY, repeat=n):
            s = "".join(bits)
            t = A.remap_alphabet(s)
            ix = A.build_suffix_index(t)
            mask_cache = {}
            for _ in range(30):
                k = rng.randint(1, n)
                if k not in mask_cache:
                    mask_cache[k] = coverage_masks(t, k)
                masks = mask_cache[k]
                positions = _random_valid_gamma(rng, n, masks)
                g = A.AttractorSet(positions=positions, n=n)
                v = A.is_minimal_k_attractor(ix, g, k)
                removable, necessary = [], []
                for p in positions:
                    rest = _gamma_mask(q for q in positions if q != p)
                    if rest and all(m & rest for m in masks):
                        removable.append(p)
                    else:
                        necessary.append(p)
                trials += 1
                want_status = "minimal" if not removable else "not_minimal"
                if (v.status != want_status or sorted(v.removable) != removable
                        or sorted(v.necessary) != necessary):
                    bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 300
    _report(4, ok, f"{trials} trials, {bad} mismatches ({elapsed:.0f}s < 300s)")


# -- criteria 5 and 6: exact minimum and approximation bounds ---------------

_OPT_CACHE = {}


def _brute_min_size(t, k):
    key = (t.symbols, k)
    if key not in _OPT_CACHE:
        n = len(t)
        masks = coverage_masks(t, k)
        found = None
        for size in range(1, n + 1):
            for combo in itertools.combinations(range(1, n + 1), size):
                if all(m & _gamma_mask(combo) for m in masks):
                    found = size
                    break
            if found:
                break
        _OPT_CACHE[key] = found
    return _OPT_CACHE[key]


def test_criterion_05_exact_minimum_equivalence():
    start = time.perf_counter()
    bad = 0
    instances = 0
    for n in range(1, 13):
        ks = sorted({1, 2, 3, n} & set(range(1, n + 1)))
        for bits in itertools.product(BINARY, repeat=n):
            s = "".join(bits)
            t = A.remap_alphabet(s)
            ix = A.build_suffix_index(t)
            for k in ks:
                classes = A.build_equiv_classes(t, k)
                got = len(A.find_minimum(ix, classes, k))
                if got != _brute_min_size(t, k):
                    bad += 1
                instances += 1
    t = A.remap_alphabet("ABRACADABRA")
    ix = A.build_suffix_index(t)
    opt = _brute_min_size(t, 3)
    got = len(A.find_minimum(ix, A.build_equiv_classes(t, 3), 3))
    if got != opt:
        bad += 1
    instances += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 600
    _report(5, ok, f"{instances} instances, {bad} size mismatches ({elapsed:.0f}s < 600s)")


def test_criterion_06_approximation_bounds():
    start = time.perf_counter()
    bad = 0
    instances = 0
    for n in range(1, 13):
        ks = sorted({1, 2, 3, n} & set(range(1, n + 1)))
        for bits in itertools.product(BINARY, repeat=n):
            s = "".join(bits)
            t = A.remap_alphabet(s)
            ix = A.build_suffix_index(t)
            for k in ks:
                classes = A.build_equiv_classes(t, k)
                opt = _brute_min_size(t, k)
                ml = A.find_minimal(ix, classes, k)
                gr = A.greedy_approx(ix, classes, k)
                if len(ml) > k * opt or len(gr) > harmonic(k * (k + 1) // 2) * opt + 1e-9:
                    bad += 1
                if not (A.is_k_attractor(ix, ml, k).valid and A.is_k_attractor(ix, gr, k).valid):
                    bad += 1
                instances += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0
    _report(6, ok, f"{instances} instances, {bad} bound/validity violations ({elapsed:.0f}s)")


# -- criterion 7: marker graph == definition oracle -------------------------

def test_criterion_07_marker_graph_equivalence():
    start = time.perf_counter()
    bad = 0
    pairs = 0
    for n in range(1, 11):
        for bits in itertools.product(BINARY, repeat=n):
            s = "".join(bits)
            t = A.remap_alphabet(s)
            ix = A.build_suffix_index(t)
            for k in range(1, n + 1):
                classes = A.build_equiv_classes(t, k)
                graph = A.build_marker_graph(ix, classes, k)
                got = {(j, e) for j in graph.candidates for e in graph.cand_edges[j]}
                cands = set(graph.candidates)
                want = set()
                for e in ix.universe(k):
                    for j in naive_marks(t.symbols, A.edge_label(ix, e)) & cands:
                        want.add((j, e.id))
                if got != want:
                    bad += 1
                pairs += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 120
    _report(7, ok, f"{pairs} (text,k) graphs, {bad} mismatches ({elapsed:.0f}s < 120s)")


# -- criterion 8: 2-sharp exactness over the full small corpus --------------

def test_criterion_08_two_sharp_exactness():
    # Canonical texts (symbols numbered by first occurrence) cover every
    # text over alphabets of up to 4 symbols modulo renaming, which both
    # the solver and the oracle are invariant under. Oracle sizes for the
    # whole corpus were computed by gen_frozen_sharp2.py and frozen.
    import frozen_sharp2 as frozen

    start = time.perf_counter()
    h = hashlib.sha256()
    count = 0
    per_length = {}
    for n in range(2, 13):
        n_count = 0
        for symbols in canonical_texts(n, 4):
            t = A.RemappedText(symbols=symbols, sigma=max(symbols), original_to_code={})
            size = len(A.min_2_sharp_attractor(t))  # validity asserted inside
            h.update(bytes([size]))
            n_count += 1
        per_length[n] = n_count
        count += n_count
    elapsed = time.perf_counter() - start
    ok = (count == frozen.CORPUS_COUNT and per_length == frozen.PER_LENGTH
          and h.hexdigest() == frozen.SIZES_SHA256 and elapsed < 300)
    _report(8, ok, f"{count} canonical texts, size sequence digest "
                   f"{'matches' if h.hexdigest() == frozen.SIZES_SHA256 else 'DIFFERS'} "
                   f"({elapsed:.0f}s < 300s)")


# -- criterion 9: gadget forward direction ----------------------------------

def _cover_instances(max_nu, max_m, k):
    for n_u in range(1, max_nu + 1):
        universe = set(range(1, n_u + 1))
        parts = [tuple(c) for r in range(1, k + 1)
                 for c in itertools.combinations(sorted(universe), r)]
        for m in range(1, max_m + 1):
            for sets in itertools.combinations(parts, m):
                if set().union(*[set(c) for c in sets]) == universe:
                    yield A.SetCoverInstance(n_u, sets, k)


def test_criterion_09_gadget_forward_direction():
    start = time.perf_counter()
    bad = 0
    families = 0
    saw_gap_instance = False
    for inst in _cover_instances(4, 3, 3):
        g = A.gen_sharp_gadget(inst, 3)
        t = A.remap_alphabet(g.text)
        ix = A.build_suffix_index(t)
        universe = set(range(1, inst.n_u + 1))
        opt = None
        for r in range(0, inst.m + 1):
            for pick in itertools.combinations(range(1, inst.m + 1), r):
                union = set().union(*[set(inst.sets[i - 1]) for i in pick]) if pick else set()
                is_cover = union == universe
                if is_cover and opt is None:
                    opt = r
                gamma = A.build_gadget_attractor(g, set(pick))
                valid = A.is_k_sharp_attractor(ix, gamma, 3).valid
                if len(gamma) != 2 * g.t + g.m + r + 2 or valid != is_cover:
                    bad += 1
                families += 1
        if opt is not None and opt >= 2:
            saw_gap_instance = True  # no p < opt family verified valid above
    elapsed = time.perf_counter() - start
    ok = bad == 0 and saw_gap_instance and elapsed < 120
    _report(9, ok, f"{families} constructed families, {bad} violations, "
                   f"optimum gap witnessed ({elapsed:.0f}s < 120s)")


# -- criterion 10: near-linear verification scaling -------------------------

def test_criterion_10_verification_scaling():
    rng = random.Random(10)
    k = 16
    times = {}
    for n in (10**5, 10**6):
        s = bytes(rng.choice(b"ACGT") for _ in range(n))
        t = A.remap_alphabet(s)
        ix = A.build_suffix_index(t)
        ix.universe_arrays(k)
        best = float("inf")
        for _ in range(9):
            g = A.load_attractor(sorted(rng.sample(range(1, n + 1), n // 50)), n)
            t0 = time.perf_counter()
            A.is_k_attractor(ix, g, k)
            best = min(best, time.perf_counter() - t0)
        times[n] = best
    ratio = times[10**6] / times[10**5]
    ok = ratio < 15 and times[10**6] < 10
    _report(10, ok, f"verify 1e5: {times[10**5]*1000:.0f}ms, 1e6: {times[10**6]*1000:.0f}ms, "
                    f"ratio {ratio:.1f} < 15, absolute < 10s")
