"""Command-line interface.

Exit codes: 0 success/valid, 1 invalid attractor or non-minimal, 2 usage
error, 3 work budget exceeded. Position output is one 1-based decimal per
line; in plain format the summary lines are prefixed with '#', so solver
output can be fed back in as an attractor file.
"""

from __future__ import annotations

import functools
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

import click

from .attractor_model import build_equiv_classes, parse_attractor_text
from .errors import BudgetExceededError, ParameterError
from .minimality import is_minimal_k_attractor
from .optimizer import build_marker_graph, find_minimal, find_minimum, greedy_approx
from .sharp import (build_bigram_graph, gen_sharp_gadget, min_2_sharp_attractor,
                    parse_set_cover_text)
from .text_index import RemappedText, build_suffix_index, remap_alphabet
from .verifier import edge_label, is_k_attractor, is_k_sharp_attractor, report_occurrences

_SUMMARY_KEYS = ("n", "sigma", "k", "universe", "candidates", "graph_edges",
                 "size", "positions", "ms")


def _load_text(path: str, integers: bool) -> RemappedText:
    data = Path(path).read_bytes()
    if integers:
        symbols = []
        for lineno, line in enumerate(data.decode().splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                symbols.append(int(line))
            except ValueError:
                raise ParameterError(f"{path}: malformed symbol on line {lineno}: {line!r}")
        return remap_alphabet(symbols)
    return remap_alphabet(data)


def _load_attractor(path: str, n: int):
    return parse_attractor_text(Path(path).read_text(), n)


def _render_symbols(text: RemappedText, codes) -> str:
    inverse = {c: o for o, c in text.original_to_code.items()}
    raw = [inverse[c] for c in codes]
    if all(isinstance(x, int) and 32 <= x < 127 for x in raw):
        return bytes(raw).decode()
    return " ".join(str(x) for x in raw)


def _emit(fmt: str, summary: dict, lines: Optional[List[str]] = None) -> None:
    if fmt == "json":
        click.echo(json.dumps({key: summary.get(key) for key in _SUMMARY_KEYS}))
        return
    for line in lines or []:
        click.echo(line)
    for p in summary.get("positions") or []:
        click.echo(p)
    for key in _SUMMARY_KEYS:
        if key == "positions":
            continue
        value = summary.get(key)
        if value is not None:
            click.echo(f"# {key} = {value}")


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BudgetExceededError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(3)
        except ParameterError as e:
            raise click.UsageError(str(e))
    return wrapper


def _common(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["plain", "json"]),
                      default="plain", show_default=True,
                      help="Output format.")(fn)
    fn = click.option("--integers", is_flag=True,
                      help="Read the text as one decimal symbol per line.")(fn)
    return _handle_errors(fn)


@click.group()
def main() -> None:
    """Verify, minimize, and approximate string k-attractors."""


@main.command()
@click.argument("text_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("attractor_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("k", type=int)
@click.option("--sharp", is_flag=True, help="Check substrings of length exactly k.")
@_common
def verify(text_file: str, attractor_file: str, k: int, sharp: bool,
           fmt: str, integers: bool) -> None:
    """Check whether the attractor file is a (sharp) k-attractor."""
    text = _load_text(text_file, integers)
    _require_k(k, len(text))
    index = build_suffix_index(text)
    gamma = _load_attractor(attractor_file, len(text))
    start = time.perf_counter()
    if sharp:
        verdict = is_k_sharp_attractor(index, gamma, k)
        witness = verdict.witness
        interval = verdict.witness_interval
    else:
        verdict = is_k_attractor(index, gamma, k)
        witness = edge_label(index, verdict.witness) if verdict.witness else None
        interval = (verdict.witness.l, verdict.witness.r) if verdict.witness else None
    ms = round((time.perf_counter() - start) * 1000, 3)
    summary = {"n": len(text), "sigma": text.sigma, "k": k,
               "size": len(gamma), "positions": list(gamma.positions), "ms": ms}
    if verdict.valid:
        _emit(fmt, summary, lines=["# valid"])
        return
    lines = ["# invalid",
             f"# witness = {_render_symbols(text, witness)}",
             f"# witness_sa_interval = {interval[0]}..{interval[1]}"]
    if fmt == "json":
        click.echo(json.dumps({**{key: summary.get(key) for key in _SUMMARY_KEYS},
                               "valid": False,
                               "witness": _render_symbols(text, witness),
                               "witness_sa_interval": list(interval)}))
    else:
        _emit(fmt, {**summary, "positions": None}, lines=lines)
    sys.exit(1)


def _require_k(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise ParameterError(f"k must be in [1..{n}], got {k}")


def _solver_summary(index, k: int, gamma, ms: float) -> dict:
    classes = build_equiv_classes(index.text, k)
    graph = build_marker_graph(index, classes, k)
    return {"n": index.n, "sigma": index.text.sigma, "k": k,
            "universe": graph.num_edges, "candidates": len(graph.candidates),
            "graph_edges": graph.size, "size": len(gamma),
            "positions": list(gamma.positions), "ms": ms}


def _run_solver(text_file: str, k: int, fmt: str, integers: bool, solve) -> None:
    text = _load_text(text_file, integers)
    _require_k(k, len(text))
    index = build_suffix_index(text)
    classes = build_equiv_classes(text, k)
    start = time.perf_counter()
    gamma = solve(index, classes)
    ms = round((time.perf_counter() - start) * 1000, 3)
    _emit(fmt, _solver_summary(index, k, gamma, ms))


@main.command("minimal-check")
@click.argument("text_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("attractor_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("k", type=int)
@_common
def minimal_check(text_file: str, attractor_file: str, k: int,
                  fmt: str, integers: bool) -> None:
    """Check whether the attractor is valid and minimal."""
    text = _load_text(text_file, integers)
    _require_k(k, len(text))
    index = build_suffix_index(text)
    gamma = _load_attractor(attractor_file, len(text))
    start = time.perf_counter()
    verdict = is_minimal_k_attractor(index, gamma, k)
    ms = round((time.perf_counter() - start) * 1000, 3)
    summary = {"n": len(text), "sigma": text.sigma, "k": k,
               "size": len(gamma), "positions": list(gamma.positions), "ms": ms}
    lines = [f"# {verdict.status}"]
    if verdict.removable:
        lines.append("# removable = " + " ".join(str(p) for p in verdict.removable))
    if fmt == "json":
        click.echo(json.dumps({**{key: summary.get(key) for key in _SUMMARY_KEYS},
                               "status": verdict.status,
                               "removable": list(verdict.removable)}))
    else:
        _emit(fmt, {**summary, "positions": None}, lines=lines)
    if verdict.status != "minimal":
        sys.exit(1)


@main.command()
@click.argument("text_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("k", type=int)
@click.option("--budget", type=int, default=None,
              help="Maximum subset evaluations (overrides ATTRACTOR_BUDGET).")
@_common
def minimum(text_file: str, k: int, budget: Optional[int],
            fmt: str, integers: bool) -> None:
    """Exact minimum k-attractor."""
    _run_solver(text_file, k, fmt, integers,
                lambda index, classes: find_minimum(index, classes, k, budget=budget))


@main.command()
@click.argument("text_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("k", type=int)
@_common
def minimal(text_file: str, k: int, fmt: str, integers: bool) -> None:
    """Minimal (irreducible) k-attractor via graph peeling."""
    _run_solver(text_file, k, fmt, integers,
                lambda index, classes: find_minimal(index, classes, k))


@main.command()
@click.argument("text_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("k", type=int)
@_common
def greedy(text_file: str, k: int, fmt: str, integers: bool) -> None:
    """Greedy set-cover approximation of a minimum k-attractor."""
    _run_solver(text_file, k, fmt, integers,
                lambda index, classes: greedy_approx(index, classes, k))


@main.command()
@click.argument("text_file", type=click.Path(exists=True, dir_okay=False))
@_common
def sharp2(text_file: str, fmt: str, integers: bool) -> None:
    """Exact minimum 2-sharp attractor via edge cover."""
    text = _load_text(text_file, integers)
    start = time.perf_counter()
    gamma = min_2_sharp_attractor(text)
    ms = round((time.perf_counter() - start) * 1000, 3)
    bg = build_bigram_graph(text)
    _emit(fmt, {"n": len(text), "sigma": text.sigma, "k": 2,
                "universe": len(bg.vertices), "candidates": None,
                "graph_edges": len(bg.edges) + len(bg.loops),
                "size": len(gamma), "positions": list(gamma.positions), "ms": ms})


@main.command()
@click.argument("text_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("attractor_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("i", type=int)
@click.argument("j", type=int)
@click.option("--limit", type=int, default=10, show_default=True,
              help="Maximum number of occurrences to report.")
@_common
def occurrences(text_file: str, attractor_file: str, i: int, j: int,
                limit: int, fmt: str, integers: bool) -> None:
    """Occurrences of S[i..j] that straddle an attractor position."""
    text = _load_text(text_file, integers)
    index = build_suffix_index(text)
    gamma = _load_attractor(attractor_file, len(text))
    start = time.perf_counter()
    out = sorted(report_occurrences(index, gamma, i, j, limit))
    ms = round((time.perf_counter() - start) * 1000, 3)
    _emit(fmt, {"n": len(text), "sigma": text.sigma, "k": j - i + 1,
                "size": len(out), "positions": out, "ms": ms})


@main.command()
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Gadget text output path (legend goes to PATH.legend). "
                   "Default: INSTANCE_FILE with a .gadget suffix.")
@click.option("--chosen", default=None,
              help="Comma-separated set indices; also print the constructed "
                   "sharp attractor for that cover.")
@_common
def gadget(instance_file: str, output: Optional[str], chosen: Optional[str],
           fmt: str, integers: bool) -> None:
    """Build the set-cover hardness gadget text for an instance file."""
    instance = parse_set_cover_text(Path(instance_file).read_text())
    start = time.perf_counter()
    g = gen_sharp_gadget(instance, instance.k)
    ms = round((time.perf_counter() - start) * 1000, 3)
    out_path = Path(output) if output else Path(instance_file).with_suffix(".gadget")
    out_path.write_text("\n".join(str(s) for s in g.text) + "\n")
    legend_path = Path(str(out_path) + ".legend")
    legend_path.write_text("\n".join(f"{code}\t{name}" for code, name in sorted(g.legend.items())) + "\n")
    positions = None
    if chosen is not None:
        try:
            picks = {int(x) for x in chosen.split(",") if x.strip()}
        except ValueError:
            raise ParameterError(f"malformed --chosen value: {chosen!r}")
        from .sharp import build_gadget_attractor

        positions = list(build_gadget_attractor(g, picks).positions)
    _emit(fmt, {"n": len(g.text), "sigma": len(g.legend), "k": g.k,
                "size": len(positions) if positions is not None else None,
                "positions": positions, "ms": ms},
          lines=[f"# gadget_text = {out_path}", f"# legend = {legend_path}",
                 f"# t = {g.t}", f"# m = {g.m}"])


@main.command()
@click.argument("text_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("k", type=int)
@_common
def stats(text_file: str, k: int, fmt: str, integers: bool) -> None:
    """Instance sizes only: universe, candidates, marker-graph edges."""
    text = _load_text(text_file, integers)
    _require_k(k, len(text))
    index = build_suffix_index(text)
    classes = build_equiv_classes(text, k)
    start = time.perf_counter()
    graph = build_marker_graph(index, classes, k)
    ms = round((time.perf_counter() - start) * 1000, 3)
    _emit(fmt, {"n": len(text), "sigma": text.sigma, "k": k,
                "universe": graph.num_edges, "candidates": len(graph.candidates),
                "graph_edges": graph.size, "ms": ms})


if __name__ == "__main__":
    main()
