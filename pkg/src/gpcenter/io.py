"""Plain-text graph and profile formats.

Graph files start with a line ``n m`` followed by ``m`` lines ``u v``
(0-based). Profile files hold lines ``v w``; unlisted vertices weigh 0.
Blank lines and lines starting with ``#`` are ignored in both.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import TextIO, Union

from .errors import InputError
from .graph import Graph, Profile, Weight

Source = Union[str, Path, TextIO]


def _lines(source: Source) -> list[tuple[int, list[str]]]:
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
    else:
        text = source.read()
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line.split()))
    return out


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"line {lineno}: expected an integer, got {tok!r}") from None


def _parse_weight(tok: str, lineno: int) -> Weight:
    try:
        if "/" in tok:
            return Fraction(tok)
        val = float(tok)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"line {lineno}: bad weight {tok!r}") from None
    return int(val) if val.is_integer() and "." not in tok and "e" not in tok.lower() else val


def parse_graph(source: Source) -> Graph:
    lines = _lines(source)
    if not lines:
        raise InputError("empty graph file")
    lineno, head = lines[0]
    if len(head) != 2:
        raise InputError(f"line {lineno}: header must be 'n m'")
    n, m = (_parse_int(t, lineno) for t in head)
    body = lines[1:]
    if len(body) != m:
        raise InputError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for lineno, toks in body:
        if len(toks) != 2:
            raise InputError(f"line {lineno}: edge line must be 'u v'")
        edges.append((_parse_int(toks[0], lineno), _parse_int(toks[1], lineno)))
    return Graph(n, edges)


def parse_profile(source: Source, n: int | None = None) -> Profile:
    weights: dict[int, Weight] = {}
    for lineno, toks in _lines(source):
        if len(toks) != 2:
            raise InputError(f"line {lineno}: profile line must be 'v w'")
        v = _parse_int(toks[0], lineno)
        if n is not None and not 0 <= v < n:
            raise InputError(f"line {lineno}: vertex {v} out of range")
        if v in weights:
            raise InputError(f"line {lineno}: vertex {v} listed twice")
        weights[v] = _parse_weight(toks[1], lineno)
    return Profile(weights)


def format_graph(g: Graph) -> str:
    rows = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(rows) + "\n"


def format_profile(pi: Profile) -> str:
    return "".join(f"{v} {w}\n" for v, w in pi.weights.items())


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g))


def write_profile(pi: Profile, path: str | Path) -> None:
    Path(path).write_text(format_profile(pi))
