"""Readers and writers for the two supported text formats.

Edge list: one ``u v`` pair per line, 0-indexed, ``#`` starts a comment.
The vertex count is ``max id + 1`` unless a ``# n <count>`` header sets it.

DIMACS: a ``p edge n m`` header, then ``e u v`` lines with 1-indexed ids.
``c`` lines are comments.

Both readers drop an edge listed a second time (in either orientation) and
reject self-loops.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import ParseError
from .graph import Graph

_HEADER_N = re.compile(r"#\s*n\s+(\d+)\s*$")


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer vertex id, got {tok!r}", lineno) from None


def _finish(n: int, pairs: list[tuple[int, int, int]]) -> Graph:
    seen = set()
    edges = []
    for u, v, lineno in pairs:
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range 0..{n - 1}", lineno)
        key = (u, v) if u < v else (v, u)
        if key not in seen:
            seen.add(key)
            edges.append(key)
    return Graph(n, edges)


def parse_edge_list(text: str) -> Graph:
    pairs = []
    n_header = None
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        hit = _HEADER_N.match(raw.strip())
        if hit:
            n_header = int(hit.group(1))
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"expected two vertex ids, got {len(toks)} fields", lineno)
        u, v = (_parse_int(t, lineno) for t in toks)
        if u < 0 or v < 0:
            raise ParseError("vertex ids must be non-negative", lineno)
        top = max(top, u, v)
        pairs.append((u, v, lineno))
    n = n_header if n_header is not None else top + 1
    return _finish(n, pairs)


def parse_dimacs(text: str) -> Graph:
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "p":
            if len(toks) != 4 or toks[1] not in ("edge", "col"):
                raise ParseError("header must read 'p edge <n> <m>'", lineno)
            if n is not None:
                raise ParseError("duplicate 'p' header", lineno)
            n = _parse_int(toks[2], lineno)
            _parse_int(toks[3], lineno)
        elif toks[0] == "e":
            if n is None:
                raise ParseError("edge line before 'p edge' header", lineno)
            if len(toks) != 3:
                raise ParseError("edge line must read 'e <u> <v>'", lineno)
            u, v = (_parse_int(t, lineno) for t in toks[1:])
            if u < 1 or v < 1:
                raise ParseError("DIMACS vertex ids start at 1", lineno)
            pairs.append((u - 1, v - 1, lineno))
        else:
            raise ParseError(f"unknown line type {toks[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge <n> <m>' header")
    return _finish(n, pairs)


def looks_like_dimacs(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("c ") or line == "c":
            continue
        return line.startswith("p ")
    return False


def read_graph(path: str | Path, fmt: str = "auto") -> Graph:
    text = Path(path).read_text()
    if fmt == "auto":
        fmt = "dimacs" if looks_like_dimacs(text) else "edgelist"
    if fmt == "dimacs":
        return parse_dimacs(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"# n {g.n}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_edge_list(g, comment))
