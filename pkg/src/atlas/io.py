"""Graph and metric file formats.

Graph files hold one graph: ``#`` comment lines, a header ``n m`` and ``m``
lines ``u v w``.  DIMACS shortest-path files (``p sp n m`` / ``a u v w``, 1-based)
are accepted too; the two arcs of an undirected edge collapse to one edge.
Weights are decimals or ``p/q`` rationals.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .graph import GraphError, WeightedGraph, build_graph


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphError(f"bad rational {text!r}") from exc


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("c "):
            continue
        if line == "c":
            continue
        out.append((lineno, line.split()))
    return out


def parse_graph(text: str) -> WeightedGraph:
    lines = _content_lines(text)
    if not lines:
        raise GraphError("empty graph file")
    if lines[0][1][0] == "p":
        return _parse_dimacs(lines)
    lineno, header = lines[0]
    if len(header) != 2:
        raise GraphError(f"line {lineno}: expected header 'n m'")
    n, m = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for lineno, tok in body:
        if len(tok) != 3:
            raise GraphError(f"line {lineno}: expected 'u v w'")
        edges.append((int(tok[0]), int(tok[1]), parse_rational(tok[2])))
    return build_graph(edges, n=n)


def _parse_dimacs(lines) -> WeightedGraph:
    lineno, header = lines[0]
    if len(header) != 4 or header[1] != "sp":
        raise GraphError(f"line {lineno}: expected 'p sp n m'")
    n = int(header[2])
    arcs: dict[tuple[int, int], Fraction] = {}
    for lineno, tok in lines[1:]:
        if tok[0] != "a" or len(tok) != 4:
            raise GraphError(f"line {lineno}: expected 'a u v w'")
        u, v, w = int(tok[1]) - 1, int(tok[2]) - 1, parse_rational(tok[3])
        key = (min(u, v), max(u, v))
        if key in arcs and arcs[key] != w:
            raise GraphError(f"line {lineno}: inconsistent weights for edge {key}")
        arcs[key] = w
    return build_graph([(u, v, w) for (u, v), w in sorted(arcs.items())], n=n)


def format_graph(g: WeightedGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.m}")
    for u, v, w in g.edges:
        lines.append(f"{u} {v} {w}")
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> WeightedGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: WeightedGraph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_graph(g, comment), encoding="utf-8")


def parse_metric(text: str) -> list[list[Fraction]]:
    lines = _content_lines(text)
    if not lines:
        raise GraphError("empty metric file")
    n = int(lines[0][1][0])
    rows = lines[1:]
    if len(rows) != n:
        raise GraphError(f"metric header announces {n} rows, found {len(rows)}")
    matrix = []
    for lineno, tok in rows:
        if len(tok) != n:
            raise GraphError(f"line {lineno}: expected {n} entries")
        matrix.append([parse_rational(t) for t in tok])
    return matrix


def format_metric(matrix) -> str:
    lines = [str(len(matrix))]
    lines.extend(" ".join(str(Fraction(x)) for x in row) for row in matrix)
    return "\n".join(lines) + "\n"


def read_metric(path: str | Path) -> list[list[Fraction]]:
    return parse_metric(Path(path).read_text(encoding="utf-8"))
