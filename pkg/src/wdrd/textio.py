"""Plain-text digraph format.

First non-comment line ``n m``, then ``m`` lines ``u v`` (one arc each).
Lines starting with ``#`` are comments. An edge is written as two arc lines.
"""
from __future__ import annotations

from .graph import Digraph, GraphError, new_digraph


class FormatError(GraphError):
    pass


def dumps(g: Digraph) -> str:
    arcs = g.arcs()
    lines = [f"{g.n} {len(arcs)}"]
    lines.extend(f"{u} {v}" for u, v in arcs)
    return "\n".join(lines) + "\n"


def loads(text: str) -> Digraph:
    rows = []
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise FormatError("missing 'n m' header")
    (n, m), arcs = rows[0], rows[1:]
    if len(arcs) != m:
        raise FormatError(f"header announces {m} arcs but {len(arcs)} follow")
    return new_digraph(n, arcs)


def read(path) -> Digraph:
    with open(path, encoding="ascii") as fh:
        return loads(fh.read())


def write(g: Digraph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dumps(g))
