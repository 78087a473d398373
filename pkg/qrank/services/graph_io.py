"""
Edge-list and DOT file I/O.

Edge-list format:
    first data line      node count N
    every later line     src dst [weight]   (weight defaults to 1.0)
Blank lines and lines starting with '#' are skipped everywhere.
"""

import math
from pathlib import Path

from qrank.errors import EdgeListParseError, GraphError
from qrank.schemas.graph import DirectedGraph
from qrank.services.graph import from_edge_list


def parse_edge_list(text: str) -> DirectedGraph:
    n: int | None = None
    edges: list[tuple[int, int, float]] = []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        fields = line.split()

        if n is None:
            if len(fields) != 1:
                raise EdgeListParseError(line_number, "expected node count")
            try:
                n = int(fields[0])
            except ValueError:
                raise EdgeListParseError(
                    line_number, f"invalid node count {fields[0]!r}"
                )
            if n < 1:
                raise EdgeListParseError(line_number, f"node count must be >= 1, got {n}")
            continue

        if len(fields) not in (2, 3):
            raise EdgeListParseError(
                line_number, f"expected 'src dst [weight]', got {line!r}"
            )

        try:
            src, dst = int(fields[0]), int(fields[1])
            weight = float(fields[2]) if len(fields) == 3 else 1.0
        except ValueError:
            raise EdgeListParseError(line_number, f"malformed edge {line!r}")

        for index in (src, dst):
            if not 0 <= index < n:
                raise EdgeListParseError(
                    line_number, f"node index {index} out of range for n={n}"
                )
        if not (weight > 0 and math.isfinite(weight)):
            raise EdgeListParseError(line_number, f"weight must be positive and finite, got {weight}")

        edges.append((src, dst, weight))

    if n is None:
        raise EdgeListParseError(0, "missing node count")

    return from_edge_list(n, edges)


def read_edge_list(path: str | Path) -> DirectedGraph:
    """
    Raises OSError if the file cannot be read, EdgeListParseError on bad content.
    """
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def format_edge_list(g: DirectedGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    lines.append(str(g.n))
    # repr keeps every float digit so write -> read is exact
    lines.extend(f"{e.src} {e.dst} {e.weight!r}" for e in g.edges)
    return "\n".join(lines) + "\n"


def write_edge_list(g: DirectedGraph, path: str | Path, comment: str | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_edge_list(g, comment), encoding="utf-8")
    return path


def format_dot(g: DirectedGraph, name: str = "G") -> str:
    if not name.isidentifier():
        raise GraphError(f"invalid DOT graph name {name!r}")

    lines = [f"digraph {name} {{"]
    lines.extend(f"  {x};" for x in range(g.n))
    for e in g.edges:
        if e.weight == 1.0:
            lines.append(f"  {e.src} -> {e.dst};")
        else:
            lines.append(f'  {e.src} -> {e.dst} [weight={e.weight!r}, label="{e.weight:g}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(g: DirectedGraph, path: str | Path, name: str = "G") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_dot(g, name), encoding="utf-8")
    return path
