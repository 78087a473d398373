"""
Graph Service

Responsibilities:
- Build normalized DirectedGraph values from raw edge lists
- Adjacency matrix with columns indexing source nodes (A[dst, src])
- Weighted in/out degree queries
- Conversion to networkx for generators and export
"""

import operator
from typing import Iterable, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import ValidationError

from qrank.errors import GraphError
from qrank.schemas.graph import DirectedGraph, NodeDegrees

EdgeTuple = Tuple[int, int] | Tuple[int, int, float]


# ---------------------------------------------------------
# Construction
# ---------------------------------------------------------

def from_edge_list(n: int, edges: Iterable[EdgeTuple]) -> DirectedGraph:
    """
    Returns a normalized graph: parallel edges merged, edges sorted.

    Raises GraphError on a non-integer or nonpositive n, out-of-range
    indices, or weights that are not positive and finite.
    """
    try:
        n = operator.index(n)
    except TypeError:
        raise GraphError(f"node count must be an integer, got {n!r}")

    try:
        return DirectedGraph(n=n, edges=tuple(edges))
    except ValidationError as e:
        message = "; ".join(err["msg"] for err in e.errors())
        raise GraphError(message) from e


def from_networkx(graph: nx.DiGraph) -> DirectedGraph:
    """
    Nodes must already be labelled 0..n-1; missing weights default to 1.0.
    """
    return from_edge_list(
        graph.number_of_nodes(),
        (
            (u, v, data.get("weight", 1.0))
            for u, v, data in graph.edges(data=True)
        ),
    )


def to_networkx(g: DirectedGraph) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(g.n))
    graph.add_weighted_edges_from((e.src, e.dst, e.weight) for e in g.edges)
    return graph


# ---------------------------------------------------------
# Queries
# ---------------------------------------------------------

def adjacency_matrix(g: DirectedGraph) -> np.ndarray:
    """
    A[r, c] = total weight of edges c -> r.

    Column sums are the weighted outdegrees.
    """
    a = np.zeros((g.n, g.n), dtype=float)
    for e in g.edges:
        a[e.dst, e.src] += e.weight
    return a


def _check_node(g: DirectedGraph, x: int):
    if not 0 <= x < g.n:
        raise GraphError(f"node index {x} out of range for n={g.n}")


def degrees(g: DirectedGraph, x: int) -> NodeDegrees:
    _check_node(g, x)

    in_weight = sum(e.weight for e in g.edges if e.dst == x)
    out_weight = sum(e.weight for e in g.edges if e.src == x)

    return NodeDegrees(in_weight=float(in_weight), out_weight=float(out_weight))


def degree_arrays(g: DirectedGraph) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vectorized weighted (in, out) degrees for every node.
    """
    a = adjacency_matrix(g)
    return a.sum(axis=1), a.sum(axis=0)


def total_weight(g: DirectedGraph) -> float:
    return float(sum(e.weight for e in g.edges))


def validate_groups(groups: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """
    Validate a node partition (or sub-partition) and return it as lists.
    """
    seen: set[int] = set()
    result: list[list[int]] = []

    for group in groups:
        members = [int(x) for x in group]
        if not members:
            raise GraphError("empty node group")
        for x in members:
            if not 0 <= x < n:
                raise GraphError(f"node index {x} out of range for n={n}")
            if x in seen:
                raise GraphError(f"node {x} appears in more than one group")
            seen.add(x)
        result.append(members)

    return result
