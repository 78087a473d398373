"""
Network Generators

Responsibilities:
- Reproduce the test-network families: b-ary trees, scale-free digraphs,
  growing networks with copying (GNC), directed cycles, random digraphs
- Be pure functions of (parameters, seed): no global RNG state
"""

import networkx as nx
import numpy as np

from qrank.errors import GraphError
from qrank.schemas.graph import DirectedGraph
from qrank.services.graph import from_edge_list, from_networkx
from qrank.utils.logging import get_logger

logger = get_logger(__name__)

# Dense state vectors of this size are already far beyond what the walk can evolve
MAX_NODES = 10_000_000


# =========================================================
# TREES
# =========================================================

def tree_node_count(branching: int, generations: int) -> int:
    return (branching ** (generations + 1) - 1) // (branching - 1)


def gen_tree(branching: int, generations: int) -> DirectedGraph:
    """
    Complete b-ary tree, root = node 0 (generation 0) plus L generations.

    Children of v are b*v+1 .. b*v+b; every edge points child -> parent.
    """
    if branching < 2:
        raise GraphError(f"branching must be >= 2, got {branching}")
    if generations < 1:
        raise GraphError(f"generations must be >= 1, got {generations}")

    n = tree_node_count(branching, generations)
    if n > MAX_NODES:
        raise GraphError(
            f"tree with branching={branching}, generations={generations} "
            f"has {n} nodes (limit {MAX_NODES})"
        )

    edges = [(child, (child - 1) // branching) for child in range(1, n)]
    logger.debug(f"[GEN] tree b={branching} L={generations}: {n} nodes")

    return from_edge_list(n, edges)


def tree_generations(branching: int, generations: int) -> list[list[int]]:
    """
    Node indices grouped by depth; generation g holds b**g nodes.
    """
    if branching < 2 or generations < 1:
        raise GraphError("tree needs branching >= 2 and generations >= 1")

    groups = []
    start = 0
    for g in range(generations + 1):
        size = branching ** g
        groups.append(list(range(start, start + size)))
        start += size
    return groups


# =========================================================
# SCALE-FREE (preferential attachment on indegree + 1)
# =========================================================

def gen_scale_free(n: int, m: int, seed: int) -> DirectedGraph:
    """
    Seed: m+1 mutually connected nodes. Each new node adds m outgoing edges
    to distinct existing targets drawn with probability ∝ indegree + 1.
    """
    if m < 1:
        raise GraphError(f"m must be >= 1, got {m}")
    if n <= m:
        raise GraphError(f"n must exceed m, got n={n}, m={m}")
    if n > MAX_NODES:
        raise GraphError(f"n={n} exceeds node limit {MAX_NODES}")

    rng = np.random.default_rng(seed)

    seed_nodes = m + 1
    in_degree = np.zeros(n, dtype=np.int64)

    edges = []
    for i in range(seed_nodes):
        for j in range(seed_nodes):
            if i != j:
                edges.append((i, j))
                in_degree[j] += 1

    for new_node in range(seed_nodes, n):
        weights = (in_degree[:new_node] + 1).astype(float)
        weights /= weights.sum()

        targets = rng.choice(new_node, size=m, replace=False, p=weights)
        for t in sorted(int(t) for t in targets):
            edges.append((new_node, t))
            in_degree[t] += 1

    return from_edge_list(n, edges)


# =========================================================
# GROWING NETWORK WITH COPYING
# =========================================================

def gen_gnc(n: int, seed: int) -> DirectedGraph:
    """
    Each new node picks a uniform existing target and links to it and to
    every node the target already points to.
    """
    if n < 1:
        raise GraphError(f"n must be >= 1, got {n}")
    if n > MAX_NODES:
        raise GraphError(f"n={n} exceeds node limit {MAX_NODES}")

    return from_networkx(nx.gnc_graph(n, seed=seed))


# =========================================================
# SIMPLE FAMILIES
# =========================================================

def gen_cycle(n: int) -> DirectedGraph:
    """Directed ring i -> (i+1) mod n."""
    if n < 2:
        raise GraphError(f"cycle needs n >= 2, got {n}")

    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def gen_random(n: int, p: float, seed: int) -> DirectedGraph:
    """Directed G(n, p) without self-loops."""
    if n < 1:
        raise GraphError(f"n must be >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")

    return from_networkx(nx.gnp_random_graph(n, p, seed=seed, directed=True))
