"""
Comparison Service

Responsibilities:
- Juxtapose classical PageRank and quantum ranks per node
- Top-node agreement, Kendall tau-b, discordant (hierarchy-violating) pairs
- Level summaries over node groups (tree generations)
"""

from itertools import combinations
from typing import Sequence

import numpy as np
from scipy import stats

from qrank.errors import DimensionError
from qrank.schemas.results import (
    ComparisonReport,
    GroupComparison,
    GroupSummary,
    NodeComparison,
    PageRankResult,
    QuantumRankResult,
)
from qrank.services.graph import validate_groups
from qrank.services.quantum_rank import group_means


def kendall_tau_b(x: np.ndarray, y: np.ndarray) -> float:
    """
    Tau-b; undefined cases (fewer than two items, or an all-tied side) give 0.
    """
    if len(x) < 2:
        return 0.0
    if np.all(x == x[0]) or np.all(y == y[0]):
        return 0.0

    tau, _ = stats.kendalltau(x, y, variant="b")
    return 0.0 if np.isnan(tau) else float(tau)


def discordant_pairs(x: np.ndarray, y: np.ndarray) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i, j in combinations(range(len(x)), 2)
        if (x[i] - x[j]) * (y[i] - y[j]) < 0
    ]


def summarize_groups(values: np.ndarray, groups: Sequence[Sequence[int]]) -> list[GroupSummary]:
    rows = []
    for k, group in enumerate(groups):
        members = values[list(group)]
        mean = float(members.mean())
        spread = float((members.max() - members.min()) / mean) if mean else 0.0
        rows.append(GroupSummary(group=k, size=len(group), mean=mean, spread=spread))
    return rows


def compare(
    c: PageRankResult,
    q: QuantumRankResult,
    groups: Sequence[Sequence[int]] | None = None,
) -> ComparisonReport:
    """
    Per-node table plus agreement statistics. With groups, tau and the
    violations are computed over group means (pairs are group indices).
    """
    classical = np.asarray(c.ranks)
    quantum = np.asarray(q.mean)

    if classical.shape != quantum.shape:
        raise DimensionError(
            f"classical ranks have {classical.shape[0]} nodes, quantum ranks {quantum.shape[0]}"
        )

    rows = [
        NodeComparison(
            node=x,
            classical=float(classical[x]),
            quantum_mean=float(quantum[x]),
            quantum_variance=float(q.variance[x]),
        )
        for x in range(classical.shape[0])
    ]

    # argmax breaks ties by lowest node index
    top_classical = int(np.argmax(classical))
    top_quantum = int(np.argmax(quantum))

    group_rows = None
    if groups is not None:
        groups = validate_groups(groups, classical.shape[0])
        x, y = group_means(classical, groups), group_means(quantum, groups)
        spreads = summarize_groups(quantum, groups)
        group_rows = [
            GroupComparison(
                group=k,
                size=len(group),
                classical=float(x[k]),
                quantum_mean=float(y[k]),
                quantum_spread=spreads[k].spread,
            )
            for k, group in enumerate(groups)
        ]
    else:
        x, y = classical, quantum

    return ComparisonReport(
        rows=rows,
        top_classical=top_classical,
        top_quantum=top_quantum,
        top_node_match=top_classical == top_quantum,
        kendall_tau=kendall_tau_b(x, y),
        hierarchy_violations=discordant_pairs(x, y),
        level="group" if groups is not None else "node",
        groups=group_rows,
    )
