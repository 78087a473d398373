"""
Result serialization.

CSV columns:
    rank         node, quantum_mean, quantum_variance[, classical]
    compare      node, classical, quantum_mean, quantum_variance
    convergence  step, <label per tracked node or group>
Floats are written with repr so re-reading gives the in-memory values.

JSON documents carry "schema": 1.
"""

import csv
import io
import json
from typing import Any, Iterable, Sequence

import numpy as np

from qrank.errors import ParameterError
from qrank.schemas.graph import DirectedGraph
from qrank.schemas.results import (
    ComparisonReport,
    ConvergenceProfile,
    PageRankResult,
    QuantumRankResult,
)

SCHEMA_VERSION = 1

RANK_COLUMNS = ["node", "quantum_mean", "quantum_variance"]
COMPARE_COLUMNS = ["node", "classical", "quantum_mean", "quantum_variance"]


# ---------------------------------------------------------
# Rows
# ---------------------------------------------------------

def rank_rows(q: QuantumRankResult, c: PageRankResult | None = None) -> list[dict[str, Any]]:
    """
    One row per node, sorted by quantum mean descending (node index on ties).
    """
    order = sorted(range(q.mean.shape[0]), key=lambda x: (-q.mean[x], x))
    rows = []
    for x in order:
        row: dict[str, Any] = {
            "node": x,
            "quantum_mean": float(q.mean[x]),
            "quantum_variance": float(q.variance[x]),
        }
        if c is not None:
            row["classical"] = float(c.ranks[x])
        rows.append(row)
    return rows


def comparison_rows(report: ComparisonReport) -> list[dict[str, Any]]:
    ordered = sorted(report.rows, key=lambda r: (-r.quantum_mean, r.node))
    return [r.model_dump() for r in ordered]


# ---------------------------------------------------------
# CSV
# ---------------------------------------------------------

def _format(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_csv(
    rows: Iterable[dict[str, Any]],
    columns: Sequence[str],
    comments: Sequence[str] = (),
) -> str:
    buffer = io.StringIO()
    for comment in comments:
        buffer.write(f"# {comment}\n")

    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format(row[col]) for col in columns])
    return buffer.getvalue()


def parse_csv(text: str) -> list[dict[str, float]]:
    """
    Inverse of format_csv for numeric tables; '#' comment lines are skipped.
    """
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    reader = csv.DictReader(lines)
    return [{key: float(value) for key, value in row.items()} for row in reader]


def convergence_csv(profile: ConvergenceProfile, track: Sequence[int] | None = None) -> str:
    width = profile.running.shape[1]
    columns = list(range(width)) if track is None else list(track)
    for k in columns:
        if not 0 <= k < width:
            raise ParameterError(f"tracked column {k} out of range (0..{width - 1})")

    labels = [profile.labels[k] if profile.labels else str(k) for k in columns]

    rows = (
        {"step": t + 1, **{label: float(profile.running[t, k]) for label, k in zip(labels, columns)}}
        for t in range(profile.steps)
    )
    stable = profile.stabilization_step
    return format_csv(
        rows,
        ["step", *labels],
        comments=[f"stabilization_step: {stable if stable is not None else 'none'}",
                  f"window: {profile.window}"],
    )


# ---------------------------------------------------------
# JSON
# ---------------------------------------------------------

def graph_summary(g: DirectedGraph) -> dict[str, Any]:
    return {"n": g.n, "edges": g.edge_count}


def rank_document(
    g: DirectedGraph, q: QuantumRankResult, c: PageRankResult | None = None
) -> dict[str, Any]:
    document: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "command": "rank",
        "graph": graph_summary(g),
        "steps": q.steps,
        "burn_in": q.burn_in,
        "rows": rank_rows(q, c),
    }
    if c is not None:
        document["pagerank"] = {"iterations": c.iterations, "residual": c.residual}
    return document


def comparison_document(
    g: DirectedGraph,
    report: ComparisonReport,
    q: QuantumRankResult,
    c: PageRankResult,
    profile: ConvergenceProfile | None = None,
) -> dict[str, Any]:
    document: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "command": "compare",
        "graph": graph_summary(g),
        "steps": q.steps,
        "pagerank": {"iterations": c.iterations, "residual": c.residual},
        "top_classical": report.top_classical,
        "top_quantum": report.top_quantum,
        "top_node_match": report.top_node_match,
        "kendall_tau": report.kendall_tau,
        "level": report.level,
        "hierarchy_violations": [list(pair) for pair in report.hierarchy_violations],
        "rows": comparison_rows(report),
    }
    if report.groups is not None:
        document["groups"] = [row.model_dump() for row in report.groups]
    if profile is not None:
        document["convergence"] = convergence_document(profile)
    return document


def convergence_document(profile: ConvergenceProfile) -> dict[str, Any]:
    return {
        "schema": SCHEMA_VERSION,
        "steps": profile.steps,
        "window": profile.window,
        "stabilization_step": profile.stabilization_step,
        "labels": list(profile.labels),
        "running": np.asarray(profile.running).tolist(),
    }


def to_json(document: dict[str, Any]) -> str:
    return json.dumps(document, indent=2) + "\n"
