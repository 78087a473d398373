import math
from typing import Any, Tuple

from pydantic import field_validator, model_validator

from qrank.schemas.base import FrozenModel


# =====================================================
# Edge
# =====================================================

class Edge(FrozenModel):
    src: int
    dst: int
    weight: float = 1.0


# =====================================================
# Directed graph (normalized, immutable)
# =====================================================

class DirectedGraph(FrozenModel):
    """
    Weighted digraph on nodes 0..n-1.

    Parallel edges are merged by summing their weights and the edge tuple is
    kept sorted by (src, dst), so two graphs with the same weighted links
    compare equal regardless of input order.
    """

    n: int
    edges: Tuple[Edge, ...] = ()

    @field_validator("n")
    @classmethod
    def _check_n(cls, n: int) -> int:
        if n < 1:
            raise ValueError(f"graph needs at least one node, got n={n}")
        return n

    @model_validator(mode="before")
    @classmethod
    def _normalize_edges(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data

        raw = data.get("edges") or ()
        merged: dict[tuple[int, int], float] = {}

        for item in raw:
            if isinstance(item, Edge):
                src, dst, weight = item.src, item.dst, item.weight
            elif isinstance(item, dict):
                src, dst = item["src"], item["dst"]
                weight = item.get("weight", 1.0)
            elif len(item) == 2:
                (src, dst), weight = item, 1.0
            else:
                src, dst, weight = item

            src, dst, weight = int(src), int(dst), float(weight)

            if not (weight > 0 and math.isfinite(weight)):
                raise ValueError(
                    f"edge {src}->{dst} needs a positive finite weight, got {weight}"
                )

            merged[(src, dst)] = merged.get((src, dst), 0.0) + weight

        for (src, dst), weight in merged.items():
            if not math.isfinite(weight):
                raise ValueError(f"merged weight of edge {src}->{dst} overflows")

        return {
            **data,
            "edges": tuple(
                Edge(src=s, dst=d, weight=w)
                for (s, d), w in sorted(merged.items())
            ),
        }

    @model_validator(mode="after")
    def _check_indices(self) -> "DirectedGraph":
        for e in self.edges:
            for index in (e.src, e.dst):
                if not 0 <= index < self.n:
                    raise ValueError(f"node index {index} out of range for n={self.n}")
        return self

    @property
    def edge_count(self) -> int:
        return len(self.edges)


# =====================================================
# Weighted degrees of one node
# =====================================================

class NodeDegrees(FrozenModel):
    in_weight: float
    out_weight: float

    @property
    def total(self) -> float:
        return self.in_weight + self.out_weight
