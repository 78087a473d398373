from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from qrank.config import settings


# =====================================================
# One CLI invocation, fully resolved
# =====================================================

class RunConfig(BaseModel):
    """
    Validated command configuration. Graph-consuming commands take their
    graph from exactly one source: input file(s) or a generator spec.
    """

    command: Literal["generate", "rank", "compare", "convergence"]

    # Graph source
    input_paths: List[Path] = Field(default_factory=list)
    family: Optional[Literal["tree", "scale-free", "gnc", "cycle", "random"]] = None
    branching: int = 2
    generations: int = 5
    n: Optional[int] = None
    m: int = 1
    seed: int = 0
    edge_probability: float = 0.1

    # Walk / ranking
    steps: int = settings.DEFAULT_STEPS
    burn_in: int = settings.BURN_IN_STEPS
    window: int = settings.DEFAULT_WINDOW
    shift_source: Literal["adjacency", "google"] = settings.SHIFT_SOURCE
    orientation: Literal["source-rows", "source-columns"] = settings.SHIFT_ORIENTATION
    p: float = settings.PAGERANK_P
    convention: Literal["teleport", "damping"] = settings.PAGERANK_CONVENTION
    classical: bool = False
    by_generation: bool = False
    track: Optional[List[int]] = None

    # Output
    output_format: Literal["csv", "json"] = "csv"
    output: Optional[Path] = None
    dot: Optional[Path] = None
    dump_factors: Optional[Path] = None
    jobs: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_source(self) -> "RunConfig":
        has_files = bool(self.input_paths)
        has_family = self.family is not None

        if self.command == "generate":
            if not has_family:
                raise ValueError("generate needs a network family")
            if has_files:
                raise ValueError("generate does not read input files")
        elif has_files == has_family:
            raise ValueError("give exactly one graph source: an input file or --family")

        if len(self.input_paths) > 1 and self.command != "rank":
            raise ValueError(f"{self.command} takes a single input file")
        if self.jobs > 1 and self.command != "rank":
            raise ValueError("--jobs only applies to rank")
        if self.dump_factors is not None and len(self.input_paths) > 1:
            raise ValueError("--dump-factors needs a single graph")
        if self.by_generation and self.family != "tree":
            raise ValueError("--by-generation needs --family tree")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.burn_in < 0:
            raise ValueError("burn-in must be >= 0")

        return self
