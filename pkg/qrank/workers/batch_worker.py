"""
Batch rank worker.

LOGIC:
- Ranks many edge-list files, one independent output file per input
- Runs jobs in a process pool when jobs > 1
- Collects outcomes in input order so reruns produce identical listings
- A failing job is logged and reported, it never stops the others
"""

from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel

from qrank.errors import NumericalError
from qrank.schemas.graph import DirectedGraph
from qrank.schemas.run import RunConfig
from qrank.schemas.walk import WalkOperators
from qrank.services.graph_io import read_edge_list
from qrank.services.pagerank import pagerank
from qrank.services.quantum_rank import quantum_rank
from qrank.services.reporting import (
    RANK_COLUMNS,
    format_csv,
    rank_document,
    rank_rows,
    to_json,
)
from qrank.services.walk import build_operators
from qrank.utils.logging import get_logger

logger = get_logger("batch_worker")


class BatchOutcome(BaseModel):
    input_path: Path
    output_path: Optional[Path] = None
    error: Optional[str] = None
    numerical: bool = False


def output_path_for(input_path: Path, output_dir: Path, output_format: str) -> Path:
    return output_dir / f"{input_path.stem}.ranks.{output_format}"


def render_ranks(input_path: Path, config: RunConfig) -> str:
    """
    Rank one file and return the rendered table (CSV or JSON).
    """
    return render_graph_ranks(read_edge_list(input_path), config)


def render_graph_ranks(g: DirectedGraph, config: RunConfig, ops: Optional[WalkOperators] = None) -> str:
    if ops is None:
        ops = build_operators(g, config.shift_source, config.p, config.convention, config.orientation)
    q = quantum_rank(g, config.steps, config.burn_in, ops=ops)
    c = pagerank(g, p=config.p, convention=config.convention) if config.classical else None

    if config.output_format == "json":
        return to_json(rank_document(g, q, c))

    columns = RANK_COLUMNS + (["classical"] if c is not None else [])
    return format_csv(rank_rows(q, c), columns)


def run_rank_job(input_path: Path, config: RunConfig, output_dir: Path) -> BatchOutcome:
    logger.info(f"[BATCH][JOB {input_path}] Started")

    try:
        rendered = render_ranks(input_path, config)
        target = output_path_for(input_path, output_dir, config.output_format)
        target.write_text(rendered, encoding="utf-8")
        logger.info(f"[BATCH][JOB {input_path}] Written to {target}")
        return BatchOutcome(input_path=input_path, output_path=target)

    except NumericalError as e:
        logger.error(f"[BATCH][JOB {input_path}] Numerical failure: {e}")
        return BatchOutcome(input_path=input_path, error=str(e), numerical=True)

    except Exception as e:
        logger.exception(f"[BATCH][JOB {input_path}] Failed: {e}")
        return BatchOutcome(input_path=input_path, error=str(e))


class BatchRankWorker:
    def __init__(self, jobs: int = 1):
        self.jobs = jobs

    def run(self, config: RunConfig, output_dir: Path) -> List[BatchOutcome]:
        """
        Rank every config.input_paths entry into output_dir.
        """
        output_dir.mkdir(parents=True, exist_ok=True)
        paths = list(config.input_paths)

        logger.info(f"[BATCH] Ranking {len(paths)} file(s) with {self.jobs} job(s)")

        if self.jobs == 1 or len(paths) == 1:
            outcomes = [run_rank_job(path, config, output_dir) for path in paths]
        else:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                outcomes = list(
                    pool.map(
                        run_rank_job,
                        paths,
                        [config] * len(paths),
                        [output_dir] * len(paths),
                    )
                )

        failed = sum(1 for o in outcomes if o.error)
        logger.info(f"[BATCH] Finished: {len(outcomes) - failed} ok, {failed} failed")
        return outcomes
