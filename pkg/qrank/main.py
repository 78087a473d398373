"""
Command-line entry point.

Responsibilities:
- Parse flags into a validated RunConfig
- Build or read the graph
- Dispatch to generate / rank / compare / convergence
- Map failures to exit codes: 0 ok, 1 numerical failure, 2 I/O or argument error
"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from qrank.config import settings
from qrank.errors import NumericalError, QRankError
from qrank.schemas.graph import DirectedGraph
from qrank.schemas.run import RunConfig
from qrank.schemas.walk import WalkOperators
from qrank.services.comparison import compare
from qrank.services.generators import (
    gen_cycle,
    gen_gnc,
    gen_random,
    gen_scale_free,
    gen_tree,
    tree_generations,
)
from qrank.services.graph_io import format_edge_list, read_edge_list, write_dot
from qrank.services.pagerank import pagerank
from qrank.services.quantum_rank import convergence_profile, quantum_rank
from qrank.services.reporting import (
    COMPARE_COLUMNS,
    comparison_document,
    comparison_rows,
    convergence_csv,
    convergence_document,
    format_csv,
    to_json,
)
from qrank.services.spectral import dump_factors_csv, shift_matrix, svd
from qrank.services.walk import build_operators
from qrank.utils.logging import get_logger, setup_logging
from qrank.workers.batch_worker import BatchRankWorker, render_graph_ranks

logger = get_logger("cli")

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2

FAMILIES = ["tree", "scale-free", "gnc", "cycle", "random"]

# Node counts used when --n is not given
DEFAULT_SIZES = {"scale-free": 32, "gnc": 50, "cycle": 7, "random": 20}

CSV_HELP = """
CSV columns:
  rank         node, quantum_mean, quantum_variance[, classical]
  compare      node, classical, quantum_mean, quantum_variance
  convergence  step, then one running-mean column per tracked node or group;
               leading '# stabilization_step: S' comment
Edge-list input: first line N, then 'src dst [weight]' per line, '#' comments.
"""


# =========================================================
# PARSER
# =========================================================

def _add_generator_args(parser: argparse.ArgumentParser):
    parser.add_argument("--branching", type=int, default=2, help="tree branching ratio")
    parser.add_argument("--generations", type=int, default=5, help="tree generations below the root")
    parser.add_argument("--n", type=int, default=None, help="node count (non-tree families)")
    parser.add_argument("--m", type=int, default=1, help="edges per new node (scale-free)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--edge-probability", type=float, default=0.1, help="edge probability (random)")


def _add_source_args(parser: argparse.ArgumentParser, many: bool = False):
    parser.add_argument(
        "input",
        nargs="*" if many else "?",
        type=Path,
        help="edge-list file" + ("(s)" if many else ""),
    )
    parser.add_argument("--family", choices=FAMILIES, default=None, help="generate the graph instead of reading it")
    _add_generator_args(parser)


def _add_walk_args(parser: argparse.ArgumentParser):
    parser.add_argument("--steps", type=int, default=settings.DEFAULT_STEPS)
    parser.add_argument("--burn-in", type=int, default=settings.BURN_IN_STEPS)
    parser.add_argument("--shift-source", choices=["adjacency", "google"], default=settings.SHIFT_SOURCE)
    parser.add_argument(
        "--orientation",
        choices=["source-rows", "source-columns"],
        default=settings.SHIFT_ORIENTATION,
        help="layout of the matrix fed to the SVD",
    )
    parser.add_argument("--p", type=float, default=settings.PAGERANK_P, help="PageRank parameter p")
    parser.add_argument("--convention", choices=["teleport", "damping"], default=settings.PAGERANK_CONVENTION)
    parser.add_argument("--dump-factors", type=Path, default=None, metavar="DIR",
                        help="write P, Q, U and the singular values as CSV files")


def _add_output_args(parser: argparse.ArgumentParser):
    parser.add_argument("--format", dest="output_format", choices=["csv", "json"], default="csv")
    parser.add_argument("--output", "-o", type=Path, default=None)


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrank",
        description="Rank nodes of directed networks with a directed discrete-time quantum walk.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)
    sub = parser.add_subparsers(dest="command", required=True)

    generate = sub.add_parser("generate", help="write a generated network as an edge list")
    generate.add_argument("family", choices=FAMILIES)
    _add_generator_args(generate)
    generate.add_argument("--output", "-o", type=Path, default=None)
    generate.add_argument("--dot", type=Path, default=None, help="also write a DOT file")

    rank = sub.add_parser("rank", help="quantum ranks per node", epilog=CSV_HELP,
                          formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_source_args(rank, many=True)
    _add_walk_args(rank)
    _add_output_args(rank)
    rank.add_argument("--classical", action="store_true", help="add the PageRank column")
    rank.add_argument("--jobs", type=int, default=1, help="parallel jobs over several input files")

    comp = sub.add_parser("compare", help="classical vs quantum comparison report", epilog=CSV_HELP,
                          formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_source_args(comp)
    _add_walk_args(comp)
    _add_output_args(comp)
    comp.add_argument("--by-generation", action="store_true", help="compare tree generations")
    comp.add_argument("--window", type=int, default=None,
                      help="also attach the convergence profile with this window (JSON)")

    conv = sub.add_parser("convergence", help="running-average ranks per step", epilog=CSV_HELP,
                          formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_source_args(conv)
    _add_walk_args(conv)
    _add_output_args(conv)
    conv.add_argument("--window", type=int, default=settings.DEFAULT_WINDOW)
    conv.add_argument("--by-generation", action="store_true", help="order tree generations")
    conv.add_argument("--track", type=int, nargs="+", default=None, help="columns to emit")

    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    values = vars(args).copy()
    values.pop("log_level", None)

    inputs = values.pop("input", None)
    if isinstance(inputs, Path):
        inputs = [inputs]
    values["input_paths"] = inputs or []

    # an unset --window leaves the field out so compare can tell it was not asked for
    if values.get("window") is None:
        values.pop("window", None)

    return RunConfig(**values)


# =========================================================
# GRAPH SOURCE
# =========================================================

def generate_graph(config: RunConfig) -> DirectedGraph:
    family = config.family
    n = config.n if config.n is not None else DEFAULT_SIZES.get(family or "", 0)

    if family == "tree":
        return gen_tree(config.branching, config.generations)
    if family == "scale-free":
        return gen_scale_free(n, config.m, config.seed)
    if family == "gnc":
        return gen_gnc(n, config.seed)
    if family == "cycle":
        return gen_cycle(n)
    if family == "random":
        return gen_random(n, config.edge_probability, config.seed)

    raise ValueError(f"unknown family {family!r}")


def load_graph(config: RunConfig) -> DirectedGraph:
    if config.family is not None:
        return generate_graph(config)

    path = config.input_paths[0]
    try:
        return read_edge_list(path)
    except OSError as e:
        raise OSError(f"cannot read {path}: {e.strerror or e}") from e


def groups_for(config: RunConfig) -> Optional[list[list[int]]]:
    if config.by_generation:
        return tree_generations(config.branching, config.generations)
    return None


def operators_for(g: DirectedGraph, config: RunConfig) -> WalkOperators:
    ops = build_operators(g, config.shift_source, config.p, config.convention, config.orientation)

    if config.dump_factors is not None:
        m = shift_matrix(g, config.shift_source, config.p, config.convention, config.orientation)
        dump_factors_csv(svd(m), ops.scatter, config.dump_factors)

    return ops


def emit(text: str, output: Optional[Path]):
    if output is None:
        sys.stdout.write(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
    logger.info(f"[CLI] Wrote {output}")


# =========================================================
# COMMANDS
# =========================================================

def cmd_generate(config: RunConfig) -> int:
    g = generate_graph(config)
    comment = f"{config.family} network, seed {config.seed}"
    emit(format_edge_list(g, comment), config.output)

    if config.dot is not None:
        write_dot(g, config.dot)

    summary = f"nodes: {g.n} edges: {g.edge_count}\n"
    (sys.stdout if config.output is not None else sys.stderr).write(summary)
    return EXIT_OK


def cmd_rank(config: RunConfig) -> int:
    if len(config.input_paths) > 1:
        output_dir = config.output or settings.OUTPUT_DIR
        outcomes = BatchRankWorker(config.jobs).run(config, output_dir)
        for outcome in outcomes:
            if outcome.error:
                sys.stderr.write(f"{outcome.input_path}: {outcome.error}\n")
            else:
                sys.stdout.write(f"{outcome.input_path} -> {outcome.output_path}\n")
        if any(o.numerical for o in outcomes):
            return EXIT_NUMERICAL
        return EXIT_USAGE if any(o.error for o in outcomes) else EXIT_OK

    g = load_graph(config)
    emit(render_graph_ranks(g, config, operators_for(g, config)), config.output)
    return EXIT_OK


def cmd_compare(config: RunConfig) -> int:
    g = load_graph(config)
    groups = groups_for(config)
    ops = operators_for(g, config)

    q = quantum_rank(g, config.steps, config.burn_in, ops=ops)
    c = pagerank(g, p=config.p, convention=config.convention)
    report = compare(c, q, groups)

    logger.info(
        f"[CLI] top node match: {report.top_node_match}, "
        f"kendall tau: {report.kendall_tau:.4f}, "
        f"violations: {len(report.hierarchy_violations)}"
    )

    if config.output_format == "json":
        profile = None
        if "window" in config.model_fields_set:
            profile = convergence_profile(
                g, config.steps, config.window, groups, burn_in=config.burn_in, ops=ops
            )
        emit(to_json(comparison_document(g, report, q, c, profile)), config.output)
    else:
        comments = [
            f"top_node_match: {report.top_node_match}",
            f"kendall_tau: {report.kendall_tau!r}",
            f"hierarchy_violations: {len(report.hierarchy_violations)}",
        ]
        emit(format_csv(comparison_rows(report), COMPARE_COLUMNS, comments), config.output)

    return EXIT_OK


def cmd_convergence(config: RunConfig) -> int:
    g = load_graph(config)
    groups = groups_for(config)
    ops = operators_for(g, config)

    profile = convergence_profile(
        g, config.steps, config.window, groups, burn_in=config.burn_in, ops=ops
    )

    if config.output_format == "json":
        emit(to_json(convergence_document(profile)), config.output)
    else:
        emit(convergence_csv(profile, config.track), config.output)

    stable = profile.stabilization_step
    sys.stderr.write(f"stabilization_step: {stable if stable is not None else 'none'}\n")
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "rank": cmd_rank,
    "compare": cmd_compare,
    "convergence": cmd_convergence,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)

    try:
        config = build_config(args)
        return COMMANDS[config.command](config)

    except NumericalError as e:
        sys.stderr.write(f"qrank: numerical failure: {e}\n")
        return EXIT_NUMERICAL

    except ValidationError as e:
        message = "; ".join(err["msg"] for err in e.errors())
        sys.stderr.write(f"qrank: invalid arguments: {message}\n")
        return EXIT_USAGE

    except (QRankError, ValueError, OSError) as e:
        sys.stderr.write(f"qrank: {e}\n")
        return EXIT_USAGE
