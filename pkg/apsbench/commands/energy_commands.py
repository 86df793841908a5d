import argparse
import csv
import io
import sys
from pathlib import Path

from pydantic import ValidationError

from apsbench.constants import EXIT_FAILURE, EXIT_INVALID_INPUT, EXIT_OK
from apsbench.core.settings import logger
from apsbench.enums.report import OutputFormat
from apsbench.exc.base import ApsBenchException
from apsbench.schemas.energy import AngleAssignment, EdgeEnergyBreakdown
from apsbench.schemas.graphs import Graph
from apsbench.services.energy_service import EnergyService
from apsbench.services.fed_service import angles_from_fractions, assign_fractions_edge_degree, round_to_multigraph
from apsbench.services.oracle_service import build_state, dump_amplitudes
from apsbench.utils.graph_io import read_graph

BREAKDOWN_COLUMNS = ["edge", "qp", "pq", "zz", "g", "weight"]


def assignment_for(g: Graph, theta: float = None, kappa: float = None) -> AngleAssignment:
    """
    Uniform angle when theta is given, otherwise the FED rule: edge-degree fractions of the
    multi-edge rounding and cos 2theta = exp(-kappa m).
    """
    if theta is not None:
        return AngleAssignment.uniform(g.m, theta)
    return angles_from_fractions(assign_fractions_edge_degree(round_to_multigraph(g)), kappa)


def render_breakdown(breakdown: EdgeEnergyBreakdown, output_format: OutputFormat) -> str:
    """Renders the per-edge breakdown as CSV rows or a JSON document."""
    if output_format == OutputFormat.JSON:
        return breakdown.model_dump_json(indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=BREAKDOWN_COLUMNS, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for record in breakdown.edges:
        writer.writerow({key: repr(value) if isinstance(value, float) else value for key, value in record})
    return buffer.getvalue()


def cmd_energy(args: argparse.Namespace) -> int:
    """
    Evaluates the magic-state energy of one graph file.

    Args:
        args (argparse.Namespace): Parsed options graph, theta or kappa, format, out and dump_state.

    Returns:
        int: Exit code; 2 for unreadable graphs or invalid angles.
    """
    logger.info(f"Energy requested for {args.graph} (theta={args.theta}, kappa={args.kappa})")
    try:
        g = read_graph(args.graph)
        angles = assignment_for(g, theta=args.theta, kappa=args.kappa)
        breakdown = EnergyService().total_energy(g, angles)
        summary = f"n={g.n} edges={g.m} total_weight={g.total_weight()!r} total_energy={breakdown.total!r}"
        text = render_breakdown(breakdown, OutputFormat(args.format))
        if args.out:
            Path(args.out).write_text(text)
            print(summary)
        else:
            sys.stdout.write(text)
            logger.info(summary)
        if args.dump_state:
            dump_amplitudes(build_state(g.collapsed(), angles), args.dump_state)
            logger.info(f"Amplitudes written to {args.dump_state}")
        return EXIT_OK
    except ValidationError as e:
        logger.warning(f"Invalid energy options: {e.errors()[0]['msg']}")
        return EXIT_INVALID_INPUT
    except ApsBenchException as e:
        logger.warning(f"Energy evaluation rejected: {e.message}")
        return EXIT_INVALID_INPUT
    except OSError as e:
        logger.warning(f"Could not write output: {e}")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Unhandled exception during energy evaluation: {str(e)}")
        return EXIT_FAILURE
