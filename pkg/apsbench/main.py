import argparse
import sys
from typing import List, Optional

from apsbench.commands.construct_commands import cmd_construct
from apsbench.commands.energy_commands import cmd_energy
from apsbench.commands.table_commands import cmd_gap, cmd_table
from apsbench.commands.verify_commands import cmd_verify
from apsbench.core.settings import settings
from apsbench.enums.report import OutputFormat, TableId
from apsbench.services.verification_service import FAULTS


def add_report_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=int, help="single degree to compute")
    parser.add_argument("--k-min", type=int, help="smallest degree of the range")
    parser.add_argument("--k-max", type=int, help="largest degree of the range")
    parser.add_argument("--p", type=int, help="fixed replication parameter (overrides --min-order)")
    parser.add_argument("--min-order", type=int, help="smallest instance order used for each degree")
    parser.add_argument(
        "--dw", type=float, default=settings.DEFAULT_WEIGHT_RATIO, help="internal/external weight ratio"
    )
    parser.add_argument("--samples", type=int, default=1, help="base graphs per even degree")
    parser.add_argument("--seed", type=int, default=0, help="seed of the random base graphs")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)
    parser.add_argument("--out", help="output path (stdout when omitted)")


def build_parser() -> argparse.ArgumentParser:
    """Builds the parser with one subcommand per handler in `apsbench.commands`."""
    parser = argparse.ArgumentParser(
        prog="apsbench",
        description="Test the APS conjecture on Henning-Yeo regular graphs with magic-state FED energies.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    construct = subparsers.add_parser("construct", help="build a Henning-Yeo graph")
    construct.add_argument("--k", type=int, required=True, help="degree")
    construct.add_argument("--p", type=int, required=True, help="replication parameter")
    construct.add_argument("--dw", type=float, help="weight the internal edges by this ratio")
    construct.add_argument("--seed", type=int, help="random base multigraph seed (even k); canonical base if omitted")
    construct.add_argument("--out", help="output path (stdout when omitted)")
    construct.set_defaults(handler=cmd_construct)

    table = subparsers.add_parser("table", help="reproduce a ratio table")
    table.add_argument("table", choices=[t.value for t in TableId])
    add_report_options(table)
    table.set_defaults(handler=cmd_table)

    gap = subparsers.add_parser("gap", help="signed gaps between matching and energy ratios")
    add_report_options(gap)
    gap.set_defaults(handler=cmd_gap)

    verify = subparsers.add_parser("verify", help="run the verification suites")
    verify.add_argument("--max-n", type=int, default=8, help="largest random graph order")
    verify.add_argument("--samples", type=int, default=1, help="scales the number of random graphs per suite")
    verify.add_argument("--graphs", type=int, help="random graphs per suite (overrides --samples)")
    verify.add_argument("--assignments", type=int, default=3, help="random angle assignments per graph")
    verify.add_argument("--bound-graphs", type=int, help="random graphs of the spectral bound suite")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--inject-fault", choices=FAULTS, help=argparse.SUPPRESS)
    verify.set_defaults(handler=cmd_verify)

    energy = subparsers.add_parser("energy", help="evaluate the magic-state energy of one graph")
    energy.add_argument("--graph", required=True, help="graph file (.json or edge list)")
    angle = energy.add_mutually_exclusive_group(required=True)
    angle.add_argument("--theta", type=float, help="uniform rotation angle in [0, pi/4]")
    angle.add_argument("--kappa", type=float, help="FED decay parameter")
    energy.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)
    energy.add_argument("--out", help="per-edge breakdown path (stdout when omitted)")
    energy.add_argument("--dump-state", help="write the state amplitudes as JSON to this path")
    energy.set_defaults(handler=cmd_energy)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parses argv and runs the chosen subcommand.

    Returns:
        int: The subcommand's exit code.
    """
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
