import argparse

from pydantic import ValidationError

from apsbench.constants import EXIT_FAILURE, EXIT_INVALID_INPUT, EXIT_OK, TABLE_K_RANGES
from apsbench.core.settings import logger
from apsbench.exc.base import ApsBenchException
from apsbench.schemas.reports import RunConfig
from apsbench.services.report_service import GAP_TABLE, ReportService


def run_config(command: str, args: argparse.Namespace) -> RunConfig:
    """
    Builds the run configuration of a report command from the parsed options.
    """
    k_range = None
    if args.k is not None:
        k_range = (args.k, args.k)
    elif args.k_min is not None or args.k_max is not None:
        default_low, default_high = TABLE_K_RANGES.get(getattr(args, "table", None) or "III")
        k_range = (
            args.k_min if args.k_min is not None else default_low,
            args.k_max if args.k_max is not None else default_high,
        )
    return RunConfig(
        command=command,
        table=getattr(args, "table", None),
        k_range=k_range,
        p=args.p,
        min_order=args.min_order,
        d_w=args.dw,
        samples=args.samples,
        seed=args.seed,
        output_format=args.format,
        out=args.out,
    )


def cmd_table(args: argparse.Namespace) -> int:
    """
    Reproduces one of the ratio tables I-IV.

    Args:
        args (argparse.Namespace): Parsed options.

    Returns:
        int: Exit code.
    """
    logger.info(f"Table {args.table} requested")
    try:
        config = run_config("table", args)
        service = ReportService(config)
        report = service.build_table(str(config.table))
        service.write(service.render(report, config.output_format))
        logger.info(f"Table {args.table} finished with {len(report.rows)} rows")
        return EXIT_OK
    except ValidationError as e:
        logger.warning(f"Invalid table options: {e.errors()[0]['msg']}")
        return EXIT_INVALID_INPUT
    except ApsBenchException as e:
        logger.warning(f"Table {args.table} rejected: {e.message}")
        return EXIT_INVALID_INPUT
    except OSError as e:
        logger.warning(f"Could not write report: {e}")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Unhandled exception during table {args.table}: {str(e)}")
        return EXIT_FAILURE


def cmd_gap(args: argparse.Namespace) -> int:
    """
    Reports the signed gaps between shifted matching ratios and FED energy ratios, unweighted and weighted.

    Negative gaps are flagged in the report and in the log; they do not change the exit code.
    """
    logger.info(f"Gap report requested with d_w={args.dw}")
    try:
        config = run_config("gap", args)
        service = ReportService(config)
        report = service.build_table(GAP_TABLE)
        service.write(service.render(report, config.output_format))
        flagged = [row.k for row in report.rows if row.violation_candidate]
        if flagged:
            logger.warning(f"VIOLATION CANDIDATES at k={flagged}: inspect these instances")
        else:
            logger.info(f"All {2 * len(report.rows)} gaps are positive")
        return EXIT_OK
    except ValidationError as e:
        logger.warning(f"Invalid gap options: {e.errors()[0]['msg']}")
        return EXIT_INVALID_INPUT
    except ApsBenchException as e:
        logger.warning(f"Gap report rejected: {e.message}")
        return EXIT_INVALID_INPUT
    except OSError as e:
        logger.warning(f"Could not write report: {e}")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Unhandled exception during gap report: {str(e)}")
        return EXIT_FAILURE
