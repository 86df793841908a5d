import argparse
import sys
from pathlib import Path

from pydantic import ValidationError

from apsbench.constants import EXIT_FAILURE, EXIT_INVALID_INPUT, EXIT_OK
from apsbench.core.settings import logger
from apsbench.exc.base import ApsBenchException
from apsbench.schemas.henning_yeo import HYSpec
from apsbench.services.henning_yeo_service import HenningYeoService


def cmd_construct(args: argparse.Namespace) -> int:
    """
    Builds a Henning-Yeo instance and writes it (graph, tags, labels, layout) as JSON.

    Args:
        args (argparse.Namespace): Parsed options k, p, dw, seed and out.

    Returns:
        int: Exit code; 2 for invalid parameters.
    """
    logger.info(f"Construct requested: k={args.k}, p={args.p}, dw={args.dw}, seed={args.seed}")
    try:
        weights = {"w_internal": args.dw, "w_external": 1.0} if args.dw is not None else {}
        spec = HYSpec(k=args.k, p=args.p, base_seed=args.seed, **weights)
        instance = HenningYeoService().build(spec)
        g = instance.graph
        regular = all(degree == spec.k for degree in g.degrees())
        summary = f"k={spec.k} p={spec.p} order={g.n} edges={g.m} total_weight={g.total_weight()!r} regular={regular}"
        document = instance.model_dump_json()
        if args.out:
            Path(args.out).write_text(document)
            print(summary)
        else:
            sys.stdout.write(document + "\n")
            logger.info(summary)
        return EXIT_OK
    except ValidationError as e:
        logger.warning(f"Invalid construction parameters: {e.error_count()} errors: {e.errors()[0]['msg']}")
        return EXIT_INVALID_INPUT
    except ApsBenchException as e:
        logger.warning(f"Construction rejected: {e.message}")
        return EXIT_INVALID_INPUT
    except OSError as e:
        logger.warning(f"Could not write instance: {e}")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Unhandled exception during construction: {str(e)}")
        return EXIT_FAILURE
