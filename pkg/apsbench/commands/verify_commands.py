import argparse

from apsbench.constants import EXIT_FAILURE, EXIT_INVALID_INPUT, EXIT_OK
from apsbench.core.settings import logger
from apsbench.exc.base import ApsBenchException
from apsbench.exc.verification import InvalidSuiteSizeException
from apsbench.services.verification_service import VerificationService

GRAPHS_PER_SAMPLE = 40
MAX_LISTED_FAILURES = 20


def cmd_verify(args: argparse.Namespace) -> int:
    """
    Runs the verification suites and prints one line per suite.

    Args:
        args (argparse.Namespace): Parsed options max_n, samples, graphs, assignments, bound_graphs, seed
            and inject_fault.

    Returns:
        int: 0 when every check passes, 2 for invalid suite sizes, 1 otherwise.
    """
    graphs = GRAPHS_PER_SAMPLE * args.samples if args.graphs is None else args.graphs
    logger.info(f"Verification requested: max_n={args.max_n}, graphs={graphs}, seed={args.seed}")
    try:
        service = VerificationService(
            max_n=args.max_n,
            graphs=graphs,
            seed=args.seed,
            fault=args.inject_fault,
            assignments=args.assignments,
            bound_graphs=args.bound_graphs,
        )
        summary = service.run()
    except InvalidSuiteSizeException as e:
        logger.warning(f"Invalid verification options: {e.message}")
        return EXIT_INVALID_INPUT
    except ApsBenchException as e:
        logger.warning(f"Verification aborted: {e.message}")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Unhandled exception during verification: {str(e)}")
        return EXIT_FAILURE
    for result in summary.results:
        status = "ok" if result.passed else f"{len(result.failures)} failed"
        print(f"{result.name}: {result.checked} checks, {status}")
    if summary.passed:
        print(f"all {summary.checked} checks passed")
        return EXIT_OK
    failures = summary.failures
    print(f"{len(failures)} of {summary.checked} checks failed")
    for failure in failures[:MAX_LISTED_FAILURES]:
        print(f"  {failure}")
    return EXIT_FAILURE
