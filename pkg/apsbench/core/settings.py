import logging
import sys

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """
    Configuration settings for the benchmark library and its command-line surface.

    Attributes:
        THREADS (int): Maximum number of worker processes used to compute per-k table rows.
        LOG_LEVEL (str): Logging level for the root logger.
        ORACLE_MAX_QUBITS (int): Largest graph order accepted by the dense state-vector oracle.
        EIGEN_MAX_QUBITS (int): Largest graph order accepted by the dominant-eigenvalue solver.
        ZZ_ENUMERATION_MAX_T (int): Largest common neighbourhood the literal even-subset enumeration accepts.
        UNIFORM_T_TOLERANCE (float): Tolerance when checking that T-incident angles coincide.
        NORM_TOLERANCE (float): Allowed deviation of the state norm from 1 after each gate.
        IMAGINARY_TOLERANCE (float): Allowed imaginary residue of a Hermitian expectation value.
        OPTIMIZER_TOLERANCE (float): Tolerance on the parameter axis for bounded scalar searches.
        KAPPA_UPPER (float): Upper end of the decay-parameter search interval.
        GRID_POINTS (int): Number of points of the dense grids used by max-min searches.
        MAX_SWEEPS (int): Maximum number of coordinate sweeps in multi-angle optimisation.
        POWER_ITERATION_TOLERANCE (float): Convergence threshold of the shifted power iteration.
        POWER_ITERATION_MAX_ITER (int): Iteration cap of the shifted power iteration.
        WEIGHT_DENOMINATOR_LIMIT (int): Largest denominator used when rescaling weights to integers.
        CANONICAL_TIEBREAK_MAX_EDGES (int): Edge count up to which matchings are made lexicographically canonical.
        TABLE_MIN_ORDER (int): Minimal instance order for unweighted table rows.
        WEIGHTED_TABLE_MIN_ORDER (int): Minimal instance order for weighted table rows.
        DEFAULT_WEIGHT_RATIO (float): Default ratio between internal and external weights.
    """

    # Execution
    THREADS: int = 1
    LOG_LEVEL: str = "INFO"

    # Oracle
    ORACLE_MAX_QUBITS: int = 20
    EIGEN_MAX_QUBITS: int = 14
    NORM_TOLERANCE: float = 1e-12
    IMAGINARY_TOLERANCE: float = 1e-10
    POWER_ITERATION_TOLERANCE: float = 1e-10
    POWER_ITERATION_MAX_ITER: int = 200_000

    # Energy formulas
    ZZ_ENUMERATION_MAX_T: int = 24
    UNIFORM_T_TOLERANCE: float = 1e-12

    # Optimisation
    OPTIMIZER_TOLERANCE: float = 1e-10
    KAPPA_UPPER: float = 2.0
    GRID_POINTS: int = 10_000
    MAX_SWEEPS: int = 50

    # Matching
    WEIGHT_DENOMINATOR_LIMIT: int = 10**6
    CANONICAL_TIEBREAK_MAX_EDGES: int = 256

    # Tables
    TABLE_MIN_ORDER: int = 500
    WEIGHTED_TABLE_MIN_ORDER: int = 200
    DEFAULT_WEIGHT_RATIO: float = 10.0

    class Config:
        """
        Configuration for Pydantic settings.

        Attributes:
            env_prefix (str): Prefix of the environment variables overriding the defaults.
            env_file (str): Path to the .env file to load environment variables from.
        """

        env_prefix = "APSBENCH_"
        env_file = ".env"


settings = Settings()

logging.basicConfig(
    level=settings.LOG_LEVEL,
    format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    handlers=[logging.StreamHandler(sys.stderr)],
)

logger = logging.getLogger("apsbench")
