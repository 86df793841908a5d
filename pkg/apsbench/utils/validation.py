import math

from apsbench.core.settings import settings
from apsbench.exc.energy import AngleAssignmentMismatchException, AngleOutOfRangeException
from apsbench.exc.fed import InvalidFedParameterException, InvalidIntervalException
from apsbench.exc.graphs import VertexOutOfRangeException
from apsbench.exc.henning_yeo import InvalidHenningYeoSpecException
from apsbench.exc.matching import InvalidDegreeException
from apsbench.exc.oracle import QubitCapExceededException
from apsbench.schemas.energy import AngleAssignment
from apsbench.schemas.graphs import Graph


def check_vertex_in_range(v: int, n: int) -> None:
    """
    Validates that v is a vertex of a graph of order n.

    Args:
        v (int): The vertex index.
        n (int): The graph order.

    Raises:
        VertexOutOfRangeException: If v is outside 0..n-1.
    """
    if not (0 <= v < n):
        raise VertexOutOfRangeException(vertex=v, n=n)


def check_angle_range(theta: float, edge_id: int = -1) -> None:
    """
    Validates that a rotation angle lies in [0, pi/4].

    Raises:
        AngleOutOfRangeException: If the angle is outside the interval.
    """
    if not (0.0 <= theta <= math.pi / 4 + 1e-15):
        raise AngleOutOfRangeException(edge_id=edge_id, theta=theta)


def check_assignment_matches(g: Graph, angles: AngleAssignment) -> None:
    """
    Validates that an angle assignment carries exactly one angle per edge of g.

    Raises:
        AngleAssignmentMismatchException: If the lengths differ.
    """
    if len(angles) != g.m:
        raise AngleAssignmentMismatchException(expected=g.m, received=len(angles))


def check_degree_parameter(k: int) -> None:
    """
    Validates that k admits a tight matching bound: even k >= 4 or odd k >= 3.

    Raises:
        InvalidDegreeException: If k is too small.
    """
    if k < 3:
        raise InvalidDegreeException(k=k)


def check_hy_parameters(k: int, p: int) -> None:
    """
    Validates the degree and replication parameter of a Henning-Yeo construction.

    Raises:
        InvalidHenningYeoSpecException: If k < 3 or p < 1.
    """
    if k < 3 or p < 1:
        raise InvalidHenningYeoSpecException(k=k, p=p)


def check_fraction_interval(lower: float, upper: float) -> None:
    """
    Validates a matching-fraction interval.

    Args:
        lower (float): Smallest fraction (inverse of the largest edge degree).
        upper (float): Largest fraction (inverse of the smallest edge degree).

    Raises:
        InvalidIntervalException: Unless 0 <= lower <= upper <= 1.
    """
    if not (0.0 <= lower <= upper <= 1.0):
        raise InvalidIntervalException(lower=lower, upper=upper)


def check_fed_parameters(kappa: float, m: float) -> None:
    """
    Raises:
        InvalidFedParameterException: If kappa is negative or m is outside [0, 1].
    """
    if kappa < 0 or not (0.0 <= m <= 1.0):
        raise InvalidFedParameterException(
            message=f"Decay parameter {kappa} must be non-negative and fraction {m} must lie in [0, 1]."
        )


def check_qubit_cap(n: int, cap: int = None) -> None:
    """
    Validates that a dense state on n qubits stays within the configured cap.

    Args:
        n (int): Number of qubits.
        cap (int, optional): Cap to enforce. Defaults to `settings.ORACLE_MAX_QUBITS`.

    Raises:
        QubitCapExceededException: If n exceeds the cap.
    """
    cap = settings.ORACLE_MAX_QUBITS if cap is None else cap
    if n > cap:
        raise QubitCapExceededException(n=n, cap=cap)
