import math
from itertools import combinations
from typing import List, Sequence

import numpy as np

from apsbench.core.settings import logger, settings
from apsbench.enums.quasi_complete_kind import QuasiCompleteEdgeKind
from apsbench.exc.energy import (
    AngleClassException,
    CommonNeighborhoodTooLargeException,
    EdgeKindParityMismatchException,
    UniformAnglePreconditionException,
)
from apsbench.schemas.energy import AngleAssignment, EdgeEnergyBreakdown, EdgeExpectation
from apsbench.schemas.graphs import Graph, NeighborPartition
from apsbench.utils.validation import check_angle_range, check_assignment_matches


def _angle(g: Graph, angles: AngleAssignment, a: int, b: int) -> float:
    return angles[g.edge_id(a, b)]


def expect_qp(g: Graph, angles: AngleAssignment, edge_id: int) -> float:
    """
    <Q_i P_j> = sin 2theta_ij * prod over k in K of cos 2theta_ik, K = N(i) minus j.
    """
    part = g.neighbor_partition(edge_id)
    factors = [math.cos(2 * _angle(g, angles, part.i, k)) for k in part.others_of_i]
    return math.sin(2 * angles[edge_id]) * math.prod(factors)


def expect_pq(g: Graph, angles: AngleAssignment, edge_id: int) -> float:
    """
    <P_i Q_j> = sin 2theta_ij * prod over l in L of cos 2theta_jl, L = N(j) minus i.
    """
    part = g.neighbor_partition(edge_id)
    factors = [math.cos(2 * _angle(g, angles, part.j, l)) for l in part.others_of_j]
    return math.sin(2 * angles[edge_id]) * math.prod(factors)


def _exclusive_product(g: Graph, angles: AngleAssignment, part: NeighborPartition) -> float:
    factors = [math.cos(2 * _angle(g, angles, part.i, k)) for k in part.exclusive_i]
    factors.extend(math.cos(2 * _angle(g, angles, part.j, l)) for l in part.exclusive_j)
    return math.prod(factors)


def _common_angles(g: Graph, angles: AngleAssignment, part: NeighborPartition) -> List[tuple]:
    return [(_angle(g, angles, part.i, t), _angle(g, angles, t, part.j)) for t in part.common]


def expect_zz_exact(g: Graph, angles: AngleAssignment, edge_id: int) -> float:
    """
    Computes <Z_i Z_j> exactly.

    The sum over even subsets S of T of prod_S sin sin * prod_{T-S} cos cos is evaluated in its
    factorised form (1/2)[prod_t cos 2(theta_it - theta_tj) + prod_t cos 2(theta_it + theta_tj)],
    times the cosines of the exclusive neighbourhoods. Linear in |T|.

    Args:
        g (Graph): Simple graph.
        angles (AngleAssignment): Angle per edge id.
        edge_id (int): The edge (i, j).

    Returns:
        float: <Z_i Z_j>.
    """
    part = g.neighbor_partition(edge_id)
    pairs = _common_angles(g, angles, part)
    even_sum = 0.5 * (
        math.prod(math.cos(2 * (a - b)) for a, b in pairs) + math.prod(math.cos(2 * (a + b)) for a, b in pairs)
    )
    return even_sum * _exclusive_product(g, angles, part)


def expect_zz_enumerated(g: Graph, angles: AngleAssignment, edge_id: int) -> float:
    """
    Computes <Z_i Z_j> by summing the even subsets of the common neighbourhood one by one.

    Raises:
        CommonNeighborhoodTooLargeException: If |T| exceeds `ZZ_ENUMERATION_MAX_T`.
    """
    part = g.neighbor_partition(edge_id)
    if part.t > settings.ZZ_ENUMERATION_MAX_T:
        raise CommonNeighborhoodTooLargeException(t=part.t, cap=settings.ZZ_ENUMERATION_MAX_T)
    pairs = _common_angles(g, angles, part)
    sines = [math.sin(2 * a) * math.sin(2 * b) for a, b in pairs]
    cosines = [math.cos(2 * a) * math.cos(2 * b) for a, b in pairs]
    terms = []
    for size in range(0, part.t + 1, 2):
        for subset in combinations(range(part.t), size):
            chosen = set(subset)
            terms.append(math.prod(sines[s] if s in chosen else cosines[s] for s in range(part.t)))
    return math.fsum(terms) * _exclusive_product(g, angles, part)


def expect_zz_leading(g: Graph, angles: AngleAssignment, edge_id: int) -> float:
    """
    The S = {} term of <Z_i Z_j>: a pure product of cosines. Never exceeds the exact value.
    """
    part = g.neighbor_partition(edge_id)
    common = math.prod(math.cos(2 * a) * math.cos(2 * b) for a, b in _common_angles(g, angles, part))
    return common * _exclusive_product(g, angles, part)


def uniform_t_angle(g: Graph, angles: AngleAssignment, part: NeighborPartition) -> float:
    """
    Returns the common angle of the edges joining i and j to T, or raises if they differ.

    Raises:
        UniformAnglePreconditionException: If two of those angles differ by more than `UNIFORM_T_TOLERANCE`.
    """
    values = [value for pair in _common_angles(g, angles, part) for value in pair]
    if not values:
        return 0.0
    if max(values) - min(values) > settings.UNIFORM_T_TOLERANCE:
        raise UniformAnglePreconditionException(edge_id=g.edge_id(part.i, part.j))
    return values[0]


def expect_zz_uniform_t(g: Graph, angles: AngleAssignment, edge_id: int) -> float:
    """
    <Z_i Z_j> = (1/2)[1 + (cos^2 2theta - sin^2 2theta)^t] * prod_{K-T} cos * prod_{L-T} cos,
    valid when every edge joining i or j to T carries the same angle theta.

    Raises:
        UniformAnglePreconditionException: If those angles differ.
    """
    part = g.neighbor_partition(edge_id)
    theta = uniform_t_angle(g, angles, part)
    return 0.5 * (1.0 + math.cos(4 * theta) ** part.t) * _exclusive_product(g, angles, part)


def complete_graph_zz(n: int, theta: float) -> float:
    """<Z_i Z_j> on K_n with one angle on every edge."""
    return 0.5 * (1.0 + math.cos(4 * theta) ** (n - 2))


def quasi_complete_edge_energy(kind: QuasiCompleteEdgeKind, k: int, theta: float, theta_ext: float) -> EdgeExpectation:
    """
    Closed-form expectations of an internal edge of a quasi-complete block.

    Internal edges carry `theta`, the attachment edge of the block carries `theta_ext`. Edges are
    oriented as stored by the constructor: for even_xu i is the distinguished vertex, for odd_ux
    j is w_{k+2}.

    Args:
        kind (QuasiCompleteEdgeKind): Shape of the edge inside its block.
        k (int): Degree of the block.
        theta (float): Angle of the internal edges.
        theta_ext (float): Angle of the attachment edge.

    Returns:
        EdgeExpectation: <QP>, <PQ>, <ZZ> and <g> of the edge.

    Raises:
        EdgeKindParityMismatchException: If the kind does not occur in blocks of degree k.
    """
    if kind.is_even != (k % 2 == 0) or k < 3:
        raise EdgeKindParityMismatchException(kind=kind.value, k=k)
    check_angle_range(theta)
    check_angle_range(theta_ext)
    c, s = math.cos(2 * theta), math.sin(2 * theta)
    c4, c_ext = math.cos(4 * theta), math.cos(2 * theta_ext)
    inner = s * c ** (k - 1)
    if kind == QuasiCompleteEdgeKind.EVEN_XU:
        qp, pq = s * c ** (k - 2) * c_ext, inner
        zz = 0.5 * (1 + c4 ** (k - 2)) * c_ext * c
    elif kind == QuasiCompleteEdgeKind.EVEN_UV:
        qp = pq = inner
        zz = 0.5 * (1 + c4 ** (k - 1))
    elif kind == QuasiCompleteEdgeKind.ODD_UX:
        qp, pq = inner, s * c ** (k - 2) * c_ext
        zz = 0.5 * (1 + c4 ** (k - 3)) * c_ext * c**3
    elif kind == QuasiCompleteEdgeKind.ODD_UV:
        qp = pq = inner
        zz = 0.5 * (1 + c4 ** (k - 2)) * c**2
    else:
        qp = pq = inner
        zz = 0.5 * (1 + c4 ** (k - 1))
    return EdgeExpectation.from_terms(qp=qp, pq=pq, zz=zz)


class ClassAngleEnergyModel:
    """
    Exact energy of a graph whose edges share one angle per class, as a function of the class angles.

    Every edge is reduced to a signature: its own class and, per class, how many of the edges
    entering its QP, PQ and ZZ products fall in that class. Edges with equal signatures are merged
    with summed weights, so evaluating the energy costs one numpy pass over the distinct signatures.

    Attributes:
        n_classes (int): Number of angle classes.
        weights (np.ndarray): Summed weight per distinct signature.
    """

    def __init__(self, g: Graph, classes: Sequence[int], n_classes: int):
        """
        Args:
            g (Graph): The graph; multi-edges are folded into weights.
            classes (Sequence[int]): Class index of every edge id, in 0..n_classes-1.
            n_classes (int): Number of classes.

        Raises:
            AngleClassException: If the classes do not cover every edge or an index is out of range.
        """
        if len(classes) != g.m or any(not (0 <= c < n_classes) for c in classes):
            raise AngleClassException(message=f"Need one class in 0..{n_classes - 1} for each of {g.m} edges.")
        g = g.collapsed()
        self.n_classes = n_classes
        c_count = n_classes
        rows = []
        for edge_id in range(g.m):
            part = g.neighbor_partition(edge_id)
            n_k = np.zeros(c_count, dtype=np.int64)
            n_l = np.zeros(c_count, dtype=np.int64)
            n_t = np.zeros((c_count, c_count), dtype=np.int64)
            n_x = np.zeros(c_count, dtype=np.int64)
            for k in part.others_of_i:
                n_k[classes[g.edge_id(part.i, k)]] += 1
            for l in part.others_of_j:
                n_l[classes[g.edge_id(part.j, l)]] += 1
            for t in part.common:
                n_t[classes[g.edge_id(part.i, t)], classes[g.edge_id(t, part.j)]] += 1
            for k in part.exclusive_i:
                n_x[classes[g.edge_id(part.i, k)]] += 1
            for l in part.exclusive_j:
                n_x[classes[g.edge_id(part.j, l)]] += 1
            rows.append(np.concatenate([[classes[edge_id]], n_k, n_l, n_t.ravel(), n_x]))
        edge_weights = np.array([edge.w for edge in g.edges], dtype=float)
        if rows:
            signatures, inverse = np.unique(np.array(rows), axis=0, return_inverse=True)
            self.weights = np.bincount(inverse.ravel(), weights=edge_weights, minlength=len(signatures))
        else:
            signatures = np.zeros((0, 1 + c_count * (3 + c_count)), dtype=np.int64)
            self.weights = np.zeros(0)
        offsets = np.cumsum([1, c_count, c_count, c_count * c_count])
        self.edge_class = signatures[:, 0]
        self.n_k = signatures[:, offsets[0] : offsets[1]]
        self.n_l = signatures[:, offsets[1] : offsets[2]]
        self.n_t = signatures[:, offsets[2] : offsets[3]]
        self.n_x = signatures[:, offsets[3] :]
        logger.info(f"Class-angle energy model: {g.m} edges, {len(signatures)} distinct signatures")

    @property
    def total_weight(self) -> float:
        """w(G) of the modelled graph."""
        return float(self.weights.sum())

    def energies(self, thetas: np.ndarray) -> np.ndarray:
        """
        Evaluates the energy for a batch of class-angle vectors.

        Args:
            thetas (np.ndarray): Array of shape (..., n_classes).

        Returns:
            np.ndarray: Energies of shape (...).
        """
        theta = np.asarray(thetas, dtype=float)
        cos2 = np.cos(2 * theta)[..., None, :]
        sin2 = np.sin(2 * theta)
        own = np.take(sin2, self.edge_class, axis=-1)
        qp = own * np.prod(cos2**self.n_k, axis=-1)
        pq = own * np.prod(cos2**self.n_l, axis=-1)
        shape = theta.shape[:-1] + (1, self.n_classes * self.n_classes)
        diff = np.cos(2 * (theta[..., :, None] - theta[..., None, :])).reshape(shape)
        both = np.cos(2 * (theta[..., :, None] + theta[..., None, :])).reshape(shape)
        even_sum = 0.5 * (np.prod(diff**self.n_t, axis=-1) + np.prod(both**self.n_t, axis=-1))
        zz = even_sum * np.prod(cos2**self.n_x, axis=-1)
        return (0.5 * (1.0 + qp + pq + zz)) @ self.weights

    def energy(self, thetas: Sequence[float]) -> float:
        """Exact energy at one angle per class."""
        return float(self.energies(np.asarray(thetas, dtype=float)))


class EnergyService:
    """
    Per-edge and total EPR energies of magic graph states from the closed-form expectations.
    """

    def edge_expectation(self, g: Graph, angles: AngleAssignment, edge_id: int) -> EdgeExpectation:
        """
        Evaluates the three expectations of one edge of a simple graph.

        The simplified ZZ formula is used when the edges joining the endpoints to their common
        neighbours share one angle, the factorised exact sum otherwise.
        """
        part = g.neighbor_partition(edge_id)
        try:
            uniform_t_angle(g, angles, part)
            zz = expect_zz_uniform_t(g, angles, edge_id)
        except UniformAnglePreconditionException:
            zz = expect_zz_exact(g, angles, edge_id)
        return EdgeExpectation.from_terms(
            qp=expect_qp(g, angles, edge_id),
            pq=expect_pq(g, angles, edge_id),
            zz=zz,
            edge=edge_id,
            weight=g.edges[edge_id].w,
        )

    def total_energy(self, g: Graph, angles: AngleAssignment) -> EdgeEnergyBreakdown:
        """
        Evaluates <chi|H|chi> edge by edge.

        Multi-edges are folded into one edge per vertex pair carrying the summed weight; the angle
        of the pair is the angle assigned to its edge id.

        Args:
            g (Graph): The graph.
            angles (AngleAssignment): Angle per edge id.

        Returns:
            EdgeEnergyBreakdown: Per-edge records and the weighted total.

        Raises:
            AngleAssignmentMismatchException: If the assignment does not match the edge count.
        """
        check_assignment_matches(g, angles)
        simple = g.collapsed()
        records = [self.edge_expectation(simple, angles, edge_id) for edge_id in range(simple.m)]
        total = math.fsum(record.weight * record.g for record in records)
        return EdgeEnergyBreakdown(edges=records, total=total)
