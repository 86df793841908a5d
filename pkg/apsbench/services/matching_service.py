from fractions import Fraction
from math import lcm
from typing import List, Optional, Tuple

import networkx as nx
import numpy as np

from apsbench.core.settings import logger, settings
from apsbench.exc.matching import InfeasibleFractionalMatchingException
from apsbench.schemas.graphs import Graph
from apsbench.schemas.matching import FractionalMatching, Matching
from apsbench.utils.validation import check_degree_parameter

FEASIBILITY_TOLERANCE = 1e-12


def integer_weights(g: Graph, limit: int = None) -> Tuple[List[int], int]:
    """
    Rescales the per-copy edge weights to integers.

    Each weight is approximated by a fraction with denominator at most `limit`; all of them are
    multiplied by the least common multiple of the denominators.

    Returns:
        Tuple[List[int], int]: Integer weight per edge id and the common scale factor.
    """
    limit = settings.WEIGHT_DENOMINATOR_LIMIT if limit is None else limit
    fractions = [Fraction(edge.w).limit_denominator(limit) for edge in g.edges]
    scale = lcm(*(f.denominator for f in fractions)) if fractions else 1
    return [int(f * scale) for f in fractions], scale


def tight_bound_value(k: int, n: int) -> Fraction:
    """
    Returns the tight lower bound on the maximum matching size of a connected k-regular graph of order n.

    Even k: (k^2 + 4) n / (2(k^2 + k + 2)). Odd k: ((k^3 - k^2 - 2) n - 2k + 2) / (2(k^3 - 3k)).

    Args:
        k (int): Degree, even k >= 4 or odd k >= 3.
        n (int): Graph order.

    Returns:
        Fraction: The bound, exact.

    Raises:
        InvalidDegreeException: If k has no tight bound.
    """
    check_degree_parameter(k)
    if k % 2 == 0:
        return Fraction((k * k + 4) * n, 2 * (k * k + k + 2))
    return Fraction((k**3 - k * k - 2) * n - 2 * k + 2, 2 * (k**3 - 3 * k))


def matching_ratios(k: int, n: Optional[int] = None) -> Tuple[Fraction, Fraction]:
    """
    Returns the matching ratio m_k and the shifted ratio of k-regular graphs attaining the tight bound.

    m_k = |M| / (n/2) and m_hat_k = (kn/2 + |M|) / (kn/2 + n/2). With n omitted the n -> infinity
    limits are returned.

    Raises:
        InvalidDegreeException: If k has no tight bound.
    """
    check_degree_parameter(k)
    if n is None:
        if k % 2 == 0:
            m_k = Fraction(k * k + 4, k * k + k + 2)
        else:
            m_k = Fraction(k**3 - k * k - 2, k**3 - 3 * k)
        return m_k, (k + m_k) / (k + 1)
    bound = tight_bound_value(k, n)
    edges = Fraction((k * n) // 2)
    return bound / Fraction(n, 2), (edges + bound) / (edges + Fraction(n, 2))


def is_matching(g: Graph, edge_ids: List[int]) -> bool:
    """
    Checks that no two of the given edges share an endpoint.

    Args:
        g (Graph): The graph.
        edge_ids (List[int]): Candidate matching.

    Returns:
        bool: True when the edges are pairwise disjoint.

    Raises:
        EdgeNotFoundException: If an id is not an edge of g.
    """
    seen = set()
    for edge_id in edge_ids:
        edge = g.edge(edge_id)
        if edge.u in seen or edge.v in seen:
            return False
        seen.update((edge.u, edge.v))
    return True


def is_fractional_matching(g: Graph, fractions: List[float], tolerance: float = FEASIBILITY_TOLERANCE) -> bool:
    """
    Checks every fraction lies in [0, 1] and every vertex sum is at most 1, both up to `tolerance`.
    """
    if len(fractions) != g.m:
        return False
    load = [0.0] * g.n
    for edge, frac in zip(g.edges, fractions):
        if frac < -tolerance or frac > 1 + tolerance:
            return False
        load[edge.u] += frac
        load[edge.v] += frac
    return all(total <= 1 + tolerance for total in load)


def fractional_matching_value(g: Graph, fractions: List[float]) -> float:
    """
    Returns sum(w_e * m_e) with the per-copy weights.

    Args:
        g (Graph): The graph.
        fractions (List[float]): Fraction per edge id.

    Returns:
        float: The weighted value, 0 on an edgeless graph.
    """
    return float(np.dot([edge.w for edge in g.edges], fractions)) if g.m else 0.0


class MatchingService:
    """
    Exact maximum-weight matchings and fractional matchings.

    A multi-edge contributes a single copy to a matching, so its per-copy weight is the one matched.
    """

    def max_weight_matching(self, g: Graph) -> Matching:
        """
        Computes a maximum-weight matching exactly.

        Weights are rescaled to integers before the blossom solver runs. On graphs with at most
        `CANONICAL_TIEBREAK_MAX_EDGES` edges, ties are broken towards the lexicographically smallest
        edge-id set by appending one priority bit per edge below the weight.

        Args:
            g (Graph): The graph.

        Returns:
            Matching: Chosen edge ids and the exact value.
        """
        logger.info(f"Maximum-weight matching on n={g.n}, m={g.m}")
        weights, scale = integer_weights(g)
        canonical = g.m <= settings.CANONICAL_TIEBREAK_MAX_EDGES
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(g.n))
        for edge_id, (edge, weight) in enumerate(zip(g.edges, weights)):
            if canonical:
                weight = (weight << g.m) | (1 << (g.m - 1 - edge_id))
            nx_graph.add_edge(edge.u, edge.v, weight=weight, id=edge_id)
        mates = nx.max_weight_matching(nx_graph, maxcardinality=False)
        chosen = sorted(nx_graph.edges[u, v]["id"] for u, v in mates)
        total = sum(weights[edge_id] for edge_id in chosen)
        value = Fraction(total, scale)
        logger.info(f"Matching found: {len(chosen)} edges, value {float(value)}")
        return Matching(edges=chosen, value_numerator=value.numerator, value_denominator=value.denominator)

    def max_weight_fractional_matching(self, g: Graph) -> FractionalMatching:
        """
        Computes a half-integral maximum-weight fractional matching.

        The bipartite double cover (a left and a right copy of every vertex, u_L v_R and v_L u_R for
        every edge uv) is solved by the blossom solver on integer weights of arbitrary size; m_uv is
        the mean of the two arc indicators and the value is half of the double cover matching weight.

        Args:
            g (Graph): The graph.

        Returns:
            FractionalMatching: Fractions in {0, 1/2, 1} and the exact value.

        Raises:
            InfeasibleFractionalMatchingException: If the recovered fractions violate a vertex constraint.
        """
        logger.info(f"Maximum-weight fractional matching on n={g.n}, m={g.m}")
        if g.m == 0:
            return FractionalMatching(fractions=[], value=0.0, value_numerator=0, value_denominator=1)
        weights, scale = integer_weights(g)
        cover = nx.Graph()
        cover.add_nodes_from(("L", v) for v in range(g.n))
        cover.add_nodes_from(("R", v) for v in range(g.n))
        for edge, weight in zip(g.edges, weights):
            if weight > 0:
                cover.add_edge(("L", edge.u), ("R", edge.v), weight=weight)
                cover.add_edge(("L", edge.v), ("R", edge.u), weight=weight)
        arcs = set()
        for a, b in nx.max_weight_matching(cover, maxcardinality=False):
            left, right = (a, b) if a[0] == "L" else (b, a)
            arcs.add((left[1], right[1]))
        fractions = [((edge.u, edge.v) in arcs) * 0.5 + ((edge.v, edge.u) in arcs) * 0.5 for edge in g.edges]
        value = Fraction(sum(cover.edges[("L", u), ("R", v)]["weight"] for u, v in arcs), 2 * scale)
        if not is_fractional_matching(g, fractions):
            raise InfeasibleFractionalMatchingException()
        logger.info(f"Fractional matching value {float(value)}")
        return FractionalMatching(
            fractions=fractions,
            value=float(value),
            value_numerator=value.numerator,
            value_denominator=value.denominator,
        )

    def weighted_matching_ratios(self, g: Graph) -> Tuple[float, float]:
        """
        Returns (w(M) / w(FM), (w(G) + w(M)) / (w(G) + w(FM))) with both optima computed exactly on g.
        """
        matching = self.max_weight_matching(g)
        fractional = self.max_weight_fractional_matching(g)
        total = Fraction(g.total_weight()).limit_denominator(settings.WEIGHT_DENOMINATOR_LIMIT)
        m_w = matching.exact_value / fractional.exact_value if fractional.exact_value else Fraction(1)
        denominator = total + fractional.exact_value
        m_hat_w = (total + matching.exact_value) / denominator if denominator else Fraction(1)
        return float(m_w), float(m_hat_w)

