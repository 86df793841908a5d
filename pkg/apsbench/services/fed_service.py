import math
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from cachetools import LRUCache, cached
from scipy.optimize import minimize_scalar

from apsbench.constants import QUARTER_PI
from apsbench.core.settings import logger, settings
from apsbench.enums.edge_class import EdgeClassTag
from apsbench.exc.fed import AngleClassMismatchException, InvalidFedParameterException
from apsbench.exc.matching import InfeasibleFractionalMatchingException
from apsbench.schemas.energy import AngleAssignment
from apsbench.schemas.fed import FedConfig, ImprovedRatio, MaxMinResult, RatioReport, WeightedFedResult
from apsbench.schemas.graphs import Edge, Graph
from apsbench.schemas.henning_yeo import HenningYeoInstance
from apsbench.schemas.matching import FractionalMatching
from apsbench.services.energy_service import ClassAngleEnergyModel
from apsbench.services.henning_yeo_service import HenningYeoService
from apsbench.services.matching_service import (
    MatchingService,
    fractional_matching_value,
    is_fractional_matching,
    matching_ratios,
)
from apsbench.utils.validation import check_fed_parameters, check_fraction_interval

CLASS_INDEX: Dict[EdgeClassTag, int] = {
    EdgeClassTag.INTERNAL_QUASI_COMPLETE: 0,
    EdgeClassTag.EXTERNAL_ATTACHMENT: 1,
    EdgeClassTag.OTHER_EXTERNAL: 2,
}
OUTER_GRID_POINTS = 256
SWEEP_GRID_POINTS = 64


def _edge_bound(kappa, m):
    decay = np.exp(-kappa * (1.0 - m))
    return 0.5 * (1.0 + decay**2 + 2.0 * np.sqrt(np.maximum(0.0, 1.0 - np.exp(-2.0 * kappa * m))) * decay)


def edge_bound_T(kappa: float, m: float) -> float:
    """
    Lower bound on the energy of an edge with matching fraction m under the decay rule:
    T = (1/2)(1 + e^{-2 kappa (1-m)} + 2 sqrt(1 - e^{-2 kappa m}) e^{-kappa (1-m)}).

    Raises:
        InvalidFedParameterException: If kappa < 0 or m is outside [0, 1].
    """
    check_fed_parameters(kappa, m)
    return float(_edge_bound(kappa, m))


def ratio_R(kappa: float, m: float) -> float:
    """R = T(kappa, m) / (1 + m): the edge bound measured against its share of w(G) + w(FM)."""
    return edge_bound_T(kappa, m) / (1.0 + m)


def maximize_scalar(
    objective: Callable[[np.ndarray], np.ndarray], lower: float, upper: float, grid_points: int, tolerance: float
) -> Tuple[float, float]:
    """
    Maximises a scalar function on [lower, upper]: grid scan, then bounded Brent search in the
    cell pair around the best grid point.

    Args:
        objective (Callable): Vectorised function of a 1-D array of arguments.
        lower (float): Left end.
        upper (float): Right end.
        grid_points (int): Size of the scan.
        tolerance (float): Absolute tolerance on the argument.

    Returns:
        Tuple[float, float]: (argmax, max).
    """
    grid = np.linspace(lower, upper, grid_points)
    values = np.asarray(objective(grid), dtype=float)
    best = int(np.argmax(values))
    best_x, best_value = float(grid[best]), float(values[best])
    left, right = grid[max(best - 1, 0)], grid[min(best + 1, grid_points - 1)]
    if right > left:
        result = minimize_scalar(
            lambda x: -float(np.asarray(objective(np.array([x])))[0]),
            bounds=(float(left), float(right)),
            method="bounded",
            options={"xatol": tolerance},
        )
        if -result.fun > best_value:
            best_x, best_value = float(result.x), float(-result.fun)
    return best_x, best_value


def _inner_min(kappa: float, lower: float, upper: float, grid_points: int, tolerance: float) -> float:
    if upper == lower:
        return float(_edge_bound(kappa, lower) / (1.0 + lower))
    _, value = maximize_scalar(lambda m: -_edge_bound(kappa, m) / (1.0 + m), lower, upper, grid_points, tolerance)
    return -value


@cached(cache=LRUCache(maxsize=1024))
def maxmin_r_interval(upper: float, lower: float, kappa_upper: Optional[float] = None) -> MaxMinResult:
    """
    Computes max over kappa of min over m in [lower, upper] of R(kappa, m).

    `upper` is the inverse of the smallest edge degree, `lower` the inverse of the largest one.
    A degenerate interval gives the per-degree ratio.

    Args:
        upper (float): Right end of the fraction interval.
        lower (float): Left end of the fraction interval.
        kappa_upper (float, optional): Right end of the decay-parameter search. Defaults to `KAPPA_UPPER`.

    Returns:
        MaxMinResult: The ratio and the maximising decay parameter.

    Raises:
        InvalidIntervalException: Unless 0 <= lower <= upper <= 1.
        InvalidFedParameterException: If kappa_upper is not positive.
    """
    check_fraction_interval(lower, upper)
    grid_points, tolerance = settings.GRID_POINTS, settings.OPTIMIZER_TOLERANCE
    kappa_upper = settings.KAPPA_UPPER if kappa_upper is None else kappa_upper
    if kappa_upper <= 0:
        raise InvalidFedParameterException(message=f"kappa_upper must be positive, got {kappa_upper}.")

    def objective(kappas: np.ndarray) -> np.ndarray:
        return np.array([_inner_min(float(kappa), lower, upper, grid_points, tolerance) for kappa in kappas])

    kappa, ratio = maximize_scalar(objective, 1e-9, kappa_upper, OUTER_GRID_POINTS, tolerance)
    return MaxMinResult(ratio=ratio, kappa=kappa)


def maxmin_r0() -> MaxMinResult:
    """The max-min ratio over the full fraction interval [0, 1]; analytically phi/2 at kappa = ln(phi)/2."""
    return maxmin_r_interval(1.0, 0.0)


def r_k(k: int) -> MaxMinResult:
    """
    Returns (r_k, kappa_k) = max over kappa of R(kappa, 1/k).

    Raises:
        InvalidFedParameterException: If k < 2.
    """
    if k < 2:
        raise InvalidFedParameterException(message=f"Per-degree ratios need k >= 2, got {k}.")
    return maxmin_r_interval(1.0 / k, 1.0 / k)


def assign_fractions_edge_degree(g: Graph) -> FractionalMatching:
    """
    Assigns each copy of an edge the fraction 1 / d_ij, d_ij = max(d_i, d_j).

    A pair of multiplicity mu therefore carries mu / d_ij. Every vertex sum is at most 1.
    """
    fractions = [edge.mult / g.edge_degree(edge_id) for edge_id, edge in enumerate(g.edges)]
    return FractionalMatching(fractions=fractions, value=fractional_matching_value(g, fractions))


def angle_from_fraction(m: float, kappa: float) -> float:
    """Returns theta = arccos(exp(-kappa * m)) / 2."""
    return 0.5 * math.acos(min(1.0, math.exp(-kappa * m)))


def angles_from_fractions(fm: FractionalMatching, kappa: float) -> AngleAssignment:
    """
    Sets cos 2theta_ij = exp(-kappa m_ij) for every edge.

    Raises:
        InvalidFedParameterException: If kappa is not positive.
    """
    if kappa <= 0:
        raise InvalidFedParameterException(message=f"Decay parameter must be positive, got {kappa}.")
    return AngleAssignment(thetas=[min(QUARTER_PI, angle_from_fraction(m, kappa)) for m in fm.fractions])


def round_to_multigraph(g: Graph) -> Graph:
    """
    Expresses weights as multiplicities of the smallest weight.

    Each edge of weight w becomes round(w / w_min) parallel copies (at least one) of weight w_min.
    """
    if g.m == 0:
        return g
    unit = min(edge.w for edge in g.edges)
    return Graph(
        n=g.n,
        edges=[Edge(u=e.u, v=e.v, mult=e.mult * max(1, round(e.w / unit)), w=unit) for e in g.edges],
    )


def shifted_fm_ratio(g: Graph, restricted: FractionalMatching) -> float:
    """
    Returns (w(G) + w(FM_restricted)) / (w(G) + w(FM_G)).

    Raises:
        InfeasibleFractionalMatchingException: If `restricted` is not a fractional matching of g.
    """
    if not is_fractional_matching(g, restricted.fractions):
        raise InfeasibleFractionalMatchingException()
    total = g.total_weight()
    optimum = MatchingService().max_weight_fractional_matching(g)
    denominator = total + optimum.value
    if denominator == 0:
        return 1.0
    return (total + fractional_matching_value(g, restricted.fractions)) / denominator


class FedService:
    """
    FED optimisation on concrete Henning-Yeo instances and assembly of the ratio reports.

    Attributes:
        config (FedConfig): Optimiser settings.
        matching_service (MatchingService): Exact matching solvers.
        hy_service (HenningYeoService): Instance constructor, used to reweight instances.
    """

    def __init__(self, config: FedConfig = None):
        self.config = config or FedConfig()
        self.matching_service = MatchingService()
        self.hy_service = HenningYeoService()

    def _maximize(self, model: ClassAngleEnergyModel, current: np.ndarray, axis: int, grid_points: int):
        def objective(values: np.ndarray) -> np.ndarray:
            batch = np.tile(current, (len(values), 1))
            batch[:, axis] = values
            return model.energies(batch)

        return maximize_scalar(objective, 0.0, QUARTER_PI, grid_points, self.config.tolerance)

    def improved_ratio(self, instance: HenningYeoInstance) -> ImprovedRatio:
        """
        Maximises the exact energy over one angle shared by all edges.

        Args:
            instance (HenningYeoInstance): Unweighted instance.

        Returns:
            ImprovedRatio: energy / (kn/2 + n/2) at the best angle, with the angle and its decay parameter.

        Raises:
            InvalidFedParameterException: If the instance is weighted.
        """
        if instance.spec.weighted:
            raise InvalidFedParameterException(message="Improved ratios are defined on unweighted instances.")
        k, n = instance.k, instance.n
        logger.info(f"Optimising uniform angle on k={k}, n={n}")
        model = ClassAngleEnergyModel(instance.graph, [0] * instance.graph.m, 1)
        theta, energy = self._maximize(model, np.zeros(1), 0, self.config.grid_points)
        denominator = instance.graph.total_weight() + n / 2
        cos2 = math.cos(2 * theta)
        kappa = -k * math.log(cos2) if cos2 > 0 else math.inf
        logger.info(f"Uniform-angle optimum k={k}: theta={theta:.8f}, r_hat={energy / denominator:.6f}")
        return ImprovedRatio(
            r_hat=energy / denominator, theta=theta, kappa=kappa, energy=energy, denominator=denominator
        )

    def edge_classes(self, instance: HenningYeoInstance) -> Tuple[List[int], int]:
        """
        Maps edge tags to angle classes: internal 0, attachment 1 and, for odd k, other external 2.

        Raises:
            AngleClassMismatchException: If the tags do not fit the parity of k.
        """
        n_classes = 2 if instance.spec.is_even else 3
        classes = [CLASS_INDEX[tag] for tag in instance.tags]
        if any(c >= n_classes for c in classes):
            raise AngleClassMismatchException(k=instance.k, classes=sorted({tag.value for tag in instance.tags}))
        return classes, n_classes

    def seed_angles(self, instance: HenningYeoInstance, classes: List[int], n_classes: int) -> Tuple[np.ndarray, float]:
        """
        Seeds one angle per class from the edge-degree fractions of the multi-edge rounding and the
        decay parameter that is max-min optimal on their interval.
        """
        rounded = round_to_multigraph(instance.graph)
        fractions = assign_fractions_edge_degree(rounded).fractions
        per_class = np.zeros(n_classes)
        for c in range(n_classes):
            members = [frac for frac, edge_class in zip(fractions, classes) if edge_class == c]
            per_class[c] = float(np.mean(members)) if members else 0.0
        used = set(classes)
        present = [frac for c, frac in enumerate(per_class) if c in used]
        if self.config.kappa is not None:
            kappa = self.config.kappa
        else:
            kappa = maxmin_r_interval(float(max(present)), float(min(present)), self.config.kappa_upper).kappa
        thetas = np.array([min(QUARTER_PI, angle_from_fraction(frac, kappa)) for frac in per_class])
        return thetas, kappa

    def weighted_fed(self, instance: HenningYeoInstance) -> WeightedFedResult:
        """
        Optimises one angle per edge class on a weighted instance by coordinate sweeps.

        Sweeps stop once a full pass improves the energy by less than the tolerance; a coordinate
        move is kept only when it raises the energy.

        Args:
            instance (HenningYeoInstance): Weighted (or unweighted) instance.

        Returns:
            WeightedFedResult: energy / (w(G) + w(FM^w)) at the best class angles.

        Raises:
            AngleClassMismatchException: If the edge classes do not fit the parity of k.
        """
        classes, n_classes = self.edge_classes(instance)
        logger.info(f"Optimising {n_classes} class angles on k={instance.k}, n={instance.n}")
        model = ClassAngleEnergyModel(instance.graph, classes, n_classes)
        seed, kappa = self.seed_angles(instance, classes, n_classes)
        current = seed.copy()
        energy = model.energy(current)
        sweeps = 0
        for sweeps in range(1, self.config.max_sweeps + 1):
            start = energy
            for axis in range(n_classes):
                theta, value = self._maximize(model, current, axis, SWEEP_GRID_POINTS)
                if value > energy:
                    current[axis], energy = theta, value
            if energy - start < self.config.tolerance:
                break
        fractional = self.matching_service.max_weight_fractional_matching(instance.graph)
        denominator = instance.graph.total_weight() + fractional.value
        logger.info(f"Class-angle optimum k={instance.k}: thetas={current.tolist()}, after {sweeps} sweeps")
        return WeightedFedResult(
            r_hat_w=energy / denominator,
            thetas=current.tolist(),
            seed_thetas=seed.tolist(),
            seed_kappa=kappa,
            energy=energy,
            denominator=denominator,
            sweeps=sweeps,
        )

    def aps_gap_report(self, instance: HenningYeoInstance, d_w: Optional[float] = None) -> RatioReport:
        """
        Assembles the ratios of one instance and the signed gaps between matching and energy ratios.

        Args:
            instance (HenningYeoInstance): Unweighted instance.
            d_w (float, optional): When given, the same topology is reweighted with internal weight
                d_w and external weight 1 and the weighted ratios are added.

        Returns:
            RatioReport: The row; `violation_candidate` is set when a gap is negative.
        """
        k, n = instance.k, instance.n
        leading = r_k(k)
        improved = self.improved_ratio(instance)
        m_k, m_hat_k = matching_ratios(k, n)
        report = RatioReport(
            k=k,
            p=instance.spec.p,
            n=n,
            d_w=d_w,
            r_k=leading.ratio,
            kappa_k=leading.kappa,
            r_hat_k=improved.r_hat,
            m_k=float(m_k),
            m_hat_k=float(m_hat_k),
            gap=float(m_hat_k) - improved.r_hat,
        )
        if d_w is not None:
            weighted = self.reweight(instance, d_w)
            fed = self.weighted_fed(weighted)
            _, m_hat_w = self.matching_service.weighted_matching_ratios(weighted.graph)
            report = report.model_copy(
                update={"r_hat_w": fed.r_hat_w, "m_hat_w": m_hat_w, "gap_w": m_hat_w - fed.r_hat_w}
            )
        negative = [gap for gap in (report.gap, report.gap_w) if gap is not None and gap < 0]
        if negative:
            logger.warning(f"Negative APS gap for k={k}, n={n}: {negative}; instance flagged for inspection")
            report = report.model_copy(update={"violation_candidate": True})
        return report

    def reweight(self, instance: HenningYeoInstance, d_w: float) -> HenningYeoInstance:
        """Returns the instance with internal weight d_w and external weight 1, topology unchanged."""
        spec = instance.spec.model_copy(update={"w_internal": d_w, "w_external": 1.0})
        graph = self.hy_service.apply_weights(instance.graph, instance.tags, d_w, 1.0)
        return instance.model_copy(update={"spec": spec, "graph": graph})
