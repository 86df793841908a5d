import math
from math import comb
from typing import Callable, List, Optional

import numpy as np

from apsbench.core.settings import logger
from apsbench.exc.verification import InvalidSuiteSizeException, UnknownFaultException
from apsbench.schemas.energy import AngleAssignment
from apsbench.schemas.henning_yeo import HYSpec
from apsbench.schemas.reports import CheckResult, VerificationSummary
from apsbench.services.energy_service import (
    EnergyService,
    expect_zz_enumerated,
    expect_zz_exact,
    expect_zz_leading,
    expect_zz_uniform_t,
)
from apsbench.services.fed_service import edge_bound_T
from apsbench.services.henning_yeo_service import HenningYeoService, henning_yeo_order
from apsbench.services.matching_service import MatchingService, is_fractional_matching, is_matching, tight_bound_value
from apsbench.services.oracle_service import build_state, edge_expectations, epr_energy_exact, max_eigenvalue
from apsbench.utils.random_graphs import random_angles, random_connected_graphs

FAULTS = ("angle_rule",)
ORACLE_TOLERANCE = 1e-9
FORMULA_TOLERANCE = 1e-12
BOUND_TOLERANCE = 1e-9
VARIATIONAL_TOLERANCE = 1e-7
BOUNDS_MAX_N = 10
STRUCTURE_CASES = ((3, 1), (4, 2), (5, 1), (6, 2))


def binomial_even_sum(t: int, theta: float) -> float:
    """sum over even s of C(t, s) sin^{2s} 2theta cos^{2t-2s} 2theta."""
    s2, c2 = math.sin(2 * theta) ** 2, math.cos(2 * theta) ** 2
    return math.fsum(comb(t, s) * s2**s * c2 ** (t - s) for s in range(0, t + 1, 2))


class VerificationService:
    """
    Runs the property suites that cross-check closed forms, solvers and constructions.

    Attributes:
        max_n (int): Largest random graph order.
        graphs (int): Random graphs per suite.
        assignments (int): Random angle assignments per graph in the oracle and spectral suites.
        bound_max_n (int): Largest random graph order of the spectral bound suite.
        bound_graphs (int): Random graphs of the spectral bound suite; `graphs` when omitted.
        seed (int): Seed of every random choice.
        fault (Optional[str]): Deliberate defect injected as a negative control.
    """

    def __init__(
        self,
        max_n: int = 8,
        graphs: int = 40,
        seed: int = 0,
        fault: Optional[str] = None,
        assignments: int = 3,
        bound_max_n: int = BOUNDS_MAX_N,
        bound_graphs: Optional[int] = None,
    ):
        if fault is not None and fault not in FAULTS:
            raise UnknownFaultException(fault=fault, known=FAULTS)
        bound_graphs = graphs if bound_graphs is None else bound_graphs
        for name, value, minimum in (
            ("max_n", max_n, 2),
            ("graphs", graphs, 1),
            ("assignments", assignments, 1),
            ("bound_max_n", bound_max_n, 2),
            ("bound_graphs", bound_graphs, 1),
        ):
            if value < minimum:
                raise InvalidSuiteSizeException(name=name, value=value, minimum=minimum)
        self.max_n = max_n
        self.graphs = graphs
        self.assignments = assignments
        self.bound_max_n = bound_max_n
        self.bound_graphs = bound_graphs
        self.seed = seed
        self.fault = fault
        self.energy_service = EnergyService()
        self.matching_service = MatchingService()
        self.hy_service = HenningYeoService()

    def _rng(self, offset: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, offset])

    def _closed_form_angles(self, thetas: List[float]) -> AngleAssignment:
        if self.fault == "angle_rule":
            return AngleAssignment(thetas=[theta / 2 for theta in thetas])
        return AngleAssignment(thetas=thetas)

    def check_oracle_equivalence(self) -> CheckResult:
        """Compares closed-form QP, PQ and ZZ with the state vector on every edge of random graphs."""
        result = CheckResult(name="oracle_equivalence")
        rng = self._rng(1)
        for g in random_connected_graphs(self.graphs, self.max_n, rng):
            for _ in range(self.assignments):
                thetas = random_angles(g, rng)
                state = build_state(g, AngleAssignment(thetas=thetas))
                closed = self._closed_form_angles(thetas)
                for edge_id, edge in enumerate(g.edges):
                    record = self.energy_service.edge_expectation(g, closed, edge_id)
                    qp, pq, zz = edge_expectations(state, edge.u, edge.v)
                    result.checked += 1
                    error = max(abs(record.qp - qp), abs(record.pq - pq), abs(record.zz - zz))
                    if error > ORACLE_TOLERANCE:
                        result.failures.append(f"n={g.n}, edge {edge_id}: closed form differs by {error:.3e}")
        return result

    def check_zz_formulas(self) -> CheckResult:
        """Checks the uniform-T form, the subset enumeration and the leading term against the exact ZZ."""
        result = CheckResult(name="zz_formulas")
        rng = self._rng(2)
        for g in random_connected_graphs(self.graphs, self.max_n, rng):
            uniform = AngleAssignment.uniform(g.m, float(rng.uniform(0, math.pi / 4)))
            generic = AngleAssignment(thetas=random_angles(g, rng))
            for edge_id in range(g.m):
                result.checked += 3
                exact = expect_zz_exact(g, uniform, edge_id)
                if abs(expect_zz_uniform_t(g, uniform, edge_id) - exact) > FORMULA_TOLERANCE:
                    result.failures.append(f"n={g.n}, edge {edge_id}: uniform-T formula differs from exact")
                exact = expect_zz_exact(g, generic, edge_id)
                if abs(expect_zz_enumerated(g, generic, edge_id) - exact) > FORMULA_TOLERANCE:
                    result.failures.append(f"n={g.n}, edge {edge_id}: subset enumeration differs from factorised sum")
                if expect_zz_leading(g, generic, edge_id) > exact + FORMULA_TOLERANCE:
                    result.failures.append(f"n={g.n}, edge {edge_id}: leading term exceeds exact value")
        return result

    def check_binomial_identity(self, max_t: int = 12, angles: int = 100) -> CheckResult:
        """Checks the even binomial sum against its closed form for t <= max_t."""
        result = CheckResult(name="binomial_identity")
        rng = self._rng(3)
        for theta in rng.uniform(0, math.pi / 4, size=angles):
            for t in range(max_t + 1):
                result.checked += 1
                closed = 0.5 * (1 + math.cos(4 * theta) ** t)
                if abs(binomial_even_sum(t, theta) - closed) > FORMULA_TOLERANCE:
                    result.failures.append(f"t={t}, theta={theta}: even binomial sum differs")
        return result

    def check_edge_bound(self, points: int = 101) -> CheckResult:
        """Checks T(kappa, m) <= 1 + m on a kappa x m grid."""
        result = CheckResult(name="edge_bound")
        for kappa in np.linspace(0.0, 4.0, points):
            for m in np.linspace(0.0, 1.0, points):
                result.checked += 1
                if edge_bound_T(float(kappa), float(m)) > 1 + m + FORMULA_TOLERANCE:
                    result.failures.append(f"T({kappa}, {m}) exceeds 1 + m")
        return result

    def check_matchings(self) -> CheckResult:
        """Checks the handshake identity, matching feasibility and M <= FM on random graphs."""
        result = CheckResult(name="matching_feasibility")
        rng = self._rng(4)
        for g in random_connected_graphs(self.graphs, max(self.max_n, 4), rng):
            matching = self.matching_service.max_weight_matching(g)
            fractional = self.matching_service.max_weight_fractional_matching(g)
            result.checked += 4
            if sum(g.degrees()) != 2 * sum(edge.mult for edge in g.edges):
                result.failures.append(f"n={g.n}: handshake fails")
            if not is_matching(g, matching.edges):
                result.failures.append(f"n={g.n}: matching shares a vertex")
            if not is_fractional_matching(g, fractional.fractions):
                result.failures.append(f"n={g.n}: fractional matching violates a vertex constraint")
            if matching.exact_value > fractional.exact_value:
                result.failures.append(f"n={g.n}: matching exceeds its relaxation")
        return result

    def check_spectral_bounds(self) -> CheckResult:
        """Checks lambda_max against both bounds and against ansatz energies on random unit-weight graphs."""
        result = CheckResult(name="spectral_bounds")
        rng = self._rng(5)
        for g in random_connected_graphs(self.bound_graphs, min(self.max_n, self.bound_max_n), rng):
            lam = max_eigenvalue(g)
            total = g.total_weight()
            matching = self.matching_service.max_weight_matching(g).value
            fractional = self.matching_service.max_weight_fractional_matching(g).value
            result.checked += 2
            if lam > total + matching + BOUND_TOLERANCE:
                result.failures.append(f"n={g.n}: lambda_max={lam} exceeds w(G)+w(M)={total + matching}")
            if lam > total + fractional + BOUND_TOLERANCE:
                result.failures.append(f"n={g.n}: lambda_max={lam} exceeds w(G)+w(FM)={total + fractional}")
            for _ in range(self.assignments):
                angles = AngleAssignment(thetas=random_angles(g, rng))
                energy = epr_energy_exact(g, angles)
                closed = self.energy_service.total_energy(g, angles).total
                result.checked += 2
                if energy > lam + VARIATIONAL_TOLERANCE:
                    result.failures.append(f"n={g.n}: ansatz energy {energy} exceeds lambda_max={lam}")
                if abs(energy - closed) > ORACLE_TOLERANCE * max(1.0, total):
                    result.failures.append(f"n={g.n}: closed-form total {closed} differs from oracle {energy}")
        return result

    def check_henning_yeo(self) -> CheckResult:
        """Checks regularity, order, barrier parity and both matching optima on small constructions."""
        result = CheckResult(name="henning_yeo_structure")
        for k, p in STRUCTURE_CASES:
            instance = self.hy_service.build(HYSpec(k=k, p=p))
            g = instance.graph
            result.checked += 5
            if any(degree != k for degree in g.degrees()):
                result.failures.append(f"k={k}, p={p}: graph is not {k}-regular")
            if g.n != henning_yeo_order(k, p):
                result.failures.append(f"k={k}, p={p}: order {g.n} differs from closed form")
            components = self.hy_service.barrier_components(instance)
            if any(len(component) % 2 == 0 for component in components):
                result.failures.append(f"k={k}, p={p}: barrier removal leaves an even component")
            matching = self.matching_service.max_weight_matching(g)
            if matching.exact_value != tight_bound_value(k, g.n):
                result.failures.append(f"k={k}, p={p}: maximum matching {matching.value} misses the tight bound")
            if self.matching_service.max_weight_fractional_matching(g).exact_value * 2 != g.n:
                result.failures.append(f"k={k}, p={p}: fractional matching is not perfect")
        return result

    def run(self) -> VerificationSummary:
        """
        Runs every suite in a fixed order.

        Returns:
            VerificationSummary: Outcome of every suite.
        """
        suites: List[Callable[[], CheckResult]] = [
            self.check_oracle_equivalence,
            self.check_zz_formulas,
            self.check_binomial_identity,
            self.check_edge_bound,
            self.check_matchings,
            self.check_spectral_bounds,
            self.check_henning_yeo,
        ]
        results = []
        for suite in suites:
            outcome = suite()
            level = "passed" if outcome.passed else f"FAILED ({len(outcome.failures)} failures)"
            logger.info(f"Suite {outcome.name}: {outcome.checked} checks {level}")
            results.append(outcome)
        return VerificationSummary(results=results)
