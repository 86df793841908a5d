import math

import numpy as np
import pytest

from apsbench.core.settings import settings
from apsbench.enums.edge_class import EdgeClassTag
from apsbench.enums.quasi_complete_kind import QuasiCompleteEdgeKind
from apsbench.exc.energy import (
    AngleAssignmentMismatchException,
    AngleClassException,
    AngleOutOfRangeException,
    CommonNeighborhoodTooLargeException,
    EdgeKindParityMismatchException,
    UniformAnglePreconditionException,
)
from apsbench.schemas.energy import AngleAssignment
from apsbench.schemas.graphs import Edge, Graph
from apsbench.schemas.henning_yeo import HYSpec
from apsbench.services.energy_service import (
    ClassAngleEnergyModel,
    EnergyService,
    complete_graph_zz,
    expect_pq,
    expect_qp,
    expect_zz_enumerated,
    expect_zz_exact,
    expect_zz_leading,
    expect_zz_uniform_t,
    quasi_complete_edge_energy,
)
from apsbench.services.verification_service import binomial_even_sum
from apsbench.utils.random_graphs import random_angles, random_connected_graph
from tests.conftest import make_graph

service = EnergyService()


def test_single_edge(single_edge):
    angles = AngleAssignment.uniform(1, math.pi / 4)
    record = service.edge_expectation(single_edge, angles, 0)
    assert record.qp == pytest.approx(1.0)
    assert record.pq == pytest.approx(1.0)
    assert record.zz == pytest.approx(1.0)
    assert record.g == pytest.approx(2.0)
    assert service.total_energy(single_edge, AngleAssignment.uniform(1, 0.0)).total == pytest.approx(1.0)


def test_triangle_at_eighth_pi(triangle):
    angles = AngleAssignment.uniform(3, math.pi / 8)
    for edge_id in range(3):
        record = service.edge_expectation(triangle, angles, edge_id)
        assert (record.qp, record.pq, record.zz) == pytest.approx((0.5, 0.5, 0.5))
    assert service.total_energy(triangle, angles).total == pytest.approx(3.75)


def test_path_orientation(path3):
    theta = 0.3
    angles = AngleAssignment.uniform(2, theta)
    s, c = math.sin(2 * theta), math.cos(2 * theta)
    assert expect_qp(path3, angles, 0) == pytest.approx(s)
    assert expect_pq(path3, angles, 0) == pytest.approx(s * c)
    assert expect_zz_exact(path3, angles, 0) == pytest.approx(c)


def test_zz_variants_agree(rng):
    for _ in range(15):
        g = random_connected_graph(int(rng.integers(3, 9)), rng)
        generic = AngleAssignment(thetas=random_angles(g, rng))
        uniform = AngleAssignment.uniform(g.m, float(rng.uniform(0, math.pi / 4)))
        for edge_id in range(g.m):
            exact = expect_zz_exact(g, generic, edge_id)
            assert expect_zz_enumerated(g, generic, edge_id) == pytest.approx(exact, abs=1e-12)
            assert expect_zz_leading(g, generic, edge_id) <= exact + 1e-12
            assert expect_zz_uniform_t(g, uniform, edge_id) == pytest.approx(
                expect_zz_exact(g, uniform, edge_id), abs=1e-12
            )


def test_uniform_t_precondition(triangle):
    angles = AngleAssignment(thetas=[0.1, 0.2, 0.3])
    with pytest.raises(UniformAnglePreconditionException):
        expect_zz_uniform_t(triangle, angles, 0)
    # the service falls back to the exact sum
    record = service.edge_expectation(triangle, angles, 0)
    assert record.zz == pytest.approx(expect_zz_exact(triangle, angles, 0))


def test_enumeration_cap(monkeypatch, k5_minus_edge):
    monkeypatch.setattr(settings, "ZZ_ENUMERATION_MAX_T", 1)
    angles = AngleAssignment.uniform(k5_minus_edge.m, 0.2)
    with pytest.raises(CommonNeighborhoodTooLargeException):
        expect_zz_enumerated(k5_minus_edge, angles, k5_minus_edge.edge_id(2, 3))


@pytest.mark.parametrize("t", range(0, 9))
def test_binomial_identity(t):
    for theta in np.linspace(0, math.pi / 4, 7):
        assert binomial_even_sum(t, float(theta)) == pytest.approx(0.5 * (1 + math.cos(4 * theta) ** t), abs=1e-12)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_complete_graph_zz(n):
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    g = make_graph(n, pairs)
    angles = AngleAssignment.uniform(g.m, 0.35)
    assert expect_zz_exact(g, angles, 0) == pytest.approx(complete_graph_zz(n, 0.35))


@pytest.mark.parametrize("k, p", [(4, 2), (6, 2), (3, 1), (5, 1)])
def test_quasi_complete_closed_forms(hy_service, k, p):
    instance = hy_service.build(HYSpec(k=k, p=p))
    theta, theta_ext = 0.27, 0.61
    thetas = [theta if tag == EdgeClassTag.INTERNAL_QUASI_COMPLETE else theta_ext for tag in instance.tags]
    angles = AngleAssignment(thetas=thetas)
    for edge_id, kind in enumerate(hy_service.edge_kinds(instance)):
        if kind is None:
            continue
        closed = quasi_complete_edge_energy(kind, k, theta, theta_ext)
        general = service.edge_expectation(instance.graph, angles, edge_id)
        assert (closed.qp, closed.pq, closed.zz) == pytest.approx((general.qp, general.pq, general.zz), abs=1e-12)


def test_quasi_complete_parity_mismatch():
    with pytest.raises(EdgeKindParityMismatchException):
        quasi_complete_edge_energy(QuasiCompleteEdgeKind.EVEN_UV, 5, 0.2, 0.2)
    with pytest.raises(AngleOutOfRangeException):
        quasi_complete_edge_energy(QuasiCompleteEdgeKind.EVEN_UV, 4, 1.0, 0.2)


def test_class_model_matches_edge_sum(hy_odd):
    classes = [0 if tag == EdgeClassTag.INTERNAL_QUASI_COMPLETE else 1 for tag in hy_odd.tags]
    classes = [2 if tag == EdgeClassTag.OTHER_EXTERNAL else c for tag, c in zip(hy_odd.tags, classes)]
    model = ClassAngleEnergyModel(hy_odd.graph, classes, 3)
    class_thetas = [0.31, 0.52, 0.12]
    angles = AngleAssignment(thetas=[class_thetas[c] for c in classes])
    assert model.energy(class_thetas) == pytest.approx(service.total_energy(hy_odd.graph, angles).total, abs=1e-9)
    assert model.total_weight == pytest.approx(hy_odd.graph.total_weight())


def test_class_model_batches(rng):
    g = random_connected_graph(7, rng)
    classes = [int(c) for c in rng.integers(0, 2, size=g.m)]
    model = ClassAngleEnergyModel(g, classes, 2)
    batch = rng.uniform(0, math.pi / 4, size=(5, 2))
    expected = [
        service.total_energy(g, AngleAssignment(thetas=[float(row[c]) for c in classes])).total for row in batch
    ]
    assert np.allclose(model.energies(batch), expected, rtol=0, atol=1e-9)


def test_class_model_validates_classes(triangle):
    with pytest.raises(AngleClassException):
        ClassAngleEnergyModel(triangle, [0, 1], 2)
    with pytest.raises(AngleClassException):
        ClassAngleEnergyModel(triangle, [0, 1, 2], 2)


def test_multi_edges_are_folded():
    g = Graph(n=3, edges=[Edge(u=0, v=1, mult=2, w=1.5), Edge(u=1, v=2)])
    angles = AngleAssignment(thetas=[0.4, 0.2])
    simple = g.collapsed()
    assert service.total_energy(g, angles).total == pytest.approx(service.total_energy(simple, angles).total)
    assert service.total_energy(g, angles).edges[0].weight == 3.0


def test_angle_validation(triangle):
    with pytest.raises(AngleOutOfRangeException):
        AngleAssignment(thetas=[0.1, -0.2, 0.3])
    with pytest.raises(AngleAssignmentMismatchException):
        service.total_energy(triangle, AngleAssignment.uniform(2, 0.1))
