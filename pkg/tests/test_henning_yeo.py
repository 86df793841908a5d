from collections import Counter

import pytest
from pydantic import ValidationError

from apsbench.enums.edge_class import EdgeClassTag
from apsbench.enums.quasi_complete_kind import QuasiCompleteEdgeKind
from apsbench.exc.henning_yeo import (
    BaseGraphUnavailableException,
    InvalidHenningYeoSpecException,
    UntaggedEdgeException,
)
from apsbench.schemas.henning_yeo import HYSpec
from apsbench.services.henning_yeo_service import henning_yeo_order, smallest_p_for_order
from apsbench.services.matching_service import MatchingService


@pytest.mark.parametrize("k, p, order", [(4, 2, 22), (6, 2, 44), (4, 3, 33), (3, 1, 34), (3, 2, 52), (5, 1, 146)])
def test_order_formula(k, p, order):
    assert henning_yeo_order(k, p) == order


@pytest.mark.parametrize("k, p", [(4, 2), (4, 5), (6, 2), (8, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_instances_are_regular_with_expected_order(hy_service, k, p):
    instance = hy_service.build(HYSpec(k=k, p=p))
    assert instance.n == henning_yeo_order(k, p)
    assert all(degree == k for degree in instance.graph.degrees())
    assert instance.graph.is_simple
    assert instance.graph.m == k * instance.n // 2
    assert len(instance.tags) == instance.graph.m


def test_even_quasi_complete_block(hy_service):
    block = hy_service.build_quasi_complete_even(4)
    assert block.graph.n == 5
    assert block.graph.m == 9
    assert not block.graph.has_edge(0, 1)
    assert block.graph.degrees() == [3, 3, 4, 4, 4]


@pytest.mark.parametrize("k", [3, 5, 7])
def test_odd_quasi_complete_block(hy_service, k):
    block = hy_service.build_quasi_complete_odd(k)
    g = block.graph
    (w,) = block.distinguished
    assert g.n == k + 2
    assert g.degree(w) == k - 1
    assert all(g.degree(v) == k for v in range(g.n) if v != w)


def test_quasi_complete_parity_checked(hy_service):
    with pytest.raises(InvalidHenningYeoSpecException):
        hy_service.build_quasi_complete_even(5)
    with pytest.raises(InvalidHenningYeoSpecException):
        hy_service.build_quasi_complete_odd(4)


def test_even_instance_layout(hy_even):
    assert hy_even.barrier == [0, 1]
    assert len(hy_even.blocks) == 4
    assert len(hy_even.edges_with_tag(EdgeClassTag.INTERNAL_QUASI_COMPLETE)) == 36
    assert len(hy_even.edges_with_tag(EdgeClassTag.EXTERNAL_ATTACHMENT)) == 8
    assert hy_even.edges_with_tag(EdgeClassTag.OTHER_EXTERNAL) == []
    assert hy_even.labels[:3] == ["b1", "b2", "q1.x"]


def test_odd_instance_layout(hy_odd):
    assert len(hy_odd.barrier) == 3
    assert len(hy_odd.blocks) == 6
    assert len(hy_odd.edges_with_tag(EdgeClassTag.INTERNAL_QUASI_COMPLETE)) == 42
    assert len(hy_odd.edges_with_tag(EdgeClassTag.EXTERNAL_ATTACHMENT)) == 6
    assert len(hy_odd.edges_with_tag(EdgeClassTag.OTHER_EXTERNAL)) == 3


def test_bipartite_windows_share_one_vertex(hy_service):
    assert hy_service.bipartite_windows(3, 2) == [[0, 1, 2], [2, 3, 4]]
    windows = hy_service.bipartite_windows(5, 3)
    assert all(len(set(a) & set(b)) == 1 for a, b in zip(windows, windows[1:]))
    assert windows[-1][-1] == 3 * 4


@pytest.mark.parametrize("k, p", [(4, 2), (6, 3), (3, 1), (5, 2)])
def test_barrier_leaves_odd_components(hy_service, k, p):
    instance = hy_service.build(HYSpec(k=k, p=p))
    components = hy_service.barrier_components(instance)
    assert all(len(component) % 2 == 1 for component in components)
    # the barrier certifies the maximum matching size
    matched = len(MatchingService().max_weight_matching(instance.graph).edges)
    assert len(components) - len(instance.barrier) == instance.n - 2 * matched


def test_edge_kinds_even(hy_service, hy_even):
    kinds = hy_service.edge_kinds(hy_even)
    counts = Counter(kinds)
    assert counts[QuasiCompleteEdgeKind.EVEN_XU] == 4 * 6
    assert counts[QuasiCompleteEdgeKind.EVEN_UV] == 4 * 3
    assert counts[None] == 8


def test_edge_kinds_odd(hy_service, hy_odd):
    counts = Counter(hy_service.edge_kinds(hy_odd))
    assert counts[QuasiCompleteEdgeKind.ODD_UX] == 6 * 2
    assert counts[QuasiCompleteEdgeKind.ODD_TOP_PAIR] == 6
    assert counts[QuasiCompleteEdgeKind.ODD_UV] == 6 * 4
    assert counts[None] == 9


def test_weighted_totals(hy_service, hy_even):
    heavy = hy_service.apply_weights(hy_even.graph, hy_even.tags, 10.0, 1.0)
    light = hy_service.apply_weights(hy_even.graph, hy_even.tags, 1.0, 10.0)
    assert heavy.total_weight() == pytest.approx(368.0)
    assert heavy.total_weight() - light.total_weight() == pytest.approx((10 - 1) * (36 - 8))


def test_build_applies_spec_weights(hy_service):
    instance = hy_service.build(HYSpec(k=4, p=2, w_internal=10.0, w_external=1.0))
    assert instance.spec.d_w == 10.0
    assert instance.graph.total_weight() == pytest.approx(368.0)


def test_apply_weights_requires_full_tagging(hy_service, hy_even):
    with pytest.raises(UntaggedEdgeException):
        hy_service.apply_weights(hy_even.graph, hy_even.tags[:-1], 10.0, 1.0)


def test_random_base_is_reproducible(hy_service):
    first = hy_service.build(HYSpec(k=4, p=5, base_seed=3))
    second = hy_service.build(HYSpec(k=4, p=5, base_seed=3))
    assert first.graph == second.graph
    assert all(degree == 4 for degree in first.graph.degrees())


def test_even_needs_two_base_vertices(hy_service):
    with pytest.raises(BaseGraphUnavailableException):
        hy_service.build(HYSpec(k=4, p=1))


def test_spec_validation():
    with pytest.raises(ValidationError):
        HYSpec(k=2, p=3)
    with pytest.raises(ValidationError):
        HYSpec(k=3, p=0)
    with pytest.raises(InvalidHenningYeoSpecException):
        HYSpec(k=3, p=1, w_internal=10.0)


@pytest.mark.parametrize("k, min_order, p", [(4, 500, 46), (3, 500, 27), (4, 1, 2), (3, 1, 1)])
def test_smallest_p_for_order(k, min_order, p):
    assert smallest_p_for_order(k, min_order) == p


@pytest.mark.parametrize("k, p", [(2, 3), (3, 0), (4, -1)])
def test_order_helpers_reject_bad_parameters(k, p):
    with pytest.raises(InvalidHenningYeoSpecException):
        henning_yeo_order(k, p)
    if k < 3:
        with pytest.raises(InvalidHenningYeoSpecException):
            smallest_p_for_order(k, 100)
