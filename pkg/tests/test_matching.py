import math
from fractions import Fraction

import pytest

from apsbench.exc.matching import InvalidDegreeException
from apsbench.schemas.henning_yeo import HYSpec
from apsbench.services.matching_service import (
    MatchingService,
    integer_weights,
    is_fractional_matching,
    is_matching,
    matching_ratios,
    tight_bound_value,
)
from apsbench.utils.random_graphs import random_connected_graph
from tests.conftest import brute_force_fractional_value, brute_force_matching_value, make_graph

service = MatchingService()


def test_triangle_matching_and_relaxation(triangle):
    matching = service.max_weight_matching(triangle)
    fractional = service.max_weight_fractional_matching(triangle)
    assert matching.exact_value == 1
    assert fractional.exact_value == Fraction(3, 2)
    assert fractional.fractions == [0.5, 0.5, 0.5]


def test_ties_break_to_smallest_edge_ids(triangle, cycle4):
    assert service.max_weight_matching(triangle).edges == [0]
    assert service.max_weight_matching(cycle4).edges == [0, 2]


def test_exported_documents(triangle):
    assert service.max_weight_matching(triangle).export() == {"edges": [0], "value": 1.0}
    exported = service.max_weight_fractional_matching(triangle).export()
    assert exported["value"] == pytest.approx(1.5)
    assert exported["fractions"] == [{"edge": 0, "frac": 0.5}, {"edge": 1, "frac": 0.5}, {"edge": 2, "frac": 0.5}]


def test_path_and_cycle(path3, cycle4):
    assert service.max_weight_matching(path3).value == 1.0
    assert service.max_weight_fractional_matching(path3).value == 1.0
    assert service.max_weight_matching(cycle4).value == 2.0
    assert service.max_weight_fractional_matching(cycle4).value == 2.0


def test_weighted_matching_prefers_heavy_edge():
    g = make_graph(4, [(0, 1), (1, 2), (2, 3)], [1.0, 2.5, 1.0])
    assert service.max_weight_matching(g).edges == [1]
    assert service.max_weight_matching(g).exact_value == Fraction(5, 2)


def test_empty_graph():
    g = make_graph(3, [])
    assert service.max_weight_matching(g).value == 0.0
    assert service.max_weight_fractional_matching(g).value == 0.0


def test_solvers_match_brute_force(rng):
    for _ in range(25):
        g = random_connected_graph(int(rng.integers(2, 7)), rng)
        if g.m > 9:
            continue
        g = g.with_weights([float(w) for w in rng.integers(1, 6, size=g.m)])
        matching = service.max_weight_matching(g)
        fractional = service.max_weight_fractional_matching(g)
        assert is_matching(g, matching.edges)
        assert is_fractional_matching(g, fractional.fractions)
        assert matching.value == pytest.approx(brute_force_matching_value(g))
        assert fractional.value == pytest.approx(brute_force_fractional_value(g))
        assert matching.exact_value <= fractional.exact_value


def test_irrational_weights_beyond_machine_integers():
    g = make_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)], [math.pi, math.e, math.sqrt(2), 0.7071, 1.1])
    assert integer_weights(g)[1].bit_length() > 63
    matching = service.max_weight_matching(g)
    fractional = service.max_weight_fractional_matching(g)
    assert is_fractional_matching(g, fractional.fractions)
    assert matching.value == pytest.approx(brute_force_matching_value(g))
    assert fractional.value == pytest.approx(brute_force_fractional_value(g))
    m_w, m_hat_w = service.weighted_matching_ratios(g)
    assert 0 < m_w <= 1 and 0 < m_hat_w <= 1


def test_integer_weights_are_exact():
    g = make_graph(3, [(0, 1), (1, 2)], [0.5, 1.0 / 3.0])
    weights, scale = integer_weights(g)
    assert scale == 6
    assert weights == [3, 2]


@pytest.mark.parametrize("k, p", [(4, 2), (6, 2), (3, 1), (3, 2), (5, 1)])
def test_henning_yeo_attains_tight_bound(hy_service, k, p):
    g = hy_service.build(HYSpec(k=k, p=p)).graph
    assert service.max_weight_matching(g).exact_value == tight_bound_value(k, g.n)
    assert service.max_weight_fractional_matching(g).exact_value == Fraction(g.n, 2)


def test_tight_bound_values():
    assert tight_bound_value(4, 22) == 10
    assert tight_bound_value(3, 34) == 15


@pytest.mark.parametrize(
    "k, m_k, m_hat_k",
    [
        (3, 0.889, 0.972),
        (4, 0.909, 0.982),
        (5, 0.891, 0.982),
        (6, 0.909, 0.987),
        (7, 0.907, 0.988),
        (8, 0.919, 0.991),
        (9, 0.920, 0.992),
        (10, 0.9286, 0.9935),
    ],
)
def test_asymptotic_matching_ratios(k, m_k, m_hat_k):
    ratio, shifted = matching_ratios(k)
    assert float(ratio) == pytest.approx(m_k, abs=6e-4)
    assert float(shifted) == pytest.approx(m_hat_k, abs=6e-4)


def test_finite_order_ratios_approach_the_limit():
    limit = float(matching_ratios(3)[1])
    finite = [float(matching_ratios(3, 18 * p + 16)[1]) for p in (1, 10, 100)]
    assert finite[0] < finite[1] < finite[2] < limit


def test_even_ratios_do_not_depend_on_order():
    assert matching_ratios(6, 44) == matching_ratios(6)


def test_degree_validation():
    with pytest.raises(InvalidDegreeException):
        matching_ratios(2)
    with pytest.raises(InvalidDegreeException):
        tight_bound_value(1, 10)


def test_weighted_ratios_on_henning_yeo(hy_service):
    g = hy_service.build(HYSpec(k=4, p=2, w_internal=10.0, w_external=1.0)).graph
    assert service.max_weight_matching(g).exact_value == 82
    assert service.max_weight_fractional_matching(g).exact_value == 100
    m_w, m_hat_w = service.weighted_matching_ratios(g)
    assert m_w == pytest.approx(0.82)
    assert m_hat_w == pytest.approx(450 / 468)


def test_unit_weights_reduce_to_unweighted_ratios(hy_odd):
    _, m_hat_w = service.weighted_matching_ratios(hy_odd.graph)
    assert m_hat_w == pytest.approx(float(matching_ratios(3, hy_odd.n)[1]))
