import pytest

from apsbench.exc.base import ApsBenchException
from apsbench.exc.verification import InvalidSuiteSizeException, UnknownFaultException
from apsbench.services.verification_service import FAULTS, VerificationService


@pytest.fixture
def verification():
    return VerificationService(max_n=5, graphs=6, seed=3)


def test_all_suites_pass(verification):
    summary = verification.run()
    assert summary.passed, summary.failures
    assert [result.name for result in summary.results] == [
        "oracle_equivalence",
        "zz_formulas",
        "binomial_identity",
        "edge_bound",
        "matching_feasibility",
        "spectral_bounds",
        "henning_yeo_structure",
    ]
    assert all(result.checked > 0 for result in summary.results)


def test_injected_fault_is_detected():
    faulty = VerificationService(max_n=5, graphs=6, seed=3, fault=FAULTS[0])
    result = faulty.check_oracle_equivalence()
    assert not result.passed
    assert not faulty.run().passed


def test_unknown_fault_rejected():
    with pytest.raises(UnknownFaultException) as exc_info:
        VerificationService(fault="flip_sign")
    assert isinstance(exc_info.value, ApsBenchException)
    assert "flip_sign" in exc_info.value.message


@pytest.mark.parametrize(
    "options",
    [{"graphs": 0}, {"assignments": 0}, {"max_n": 1}, {"bound_graphs": 0}, {"bound_max_n": 1}],
)
def test_suite_sizes_validated(options):
    with pytest.raises(InvalidSuiteSizeException):
        VerificationService(**options)


def test_assignment_count_scales_oracle_checks():
    # two-vertex graphs carry exactly one edge
    single = VerificationService(max_n=2, graphs=4, seed=1, assignments=1).check_oracle_equivalence()
    triple = VerificationService(max_n=2, graphs=4, seed=1, assignments=3).check_oracle_equivalence()
    assert single.passed and triple.passed
    assert (single.checked, triple.checked) == (4, 12)


def test_bound_suite_sized_separately():
    service = VerificationService(max_n=4, graphs=2, seed=1, assignments=1, bound_graphs=5)
    result = service.check_spectral_bounds()
    assert result.passed, result.failures
    # two bound checks and two ansatz checks per graph
    assert result.checked == 5 * 4


def test_henning_yeo_structure_suite(verification):
    result = verification.check_henning_yeo()
    assert result.passed, result.failures
    assert result.checked == 20


def test_runs_are_reproducible():
    first = VerificationService(max_n=5, graphs=4, seed=9).check_matchings()
    second = VerificationService(max_n=5, graphs=4, seed=9).check_matchings()
    assert first == second


@pytest.mark.slow
def test_closed_forms_agree_with_oracle_on_many_graphs():
    result = VerificationService(max_n=7, graphs=500, seed=11, assignments=10).check_oracle_equivalence()
    assert result.passed, result.failures[:5]


@pytest.mark.slow
def test_spectral_bounds_hold_on_many_graphs():
    service = VerificationService(max_n=10, graphs=1, seed=12, assignments=1, bound_graphs=200)
    result = service.check_spectral_bounds()
    assert result.passed, result.failures[:5]
    assert result.checked == 200 * 4
