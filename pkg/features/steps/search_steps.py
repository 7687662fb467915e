"""BDD steps for code_search feature."""
import pytest
from pytest_bdd import parsers, scenario, then, when

from src.bounds import best_upper_bound
from src.search import max_code_exact, verify_code


@scenario("../code_search.feature", "Exact search meets the binary bound")
def test_exact_search_meets_binary_bound():
    """Test binary optima equal the best bound."""
    pass


@scenario("../code_search.feature", "The witness corrects the deletions it was searched for")
def test_witness_verifies():
    """Test the optimal code found by search verifies."""
    pass


@scenario("../code_search.feature", "Codes correcting all but one symbol")
def test_extremal_code():
    """Test S_q(n, n-1) = q."""
    pass


@pytest.fixture
def context():
    """Shared context for BDD scenarios."""

    class Context:
        def __init__(self):
            self.params = None
            self.result = None

    return Context()


@when(parsers.parse("I search for the largest code with n={n:d}, q={q:d}, t={t:d}"))
def run_search(context, n, q, t):
    """Run the branch and bound search."""
    context.params = (n, q, t)
    context.result = max_code_exact(n, q, t)


@then("the search is exact")
def check_exact(context):
    """Verify the search finished within its limits."""
    assert context.result.exact


@then("the optimum equals the best upper bound")
def check_bound_met(context):
    """Verify the bound is tight."""
    assert context.result.optimum == best_upper_bound(*context.params).value


@then("the witness passes verification")
def check_witness(context):
    """Verify the optimal code by both checks."""
    report = verify_code(context.result.witness)
    assert report.passed
    assert report.agree


@then(parsers.parse("the optimum is {value:d}"))
def check_optimum(context, value):
    """Verify the optimum."""
    assert context.result.optimum == value
