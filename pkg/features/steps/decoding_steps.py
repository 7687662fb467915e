"""BDD steps for deletion_decoding feature."""
import json

import pytest
from pytest_bdd import given, parsers, scenario, then, when

from src.channel import ChannelConfig, apply_deletions, roundtrip_exhaustive, roundtrip_random
from src.codes import build_code
from src.errors import DecodingError
from src.multiset_core import MultisetWord


@scenario("../deletion_decoding.feature", "Recover two deletions with a cyclic code")
def test_recover_two_deletions():
    """Test decoding two deletions from a cyclic code."""
    pass


@scenario("../deletion_decoding.feature", "Reject more deletions than the code corrects")
def test_reject_too_many_deletions():
    """Test decoding beyond the code's capability fails."""
    pass


@scenario("../deletion_decoding.feature", "Every pattern within capability decodes")
def test_every_pattern_decodes():
    """Test the exhaustive channel on a ternary code."""
    pass


@scenario("../deletion_decoding.feature", "Random transmissions are reproducible")
def test_random_transmissions_reproducible():
    """Test seeded random runs do not depend on the worker count."""
    pass


@pytest.fixture
def context():
    """Shared context for BDD scenarios."""

    class Context:
        def __init__(self):
            self.code = None
            self.result = None
            self.error_message = None
            self.reports = []

    return Context()


def _word(text):
    return MultisetWord(tuple(json.loads(text)))


@given(parsers.parse("a cyclic code with n={n:d}, q={q:d}, t={t:d} and residue {a:d}"))
def cyclic_code(context, n, q, t, a):
    """Build a cyclic B_t code."""
    context.code = build_code("cyclic", n, q, t, a)


@given(parsers.parse("a {kind} code with n={n:d} and t={t:d}"))
def implied_alphabet_code(context, kind, n, t):
    """Build a binary or ternary code with the largest residue class."""
    context.code = build_code(kind, n, None, t, None)


@when(parsers.parse("the codeword {codeword} loses the symbols {pattern}"))
def transmit(context, codeword, pattern):
    """Delete a pattern and decode what is left."""
    received = apply_deletions(_word(codeword), _word(pattern))
    try:
        context.result = context.code.decode(received)
    except DecodingError as e:
        context.error_message = str(e)


@when(parsers.parse("every codeword goes through every pattern of up to {t:d} deletions"))
def exhaustive_run(context, t):
    """Run the exhaustive channel."""
    context.reports.append(roundtrip_exhaustive(context.code, t))


@when(parsers.parse("{trials:d} random transmissions run with seed {seed:d} on {workers:d} worker"))
@when(parsers.parse("{trials:d} random transmissions run with seed {seed:d} on {workers:d} workers"))
def random_run(context, trials, seed, workers):
    """Run the random channel."""
    cfg = ChannelConfig(t_max=context.code.t, mode="random", seed=seed, trials=trials, workers=workers)
    context.reports.append(roundtrip_random(context.code, cfg))


@then(parsers.parse("the decoder returns the codeword {codeword}"))
def check_codeword(context, codeword):
    """Verify the recovered codeword."""
    assert context.error_message is None
    assert context.result.codeword == _word(codeword)


@then(parsers.parse("the decoder reports the deleted multiset {pattern}"))
def check_pattern(context, pattern):
    """Verify the recovered deletion pattern."""
    assert context.result.pattern == _word(pattern)


@then(parsers.parse('decoding fails with "{message}"'))
def check_failure(context, message):
    """Verify decoding failed with the expected message."""
    assert context.result is None
    assert message in context.error_message


@then("no transmission fails")
def check_no_failures(context):
    """Verify every report is clean."""
    assert context.reports
    assert all(report.ok for report in context.reports)


@then("both reports are identical")
def check_identical(context):
    """Verify the reports serialize to the same bytes."""
    first, second = context.reports
    assert first.to_json() == second.to_json()
