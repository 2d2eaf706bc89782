"""The fifteen acceptance criteria, full suite, one pass/fail line each."""

import pytest

from hellycover.acceptance import CHECKS, junit_xml, run_suite
from hellycover.errors import InputError

pytestmark = pytest.mark.acceptance


@pytest.mark.parametrize("number", range(1, len(CHECKS) + 1))
def test_criterion(number):
    result = CHECKS[number - 1]("full")
    print(result.line)
    assert result.number == number
    assert result.cases > 0
    assert result.elapsed < result.limit
    assert result.passed, result.failures[:5]


def test_fifteen_criteria():
    assert len(CHECKS) == 15


def test_fast_suite_and_junit():
    results = run_suite("fast", only={1, 9, 11})
    assert [r.number for r in results] == [1, 9, 11]
    assert all(r.passed for r in results)
    xml = junit_xml(results, "fast")
    assert 'tests="3"' in xml and 'failures="0"' in xml


def test_unknown_suite():
    with pytest.raises(InputError):
        run_suite("")
