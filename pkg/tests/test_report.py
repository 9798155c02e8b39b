# -*- coding: utf-8 -*-


import json
import math
import os
import pytest

from rmtk import REPORT_SCHEMA, Check, PreconditionError, RunReport


@pytest.mark.parametrize('comparison,value,passed', [
    ('<', 1.0, False),
    ('<', 0.5, True),
    ('<=', 1.0, True),
    ('>', 1.0, False),
    ('>', 2.0, True),
    ('>=', 1.0, True),
])
def test_check_comparison(comparison, value, passed):
    """Checks compare their value against the threshold."""

    assert Check('x', value, 1.0, comparison).passed is passed


def test_check_unknown_comparison():
    """Unknown comparisons are rejected when evaluated."""

    with pytest.raises(PreconditionError):
        print(Check('x', 1.0, 1.0, '==').passed)  # type: ignore


def test_check_frequency():
    """Failure counts turn into a frequency."""

    assert Check('x', 0.02, 0.05, failures=2, trials=100).frequency == 0.02
    assert Check('x', 0.02, 0.05).frequency is None
    assert Check('x', 0.0, 0.05, failures=0, trials=0).frequency is None


def make_report(**kwargs):
    values = dict(
        experiment='gaps',
        config={'experiment': 'gaps', 'trials': 2},
        config_hash='0123456789abcdef' * 4,
        version='0.1.0',
        statistics={'q': math.inf, 'min_gap': 0.25},
        checks=[
            Check('gap_failures', 0.0, 0.1, failures=0, trials=2),
            Check('q_bound_failures', 0.0, 0.0),
        ],
        wall_time=1.5,
    )
    values.update(kwargs)
    return RunReport(**values)


def test_report_json():
    """Reports serialize infinities as strings with sorted keys."""

    data = json.loads(make_report().to_json())
    assert data['schema'] == REPORT_SCHEMA
    assert data['statistics']['q'] == 'inf'
    assert data['passed'] is True
    assert data['checks'][0]['frequency'] == 0.0
    assert list(data) == sorted(data)


def test_report_round_trip(tempdir):
    """Written reports read back to the same document."""

    report = make_report()
    path = os.path.join(tempdir.path, 'report.json')
    report.write(path)
    again = RunReport.read(path)
    assert again.to_json() == report.to_json()
    assert again.checks == report.checks


def test_report_failed():
    """A single failing check fails the report."""

    report = make_report(checks=[Check('x', 2.0, 1.0, '<')])
    assert not report.passed
    assert report.summary().splitlines() == [
        'gaps (0123456789ab) FAIL',
        '  [!!] x = 2 < 1',
    ]


def test_report_summary():
    """Summaries list every check with failure counts."""

    lines = make_report().summary().splitlines()
    assert lines[0] == 'gaps (0123456789ab) PASS'
    assert lines[1] == '  [ok] gap_failures = 0 <= 0.1 (failures 0/2)'
    assert lines[2] == '  [ok] q_bound_failures = 0 <= 0'


def test_report_malformed(tempdir):
    """Files that are not JSON are rejected."""

    path = os.path.join(tempdir.path, 'report.json')
    with open(path, 'w', encoding='utf-8') as stream:
        stream.write('{not json')
    with pytest.raises(PreconditionError):
        print(RunReport.read(path))


def test_report_wrong_schema():
    """Documents of another schema are rejected."""

    data = make_report().to_dict()
    data['schema'] = 'something-else/1'
    with pytest.raises(PreconditionError):
        print(RunReport.from_dict(data))
