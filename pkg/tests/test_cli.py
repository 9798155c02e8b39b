# -*- coding: utf-8 -*-


import os
import pytest

from rmtk import Check, RunReport, main


def test_catalog(capsys):
    """The catalog lists named and parametric atoms."""

    assert main(['catalog']) == 0
    names = capsys.readouterr().out.split()
    assert 'rademacher' in names
    assert 'complex-gaussian' in names
    assert len(names) >= 6


def test_mp_table(capsys):
    """MP tables go to standard output as CSV."""

    assert main(['mp', 'table', '--y', '0.25', '--points', '3']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'x,pdf,cdf'
    assert len(lines) == 4
    assert lines[1].startswith('0.25,')
    assert lines[3].startswith('2.25,')


def test_mp_table_file(tempdir):
    """MP tables can be written to a file."""

    path = os.path.join(tempdir.path, 'mp.csv')
    assert main(['mp', 'table', '--y', '0.5', '--out', path]) == 0
    with open(path, encoding='utf-8') as stream:
        assert len(stream.read().splitlines()) == 402


def test_run_missing_config(tempcwd, capsys):
    """A missing config is a usage error."""

    assert main(['run', 'missing.conf']) == 2
    assert 'missing.conf' in capsys.readouterr().err


def test_run_invalid_config(tempcwd, capsys):
    """Invalid configs name the offending field."""

    with open('bad.conf', 'w', encoding='utf-8') as stream:
        stream.write('experiment = bulk\ntrials = 0\n')
    assert main(['run', 'bad.conf']) == 2
    assert 'experiment.trials' in capsys.readouterr().err


def test_run_non_numeric_atom(tempcwd, capsys):
    """Atoms with non-numeric parameters are schema errors."""

    with open('bad.conf', 'w', encoding='utf-8') as stream:
        stream.write('experiment = mp-test\n'
                     'atoms = gauss-divisible:t=abc:base=rademacher\n')
    assert main(['run', 'bad.conf']) == 2
    assert 'experiment.atoms' in capsys.readouterr().err


def test_run(tempcwd, threads, capsys):
    """Passing runs exit 0 and write their report."""

    with open('identities.conf', 'w', encoding='utf-8') as stream:
        stream.write('experiment = identities\np = 3\nn = 4\ntrials = 3\n')
    assert main(['run', 'identities.conf', '--output', 'out.json']) == 0
    assert capsys.readouterr().out.startswith('identities (')
    assert RunReport.read('out.json').passed


def test_run_failing(tempcwd, threads):
    """A failed threshold exits 1."""

    with open('strict.conf', 'w', encoding='utf-8') as stream:
        stream.write('experiment = identities\np = 3\nn = 4\ntrials = 2\n'
                     'thresholds = residual:0\n')
    assert main(['run', 'strict.conf']) == 1


@pytest.mark.parametrize('passed,code', [
    (True, 0),
    (False, 1),
])
def test_report_show(tempcwd, capsys, passed, code):
    """Stored reports are summarized with the run's exit code."""

    report = RunReport(
        experiment='bulk', config={}, config_hash='f' * 64, version='0.1.0',
        statistics={}, checks=[Check('x', 0.0 if passed else 2.0, 1.0)],
    )
    report.write('report.json')
    assert main(['report', 'show', 'report.json']) == code
    assert capsys.readouterr().out.startswith('bulk (ffffffffffff)')


def test_report_show_malformed(tempcwd):
    """Malformed reports are usage errors."""

    with open('report.json', 'w', encoding='utf-8') as stream:
        stream.write('[]')
    assert main(['report', 'show', 'report.json']) == 2


def test_identities(capsys):
    """The identity suite passes on small instances."""

    assert main(['identities', '--dims', '4x3', '--seeds', '5']) == 0
    out = capsys.readouterr().out
    assert 'skipped: 0' in out


@pytest.mark.parametrize('argv', [
    [],
    ['teleport'],
    ['mp', 'table'],
    ['identities', '--dims', 'square'],
    ['run'],
])
def test_usage_errors(capsys, argv):
    """Bad arguments exit 2 without a traceback."""

    assert main(argv) == 2
    assert capsys.readouterr().err.startswith('rmtk: ')
