# -*- coding: utf-8 -*-


import json
import os

import numpy as np
import pandas as pd
import pytest
import testfixtures

from rmtk import (
    ExperimentConfig,
    PreconditionError,
    RunReport,
    parse_config,
    run_experiment,
    svd_full,
)


def config(*lines):
    return parse_config('\n'.join(lines) + '\n')


def stable(report):
    data = report.to_dict()
    data.pop('wall_time')
    return data


def test_run_reproducible(threads):
    """Reports depend only on the config."""

    c = config('experiment = mp-test', 'atoms = wishart', 'p = 60',
               'n = 100', 'trials = 2', 'per_trial = true')
    first = run_experiment(c, progress=60.0)
    again = run_experiment(c, workers=1, progress=60.0)
    assert stable(first) == stable(again)
    assert first.config_hash == c.config_hash
    assert len(first.per_trial) == 2
    assert first.statistics['fixed_point_residual'] < 1e-12


def test_run_seed_changes_result(threads):
    """Another master seed draws other samples."""

    a = run_experiment(config('experiment = mp-test', 'atoms = wishart',
                              'p = 30', 'n = 40', 'trials = 2'))
    b = run_experiment(config('experiment = mp-test', 'atoms = wishart',
                              'p = 30', 'n = 40', 'trials = 2',
                              'master_seed = 1'))
    assert a.statistics['wishart'] != b.statistics['wishart']


def test_run_per_trial_optional(threads):
    """Per-trial records are only kept on request."""

    report = run_experiment(config('experiment = identities', 'trials = 2'))
    assert report.per_trial is None


def test_run_identities(threads):
    """Finite-n identities hold to rounding error."""

    report = run_experiment(config('experiment = identities', 'p = 3',
                                   'n = 5', 'trials = 10'))
    assert report.passed
    assert report.statistics['max_residual'] < 1e-8
    assert report.statistics['skipped'] == 0


def test_run_bulk_threshold(threads):
    """The bulk margin threshold leaves room for the hard edge."""

    report = run_experiment(config('experiment = bulk', 'p = 40', 'n = 40',
                                   'trials = 2'))
    threshold = report.statistics['margin_threshold']
    assert 0.0 < threshold < 0.05
    margin = [c for c in report.checks if c.name.startswith('margin')]
    assert len(margin) == 1


def test_run_matching(threads):
    """Random feasible targets are matched by small supports."""

    report = run_experiment(config('experiment = matching', 'trials = 3'))
    assert report.statistics['radius_max'] <= 20.0
    assert report.passed


def test_run_unknown_experiment(threads):
    """Unregistered experiments are refused."""

    with pytest.raises(PreconditionError):
        print(run_experiment(ExperimentConfig(experiment='teleport')))


def test_run_writes_output(threads, tempdir):
    """Reports and CSV sidecars land next to each other."""

    output = os.path.join(tempdir.path, 'report.json')
    c = config('experiment = mp-test', 'atoms = wishart', 'p = 20',
               'n = 30', 'trials = 1', 'csv = true', 'output = ' + output,
               'thresholds = ks_single:1, ks_mean:1')
    with testfixtures.LogCapture() as capture:
        report = run_experiment(c)
    capture.check_present(
        ('root', 'INFO', 'Running mp-test (%s).' % c.config_hash),
    )
    assert RunReport.read(output).to_json() == report.to_json()
    with open(output, encoding='utf-8') as stream:
        assert json.load(stream)['config']['p'] == 20
    tempdir.compare([
        'report.json',
        'report.matrix_wishart.csv',
        'report.mp_table.csv',
        'report.spectrum_wishart.csv',
    ])


def test_run_matrix_sidecar(threads, tempdir):
    """The matrix behind the first spectrum is exported entry by entry."""

    output = os.path.join(tempdir.path, 'report.json')
    run_experiment(config('experiment = mp-test', 'atoms = wishart',
                          'p = 4', 'n = 6', 'trials = 1', 'csv = true',
                          'output = ' + output))
    matrix = pd.read_csv(os.path.join(tempdir.path,
                                      'report.matrix_wishart.csv'))
    spectrum = pd.read_csv(os.path.join(tempdir.path,
                                        'report.spectrum_wishart.csv'))
    assert len(matrix) == 24
    A = np.zeros((4, 6), dtype=complex)
    rows, columns = matrix['i'].to_numpy(), matrix['j'].to_numpy()
    A[rows, columns] = matrix['re'].to_numpy() + 1j * matrix['im'].to_numpy()
    assert np.allclose(svd_full(A).sigma, spectrum['sigma'])


def test_run_delocalization_residual(threads):
    """Delocalization runs report their worst decomposition residual."""

    report = run_experiment(config('experiment = delocalization',
                                   'atoms = wishart', 'sizes = 20, 40',
                                   'trials = 2', 'per_trial = true'))
    residual = report.statistics['max_residual']
    assert 0.0 <= residual < 1e-8
    assert residual == max(r['residual'] for r in report.per_trial)


@pytest.mark.parametrize('lines,total', [
    (('experiment = delocalization', 'atoms = wishart', 'sizes = 20, 40',
      'trials = 2'), 4),
    (('experiment = identities', 'atoms = wishart, rademacher', 'p = 3',
      'n = 4', 'trials = 3'), 3),
    (('experiment = bulk', 'atoms = wishart, rademacher', 'p = 10',
      'n = 10', 'trials = 2'), 4),
])
def test_run_progress_total(threads, lines, total):
    """Progress lines count every trial the experiment runs."""

    with testfixtures.LogCapture() as capture:
        run_experiment(config(*lines), progress=60.0)
    capture.check_present(
        ('root', 'INFO', '%d/%d trials complete' % (total, total)),
    )


def test_run_logs_failed_checks(threads):
    """Failed checks are logged as warnings."""

    c = config('experiment = identities', 'p = 3', 'n = 5', 'trials = 2',
               'thresholds = residual:0')
    with testfixtures.LogCapture() as capture:
        report = run_experiment(c)
    assert not report.passed
    warnings = [
        message for _, level, message in capture.actual()
        if level == 'WARNING'
    ]
    capture.clear()
    assert len(warnings) == 7
    assert all(message.startswith('Check ') for message in warnings)


@pytest.mark.parametrize('lines,check', [
    (('experiment = concentration', 'p = 50', 'n = 50', 'trials = 2'),
     'ratio_failures[wishart]'),
    (('experiment = delocalization', 'atoms = wishart', 'sizes = 20, 40',
      'trials = 2'), 'slope_min[wishart]'),
    (('experiment = eigen-upper', 'p = 30', 'n = 30', 'trials = 2'),
     'ratio_max[wishart]'),
    (('experiment = gaps', 'p = 20', 'n = 20', 'trials = 2'),
     'gap_frequency_difference[complex-bernoulli]'),
    (('experiment = correlation', 'p = 20', 'n = 20', 'trials = 100'),
     'agreement[complex-bernoulli]'),
    (('experiment = averaged-correlation', 'atoms = wishart', 'p = 20',
      'n = 20', 'trials = 100', 'window = 0.1'), 'l2_error[wishart]'),
    (('experiment = four-moment', 'p = 20', 'n = 20', 'trials = 3',
      'functions = 2'), 'win_fraction'),
    (('experiment = projection', 'n = 50', 'dimension = 5', 'trials = 3'),
     'far_from_sqrt_d[rademacher]'),
])
def test_run_small(threads, lines, check):
    """Every experiment runs end to end on a small instance."""

    report = run_experiment(config(*lines))
    assert check in [c.name for c in report.checks]
    json.loads(report.to_json())


@pytest.mark.slow
@pytest.mark.parametrize('name', [
    'bulk',
    'concentration',
    'eigen-upper',
    'gaps',
    'identities',
    'matching',
    'mp-test',
    'projection',
])
def test_acceptance(name):
    """Protocol-scale runs pass their declared thresholds."""

    report = run_experiment(config('experiment = ' + name))
    assert report.passed, report.summary()


@pytest.mark.slow
def test_acceptance_delocalization():
    """Largest vector coordinates shrink like ``n^(-1/2)``."""

    report = run_experiment(config('experiment = delocalization',
                                   'atoms = wishart', 'trials = 20'))
    assert report.passed, report.summary()


@pytest.mark.slow
def test_acceptance_correlation():
    """Two ensembles share their pair correlation."""

    report = run_experiment(config('experiment = correlation', 'p = 200',
                                   'n = 200', 'trials = 400', 'u = 2.0',
                                   'bins = 0.0:3.0:12'))
    assert report.passed, report.summary()
