# -*- coding: utf-8 -*-


import math

import numpy as np
import pytest

from rmtk import (
    ComplexGaussian,
    MPModel,
    PreconditionError,
    SpectrumSample,
    bulk_containment,
    bulk_indices,
    concentration_test,
    count_interval,
    delocalization_stat,
    eigen_upper_check,
    generate_matrix,
    interval_ratio,
    svd_full,
)


def sample(p, n, seed=0):
    M = generate_matrix(p, n, ComplexGaussian(), seed=seed)
    return SpectrumSample.from_matrix(M)


@pytest.mark.parametrize('p,eps,expected', [
    (10, 0.1, range(1, 9)),
    (1000, 0.1, range(100, 900)),
    (7, 0.2, range(2, 5)),
    (10, 0.5, range(5, 5)),
])
def test_bulk_indices(p, eps, expected):
    """Bulk indices are 0-based and exclude an ``eps`` fraction per side."""

    assert bulk_indices(p, eps) == expected


def test_spectrum_sample():
    """Samples carry their shape and provenance."""

    s = sample(20, 40, seed=3)
    assert (s.p, s.n) == (20, 40)
    assert s.y == 0.5
    assert s.atom == 'complex-gaussian'
    assert np.allclose(s.sigma ** 2 / s.n, s.eigenvalues)
    assert s.model().y == 0.5
    with pytest.raises(ValueError):
        s.eigenvalues[0] = 1.0


@pytest.mark.parametrize('values,n', [
    ([2.0, 1.0], 2),
    ([-1.0, 1.0], 2),
    ([1.0, 2.0, 3.0], 2),
    ([[1.0]], 2),
])
def test_spectrum_sample_invalid(values, n):
    """Eigenvalues are an ascending nonnegative vector of length <= n."""

    with pytest.raises(PreconditionError):
        print(SpectrumSample(values, n))


def test_count_interval():
    """Counts use the closed interval."""

    s = SpectrumSample([1.0, 2.0, 3.0], 3)
    assert count_interval(s, 2.0, 3.0) == 2
    assert count_interval(s, 1.5, 1.6) == 0
    assert count_interval(s, 0.0, 10.0) == 3
    with pytest.raises(PreconditionError):
        print(count_interval(s, 2.0, 1.0))


@pytest.mark.parametrize('seed', [0, 1, 2])
def test_count_interval_additive(seed):
    """Counts add up over disjoint intervals covering a larger one."""

    s = sample(50, 80, seed=seed)
    cuts = np.sort(np.random.default_rng(seed).uniform(0.0, 3.5, size=6))
    parts = [count_interval(s, lo, hi) for lo, hi in zip(cuts, cuts[1:])]
    assert sum(parts) == count_interval(s, cuts[0], cuts[-1])


@pytest.mark.parametrize('seed', [0, 1, 2])
def test_count_interval_monotone(seed):
    """Growing the interval never lowers the count."""

    s = sample(50, 80, seed=seed)
    widths = np.linspace(0.0, 2.0, 9)
    counts = [count_interval(s, 1.0 - w, 1.0 + w) for w in widths]
    assert counts == sorted(counts)


def test_concentration_test():
    """Counts are compared with ``p`` times the MP mass."""

    s = SpectrumSample([0.5, 1.2, 1.8, 3.0], 4)
    result = concentration_test(s, 1.0, 2.0)
    mass = (0.5 + 1.0 / math.pi) - (1.0 / 3.0 + math.sqrt(3.0) / (2 * math.pi))
    assert result.count == 2
    assert result.expected == pytest.approx(4.0 * mass, abs=1e-9)
    assert result.deviation == pytest.approx(abs(2.0 - 4.0 * mass), abs=1e-9)
    assert result.ratio == pytest.approx(result.deviation / 4.0)


def test_concentration_test_window():
    """Intervals must stay ``eps`` away from the edges."""

    s = SpectrumSample([0.5, 1.2, 1.8, 3.0], 4)
    with pytest.raises(PreconditionError):
        print(concentration_test(s, 0.05, 1.0))
    with pytest.raises(PreconditionError):
        print(concentration_test(s, 1.0, 3.95))
    with pytest.raises(PreconditionError):
        print(concentration_test(s, 2.0, 1.0))


def test_concentration_large_sample():
    """A large sample follows the MP law on a macroscopic interval."""

    result = concentration_test(sample(400, 400), 1.0, 2.0)
    assert result.ratio < 0.02


def test_bulk_containment():
    """Bulk eigenvalues stay inside the support."""

    result = bulk_containment(sample(200, 200, seed=1), 0.1)
    assert result.holds
    assert result.margin > 0.0


def test_bulk_containment_margin():
    """The margin is the distance of the bulk to the nearest edge."""

    s = SpectrumSample([0.05, 0.5, 1.0, 3.5, 3.99], 5,)
    result = bulk_containment(s, 0.2, model=MPModel(1.0))
    assert result.holds
    assert result.margin == pytest.approx(0.5)


def test_bulk_containment_empty():
    """An empty bulk trivially holds."""

    result = bulk_containment(SpectrumSample([1.0], 1), 0.5)
    assert result == (True, math.inf)


def test_bulk_containment_invalid():
    """The bulk parameter lies in (0, 1/2]."""

    with pytest.raises(PreconditionError):
        print(bulk_containment(SpectrumSample([1.0], 1), 0.0))


def test_delocalization_stat():
    """Bulk singular vectors are spread out."""

    d = svd_full(generate_matrix(100, 100, ComplexGaussian(), seed=2))
    result = delocalization_stat(d)
    assert result.count > 0
    assert 0.0 < result.raw < 1.0
    assert result.statistic == pytest.approx(10.0 * result.raw)
    assert result.statistic < 10.0 * math.log(100)


def test_delocalization_stat_empty_window():
    """No eigenvalue in the window gives no statistic."""

    d = svd_full(generate_matrix(10, 10, ComplexGaussian(), seed=2))
    assert delocalization_stat(d, eps=2.5) == (None, None, 0)


def test_interval_ratio():
    """Ratios normalize counts by ``n |I|``."""

    s = SpectrumSample([1.0, 2.0, 3.0], 10)
    assert interval_ratio(s, 1.0, 3.0) == pytest.approx(0.15)
    with pytest.raises(PreconditionError):
        print(interval_ratio(s, 1.0, 1.0))


def test_eigen_upper_check():
    """Counts in bulk intervals are of order ``n |I|``."""

    s = sample(200, 200, seed=4)
    assert 0.0 < eigen_upper_check(s) < 2.0
    assert eigen_upper_check(s, intervals=[(0.0, 10.0)]) == \
        pytest.approx(200 / (200 * 10.0))


def test_eigen_upper_check_empty_grid():
    """Windows shorter than the shortest interval give no ratio."""

    s = sample(100, 100, seed=5)
    assert eigen_upper_check(s, eps=1.95) == 0.0
