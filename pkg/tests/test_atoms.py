# -*- coding: utf-8 -*-


import numpy as np
import pytest

from rmtk import (
    ComplexGaussian,
    Discrete,
    MomentTable,
    PreconditionError,
    RealGaussian,
    Truncated,
    UnsupportedMoment,
    gauss_divisible_mix,
    match_order,
    mixed_moment,
    moment_table,
    parse_atom,
    sample_atom,
    truncate_standardize,
)


@pytest.mark.parametrize('name,m,l,expected', [
    ('rademacher', 2, 0, 1.0),
    ('rademacher', 3, 0, 0.0),
    ('rademacher', 4, 0, 1.0),
    ('three-point', 4, 0, 3.0),
    ('skewed-three-point', 3, 0, 2.0),
    ('skewed-three-point', 4, 0, 7.0),
    ('gaussian', 4, 0, 3.0),
    ('gaussian', 0, 2, 0.0),
    ('complex-gaussian', 2, 0, 0.5),
    ('complex-gaussian', 4, 0, 0.75),
    ('complex-gaussian', 2, 2, 0.25),
    ('complex-bernoulli', 0, 2, 0.5),
    ('complex-bernoulli', 1, 1, 0.0),
])
def test_mixed_moment(name, m, l, expected):
    """Mixed moments are exact."""

    assert mixed_moment(parse_atom(name), m, l) == pytest.approx(
        expected, abs=1e-12,
    )


def test_mixed_moment_negative_order():
    """Moment orders must be nonnegative."""

    with pytest.raises(PreconditionError):
        print(RealGaussian().mixed_moment(-1, 0))


def test_discrete_standardized():
    """Discrete laws must have mean 0 and variance 1."""

    with pytest.raises(PreconditionError):
        print(Discrete([0.0, 2.0], [0.5, 0.5]))
    with pytest.raises(PreconditionError):
        print(Discrete([-1.0, 1.0], [0.5, 0.6]))
    with pytest.raises(PreconditionError):
        print(Discrete([-1.0, 1.0], [-0.5, 1.5]))
    with pytest.raises(PreconditionError):
        print(Discrete([], []))


def test_discrete_complex_support():
    """A support off the real axis makes the law complex."""

    law = Discrete([1j, -1j], [0.5, 0.5])
    assert not law.is_real
    assert law.radius == 1.0
    assert law.mixed_moment(0, 2) == 1.0


@pytest.mark.parametrize('name', [
    'rademacher',
    'complex-gaussian',
    'gauss-divisible:t=0.5:base=three-point',
    'truncated:K=3:base=gaussian',
])
def test_sample_standardized(name):
    """Samples have empirical mean near 0 and variance near 1."""

    law = parse_atom(name)
    values = law.sample(np.random.default_rng(1), 40000)
    assert values.dtype == complex
    assert values.shape == (40000,)
    assert abs(values.mean()) < 0.03
    assert np.mean(np.abs(values) ** 2) == pytest.approx(1.0, abs=0.05)


def test_sample_shape():
    """Samples follow the requested shape."""

    law = ComplexGaussian()
    assert law.sample(np.random.default_rng(0), (3, 4)).shape == (3, 4)


def test_sample_atom():
    """A single draw lies on the support."""

    law = parse_atom('three-point')
    value = sample_atom(law, np.random.default_rng(0))
    assert isinstance(value, complex)
    assert np.min(np.abs(law.support - value)) == 0.0


def test_gauss_divisible_moments():
    """Mixing moments combine the base and the Gaussian."""

    law = gauss_divisible_mix(parse_atom('rademacher'), 0.5)
    assert law.t == 0.5
    assert law.mixed_moment(2, 0) == pytest.approx(1.0)
    assert law.mixed_moment(3, 0) == pytest.approx(0.0)
    assert law.mixed_moment(4, 0) == pytest.approx(2.5)


@pytest.mark.parametrize('t', [0.0, 1.0, -0.1])
def test_gauss_divisible_weight(t):
    """The mixing weight lies strictly between 0 and 1."""

    with pytest.raises(PreconditionError):
        print(gauss_divisible_mix(parse_atom('rademacher'), t))


def test_truncate_bounded_law():
    """Laws that already fit in the disk are left alone."""

    law = truncate_standardize(parse_atom('rademacher'), 3.0)
    assert isinstance(law, Truncated)
    assert law.shift == 0.0
    assert law.rescale == 1.0
    assert match_order(law, parse_atom('rademacher'), 4).matched

    # Truncating again is a no-op.
    assert truncate_standardize(law, 3.0) is law


@pytest.mark.parametrize('base', ['gaussian', 'complex-gaussian'])
def test_truncate_gaussian(base):
    """Truncation restores mean 0 and variance 1."""

    law = truncate_standardize(parse_atom(base), 3.0)
    total = law.mixed_moment(2, 0) + law.mixed_moment(0, 2)
    assert total == pytest.approx(1.0, abs=1e-9)
    assert law.mixed_moment(1, 0) == pytest.approx(0.0, abs=1e-12)
    assert law.rescale > 1.0
    assert law.radius <= 6.0


def test_truncate_small_radius():
    """Truncation radii below 3 are rejected."""

    with pytest.raises(PreconditionError):
        print(truncate_standardize(RealGaussian(), 2.0))


def test_truncate_nested():
    """Nested truncations that cut into the support are unsupported."""

    inner = truncate_standardize(RealGaussian(), 3.0)
    with pytest.raises(UnsupportedMoment):
        print(truncate_standardize(inner, 3.0))


def test_moment_table():
    """Tables hold every mixed moment up to the order."""

    table = moment_table(parse_atom('complex-gaussian'), 4)
    assert table.order == 4
    assert len(table.entries) == 15
    assert table[2, 2] == pytest.approx(0.25)


def test_moment_table_invalid():
    """Tables must be complete and standardized."""

    with pytest.raises(PreconditionError):
        print(MomentTable(2, {(0, 0): 1.0, (1, 0): 0.0, (0, 1): 0.0}))
    with pytest.raises(PreconditionError):
        print(MomentTable(1, {(0, 0): 1.0, (1, 0): 0.5, (0, 1): 0.0}))
    with pytest.raises(PreconditionError):
        print(MomentTable(0, {(0, 0): 1.0}))


def test_match_order():
    """Laws match up to the first differing moment."""

    rademacher, gaussian = parse_atom('rademacher'), parse_atom('gaussian')
    assert match_order(rademacher, gaussian, 3).matched
    report = match_order(rademacher, gaussian, 4)
    assert not report.matched
    assert (report.m, report.l) == (4, 0)
    assert report.discrepancy == pytest.approx(2.0)


def test_match_order_table():
    """Tables and laws can be mixed; tables cap the order."""

    table = moment_table(parse_atom('three-point'), 3)
    assert match_order(parse_atom('gaussian'), table, 3).matched
    with pytest.raises(PreconditionError):
        print(match_order(parse_atom('gaussian'), table, 4))
    with pytest.raises(PreconditionError):
        print(match_order(table, table, 0))


PAIRS = [
    ('rademacher', 'gaussian'),
    ('three-point', 'gaussian'),
    ('skewed-three-point', 'three-point'),
    ('complex-skewed-three-point', 'complex-gaussian'),
    ('complex-three-point', 'wishart'),
]


@pytest.mark.parametrize('a,b', PAIRS)
@pytest.mark.parametrize('k', [1, 2, 3, 4, 5, 6])
def test_match_order_symmetric(a, b, k):
    """Swapping the laws gives the same report."""

    a, b = parse_atom(a), parse_atom(b)
    assert match_order(a, b, k) == match_order(b, a, k)


@pytest.mark.parametrize('a,b', PAIRS)
def test_match_order_monotone(a, b):
    """A match at order k implies one at every lower order."""

    a, b = parse_atom(a), parse_atom(b)
    reports = [match_order(a, b, k) for k in range(1, 7)]
    discrepancies = [r.discrepancy for r in reports]
    assert discrepancies == sorted(discrepancies)
    matched = [r.matched for r in reports]
    assert matched == sorted(matched, reverse=True)


@pytest.mark.parametrize('name,m,l', [
    ('gaussian', 2, 0),
    ('gaussian', 4, 0),
    ('complex-skewed-three-point', 3, 0),
    ('gauss-divisible:t=0.5:base=three-point', 4, 0),
])
@pytest.mark.parametrize('size', [10 ** 4, 10 ** 6])
def test_sample_moment_convergence(name, m, l, size):
    """Empirical moments sit within a few standard errors of the exact
    value, which shrink like ``1 / sqrt(N)``."""

    law = parse_atom(name)
    values = law.sample(np.random.default_rng(8), size)
    terms = values.real ** m * values.imag ** l
    stderr = np.std(terms) / np.sqrt(size)
    assert abs(np.mean(terms) - mixed_moment(law, m, l)) < 5.0 * stderr
