# -*- coding: utf-8 -*-


import math

import numpy as np
import pytest

from rmtk import (
    EnsembleSpec,
    FourMomentResult,
    InsufficientTrials,
    PreconditionError,
    TestFunctionSpec,
    four_moment_compare,
    four_moment_contrast,
    random_test_functions,
)
from rmtk._fourmoment import gaussian_derivative_bound, matched_order


@pytest.mark.parametrize('m,expected', [
    (0, 1.0),
    (1, math.exp(-0.5)),
    (2, 1.0),
    (4, 3.0),
])
def test_gaussian_derivative_bound(m, expected):
    """Suprema of Gaussian derivatives match their closed forms."""

    assert gaussian_derivative_bound(m) == pytest.approx(expected, rel=1e-9)


def test_gaussian_derivative_bound_negative():
    """Derivative orders are nonnegative."""

    with pytest.raises(PreconditionError):
        print(gaussian_derivative_bound(-1))


def test_certificate():
    """Bounds scale with the width and the number of arguments."""

    bounds = TestFunctionSpec([0.0], 1.0).certificate()
    assert len(bounds) == 6
    assert bounds[0] == pytest.approx(1.0)
    assert bounds[1] == pytest.approx(math.exp(-0.5))

    wide = TestFunctionSpec([0.0, 1.0], 2.0).certificate()
    assert wide[0] == pytest.approx(1.0)
    assert wide[1] == pytest.approx(math.sqrt(2.0) * math.exp(-0.5) / 2.0)


def test_satisfies():
    """Wide bumps satisfy the derivative bounds, narrow ones may not."""

    wide = TestFunctionSpec([10.0], 4.0)
    assert wide.satisfies(100, 0.0)
    assert wide.satisfies(100, 0.0, order=3, c1=0.1)
    assert not TestFunctionSpec([10.0], 1.0).satisfies(100, 0.0)
    assert TestFunctionSpec([10.0], 1.0).satisfies(100, 0.5)


def test_satisfies_invalid():
    """Third-order checks need ``c1``; other orders are rejected."""

    G = TestFunctionSpec([10.0], 4.0)
    with pytest.raises(PreconditionError):
        print(G.satisfies(100, 0.0, order=3))
    with pytest.raises(PreconditionError):
        print(G.satisfies(100, 0.0, order=5))


@pytest.mark.parametrize('centers,width', [
    ([], 1.0),
    ([1.0], 0.0),
    ([1.0], math.inf),
])
def test_test_function_invalid(centers, width):
    """Test functions need a center and a positive finite width."""

    with pytest.raises(PreconditionError):
        print(TestFunctionSpec(centers, width))


def test_test_function_call():
    """Bumps equal 1 at their center."""

    G = TestFunctionSpec([1.0, 2.0], 2.0)
    assert G(np.array([1.0, 2.0])) == pytest.approx(1.0)
    assert G(np.array([3.0, 2.0])) == pytest.approx(math.exp(-0.5))
    with pytest.raises(PreconditionError):
        print(G(np.array([1.0])))


def test_random_test_functions():
    """Random bumps stay near their anchors with admissible widths."""

    rng = np.random.default_rng(0)
    functions = random_test_functions(5, [10.0, 12.0], rng, spread=1.0,
                                      widths=(1.5, 3.0))
    assert len(functions) == 5
    for G in functions:
        assert G.k == 2
        assert 1.5 <= G.width <= 3.0
        assert abs(G.centers[0] - 10.0) <= 1.0
        assert abs(G.centers[1] - 12.0) <= 1.0


def test_random_test_functions_invalid():
    """Counts are positive and widths stay at least 1."""

    rng = np.random.default_rng(0)
    with pytest.raises(PreconditionError):
        print(random_test_functions(0, [10.0], rng))
    with pytest.raises(PreconditionError):
        print(random_test_functions(1, [10.0], rng, widths=(0.5, 2.0)))


SPEC = EnsembleSpec('complex-gaussian', 20, 30)


def test_compare_identical():
    """Identical ensembles with identical seeds give zero difference."""

    G = TestFunctionSpec([20.0], 4.0)
    result = four_moment_compare(SPEC, SPEC, [10], G, 3, seed_a=5, seed_b=5)
    assert result.delta == 0.0
    assert result.sigmas == 0.0
    assert result.trials == 3
    assert result.match == 4
    assert result.to_dict()['function'] == {'centers': [20.0], 'width': 4.0}


def test_contrast_many_functions():
    """Several test functions are evaluated on the same samples."""

    other = EnsembleSpec('wishart', 20, 30)
    functions = [TestFunctionSpec([20.0], 4.0), TestFunctionSpec([25.0], 2.0)]
    results = four_moment_contrast(SPEC, other, [10], functions, 3)
    assert [r.function for r in results] == functions
    for r in results:
        assert r.atom_a == 'complex-gaussian'
        assert r.atom_b == 'wishart'
        assert r.delta >= 0.0
        assert r.stderr > 0.0


def test_compare_outside_bulk():
    """Indices must lie in the bulk."""

    G = TestFunctionSpec([1.0], 4.0)
    with pytest.raises(PreconditionError):
        print(four_moment_compare(SPEC, SPEC, [0], G, 3))


def test_compare_shape_mismatch():
    """Both ensembles share their shape."""

    G = TestFunctionSpec([20.0], 4.0)
    other = EnsembleSpec('complex-gaussian', 20, 40)
    with pytest.raises(PreconditionError):
        print(four_moment_compare(SPEC, other, [10], G, 3))


def test_compare_single_trial():
    """A standard error needs two trials."""

    G = TestFunctionSpec([20.0], 4.0)
    with pytest.raises(InsufficientTrials):
        print(four_moment_compare(SPEC, SPEC, [10], G, 1))


def test_compare_target_stderr():
    """An unreachable standard error target is reported."""

    G = TestFunctionSpec([20.0], 4.0)
    with pytest.raises(InsufficientTrials):
        print(four_moment_compare(SPEC, SPEC, [10], G, 3, seed_a=0,
                                  seed_b=1, target_stderr=1e-12))


def test_compare_arity():
    """Test functions take one argument per index."""

    G = TestFunctionSpec([20.0, 21.0], 4.0)
    with pytest.raises(PreconditionError):
        print(four_moment_compare(SPEC, SPEC, [10], G, 3))


def test_matched_order():
    """Rademacher and Gaussian entries agree up to the third moment."""

    assert matched_order(EnsembleSpec('rademacher', 4, 4),
                         EnsembleSpec('gaussian', 4, 4)) == 3
    assert matched_order(EnsembleSpec('nonsense', 4, 4),
                         EnsembleSpec('gaussian', 4, 4)) is None


def test_sigmas_infinite():
    """A difference with zero standard error is infinitely significant."""

    result = FourMomentResult('a', 'b', 0.2, 0.1, 0.1, 0.0, 2, None,
                              TestFunctionSpec([0.0], 1.0))
    assert math.isinf(result.sigmas)
