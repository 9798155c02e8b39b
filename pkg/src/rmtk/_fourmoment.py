# -*- coding: utf-8 -*-


import functools
import math

import numpy as np

from numpy.polynomial import hermite_e
from scipy import optimize
from typing import (
    Any,
    Dict,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from ._atoms import match_order
from ._errors import InsufficientTrials, PreconditionError, RMTError
from ._seeding import trial_seed
from ._spectral import EnsembleSpec, generate_matrix, spectrum
from ._stats import DEFAULT_EPS, bulk_indices


#: Highest derivative order covered by the certificate.
DERIVATIVE_ORDER = 5


@functools.lru_cache(maxsize=None)
def gaussian_derivative_bound(m: int) -> float:
    """``sup_t |d^m/dt^m exp(-t^2 / 2)| = sup_t |He_m(t) exp(-t^2 / 2)|``.

    A grid search locates the maximum, which is then polished with a
    bounded scalar minimization.

    """

    if m < 0:
        raise PreconditionError('Derivative order must be nonnegative.')
    coefficients = [0.0] * m + [1.0]

    def magnitude(t: float) -> float:
        return abs(hermite_e.hermeval(t, coefficients)) * math.exp(-t * t / 2)

    grid = np.linspace(-12.0, 12.0, 24001)
    values = np.abs(hermite_e.hermeval(grid, coefficients)) * \
        np.exp(-grid ** 2 / 2)
    t0 = float(grid[np.argmax(values)])
    found = optimize.minimize_scalar(
        lambda t: -magnitude(t), bounds=(t0 - 1e-3, t0 + 1e-3),
        method='bounded', options={'xatol': 1e-12},
    )
    return max(float(np.max(values)), magnitude(float(found.x)))


class TestFunctionSpec:
    """Product of Gaussian bumps ``G(x) = prod_j exp(-(x_j - mu_j)^2 / 2w^2)``.

    ``G`` acts on ``(n lambda_{i_1}, ..., n lambda_{i_k})``.  Its derivative
    certificate bounds ``|nabla^j G|`` (Frobenius norm of the ``j``-th
    derivative tensor) for ``j = 0..5``.

    .. versionadded:: 0.1

    """

    __test__ = False

    def __init__(self, centers: Sequence[float], width: float) -> None:
        if not len(centers):
            raise PreconditionError('A test function needs a center.')
        if not width > 0.0 or not math.isfinite(width):
            raise PreconditionError('Width must be positive and finite.')
        self.centers = tuple(float(c) for c in centers)
        self.width = float(width)

    @property
    def k(self) -> int:
        return len(self.centers)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.k:
            raise PreconditionError('Expected %d arguments.' % self.k)
        z = (x - np.asarray(self.centers)) / self.width
        return np.exp(-0.5 * np.sum(z * z, axis=-1))

    def certificate(self) -> List[float]:
        """Bounds on ``|nabla^j G|`` for ``j = 0..5``.

        Each entry of the ``j``-th derivative tensor is a product of
        one-dimensional Gaussian derivatives, so it is at most
        ``w^-j max prod_i c_{a_i}`` over multi-indices ``|a| = j``; the
        tensor has ``k^j`` entries.

        """

        bounds = []
        for j in range(DERIVATIVE_ORDER + 1):
            best = _best_product(j, self.k)
            bounds.append(math.sqrt(self.k ** j) * best / self.width ** j)
        return bounds

    def satisfies(self, n: int, c0: float, order: int=4,
                  c1: Optional[float]=None) -> bool:
        """Check the derivative bounds required for a comparison at size ``n``.

        With ``order=4``, every bound must be at most ``n^c0``.  With
        ``order=3`` (atoms matching to third order only), the ``j``-th bound
        must be at most ``n^(-j c1)``.

        """

        bounds = self.certificate()
        if order == 4:
            return all(b <= n ** c0 for b in bounds)
        if order == 3:
            if c1 is None or c1 <= 0.0:
                raise PreconditionError('Order 3 needs a positive c1.')
            return all(b <= n ** (-j * c1) for j, b in enumerate(bounds))
        raise PreconditionError('Matching order must be 3 or 4.')

    def to_dict(self) -> Dict[str, Any]:
        return {'centers': list(self.centers), 'width': self.width}

    def __repr__(self) -> str:
        return '<TestFunctionSpec centers=%r width=%g>' % (self.centers,
                                                          self.width)


def _partitions(j: int, k: int) -> Iterable[Tuple[int, ...]]:
    if k == 1:
        yield (j,)
        return
    for first in range(j + 1):
        for rest in _partitions(j - first, k - 1):
            yield (first,) + rest


def _best_product(j: int, k: int) -> float:
    return max(
        math.prod(gaussian_derivative_bound(a) for a in parts)
        for parts in _partitions(j, k)
    )


def random_test_functions(count: int, centers: Sequence[float],
                          rng: np.random.Generator, spread: float=4.0,
                          widths: Tuple[float, float]=(1.0, 4.0)
                          ) -> List[TestFunctionSpec]:
    """Draw ``count`` independent test functions around ``centers``.

    Each center is shifted uniformly within ``+/- spread`` and the width is
    uniform in ``widths``; widths stay at least 1 in the ``n lambda`` scale.

    .. versionadded:: 0.1

    """

    if count < 1:
        raise PreconditionError('Need at least one test function.')
    if widths[0] < 1.0 or widths[1] < widths[0]:
        raise PreconditionError('Widths must satisfy 1 <= low <= high.')
    anchors = np.asarray(centers, dtype=float)
    functions = []
    for _ in range(count):
        shift = rng.uniform(-spread, spread, size=anchors.shape)
        width = float(rng.uniform(*widths))
        functions.append(TestFunctionSpec(anchors + shift, width))
    return functions


def four_moment_trial(spec: EnsembleSpec, indices: Sequence[int],
                      functions: Sequence[TestFunctionSpec],
                      seed: np.random.SeedSequence) -> np.ndarray:
    """Evaluate every test function on ``n lambda_i`` of one sample."""
    M = generate_matrix(spec.p, spec.n, spec.law(), seed)
    lam = spectrum(M) ** 2 / M.n
    x = M.n * lam[list(indices)]
    return np.array([G(x) for G in functions], dtype=float)


class FourMomentResult(NamedTuple):
    """One comparison of ``E G`` between two ensembles.

    ``match`` is the largest order (up to 4) to which the two atom laws
    match, or ``None`` when their moments are not available.

    """

    atom_a: str
    atom_b: str
    mean_a: float
    mean_b: float
    delta: float
    stderr: float
    trials: int
    match: Optional[int]
    function: TestFunctionSpec

    @property
    def sigmas(self) -> float:
        """``delta`` in units of its standard error."""
        if self.stderr == 0.0:
            return 0.0 if self.delta == 0.0 else math.inf
        return self.delta / self.stderr

    def to_dict(self) -> Dict[str, Any]:
        return {
            'atom_a': self.atom_a,
            'atom_b': self.atom_b,
            'mean_a': self.mean_a,
            'mean_b': self.mean_b,
            'delta': self.delta,
            'stderr': self.stderr,
            'trials': self.trials,
            'match': self.match,
            'function': self.function.to_dict(),
        }


def matched_order(spec_a: EnsembleSpec, spec_b: EnsembleSpec) -> Optional[int]:
    try:
        a, b = spec_a.law(), spec_b.law()
        order = 0
        for k in range(1, 5):
            if not match_order(a, b, k).matched:
                break
            order = k
    except RMTError:
        return None
    return order


def _check(spec_a: EnsembleSpec, spec_b: EnsembleSpec,
           indices: Sequence[int], trials: int, eps: float) -> None:
    if (spec_a.p, spec_a.n) != (spec_b.p, spec_b.n):
        raise PreconditionError('Ensembles must share their shape.')
    if trials < 2:
        raise InsufficientTrials('A standard error needs two trials.')
    bulk = bulk_indices(min(spec_a.p, spec_a.n), eps)
    for i in indices:
        if i not in bulk:
            raise PreconditionError('Index %d is outside the bulk.' % i)


def summarize(values_a: np.ndarray, values_b: np.ndarray,
              spec_a: EnsembleSpec, spec_b: EnsembleSpec,
              functions: Sequence[TestFunctionSpec],
              match: Optional[int]) -> List[FourMomentResult]:
    """Turn ``(trials, functions)`` value arrays into comparisons."""
    trials = values_a.shape[0]
    results = []
    for f, G in enumerate(functions):
        a, b = values_a[:, f], values_b[:, f]
        mean_a = math.fsum(a) / trials
        mean_b = math.fsum(b) / len(b)
        stderr = math.sqrt(np.var(a, ddof=1) / trials +
                           np.var(b, ddof=1) / len(b))
        results.append(FourMomentResult(
            atom_a=spec_a.atom, atom_b=spec_b.atom,
            mean_a=mean_a, mean_b=mean_b, delta=abs(mean_a - mean_b),
            stderr=stderr, trials=trials, match=match, function=G,
        ))
    return results


def four_moment_contrast(spec_a: EnsembleSpec, spec_b: EnsembleSpec,
                         indices: Sequence[int],
                         functions: Sequence[TestFunctionSpec],
                         trials: int, seed_a: int=0, seed_b: int=1,
                         eps: float=DEFAULT_EPS) -> List[FourMomentResult]:
    """:py:func:`four_moment_compare` for several test functions evaluated on
    the same samples."""
    _check(spec_a, spec_b, indices, trials, eps)
    for G in functions:
        if G.k != len(indices):
            raise PreconditionError('Test function arity must match the '
                                    'number of indices.')
    values_a = np.stack([
        four_moment_trial(spec_a, indices, functions, trial_seed(seed_a, t))
        for t in range(trials)
    ])
    values_b = np.stack([
        four_moment_trial(spec_b, indices, functions, trial_seed(seed_b, t))
        for t in range(trials)
    ])
    return summarize(values_a, values_b, spec_a, spec_b, functions,
                     matched_order(spec_a, spec_b))


def four_moment_compare(spec_a: EnsembleSpec, spec_b: EnsembleSpec,
                        indices: Sequence[int], G: TestFunctionSpec,
                        trials: int, seed_a: int=0, seed_b: int=1,
                        eps: float=DEFAULT_EPS,
                        target_stderr: Optional[float]=None
                        ) -> FourMomentResult:
    """Estimate ``|E_A G(n lambda_i) - E_B G(n lambda_i)|``.

    Trial ``t`` of ensemble A is seeded from ``(seed_a, t)`` and likewise for
    B, so identical ensembles with identical seeds give ``delta == 0``
    exactly.

    :param indices: 0-based bulk indices ``i_1..i_k``.
    :param target_stderr: When given, raise if the achieved standard error
     is larger.
    :raises InsufficientTrials: Fewer than two trials, or ``target_stderr``
     not reached.

    .. versionadded:: 0.1

    """

    result, = four_moment_contrast(spec_a, spec_b, indices, [G], trials,
                                   seed_a, seed_b, eps)
    if target_stderr is not None and result.stderr > target_stderr:
        raise InsufficientTrials(
            'Standard error %.3g exceeds the target %.3g; increase trials.' %
            (result.stderr, target_stderr)
        )
    return result
