# -*- coding: utf-8 -*-


import itertools
import math

import numpy as np

from typing import (
    Any,
    Dict,
    List,
    NamedTuple,
    Sequence,
    Tuple,
    Union,
)
from typing_extensions import Literal

from ._errors import InsufficientTrials, PreconditionError
from ._mp import MPModel
from ._stats import SpectrumSample


#: Fewest samples accepted by the correlation estimators.
MIN_SAMPLES = 100

# Gauss-Legendre nodes used to average predictions over a bin.
_BIN_NODES = 8

#: Layout of a :py:class:`CorrelationEstimate`.
EstimateKind = Literal['kpoint', 'pair']


def sine_kernel(x: Union[float, np.ndarray],
                y: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Dyson sine kernel ``sin(pi (x - y)) / (pi (x - y))``, equal to 1 on
    the diagonal.

    .. versionadded:: 0.1

    """
    value = np.sinc(np.subtract(x, y))
    if np.ndim(value) == 0:
        return float(value)
    return value


def sine_det_prediction(k: int, alpha: np.ndarray) -> np.ndarray:
    """``det(K(alpha_i, alpha_j))_{i,j <= k}`` for each point of a grid.

    :param alpha: Array of shape ``(..., k)``.
    :return: Array of shape ``alpha.shape[:-1]``.

    .. versionadded:: 0.1

    """

    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape[-1] != k:
        raise PreconditionError('Grid points must have %d coordinates.' % k)
    kernel = np.sinc(alpha[..., :, None] - alpha[..., None, :])
    return np.linalg.det(kernel)


class CorrelationEstimate(NamedTuple):
    """Binned Monte Carlo estimate of a rescaled correlation function.

    ``kind='kpoint'`` holds a ``k``-dimensional histogram over
    ``bins ** k``; ``kind='pair'`` holds the 2-point function in the
    difference ``alpha_2 - alpha_1``.  ``raw`` is the mean number of tuples
    per sample before normalization.

    """

    kind: EstimateKind
    k: int
    u: float
    eps: float
    bins: np.ndarray
    estimate: np.ndarray
    stderr: np.ndarray
    raw: float
    trials: int

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bins[1:] + self.bins[:-1])

    def prediction(self) -> np.ndarray:
        """Sine-kernel prediction for every bin."""
        if self.kind == 'pair':
            x, w = np.polynomial.legendre.leggauss(_BIN_NODES)
            lo, hi = self.bins[:-1], self.bins[1:]
            r = 0.5 * (hi - lo)[:, None] * (x[None, :] + 1.0) + lo[:, None]
            values = 1.0 - np.sinc(r) ** 2
            return 0.5 * values @ w
        grids = np.meshgrid(*([self.centers] * self.k), indexing='ij')
        return sine_det_prediction(self.k, np.stack(grids, axis=-1))

    def l2_error(self) -> float:
        """Root mean square deviation from :py:meth:`prediction`."""
        return float(np.sqrt(np.mean((self.estimate - self.prediction()) **
                                     2)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind,
            'k': self.k,
            'u': self.u,
            'eps': self.eps,
            'bins': self.bins.tolist(),
            'estimate': self.estimate.tolist(),
            'stderr': self.stderr.tolist(),
            'raw': self.raw,
            'trials': self.trials,
        }


def agreement_fraction(a: CorrelationEstimate, b: CorrelationEstimate,
                       sigmas: float=3.0) -> float:
    """Fraction of bins where two estimates agree within ``sigmas``
    combined standard errors."""
    if a.estimate.shape != b.estimate.shape:
        raise PreconditionError('Estimates use different bins.')
    combined = np.sqrt(a.stderr ** 2 + b.stderr ** 2)
    close = np.abs(a.estimate - b.estimate) <= sigmas * combined
    return float(np.mean(close))


def _validate(samples: Sequence[SpectrumSample], u: float,
              bins: Sequence[float]) -> Tuple[MPModel, np.ndarray]:
    if len(samples) < MIN_SAMPLES:
        raise InsufficientTrials('Need at least %d samples, got %d.' %
                                 (MIN_SAMPLES, len(samples)))
    shapes = {(s.p, s.n) for s in samples}
    if len(shapes) != 1:
        raise PreconditionError('Samples must share their shape.')
    model = samples[0].model()
    if not model.a < u < model.b:
        raise PreconditionError('Energy %g is outside the bulk.' % u)
    edges = np.asarray(bins, dtype=float)
    if edges.ndim != 1 or len(edges) < 2 or np.any(np.diff(edges) <= 0.0):
        raise PreconditionError('Bin edges must be strictly increasing.')
    return model, edges


def _unfold(s: SpectrumSample, model: MPModel, u: float) -> np.ndarray:
    # Mean spacing 1 around u.
    return s.p * float(model.density(u)) * (s.eigenvalues - u)


def _tuple_counts(alpha: np.ndarray, k: int, edges: np.ndarray) -> np.ndarray:
    inside = alpha[(alpha >= edges[0]) & (alpha < edges[-1])]
    shape = (len(edges) - 1,) * k
    if len(inside) < k:
        return np.zeros(shape)
    tuples = np.array(list(itertools.permutations(inside, k)))
    counts, _ = np.histogramdd(tuples, bins=[edges] * k)
    return counts


def _volume(edges: np.ndarray, k: int) -> np.ndarray:
    widths = np.diff(edges)
    volume = widths
    for _ in range(k - 1):
        volume = np.multiply.outer(volume, widths)
    return volume


def _summarize(kind: EstimateKind, k: int, u: float, eps: float,
               edges: np.ndarray, per_sample: List[np.ndarray]
               ) -> CorrelationEstimate:
    stack = np.stack(per_sample)
    trials = len(per_sample)
    volume = _volume(edges, k)
    mean = np.sum(stack, axis=0) / trials
    spread = np.std(stack, axis=0, ddof=1) / math.sqrt(trials)
    return CorrelationEstimate(
        kind=kind, k=k, u=u, eps=eps, bins=edges,
        estimate=mean / volume, stderr=spread / volume,
        raw=float(np.sum(mean)), trials=trials,
    )


def kpoint_correlation(samples: Sequence[SpectrumSample], k: int, u: float,
                       bins: Sequence[float]) -> CorrelationEstimate:
    """Estimate the rescaled ``k``-point correlation at energy ``u``.

    Eigenvalues are unfolded as ``alpha = p rho(u) (lambda - u)`` and every
    ordered tuple of distinct eigenvalues falling in the box ``bins ** k``
    is counted.  The estimate is the mean count per sample divided by the
    cell volume, so it converges to ``det(K(alpha_i, alpha_j))`` in the
    bulk.

    :param k: 1, 2 or 3.
    :param bins: Bin edges in the unfolded coordinate, shared by every axis.

    .. versionadded:: 0.1

    """

    if k not in (1, 2, 3):
        raise PreconditionError('Correlation order must be 1, 2 or 3.')
    model, edges = _validate(samples, u, bins)
    per_sample = [
        _tuple_counts(_unfold(s, model, u), k, edges) for s in samples
    ]
    return _summarize('kpoint', k, u, 0.0, edges, per_sample)


def _energies(u: float, eps: float, points: int) -> np.ndarray:
    return u - eps + eps * (2.0 * np.arange(points) + 1.0) / points


def averaged_correlation(samples: Sequence[SpectrumSample], k: int, u: float,
                         eps: float, bins: Sequence[float],
                         points: int=21) -> CorrelationEstimate:
    """Like :py:func:`kpoint_correlation`, averaged over energies ``u'``
    uniform in ``[u - eps, u + eps]`` (midpoint rule with ``points`` nodes).

    Each ``u'`` unfolds with its own local density.  ``eps = 0`` reduces to
    the pointwise estimate.

    .. versionadded:: 0.1

    """

    if k not in (1, 2, 3):
        raise PreconditionError('Correlation order must be 1, 2 or 3.')
    if eps < 0.0:
        raise PreconditionError('Window half-width must be nonnegative.')
    model, edges = _validate(samples, u, bins)
    if u - eps <= model.a or u + eps >= model.b:
        raise PreconditionError('Averaging window leaves the bulk.')
    if eps == 0.0:
        return kpoint_correlation(samples, k, u, bins)
    energies = _energies(u, eps, points)
    per_sample = []
    for s in samples:
        total = sum(
            _tuple_counts(_unfold(s, model, e), k, edges) for e in energies
        )
        per_sample.append(total / points)
    return _summarize('kpoint', k, u, eps, edges, per_sample)


def pair_correlation(samples: Sequence[SpectrumSample], u: float,
                     bins: Sequence[float], window: float=4.0,
                     eps: float=0.0,
                     points: int=21) -> CorrelationEstimate:
    """2-point function in the difference variable.

    Reference eigenvalues are those with ``|alpha| <= window``; for each, the
    differences ``alpha_j - alpha_i`` (``j != i``) are histogrammed.  Counts
    are normalized by the number of reference eigenvalues and the bin
    width, so the estimate converges to ``1 - sinc(r)^2``.  With ``eps > 0``
    the counts are averaged over energies in ``[u - eps, u + eps]``.

    Standard errors use the delta method for the ratio of per-sample pair
    counts to reference counts.

    .. versionadded:: 0.1

    """

    model, edges = _validate(samples, u, bins)
    if eps > 0.0 and (u - eps <= model.a or u + eps >= model.b):
        raise PreconditionError('Averaging window leaves the bulk.')
    energies = _energies(u, eps, points) if eps > 0.0 else np.array([u])
    pairs, references = [], []
    for s in samples:
        counts = np.zeros(len(edges) - 1)
        total = 0
        for e in energies:
            alpha = _unfold(s, model, e)
            ref = np.flatnonzero(np.abs(alpha) <= window)
            total += len(ref)
            if not len(ref):
                continue
            diffs = alpha[None, :] - alpha[ref][:, None]
            diffs[np.arange(len(ref)), ref] = np.nan
            hist, _ = np.histogram(diffs[~np.isnan(diffs)], bins=edges)
            counts += hist
        pairs.append(counts / len(energies))
        references.append(total / len(energies))
    c = np.stack(pairs)
    r = np.asarray(references, dtype=float)
    trials = len(samples)
    if np.sum(r) == 0.0:
        raise PreconditionError('No eigenvalue falls in the window.')
    ratio = np.sum(c, axis=0) / np.sum(r)
    widths = np.diff(edges)
    residual = c - ratio[None, :] * r[:, None]
    spread = np.std(residual, axis=0, ddof=1) / math.sqrt(trials) / \
        np.mean(r)
    return CorrelationEstimate(
        kind='pair', k=2, u=u, eps=eps, bins=edges,
        estimate=ratio / widths, stderr=spread / widths,
        raw=float(np.mean(np.sum(c, axis=1))), trials=trials,
    )

