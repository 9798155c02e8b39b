# -*- coding: utf-8 -*-


import logging
import math

import numpy as np

from scipy import optimize
from typing import Optional, Tuple

from ._atoms import (
    AtomDistribution,
    Discrete,
    GaussDivisible,
    MomentTable,
    match_order,
    moment_table,
)
from ._errors import MatchingError, PreconditionError


# Random restarts for the least-squares search.
_STARTS = 16

# Candidates from the search with a larger support radius than this are
# discarded in favour of the explicit construction.
_MAX_SEARCH_RADIUS = 20.0


def _two_point(skew: float) -> Tuple[np.ndarray, np.ndarray]:
    """Standardized two-point law with third moment ``skew``."""
    q = 0.5 * (1.0 - skew / math.sqrt(skew * skew + 4.0))
    points = np.array([-math.sqrt((1.0 - q) / q), math.sqrt(q / (1.0 - q))])
    return points, np.array([q, 1.0 - q])


def _three_point(skew: float,
                 kurtosis: float) -> Tuple[np.ndarray, np.ndarray]:
    """Standardized law on ``{x1, 0, x2}`` with the given third and fourth
    moments.

    Requires ``kurtosis >= 1 + skew**2``; the weight at 0 vanishes on that
    boundary.

    """

    v = kurtosis - skew * skew
    if v < 1.0 - 1e-12:
        raise MatchingError(
            'No law has third moment %g and fourth moment %g.' %
            (skew, kurtosis),
        )
    # The measure x^2 P(dx) is a two-point probability law with mean `skew`
    # and variance `v` whose weights make sum(w/x) vanish.
    r = -skew / math.sqrt(v)
    q = 0.5 * (1.0 + r / math.sqrt(4.0 + r * r))
    x1 = skew - math.sqrt(v * (1.0 - q) / q)
    x2 = skew + math.sqrt(v * q / (1.0 - q))
    w1 = q / (x1 * x1)
    w2 = (1.0 - q) / (x2 * x2)
    w0 = 1.0 - w1 - w2
    if w0 < -1e-12:
        raise MatchingError('Three-point construction left negative mass.',
                            residual=-w0)
    return np.array([x1, 0.0, x2]), np.array([w1, max(w0, 0.0), w2])


def _as_discrete(points: np.ndarray, probs: np.ndarray,
                 name: str) -> Discrete:
    probs = probs / math.fsum(probs)
    return Discrete(points, probs, name=name)


def complexify(law: Discrete, name: Optional[str]=None) -> Discrete:
    """Product law ``(X + iY) / sqrt(2)`` with ``X``, ``Y`` iid ``law``.

    .. versionadded:: 0.1

    """

    if not law.is_real:
        raise PreconditionError('complexify() expects a real law.')
    x, p = law.support.real, law.probs
    points = (x[:, None] + 1j * x[None, :]).ravel() / math.sqrt(2.0)
    probs = (p[:, None] * p[None, :]).ravel()
    return _as_discrete(points, probs, name or 'complex-' + law.name)


def _third_tensor(target: MomentTable) -> np.ndarray:
    T = np.empty((2, 2, 2))
    for a in range(2):
        for b in range(2):
            for c in range(2):
                l = a + b + c
                T[a, b, c] = target[3 - l, l]
    return T


def _directional(cov: np.ndarray, T: np.ndarray) -> Tuple[np.ndarray,
                                                          np.ndarray]:
    """Explicit 8-point law with covariance ``cov`` and third moments ``T``.

    Whitens the target, spreads it over four directions with equal weights
    and solves for the third moment along each direction.

    """

    evals, evecs = np.linalg.eigh(cov)
    root = evecs @ np.diag(np.sqrt(evals)) @ evecs.T
    inverse = evecs @ np.diag(1.0 / np.sqrt(evals)) @ evecs.T
    Tw = np.einsum('ai,bj,ck,ijk->abc', inverse, inverse, inverse, T)
    angles = np.pi * np.arange(4) / 4.0
    directions = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    system = np.array([
        [0.25 * e[0] ** (3 - l) * e[1] ** l for e in directions]
        for l in range(4)
    ])
    rhs = np.array([Tw[tuple([0] * (3 - l) + [1] * l)] for l in range(4)])
    skews = np.linalg.solve(system, rhs)
    points, probs = [], []
    for e, s in zip(directions, skews):
        x, q = _two_point(s / 2.0 ** 1.5)
        for value, weight in zip(x, q):
            w = root @ (math.sqrt(2.0) * value * e)
            points.append(complex(w[0], w[1]))
            probs.append(0.25 * weight)
    return np.array(points), np.array(probs)


def _residuals(params: np.ndarray, targets: np.ndarray) -> np.ndarray:
    x, y, logits = params[:4], params[4:8], params[8:]
    w = np.exp(logits - logits.max())
    w /= w.sum()
    moments = np.array([
        w @ x, w @ y,
        w @ (x * x), w @ (x * y), w @ (y * y),
        w @ x ** 3, w @ (x * x * y), w @ (x * y * y), w @ y ** 3,
    ])
    return moments - targets


def _search(target: MomentTable,
            rng: np.random.Generator) -> Optional[Tuple[np.ndarray,
                                                        np.ndarray]]:
    """Least-squares search for a law on at most four points."""

    targets = np.array([
        target[1, 0], target[0, 1],
        target[2, 0], target[1, 1], target[0, 2],
        target[3, 0], target[2, 1], target[1, 2], target[0, 3],
    ])
    for _ in range(_STARTS):
        start = np.concatenate([
            rng.standard_normal(8) * 1.5, rng.standard_normal(4) * 0.1,
        ])
        fit = optimize.least_squares(
            _residuals, start, args=(targets,), method='trf',
            xtol=1e-14, ftol=1e-14, gtol=1e-14, max_nfev=2000,
        )
        if np.max(np.abs(fit.fun)) > 1e-12:
            continue
        x, y, logits = fit.x[:4], fit.x[4:8], fit.x[8:]
        w = np.exp(logits - logits.max())
        w /= w.sum()
        points = x + 1j * y
        if np.max(np.abs(points[w > 1e-14])) > _MAX_SEARCH_RADIUS:
            continue
        return points, w
    return None


def solve_third_order_match(target: MomentTable,
                            seed: int=0) -> Discrete:
    """Construct a discrete law matching ``target`` to third order.

    Real targets use a closed-form law on three points.  Complex targets run
    a seeded least-squares search over laws on at most four points and fall
    back to an explicit eight-point construction.  The achieved support
    radius is available as ``.radius`` on the result.

    :param target: Moment table of order at least 3, mean 0, variance 1.
    :param seed: Seed of the search restarts.
    :raises MatchingError: The constructed law fails verification; carries
     the best residual.

    .. versionadded:: 0.1

    """

    if target.order < 3:
        raise PreconditionError('Third-order matching needs an order-3 table.')
    cov = np.array([[target[2, 0], target[1, 1]],
                    [target[1, 1], target[0, 2]]])
    T = _third_tensor(target)
    evals, evecs = np.linalg.eigh(cov)
    if evals[0] < 1e-12:
        # Degenerate covariance: a real law along the principal axis.
        axis = evecs[:, 1]
        skew = np.einsum('i,j,k,ijk->', axis, axis, axis, T)
        skew /= evals[1] ** 1.5
        x, probs = _three_point(skew, skew * skew + 2.0)
        points = math.sqrt(evals[1]) * x * complex(axis[0], axis[1])
    else:
        found = _search(target, np.random.default_rng(seed))
        if found is None:
            logging.info('Moment search failed, using explicit construction.')
            found = _directional(cov, T)
        points, probs = found
    keep = probs > 0.0
    law = _as_discrete(points[keep], probs[keep], 'third-order-match')
    report = match_order(law, target, 3)
    if not report.matched:
        raise MatchingError(
            'Third-order match failed at %r.' % ((report.m, report.l),),
            residual=report.discrepancy,
        )
    return law


def _axis_base(skew: float, kurtosis: float, t: float) -> Tuple[np.ndarray,
                                                                 np.ndarray]:
    a3 = (1.0 - t) ** 1.5
    a4 = (1.0 - t) ** 2
    base_skew = skew / a3
    base_kurtosis = (kurtosis - 6.0 * t * (1.0 - t) - 3.0 * t * t) / a4
    if base_kurtosis <= 1.0 + base_skew ** 2 + 1e-12:
        raise MatchingError(
            'No Gauss-divisible law with t=%g matches to fourth order '
            '(target fourth moment %g is too small).' % (t, kurtosis),
            residual=1.0 + base_skew ** 2 - base_kurtosis,
        )
    return _three_point(base_skew, base_kurtosis)


def gauss_divisible_match(target: AtomDistribution,
                          t: float) -> GaussDivisible:
    """Build a Gauss-divisible law matching ``target`` to fourth order.

    The discrete part lives on three points per axis.  Complex targets must
    have independent real and imaginary parts of variance 1/2.  Two-point
    laws such as Rademacher sit on the boundary of the moment cone (fourth
    moment equal to the squared variance) and have no such partner.

    :param target: Law to match.
    :param t: Gaussian weight in (0, 1).
    :raises MatchingError: No Gauss-divisible law with weight ``t`` matches.

    .. versionadded:: 0.1

    """

    if not 0.0 < t < 1.0:
        raise PreconditionError('Mixing weight must lie in (0, 1).')
    if target.is_real:
        x, p = _axis_base(target.mixed_moment(3, 0),
                          target.mixed_moment(4, 0), t)
        base = _as_discrete(x, p, 'gd-base')
    else:
        table = moment_table(target, 4)
        for m in range(5):
            for l in range(5 - m):
                product = table[m, 0] * table[0, l]
                if abs(table[m, l] - product) > 1e-9:
                    raise MatchingError(
                        'Real and imaginary parts must be independent.',
                        residual=abs(table[m, l] - product),
                    )
        if abs(table[2, 0] - 0.5) > 1e-9:
            raise MatchingError('Real and imaginary parts must have '
                                'variance 1/2.')
        # Standardize each axis by sqrt(2).
        xr, pr = _axis_base(2 ** 1.5 * table[3, 0], 4.0 * table[4, 0], t)
        xi, pi = _axis_base(2 ** 1.5 * table[0, 3], 4.0 * table[0, 4], t)
        points = (xr[:, None] + 1j * xi[None, :]).ravel() / math.sqrt(2.0)
        probs = (pr[:, None] * pi[None, :]).ravel()
        keep = probs > 0.0
        base = _as_discrete(points[keep], probs[keep], 'gd-base')
    law = GaussDivisible(
        t, base, name='gauss-divisible-match:t=%r:base=%s' % (t, target.name)
    )
    report = match_order(law, target, 4)
    if not report.matched:
        raise MatchingError(
            'Fourth-order match failed at %r.' % ((report.m, report.l),),
            residual=report.discrepancy,
        )
    return law
