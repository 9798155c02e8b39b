# -*- coding: utf-8 -*-


import math

import numpy as np

from scipy import special, stats
from typing import (
    Dict,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from ._errors import (
    PreconditionError,
    TruncationError,
    UnsupportedMoment,
)


#: Absolute tolerance used when comparing mixed moments.
MOMENT_TOLERANCE = 1e-9

Size = Union[int, Tuple[int, ...]]

# Polar grid used to discretize truncated complex Gaussian mixtures.
_RADIAL_NODES = 400
_ANGULAR_NODES = 256


def _double_factorial(m: int) -> int:
    if m <= 0:
        return 1
    return math.prod(range(m, 0, -2))


def _gaussian_moment(m: int, variance: float) -> float:
    """``E G^m`` for ``G ~ N(0, variance)``."""
    if m % 2:
        return 0.0
    return _double_factorial(m - 1) * variance ** (m // 2)


def _angular_moment(m: int, l: int) -> float:
    """``E cos(T)^m sin(T)^l`` for ``T`` uniform on the circle."""
    if m % 2 or l % 2:
        return 0.0
    return (
        _double_factorial(m - 1) * _double_factorial(l - 1) /
        _double_factorial(m + l)
    )


def _shape(size: Size) -> Tuple[int, ...]:
    if isinstance(size, (int, np.integer)):
        return (int(size),)
    return tuple(int(s) for s in size)


class AtomDistribution:
    """Law of a single matrix entry.

    Every constructible law has mean 0 and ``E|z|^2 = 1``.  Mixed moments
    ``E Re(z)^m Im(z)^l`` are computed analytically and cached on the
    instance, which is otherwise immutable.

    .. versionadded:: 0.1

    """

    name = 'atom'
    is_real = True

    def sample(self, rng: np.random.Generator, size: Size) -> np.ndarray:
        """Draw an array of iid values (complex dtype) from ``rng``."""
        raise NotImplementedError

    def mixed_moment(self, m: int, l: int) -> float:
        """Compute ``E Re(z)^m Im(z)^l``.

        :raises UnsupportedMoment: No analytic representation is available.

        """

        if m < 0 or l < 0:
            raise PreconditionError('Moment orders must be nonnegative.')
        if self.is_real and l > 0:
            return 0.0
        cache = self.__dict__.setdefault('_moments', {})  # type: Dict
        if (m, l) not in cache:
            cache[m, l] = float(self._moment(m, l))
        return cache[m, l]

    @property
    def radius(self) -> float:
        """Almost sure bound on ``|z|`` (``inf`` for unbounded laws)."""
        return math.inf

    def probability_within(self, K: float) -> float:
        """``P(|z| <= K)``."""
        raise UnsupportedMoment(
            'No truncation formula for %s.' % self.name
        )

    def conditional_moment(self, m: int, l: int, K: float) -> float:
        """``E[Re(z)^m Im(z)^l | |z| <= K]``."""
        raise UnsupportedMoment(
            'No truncation formula for %s.' % self.name
        )

    def _moment(self, m: int, l: int) -> float:
        raise UnsupportedMoment(
            'Moment (%d, %d) of %s is not supported.' % (m, l, self.name)
        )

    def __repr__(self) -> str:
        return '<%s %s>' % (type(self).__name__, self.name)


class Discrete(AtomDistribution):
    """Finitely supported law.

    :param support: Support points (complex values).
    :param probs: Probabilities, nonnegative and summing to 1 within 1e-12.
    :param name: Catalog name, used in provenance records.

    """

    def __init__(self, support: Sequence[complex], probs: Sequence[float],
                 name: Optional[str]=None) -> None:
        points = np.asarray(support, dtype=complex)
        weights = np.asarray(probs, dtype=float)
        if points.ndim != 1 or points.shape != weights.shape or \
           len(points) == 0:
            raise PreconditionError('Support and probabilities must be '
                                    'nonempty and of equal length.')
        if np.any(weights < 0.0):
            raise PreconditionError('Probabilities must be nonnegative.')
        if abs(math.fsum(weights) - 1.0) > 1e-12:
            raise PreconditionError('Probabilities must sum to 1.')
        self._support = points
        self._probs = weights
        self.is_real = bool(np.all(points.imag == 0.0))
        self.name = name or 'discrete'
        mean = abs(complex(self.mixed_moment(1, 0), self.mixed_moment(0, 1)))
        variance = self.mixed_moment(2, 0) + self.mixed_moment(0, 2)
        if mean > 1e-10 or abs(variance - 1.0) > 1e-10:
            raise PreconditionError(
                'Atom must have mean 0 and unit variance '
                '(got mean %g, variance %g).' % (mean, variance)
            )

    @property
    def support(self) -> np.ndarray:
        return self._support.copy()

    @property
    def probs(self) -> np.ndarray:
        return self._probs.copy()

    @property
    def radius(self) -> float:
        return float(np.max(np.abs(self._support)))

    def sample(self, rng: np.random.Generator, size: Size) -> np.ndarray:
        index = rng.choice(len(self._support), size=_shape(size),
                           p=self._probs)
        return self._support[index]

    def _moment(self, m: int, l: int) -> float:
        return math.fsum(
            self._probs * self._support.real ** m * self._support.imag ** l
        )

    def _inside(self, K: float) -> np.ndarray:
        return np.abs(self._support) <= K * (1.0 + 1e-12)

    def probability_within(self, K: float) -> float:
        return math.fsum(self._probs[self._inside(K)])

    def conditional_moment(self, m: int, l: int, K: float) -> float:
        inside = self._inside(K)
        points, weights = self._support[inside], self._probs[inside]
        return math.fsum(
            weights * points.real ** m * points.imag ** l
        ) / math.fsum(weights)


class RealGaussian(AtomDistribution):
    """Standard real Gaussian ``N(0, 1)``."""

    name = 'gaussian'
    is_real = True

    def sample(self, rng: np.random.Generator, size: Size) -> np.ndarray:
        return rng.standard_normal(_shape(size)).astype(complex)

    def _moment(self, m: int, l: int) -> float:
        return _gaussian_moment(m, 1.0)

    def probability_within(self, K: float) -> float:
        return float(special.erf(K / math.sqrt(2.0)))

    def conditional_moment(self, m: int, l: int, K: float) -> float:
        if l > 0:
            return 0.0
        return float(stats.truncnorm(-K, K).moment(m))


class ComplexGaussian(AtomDistribution):
    """Standard complex Gaussian: real and imaginary parts iid ``N(0, 1/2)``.
    """

    name = 'complex-gaussian'
    is_real = False

    def sample(self, rng: np.random.Generator, size: Size) -> np.ndarray:
        shape = _shape(size)
        re = rng.standard_normal(shape)
        im = rng.standard_normal(shape)
        return (re + 1j * im) / math.sqrt(2.0)

    def _moment(self, m: int, l: int) -> float:
        return _gaussian_moment(m, 0.5) * _gaussian_moment(l, 0.5)

    def probability_within(self, K: float) -> float:
        return float(-math.expm1(-K * K))

    def conditional_moment(self, m: int, l: int, K: float) -> float:
        # |z|^2 is Exp(1); the phase is uniform and independent of |z|.
        angular = _angular_moment(m, l)
        if angular == 0.0:
            return 0.0
        s = 0.5 * (m + l) + 1.0
        radial = special.gamma(s) * special.gammainc(s, K * K) / \
            special.gammainc(1.0, K * K)
        return float(radial * angular)


class GaussDivisible(AtomDistribution):
    """Law of ``(1-t)^(1/2) z' + t^(1/2) g``.

    ``z'`` follows ``base`` and ``g`` is an independent standard Gaussian,
    complex when ``base`` is complex.

    """

    def __init__(self, t: float, base: AtomDistribution,
                 name: Optional[str]=None) -> None:
        if not 0.0 <= t <= 1.0:
            raise PreconditionError('Mixing weight must lie in [0, 1].')
        self._t = float(t)
        self._base = base
        self._gauss = (
            RealGaussian() if base.is_real else ComplexGaussian()
        )  # type: AtomDistribution
        self.is_real = base.is_real
        self.name = name or 'gauss-divisible:t=%r:base=%s' % (t, base.name)

    @property
    def t(self) -> float:
        return self._t

    @property
    def base(self) -> AtomDistribution:
        return self._base

    def sample(self, rng: np.random.Generator, size: Size) -> np.ndarray:
        a, b = math.sqrt(1.0 - self._t), math.sqrt(self._t)
        discrete = self._base.sample(rng, size)
        gaussian = self._gauss.sample(rng, size)
        return a * discrete + b * gaussian

    def _moment(self, m: int, l: int) -> float:
        a, b = math.sqrt(1.0 - self._t), math.sqrt(self._t)
        terms = []
        for j in range(m + 1):
            for q in range(l + 1):
                gaussian = self._gauss.mixed_moment(m - j, l - q)
                if gaussian == 0.0:
                    continue
                terms.append(
                    math.comb(m, j) * math.comb(l, q) *
                    a ** (j + q) * b ** (m + l - j - q) *
                    self._base.mixed_moment(j, q) * gaussian
                )
        return math.fsum(terms)

    def probability_within(self, K: float) -> float:
        points, probs, scale = _mixture_form(self)
        if scale == 0.0:
            return math.fsum(probs[np.abs(points) <= K])
        if self.is_real:
            x = points.real
            mass = stats.norm.cdf((K - x) / scale) - \
                stats.norm.cdf((-K - x) / scale)
        else:
            # 2|w|^2 / scale^2 is noncentral chi-square with 2 degrees.
            mass = stats.ncx2.cdf(2.0 * K * K / scale ** 2, 2,
                                  2.0 * np.abs(points) ** 2 / scale ** 2)
        return math.fsum(probs * mass)

    def conditional_moment(self, m: int, l: int, K: float) -> float:
        points, probs, scale = _mixture_form(self)
        if scale == 0.0:
            inside = np.abs(points) <= K
            return math.fsum(
                probs[inside] * points[inside].real ** m *
                points[inside].imag ** l
            ) / math.fsum(probs[inside])
        if self.is_real:
            if l > 0:
                return 0.0
            total, mass = [], []
            for x, p in zip(points.real, probs):
                lo, hi = (-K - x) / scale, (K - x) / scale
                inside = stats.norm.cdf(hi) - stats.norm.cdf(lo)
                component = stats.truncnorm(lo, hi, loc=x, scale=scale)
                total.append(p * inside * component.moment(m))
                mass.append(p * inside)
            return math.fsum(total) / math.fsum(mass)
        nodes, weights = self._polar_grid(K)
        return float(
            np.sum(weights * nodes.real ** m * nodes.imag ** l) /
            np.sum(weights)
        )

    def _polar_grid(self, K: float) -> Tuple[np.ndarray, np.ndarray]:
        cache = self.__dict__.setdefault('_grids', {})  # type: Dict
        if K in cache:
            return cache[K]
        points, probs, scale = _mixture_form(self)
        x, w = np.polynomial.legendre.leggauss(_RADIAL_NODES)
        radii = 0.5 * K * (x + 1.0)
        radial_weights = 0.5 * K * w * radii
        angles = 2.0 * math.pi * np.arange(_ANGULAR_NODES) / _ANGULAR_NODES
        nodes = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
        density = np.zeros(nodes.shape)
        for point, p in zip(points, probs):
            density += p * np.exp(-np.abs(nodes - point) ** 2 / scale ** 2)
        density /= math.pi * scale ** 2
        weights = (
            radial_weights[:, None] *
            np.full(_ANGULAR_NODES, 2.0 * math.pi / _ANGULAR_NODES)[None, :]
        ).ravel() * density
        cache[K] = (nodes, weights)
        return nodes, weights


class Truncated(AtomDistribution):
    """Law of ``(z - shift) * rescale`` with ``z ~ base`` conditioned on
    ``|z| <= K``.

    Build instances with :py:func:`truncate_standardize`.

    """

    def __init__(self, base: AtomDistribution, K: float, shift: complex,
                 rescale: float, mass: float,
                 name: Optional[str]=None) -> None:
        self._base = base
        self._K = float(K)
        self._shift = complex(shift)
        self._rescale = float(rescale)
        self._mass = float(mass)
        self.is_real = base.is_real
        self.name = name or 'truncated:K=%r:base=%s' % (K, base.name)

    @property
    def base(self) -> AtomDistribution:
        return self._base

    @property
    def K(self) -> float:
        return self._K

    @property
    def shift(self) -> complex:
        return self._shift

    @property
    def rescale(self) -> float:
        return self._rescale

    @property
    def radius(self) -> float:
        if isinstance(self._base, Discrete):
            points = self._base.support
            points = points[np.abs(points) <= self._K * (1.0 + 1e-12)]
            return float(np.max(np.abs(points - self._shift))) * \
                self._rescale
        return (self._K + abs(self._shift)) * self._rescale

    def sample(self, rng: np.random.Generator, size: Size) -> np.ndarray:
        shape = _shape(size)
        count = int(np.prod(shape))
        kept = []
        have = 0
        while have < count:
            batch = int((count - have) / self._mass * 1.1) + 16
            draws = self._base.sample(rng, batch)
            draws = draws[np.abs(draws) <= self._K]
            kept.append(draws)
            have += len(draws)
        values = np.concatenate(kept)[:count]
        return ((values - self._shift) * self._rescale).reshape(shape)

    def _moment(self, m: int, l: int) -> float:
        sr, si = -self._shift.real, -self._shift.imag
        terms = []
        for j in range(m + 1):
            for q in range(l + 1):
                factor = math.comb(m, j) * math.comb(l, q) * \
                    sr ** (m - j) * si ** (l - q)
                if factor == 0.0:
                    continue
                terms.append(
                    factor * self._base.conditional_moment(j, q, self._K)
                )
        return math.fsum(terms) * self._rescale ** (m + l)

    def probability_within(self, K: float) -> float:
        if K >= self.radius:
            return 1.0
        return super().probability_within(K)

    def conditional_moment(self, m: int, l: int, K: float) -> float:
        if K >= self.radius:
            return self.mixed_moment(m, l)
        return super().conditional_moment(m, l, K)


def _mixture_form(dist: AtomDistribution) -> Tuple[np.ndarray, np.ndarray,
                                                   float]:
    """Write ``dist`` as a discrete law plus an independent Gaussian.

    :return: Support points, probabilities and the standard deviation of the
     Gaussian part (``E|g|^2`` for complex laws).

    """

    if isinstance(dist, Discrete):
        return dist.support, dist.probs, 0.0
    if isinstance(dist, (RealGaussian, ComplexGaussian)):
        return np.zeros(1, dtype=complex), np.ones(1), 1.0
    if isinstance(dist, GaussDivisible):
        points, probs, scale = _mixture_form(dist.base)
        a = math.sqrt(1.0 - dist.t)
        return a * points, probs, math.sqrt(a * a * scale * scale + dist.t)
    raise UnsupportedMoment('%s has no Gaussian mixture form.' % dist.name)


def sample_atom(dist: AtomDistribution, rng: np.random.Generator) -> complex:
    """Draw a single value from ``dist``.

    .. versionadded:: 0.1

    """
    return complex(dist.sample(rng, 1)[0])


def mixed_moment(dist: AtomDistribution, m: int, l: int) -> float:
    """Exact ``E Re(z)^m Im(z)^l`` of an atom law.

    :raises UnsupportedMoment: For kinds without an analytic representation
     (nested truncations that cut into the inner support).

    .. versionadded:: 0.1

    """
    return dist.mixed_moment(m, l)


class MomentTable:
    """Mixed moments ``E Re^m Im^l`` of an atom law up to total order ``k``.

    .. versionadded:: 0.1

    """

    def __init__(self, order: int,
                 entries: Mapping[Tuple[int, int], float]) -> None:
        if order < 1:
            raise PreconditionError('Moment table order must be >= 1.')
        table = {}
        for total in range(order + 1):
            for m in range(total + 1):
                key = (m, total - m)
                if key not in entries:
                    raise PreconditionError(
                        'Missing moment entry %r.' % (key,)
                    )
                table[key] = float(entries[key])
        if abs(table[0, 0] - 1.0) > 1e-10:
            raise PreconditionError('Entry (0, 0) must be 1.')
        if abs(table[1, 0]) > 1e-10 or abs(table[0, 1]) > 1e-10:
            raise PreconditionError('Target must have mean zero.')
        if order >= 2 and abs(table[2, 0] + table[0, 2] - 1.0) > 1e-10:
            raise PreconditionError('Target must have unit variance.')
        self._order = order
        self._entries = table

    @property
    def order(self) -> int:
        return self._order

    @property
    def entries(self) -> Dict[Tuple[int, int], float]:
        return dict(self._entries)

    def __getitem__(self, key: Tuple[int, int]) -> float:
        return self._entries[key]

    def __repr__(self) -> str:
        return '<MomentTable order=%d>' % self._order


def moment_table(dist: AtomDistribution, k: int) -> MomentTable:
    """Tabulate the mixed moments of ``dist`` up to total order ``k``."""
    return MomentTable(k, {
        (m, total - m): dist.mixed_moment(m, total - m)
        for total in range(k + 1)
        for m in range(total + 1)
    })


Moments = Union[AtomDistribution, MomentTable]


def _lookup(source: Moments, m: int, l: int) -> float:
    if isinstance(source, MomentTable):
        if m + l > source.order:
            raise PreconditionError(
                'Moment table of order %d has no entry %r.' %
                (source.order, (m, l))
            )
        return source[m, l]
    return source.mixed_moment(m, l)


class MatchReport(NamedTuple):
    """Outcome of :py:func:`match_order`.

    ``(m, l)`` and ``discrepancy`` describe the worst mixed moment, reported
    even when the laws match.

    """

    matched: bool
    m: int
    l: int
    discrepancy: float


def match_order(a: Moments, b: Moments, k: int) -> MatchReport:
    """Check whether two laws match to order ``k``.

    :param a: Atom law or moment table.
    :param b: Atom law or moment table.
    :param k: Highest total order ``m + l`` compared.
    :return: A :py:class:`MatchReport`; ``matched`` is true iff every mixed
     moment with ``m + l <= k`` agrees within :py:data:`MOMENT_TOLERANCE`.

    .. versionadded:: 0.1

    """

    if k < 1:
        raise PreconditionError('Matching order must be >= 1.')
    worst = (0, 0, 0.0)
    for total in range(1, k + 1):
        for m in range(total, -1, -1):
            l = total - m
            gap = abs(_lookup(a, m, l) - _lookup(b, m, l))
            if gap > worst[2]:
                worst = (m, l, gap)
    return MatchReport(worst[2] <= MOMENT_TOLERANCE, *worst)


def truncate_standardize(dist: AtomDistribution, K: float) -> AtomDistribution:
    """Condition ``dist`` on ``|z| <= K`` and restore mean 0, variance 1.

    Laws whose support already fits inside the disk come back with shift 0
    and rescale 1.  Truncating an already truncated law that fits returns it
    unchanged.

    :param dist: Law to truncate.
    :param K: Truncation radius, at least 3.
    :raises TruncationError: When ``P(|z| <= K) < 1/2``.

    .. versionadded:: 0.1

    """

    if not K >= 3.0:
        raise PreconditionError('Truncation radius must be >= 3.')
    if isinstance(dist, Truncated) and dist.radius <= K:
        return dist
    mass = dist.probability_within(K)
    if mass < 0.5:
        raise TruncationError(
            'Truncation at K=%g keeps only %.3f of the mass.' % (K, mass)
        )
    if dist.radius <= K:
        return Truncated(dist, K, 0.0, 1.0, 1.0)
    shift = complex(dist.conditional_moment(1, 0, K),
                    dist.conditional_moment(0, 1, K))
    variance = dist.conditional_moment(2, 0, K) + \
        dist.conditional_moment(0, 2, K) - abs(shift) ** 2
    result = Truncated(dist, K, shift, 1.0 / math.sqrt(variance), mass)
    if result.radius > 2.0 * K:
        raise TruncationError('Re-standardized support exceeds 2K.')
    return result


def gauss_divisible_mix(base: AtomDistribution, t: float) -> GaussDivisible:
    """Mix ``base`` with an independent Gaussian of weight ``t``.

    :param t: Gaussian weight, strictly between 0 and 1.

    .. versionadded:: 0.1

    """

    if not 0.0 < t < 1.0:
        raise PreconditionError('Mixing weight must lie in (0, 1).')
    return GaussDivisible(t, base)
