# -*- coding: utf-8 -*-


import math

import numpy as np

from typing import (
    Iterable,
    List,
    NamedTuple,
    Optional,
    Tuple,
)

from ._errors import PreconditionError
from ._mp import MPModel
from ._spectral import (
    Matrix,
    SpectralDecomposition,
    _entries,
    spectrum,
)


#: Default bulk parameter.
DEFAULT_EPS = 0.1


class SpectrumSample:
    """Ascending eigenvalues of ``W = M* M / n`` for one ``p x n`` sample.

    .. versionadded:: 0.1

    """

    def __init__(self, eigenvalues: Iterable[float], n: int,
                 atom: str='custom', seed: Optional[object]=None) -> None:
        values = np.asarray(eigenvalues, dtype=float)
        if values.ndim != 1:
            raise PreconditionError('Eigenvalues must form a vector.')
        if np.any(np.diff(values) < 0.0):
            raise PreconditionError('Eigenvalues must be ascending.')
        if len(values) and values[0] < 0.0:
            raise PreconditionError('Eigenvalues must be nonnegative.')
        if len(values) > n:
            raise PreconditionError('A p x n sample has at most n '
                                    'nontrivial eigenvalues.')
        values.setflags(write=False)
        self.eigenvalues = values
        self.n = n
        self.atom = atom
        self.seed = seed

    @classmethod
    def from_matrix(cls, M: Matrix) -> 'SpectrumSample':
        A = _entries(M)
        if A.shape[0] > A.shape[1]:
            A = A.T
        n = A.shape[1]
        atom = getattr(M, 'atom', 'custom')
        seed = getattr(M, 'seed', None)
        return cls(spectrum(A) ** 2 / n, n, atom=atom, seed=seed)

    @property
    def p(self) -> int:
        return len(self.eigenvalues)

    @property
    def y(self) -> float:
        return self.p / self.n

    @property
    def sigma(self) -> np.ndarray:
        return np.sqrt(self.n * self.eigenvalues)

    def model(self) -> MPModel:
        return MPModel.from_shape(self.p, self.n)

    def __repr__(self) -> str:
        return '<SpectrumSample p=%d n=%d atom=%s>' % (self.p, self.n,
                                                       self.atom)


def bulk_indices(p: int, eps: float) -> range:
    """0-based indices ``k`` with ``ceil(eps p) <= k < floor((1 - eps) p)``.
    """
    return range(int(math.ceil(eps * p)), int(math.floor((1.0 - eps) * p)))


def count_interval(s: SpectrumSample, lo: float, hi: float) -> int:
    """Number of eigenvalues in the closed interval ``[lo, hi]``.

    .. versionadded:: 0.1

    """

    if lo > hi:
        raise PreconditionError('Interval bounds are reversed.')
    left = np.searchsorted(s.eigenvalues, lo, side='left')
    right = np.searchsorted(s.eigenvalues, hi, side='right')
    return int(right - left)


class ConcentrationResult(NamedTuple):
    count: int
    expected: float
    deviation: float
    ratio: float


def concentration_test(s: SpectrumSample, lo: float, hi: float,
                       model: Optional[MPModel]=None,
                       eps: float=DEFAULT_EPS) -> ConcentrationResult:
    """Compare ``N_I`` against ``p * int_I rho``.

    :param model: Defaults to the MP law with ``y = p / n``.
    :raises PreconditionError: ``[lo, hi]`` leaves ``[a + eps, b - eps]``.

    .. versionadded:: 0.1

    """

    model = model or s.model()
    if lo > hi:
        raise PreconditionError('Interval bounds are reversed.')
    if lo < model.a + eps or hi > model.b - eps:
        raise PreconditionError('Interval [%g, %g] leaves the bulk window.' %
                                (lo, hi))
    count = count_interval(s, lo, hi)
    expected = s.p * model.mass(lo, hi)
    deviation = abs(count - expected)
    return ConcentrationResult(count, expected, deviation, deviation / s.p)


class BulkContainment(NamedTuple):
    holds: bool
    margin: float


def bulk_containment(s: SpectrumSample, eps: float=DEFAULT_EPS,
                     model: Optional[MPModel]=None) -> BulkContainment:
    """Check that bulk-indexed eigenvalues stay inside ``(a, b)``.

    ``margin`` is the largest ``eps'`` with every bulk eigenvalue in
    ``[a + eps', b - eps']``; it is ``inf`` when the bulk index range is
    empty.

    .. versionadded:: 0.1

    """

    if not 0.0 < eps <= 0.5:
        raise PreconditionError('Bulk parameter must lie in (0, 1/2].')
    model = model or s.model()
    indices = bulk_indices(s.p, eps)
    if not len(indices):
        return BulkContainment(True, math.inf)
    values = s.eigenvalues[indices.start:indices.stop]
    margin = min(values[0] - model.a, model.b - values[-1])
    return BulkContainment(margin > 0.0, float(margin))


class DelocalizationResult(NamedTuple):
    """``statistic`` is ``sqrt(n)`` times ``raw``; both are ``None`` when no
    eigenvalue falls in the window."""

    statistic: Optional[float]
    raw: Optional[float]
    count: int


def delocalization_stat(d: SpectralDecomposition,
                        model: Optional[MPModel]=None,
                        eps: float=DEFAULT_EPS) -> DelocalizationResult:
    """Largest coordinate of the singular vectors with eigenvalue in
    ``[a + eps, b - eps]``.

    Both ``u_i`` and ``v_i`` count.

    .. versionadded:: 0.1

    """

    model = model or MPModel.from_shape(d.p, d.n)
    lam = d.eigenvalues
    window = np.flatnonzero((lam >= model.a + eps) & (lam <= model.b - eps))
    if not len(window):
        return DelocalizationResult(None, None, 0)
    raw = max(
        float(np.max(np.abs(d.right[:, window]))),
        float(np.max(np.abs(d.left[:, window]))),
    )
    return DelocalizationResult(math.sqrt(d.n) * raw, raw, len(window))


def interval_ratio(s: SpectrumSample, lo: float, hi: float) -> float:
    """``N_I / (n |I|)``."""
    if hi <= lo:
        raise PreconditionError('Interval must have positive length.')
    return count_interval(s, lo, hi) / (s.n * (hi - lo))


def _interval_grid(model: MPModel, n: int,
                   eps: float) -> List[Tuple[float, float]]:
    lo, hi = model.a + eps, model.b - eps
    shortest = math.log(n) ** 2 / n
    if hi - lo < shortest:
        return []
    intervals = []
    length = shortest
    while length <= hi - lo:
        starts = np.arange(lo, hi - length + 1e-12, 0.5 * length)
        intervals.extend((float(x), float(x) + length) for x in starts)
        length *= 2.0
    return intervals


def eigen_upper_check(s: SpectrumSample, model: Optional[MPModel]=None,
                      eps: float=DEFAULT_EPS,
                      intervals: Optional[Iterable[Tuple[float, float]]]=None
                      ) -> float:
    """Largest ``N_I / (n |I|)`` over bulk intervals.

    The default grid uses lengths ``log(n)^2 / n`` times powers of 2, with
    starting points half a length apart.

    .. versionadded:: 0.1

    """

    model = model or s.model()
    if intervals is None:
        intervals = _interval_grid(model, s.n, eps)
    return max((interval_ratio(s, lo, hi) for lo, hi in intervals),
               default=0.0)
