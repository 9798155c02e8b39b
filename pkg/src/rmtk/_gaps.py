# -*- coding: utf-8 -*-


import math

import numpy as np

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

from ._errors import PreconditionError
from ._spectral import DEGENERACY_TOLERANCE, Matrix, _entries, spectrum
from ._stats import DEFAULT_EPS, bulk_indices


#: Default gap exponent ``c`` in the ``n^(-1-c)`` threshold.
DEFAULT_C = 0.5

#: Default exponent ``C1`` of the regularized gap window cap.
DEFAULT_C1 = 10.0


def _finite(value: float) -> Any:
    return value if math.isfinite(value) else 'inf'


def q_value(sigma: Sequence[float], i: int, n: int) -> float:
    """Inverse-square separation functional ``Q_i`` of an ascending list of
    singular values.

    ``Q_i = (sum_{j != i} |s_j - s_i|^-2 + (n - p) / s_i^2 +
    sum_j |s_j + s_i|^-2) / n``, and ``inf`` when ``s_i`` is repeated or
    zero.

    .. versionadded:: 0.1

    """

    s = np.asarray(sigma, dtype=float)
    p = len(s)
    si = s[i]
    others = np.delete(s, i)
    tolerance = DEGENERACY_TOLERANCE * max(float(s[-1]), 1e-300)
    if si <= tolerance:
        return math.inf
    if len(others) and np.min(np.abs(others - si)) <= tolerance:
        return math.inf
    total = math.fsum(1.0 / (others - si) ** 2) + (n - p) / si ** 2 + \
        math.fsum(1.0 / (s + si) ** 2)
    return total / n


def q_upper_bound(sigma: Sequence[float], i: int, n: int) -> float:
    """``(2/n) sum_{j != i} |s_j - s_i|^-2 + (n - p + 1) / (n s_i^2)``,
    which dominates :py:func:`q_value`."""
    s = np.asarray(sigma, dtype=float)
    p = len(s)
    if math.isinf(q_value(s, i, n)):
        return math.inf
    others = np.delete(s, i)
    return 2.0 * math.fsum(1.0 / (others - s[i]) ** 2) / n + \
        (n - p + 1) / (n * s[i] ** 2)


def regularized_gap(sigma: Sequence[float], i0: int, l: int, N0: int,
                    C1: float=DEFAULT_C1) -> float:
    """Window-normalized minimal gap around index ``i0``.

    Infimum over ``0 <= i_- <= i0 - l < i0 <= i_+ < p`` of::

        sqrt(N0) (s[i_+] - s[i_-]) /
            min(i_+ - i_-, log(N0)^C1) ^ (log(N0)^0.9)

    Indices are 0-based.  A larger ``l`` restricts ``i_-`` further, so the
    value is nondecreasing in ``l``.

    .. versionadded:: 0.1

    """

    s = np.asarray(sigma, dtype=float)
    p = len(s)
    if l < 1 or i0 - l < 0 or i0 >= p:
        raise PreconditionError(
            'Regularized gap needs 0 <= i0 - l < i0 < p (got i0=%d, l=%d, '
            'p=%d).' % (i0, l, p)
        )
    log_n = math.log(N0)
    cap = log_n ** C1
    power = log_n ** 0.9
    lower = np.arange(0, i0 - l + 1)
    upper = np.arange(i0, p)
    width = upper[None, :] - lower[:, None]
    gaps = math.sqrt(N0) * (s[upper][None, :] - s[lower][:, None])
    return float(np.min(gaps / np.minimum(width, cap) ** power))


class RegularizedGap(NamedTuple):
    i0: int
    l: int
    p: int
    C1: float
    value: float


class GapReport(NamedTuple):
    """Bulk gap statistics of one sample.

    ``q_values`` and ``q_bounds`` map 0-based indices to ``Q_i`` and its
    upper bound (``inf`` for repeated singular values).

    """

    epsilon: float
    c: float
    p: int
    n: int
    min_bulk_gap: float
    threshold: float
    gap_property_holds: bool
    q_values: Dict[int, float]
    q_bounds: Dict[int, float]
    regularized: List[RegularizedGap]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'epsilon': self.epsilon,
            'c': self.c,
            'p': self.p,
            'n': self.n,
            'min_bulk_gap': _finite(self.min_bulk_gap),
            'threshold': self.threshold,
            'gap_property_holds': self.gap_property_holds,
            'q_values': {str(k): _finite(v)
                         for k, v in self.q_values.items()},
            'q_bounds': {str(k): _finite(v)
                         for k, v in self.q_bounds.items()},
            'regularized': [
                dict(r._asdict(), value=_finite(r.value))
                for r in self.regularized
            ],
        }


def gap_report(M: Matrix, eps: float=DEFAULT_EPS, c: float=DEFAULT_C,
               C1: float=DEFAULT_C1, indices: Optional[Iterable[int]]=None,
               regularized: Iterable[Tuple[int, int, int]]=()) -> GapReport:
    """Gap statistics of ``W = M* M / n`` over the bulk.

    :param indices: 0-based bulk indices for ``Q_i``; defaults to ``p // 2``,
     or none when the bulk is empty.
    :param regularized: ``(i0, l, p')`` requests, evaluated on the first
     ``p'`` rows of ``M`` with ``N0 = p + n``.
    :raises PreconditionError: An index lies outside the bulk or a request
     is malformed.

    .. versionadded:: 0.1

    """

    A = _entries(M)
    if A.shape[0] > A.shape[1]:
        A = A.T
    p, n = A.shape
    sigma = spectrum(A)
    lam = sigma ** 2 / n
    bulk = bulk_indices(p, eps)
    inner = [k for k in bulk if k + 1 < p]
    min_gap = float(np.min(lam[np.array(inner) + 1] - lam[inner])) \
        if inner else math.inf
    threshold = float(n) ** (-1.0 - c)

    if indices is None:
        chosen = [p // 2] if p // 2 in bulk else []
    else:
        chosen = list(indices)
    for i in chosen:
        if i not in bulk:
            raise PreconditionError('Index %d is outside the bulk.' % i)

    requests = []
    for i0, l, rows in regularized:
        if not 1 <= rows <= p:
            raise PreconditionError('Row count %d exceeds p=%d.' % (rows, p))
        value = regularized_gap(spectrum(A[:rows]), i0, l, p + n, C1)
        requests.append(RegularizedGap(i0, l, rows, C1, value))

    return GapReport(
        epsilon=eps,
        c=c,
        p=p,
        n=n,
        min_bulk_gap=min_gap,
        threshold=threshold,
        gap_property_holds=min_gap >= threshold,
        q_values={i: q_value(sigma, i, n) for i in chosen},
        q_bounds={i: q_upper_bound(sigma, i, n) for i in chosen},
        regularized=requests,
    )
