# -*- coding: utf-8 -*-


import math

import numpy as np
import scipy.linalg

from typing import (
    NamedTuple,
    Optional,
    Tuple,
    Union,
)
from typing_extensions import Literal

from ._atoms import AtomDistribution
from ._catalog import parse_atom
from ._errors import PreconditionError, SolverError


#: Singular values closer than this (relative to the largest one) are
#: treated as repeated.
DEGENERACY_TOLERANCE = 1e-12

#: Residual tolerance of decompositions, relative to ``||M||``.
RESIDUAL_TOLERANCE = 1e-8

Seed = Union[None, int, np.random.SeedSequence, np.random.Generator]


class DataMatrix:
    """A ``p x n`` data matrix with ``p <= n``.

    Wider-than-tall inputs are transposed on ingestion and ``transposed`` is
    set.  Entries are stored as a read-only complex array.

    .. versionadded:: 0.1

    """

    def __init__(self, entries: np.ndarray, atom: str='custom',
                 seed: Optional[object]=None) -> None:
        array = np.array(entries, dtype=complex, ndmin=2)
        if array.ndim != 2:
            raise PreconditionError('Data matrices are two-dimensional.')
        self.transposed = array.shape[0] > array.shape[1]
        if self.transposed:
            array = array.T.copy()
        array.setflags(write=False)
        self._entries = array
        self.atom = atom
        self.seed = seed

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def p(self) -> int:
        return self._entries.shape[0]

    @property
    def n(self) -> int:
        return self._entries.shape[1]

    @property
    def y(self) -> float:
        return self.p / self.n

    def __repr__(self) -> str:
        return '<DataMatrix %dx%d atom=%s seed=%r>' % (
            self.p, self.n, self.atom, self.seed,
        )


Matrix = Union[DataMatrix, np.ndarray]


def _entries(M: Matrix) -> np.ndarray:
    if isinstance(M, DataMatrix):
        return M.entries
    return np.array(M, dtype=complex, ndmin=2)


def _rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


class EnsembleSpec(NamedTuple):
    """Atom name plus matrix shape, as written in experiment configs."""

    atom: str
    p: int
    n: int

    def law(self) -> AtomDistribution:
        return parse_atom(self.atom)


def generate_matrix(p: int, n: int, dist: AtomDistribution,
                    seed: Seed=None) -> DataMatrix:
    """Draw a ``p x n`` matrix with iid entries from ``dist``.

    The result is bit-reproducible given ``seed``.  Requests with ``p > n``
    come back transposed (see :py:class:`DataMatrix`).

    .. versionadded:: 0.1

    """

    if p < 1 or n < 1:
        raise PreconditionError('Matrix dimensions must be positive.')
    values = dist.sample(_rng(seed), (p, n))
    if isinstance(seed, np.random.SeedSequence):
        seed = seed.entropy, seed.spawn_key
    return DataMatrix(values, atom=dist.name, seed=seed)


def covariance(M: Matrix) -> Tuple[np.ndarray, np.ndarray]:
    """Return ``W = M* M / n`` and its companion ``M M* / n``.

    Both are Hermitian to the last bit.

    .. versionadded:: 0.1

    """

    A = _entries(M)
    n = A.shape[1]
    W = A.conj().T @ A / n
    C = A @ A.conj().T / n
    return (W + W.conj().T) / 2, (C + C.conj().T) / 2


class SpectralDecomposition(NamedTuple):
    """Singular value system of a ``p x n`` matrix, in ascending order.

    ``right[:, i]`` is ``u_i`` (length ``n``) and ``left[:, i]`` is ``v_i``
    (length ``p``), with ``M u_i = sigma_i v_i`` and ``M* v_i = sigma_i u_i``.
    ``residual`` is the largest of those two residuals over all ``i``,
    relative to ``max(||M||, 1)``.

    """

    sigma: np.ndarray
    right: np.ndarray
    left: np.ndarray
    n: int
    residual: float = math.nan

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.sigma ** 2 / self.n

    @property
    def p(self) -> int:
        return len(self.sigma)


def _normalize_phases(left: np.ndarray, right: np.ndarray) -> None:
    # Largest coordinate of each u_i becomes real positive; v_i follows.
    for i in range(right.shape[1]):
        k = int(np.argmax(np.abs(right[:, i])))
        if right[k, i] == 0:
            continue
        phase = np.conj(right[k, i]) / abs(right[k, i])
        right[:, i] *= phase
        left[:, i] *= phase


def _check_residuals(A: np.ndarray, d: SpectralDecomposition) -> float:
    scale = max(float(np.linalg.norm(A, 2)), 1.0)
    r1 = A @ d.right - d.left * d.sigma
    r2 = A.conj().T @ d.left - d.right * d.sigma
    residual = max(
        float(np.max(np.linalg.norm(r1, axis=0), initial=0.0)),
        float(np.max(np.linalg.norm(r2, axis=0), initial=0.0)),
    ) / scale
    if residual > RESIDUAL_TOLERANCE:
        raise SolverError('Singular value residual %.3g exceeds tolerance.' %
                          residual, residual=residual)
    return residual


def _svd_lapack(A: np.ndarray) -> SpectralDecomposition:
    try:
        U, s, Vh = scipy.linalg.svd(A, full_matrices=False,
                                    lapack_driver='gesdd')
    except np.linalg.LinAlgError:
        try:
            U, s, Vh = scipy.linalg.svd(A, full_matrices=False,
                                        lapack_driver='gesvd')
        except np.linalg.LinAlgError as error:
            raise SolverError('SVD did not converge: %s' % error)
    left = U[:, ::-1].copy()
    right = Vh[::-1].conj().T.copy()
    return SpectralDecomposition(s[::-1].copy(), right, left, A.shape[1])


def _svd_augmented(A: np.ndarray) -> SpectralDecomposition:
    p, n = A.shape
    try:
        evals, evecs = scipy.linalg.eigh(augment(A).matrix)
    except np.linalg.LinAlgError as error:
        raise SolverError('Eigensolver did not converge: %s' % error)
    # The top p eigenpairs are (sigma_i, (v_i, u_i) / sqrt(2)).
    top = evecs[:, n:]
    sigma = np.clip(evals[n:], 0.0, None)
    left = top[:p] * math.sqrt(2.0)
    right = top[p:] * math.sqrt(2.0)
    return SpectralDecomposition(sigma, right, left, n)


def svd_full(M: Matrix,
             method: Literal['lapack', 'augmented']='lapack'
             ) -> SpectralDecomposition:
    """Compute the singular value system of ``M``.

    The default route runs LAPACK's divide-and-conquer SVD on the
    bidiagonalized matrix.  ``method='augmented'`` diagonalizes the augmented
    Hermitian matrix instead and reads coupled pairs from its positive
    eigenvectors, which is only reliable when every singular value is
    nonzero and simple.

    Phases are normalized so the largest-magnitude coordinate of each
    ``u_i`` is real and positive.

    :raises SolverError: The driver failed or residuals exceed
     ``1e-8 * ||M||``.

    .. versionadded:: 0.1

    """

    A = _entries(M)
    if A.shape[0] > A.shape[1]:
        A = A.T
    if method == 'lapack':
        d = _svd_lapack(A)
    elif method == 'augmented':
        d = _svd_augmented(A)
    else:
        raise PreconditionError('Unknown SVD method %r.' % method)
    _normalize_phases(d.left, d.right)
    return d._replace(residual=_check_residuals(A, d))


def spectrum(M: Matrix) -> np.ndarray:
    """Ascending singular values only."""
    A = _entries(M)
    try:
        s = scipy.linalg.svdvals(A)
    except np.linalg.LinAlgError as error:
        raise SolverError('SVD did not converge: %s' % error)
    return s[::-1].copy()


class AugmentedMatrix(NamedTuple):
    """The Hermitian block matrix ``[[0, M], [M*, 0]]``."""

    matrix: np.ndarray

    def eigenvalues(self) -> np.ndarray:
        return scipy.linalg.eigvalsh(self.matrix)


def augment(M: Matrix) -> AugmentedMatrix:
    """Build the ``(p + n) x (p + n)`` augmented matrix of ``M``.

    Its eigenvalues are ``+/- sigma_i`` plus ``n - p`` zeros.

    .. versionadded:: 0.1

    """

    A = _entries(M)
    p, n = A.shape
    block = np.zeros((p + n, p + n), dtype=complex)
    block[:p, p:] = A
    block[p:, :p] = A.conj().T
    return AugmentedMatrix(block)
