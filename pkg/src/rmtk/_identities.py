# -*- coding: utf-8 -*-


import math

import numpy as np
import scipy.linalg

from typing import Dict, List, NamedTuple, Tuple
from typing_extensions import Literal

from ._atoms import AtomDistribution, ComplexGaussian
from ._errors import PreconditionError, ShapeMismatch
from ._seeding import trial_seed
from ._spectral import (
    DEGENERACY_TOLERANCE,
    Matrix,
    Seed,
    _entries,
    _rng,
    augment,
    covariance,
    spectrum,
    svd_full,
)


def _violation(lower: np.ndarray, value: np.ndarray,
               upper: np.ndarray) -> float:
    if not len(value):
        return 0.0
    return float(max(
        np.max(lower - value, initial=0.0),
        np.max(value - upper, initial=0.0),
    ))


class InterlaceReport(NamedTuple):
    """Largest violation of each interlacing clause (0 when they all hold).
    """

    hermitian: float
    rows: float
    columns: float

    @property
    def max_violation(self) -> float:
        return max(self.hermitian, self.rows, self.columns)


def _rows_clause(A: np.ndarray) -> float:
    # Deleting a row of a p x n matrix (p <= n): s_i(A) <= s_i(A') <=
    # s_{i+1}(A) for i = 1..p-1.
    p = A.shape[0]
    if p < 2:
        return 0.0
    s = spectrum(A)
    worst = 0.0
    for k in range(p):
        minor = spectrum(np.delete(A, k, axis=0))
        worst = max(worst, _violation(s[:-1], minor, s[1:]))
    return worst


def _columns_clause(A: np.ndarray) -> float:
    # Deleting a column of a p x n matrix with p < n: s_{i-1}(A) <= s_i(A')
    # <= s_i(A) for i = 1..p, with s_0 = 0.
    p, n = A.shape
    if p == n:
        return _rows_clause(A.conj().T)
    s = spectrum(A)
    below = np.concatenate([[0.0], s[:-1]])
    worst = 0.0
    for k in range(n):
        minor = spectrum(np.delete(A, k, axis=1))
        worst = max(worst, _violation(below, minor, s))
    return worst


def _hermitian_clause(W: np.ndarray) -> float:
    n = W.shape[0]
    if n < 2:
        return 0.0
    lam = scipy.linalg.eigvalsh(W)
    worst = 0.0
    for k in range(n):
        keep = np.delete(np.arange(n), k)
        minor = scipy.linalg.eigvalsh(W[np.ix_(keep, keep)])
        worst = max(worst, _violation(lam[:-1], minor, lam[1:]))
    return worst


def interlace_check(M: Matrix) -> InterlaceReport:
    """Check every interlacing clause on all row and column deletions.

    The Hermitian clause runs on ``W = M* M / n`` and all its principal
    minors of order ``n - 1``.

    .. versionadded:: 0.1

    """

    A = _entries(M)
    if A.shape[0] > A.shape[1]:
        A = A.T
    W, _ = covariance(A)
    return InterlaceReport(
        hermitian=_hermitian_clause(W),
        rows=_rows_clause(A),
        columns=_columns_clause(A),
    )


def weyl_distance(M: Matrix, N: Matrix) -> Tuple[float, float]:
    """Return ``(max_i |s_i(M) - s_i(N)|, ||M - N||_op)``.

    .. versionadded:: 0.1

    """

    A, B = _entries(M), _entries(N)
    if A.shape != B.shape:
        raise ShapeMismatch('Shapes %r and %r differ.' % (A.shape, B.shape))
    gap = float(np.max(np.abs(spectrum(A) - spectrum(B)), initial=0.0))
    return gap, float(np.linalg.norm(A - B, 2))


def weyl_hermitian_distance(A: np.ndarray,
                            B: np.ndarray) -> Tuple[float, float]:
    """Hermitian variant: ``(max_i |l_i(A) - l_i(B)|, ||A - B||_op)``."""
    if A.shape != B.shape:
        raise ShapeMismatch('Shapes %r and %r differ.' % (A.shape, B.shape))
    gap = np.abs(scipy.linalg.eigvalsh(A) - scipy.linalg.eigvalsh(B))
    return float(np.max(gap, initial=0.0)), float(np.linalg.norm(A - B, 2))


class CoordinateCheck(NamedTuple):
    """Squared coordinate measured on the eigenvector versus the formula."""

    measured: float
    formula: float

    @property
    def residual(self) -> float:
        return abs(self.measured - self.formula)


def _require_separated(value: float, others: np.ndarray, scale: float,
                       what: str) -> None:
    if len(others) and np.min(np.abs(others - value)) <= \
       DEGENERACY_TOLERANCE * max(scale, 1.0):
        raise PreconditionError('%s collides with a neighbouring value.' %
                                what)


def eigvec_coordinate_identity(A: np.ndarray, i: int) -> CoordinateCheck:
    """Compare the last coordinate of the ``i``-th eigenvector of ``A``
    against the formula in terms of the top-left minor.

    :param A: Hermitian ``n x n`` matrix.
    :param i: 0-based eigenvalue index (ascending order).
    :raises PreconditionError: The eigenvalue is repeated or shared with the
     minor.

    .. versionadded:: 0.1

    """

    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    if n == 1:
        return CoordinateCheck(1.0, 1.0)
    lam, vecs = scipy.linalg.eigh(A)
    scale = float(np.max(np.abs(lam), initial=0.0))
    _require_separated(lam[i], np.delete(lam, i), scale, 'Eigenvalue')
    mu, minor_vecs = scipy.linalg.eigh(A[:n - 1, :n - 1])
    _require_separated(lam[i], mu, scale, 'Eigenvalue')
    X = A[:n - 1, n - 1]
    weights = np.abs(minor_vecs.conj().T @ X) ** 2
    formula = 1.0 / (1.0 + math.fsum(weights / (mu - lam[i]) ** 2))
    return CoordinateCheck(float(abs(vecs[n - 1, i]) ** 2), formula)


def singvec_coordinate_identity(
        M: Matrix, i: int,
        side: Literal['last-column', 'last-row']='last-column',
) -> CoordinateCheck:
    """Compare the last coordinate of a singular vector against the formula
    built from the matrix with that column (or row) removed.

    ``side='last-column'`` checks the last coordinate of ``u_i``;
    ``side='last-row'`` the last coordinate of ``v_i``.  The sum runs over
    the ``min(p, n - 1)`` (respectively ``min(p - 1, n)``) singular values of
    the minor.

    :param i: 0-based index into the ascending singular values.
    :raises PreconditionError: ``sigma_i`` is repeated or shared with the
     minor.

    .. versionadded:: 0.1

    """

    A = _entries(M)
    if A.shape[0] > A.shape[1]:
        A = A.T
    d = svd_full(A)
    s = d.sigma
    scale = float(s[-1]) if len(s) else 0.0
    _require_separated(s[i], np.delete(s, i), scale, 'Singular value')
    if side == 'last-column':
        measured = abs(d.right[-1, i]) ** 2
        minor, X = A[:, :-1], A[:, -1]
    elif side == 'last-row':
        measured = abs(d.left[-1, i]) ** 2
        minor, X = A[:-1, :].conj().T, A[-1, :].conj()
    else:
        raise PreconditionError('Unknown side %r.' % side)
    if minor.size == 0:
        return CoordinateCheck(float(measured), 1.0)
    U, t, _ = scipy.linalg.svd(minor, full_matrices=False)
    _require_separated(s[i], t, scale, 'Singular value')
    weights = t ** 2 / (t ** 2 - s[i] ** 2) ** 2 * \
        np.abs(U.conj().T @ X) ** 2
    return CoordinateCheck(float(measured), 1.0 / (1.0 + math.fsum(weights)))


def stieltjes_pair(W: np.ndarray, z: complex) -> Tuple[complex, complex]:
    """Stieltjes transform of ``W`` at ``z``, directly and via Schur
    complements of each diagonal entry.

    :raises PreconditionError: ``z`` lies within 1e-12 of the spectrum of
     ``W`` or of one of its principal minors.

    .. versionadded:: 0.1

    """

    W = np.asarray(W, dtype=complex)
    n = W.shape[0]
    lam = scipy.linalg.eigvalsh(W)
    if np.min(np.abs(lam - z)) <= 1e-12:
        raise PreconditionError('z is on the spectrum.')
    empirical = complex(np.mean(1.0 / (lam - z)))
    terms = []
    for k in range(n):
        keep = np.delete(np.arange(n), k)
        a = W[keep, k]
        minor = W[np.ix_(keep, keep)] - z * np.eye(n - 1)
        if n > 1:
            try:
                solved = scipy.linalg.solve(minor, a)
            except np.linalg.LinAlgError:
                raise PreconditionError('z is on the spectrum of a minor.')
            quad = complex(a.conj() @ solved)
        else:
            quad = 0j
        denominator = W[k, k] - z - quad
        if abs(denominator) <= 1e-12:
            raise PreconditionError('z is on the spectrum of a minor.')
        terms.append(1.0 / denominator)
    schur = complex(math.fsum(t.real for t in terms),
                    math.fsum(t.imag for t in terms)) / n
    return empirical, schur


def random_subspace(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """Orthonormal basis (``n x d``) of a uniformly random subspace."""
    if not 0 <= d <= n:
        raise PreconditionError('Subspace dimension must lie in [0, n].')
    if d == 0:
        return np.zeros((n, 0), dtype=complex)
    G = ComplexGaussian().sample(rng, (n, d))
    Q, _ = np.linalg.qr(G)
    return Q


def projection_norm(X: np.ndarray, H: np.ndarray) -> float:
    """``||pi_H X||`` for ``H`` given by orthonormal columns.

    :raises PreconditionError: The columns of ``H`` are not orthonormal
     within 1e-10.

    """

    H = np.asarray(H, dtype=complex)
    gram = H.conj().T @ H
    if gram.size and np.max(np.abs(gram - np.eye(H.shape[1]))) > 1e-10:
        raise PreconditionError('Subspace basis is not orthonormal.')
    return float(np.linalg.norm(H.conj().T @ X))


def project_distance(H: np.ndarray, dist: AtomDistribution, trials: int,
                     seed: Seed=None) -> np.ndarray:
    """Sample ``||pi_H X||`` for random vectors ``X`` with iid ``dist``
    entries.

    .. versionadded:: 0.1

    """

    H = np.asarray(H, dtype=complex)
    rng = _rng(seed)
    n = H.shape[0]
    return np.array([
        projection_norm(dist.sample(rng, n), H) for _ in range(trials)
    ])


class IdentityResiduals(NamedTuple):
    """Worst residual of each identity over a sweep of random instances."""

    augmented: float
    interlacing: float
    weyl: float
    eigenvector: float
    singular_vector: float
    stieltjes: float
    svd_routes: float
    skipped: int

    @property
    def max_residual(self) -> float:
        return max(self.augmented, self.interlacing, self.weyl,
                   self.eigenvector, self.singular_vector, self.stieltjes,
                   self.svd_routes)


def identity_residuals(p: int, n: int, seed: Seed) -> Dict[str, float]:
    """Evaluate every finite-n identity on one random ``p x n`` instance.

    Near-degenerate instances that trip a precondition are counted under
    ``skipped`` instead of failing.

    """

    rng = _rng(seed)
    law = ComplexGaussian()
    A = law.sample(rng, (p, n))
    B = law.sample(rng, (p, n))
    G = law.sample(rng, (n, n))
    H = (G + G.conj().T) / 2

    result = dict.fromkeys(IdentityResiduals._fields, 0.0)

    expected = np.sort(np.concatenate([
        -spectrum(A), spectrum(A), np.zeros(n - p),
    ]))
    result['augmented'] = float(np.max(np.abs(
        augment(A).eigenvalues() - expected
    )))
    result['interlacing'] = interlace_check(A).max_violation
    gap, norm = weyl_distance(A, B)
    result['weyl'] = max(0.0, gap - norm)

    skipped = 0
    coordinate = []  # type: List[float]
    for i in range(n):
        try:
            coordinate.append(eigvec_coordinate_identity(H, i).residual)
        except PreconditionError:
            skipped += 1
    result['eigenvector'] = max(coordinate, default=0.0)
    coordinate = []
    for side in ('last-column', 'last-row'):
        for i in range(p):
            try:
                check = singvec_coordinate_identity(A, i, side)  # type: ignore
                coordinate.append(check.residual)
            except PreconditionError:
                skipped += 1
    result['singular_vector'] = max(coordinate, default=0.0)

    empirical, schur = stieltjes_pair(H, 1.0 + 1.0j)
    result['stieltjes'] = abs(empirical - schur)
    result['svd_routes'] = float(np.max(np.abs(
        svd_full(A).sigma - svd_full(A, method='augmented').sigma
    )))
    result['skipped'] = skipped
    return result


def identity_suite(p: int, n: int, seeds: int,
                   master_seed: int=0) -> IdentityResiduals:
    """Run :py:func:`identity_residuals` over ``seeds`` instances.

    .. versionadded:: 0.1

    """

    if not 1 <= p <= n:
        raise PreconditionError('Identity sweeps need 1 <= p <= n.')
    totals = dict.fromkeys(IdentityResiduals._fields, 0.0)
    for index in range(seeds):
        seed = trial_seed(master_seed, index)
        for key, value in identity_residuals(p, n, seed).items():
            if key == 'skipped':
                totals[key] += value
            else:
                totals[key] = max(totals[key], value)
    totals['skipped'] = int(totals['skipped'])
    return IdentityResiduals(**totals)  # type: ignore
