# -*- coding: utf-8 -*-


import cmath
import math

import numpy as np
import pandas as pd

from scipy import integrate, optimize
from typing import Iterable, Tuple, Union

from ._errors import PreconditionError


ArrayLike = Union[float, np.ndarray]


def mp_edges(y: float) -> Tuple[float, float]:
    """Edges ``((1 - sqrt(y))^2, (1 + sqrt(y))^2)`` of the MP law.

    .. versionadded:: 0.1

    """

    if not 0.0 < y <= 1.0:
        raise PreconditionError('Aspect ratio must lie in (0, 1].')
    r = math.sqrt(y)
    return (1.0 - r) ** 2, (1.0 + r) ** 2


def mp_density(x: ArrayLike, y: float) -> ArrayLike:
    """Marchenko-Pastur density; vectorized over ``x``.

    .. versionadded:: 0.1

    """

    a, b = mp_edges(y)
    values = np.asarray(x, dtype=float)
    inside = (values > a) & (values < b) & (values > 0.0)
    safe = np.where(inside, values, 1.0)
    density = np.where(
        inside,
        np.sqrt(np.clip((b - safe) * (safe - a), 0.0, None)) /
        (2.0 * math.pi * safe * y),
        0.0,
    )
    if np.ndim(x) == 0:
        return float(density)
    return density


def _cdf(x: float, y: float) -> float:
    a, b = mp_edges(y)
    if x <= a:
        return 0.0
    if x >= b:
        return 1.0
    # x = a + 2h sin^2(theta/2) maps [0, pi] onto [a, b] and cancels the
    # square-root edge behaviour.
    h = 0.5 * (b - a)
    theta = math.acos(min(1.0, max(-1.0, (0.5 * (a + b) - x) / h)))

    def integrand(t: float) -> float:
        return h * h * math.sin(t) ** 2 / (
            2.0 * math.pi * y * (a + 2.0 * h * math.sin(0.5 * t) ** 2)
        )

    value, _ = integrate.quad(integrand, 0.0, theta,
                              epsabs=1e-13, epsrel=1e-12, limit=200)
    return min(1.0, max(0.0, value))


def mp_cdf(x: ArrayLike, y: float) -> ArrayLike:
    """Marchenko-Pastur distribution function by adaptive quadrature.

    .. versionadded:: 0.1

    """

    if np.ndim(x) == 0:
        return _cdf(float(x), y)
    values = np.asarray(x, dtype=float)
    return np.array([_cdf(v, y) for v in values.ravel()]).reshape(
        values.shape)


def mp_quantile(q: float, y: float) -> float:
    """Inverse of :py:func:`mp_cdf`.

    Brent bracketing on ``[a, b]`` followed by a Newton polish step.

    .. versionadded:: 0.1

    """

    if not 0.0 <= q <= 1.0:
        raise PreconditionError('Quantile level must lie in [0, 1].')
    a, b = mp_edges(y)
    if q == 0.0:
        return a
    if q == 1.0:
        return b
    x = optimize.brentq(lambda t: _cdf(t, y) - q, a, b,
                        xtol=1e-14, rtol=1e-14)
    slope = mp_density(x, y)
    if slope > 1e-3:
        x = min(b, max(a, x - (_cdf(x, y) - q) / slope))
    return float(x)


def _roots(z: complex, y: float) -> Tuple[complex, complex]:
    # Roots of y z s^2 + (y + z - 1) s + 1 = 0, computed without
    # cancellation.
    A, B = y * z, y + z - 1.0
    D = cmath.sqrt(B * B - 4.0 * A)
    if (B.conjugate() * D).real < 0.0:
        D = -D
    q = -0.5 * (B + D)
    return q / A, 1.0 / q


def mp_fixed_point_residual(s: complex, z: complex, y: float) -> float:
    """``|s + 1 / (y + z - 1 + y z s)|``."""
    return abs(s + 1.0 / (y + z - 1.0 + y * z * s))


def mp_stieltjes(z: complex, y: float) -> complex:
    """Stieltjes transform ``s(z) = int rho(x) / (x - z) dx`` of the MP law.

    The branch is picked by the sign condition ``Im s > 0`` among the two
    roots of the fixed-point equation ``s = -1 / (y + z - 1 + y z s)``, then
    polished by Newton steps.

    :param z: Point of the upper half-plane.

    .. versionadded:: 0.1

    """

    z = complex(z)
    if z.imag <= 0.0:
        raise PreconditionError('Stieltjes transform needs Im z > 0.')
    mp_edges(y)
    s = max(_roots(z, y), key=lambda r: r.imag)
    A, B = y * z, y + z - 1.0
    for _ in range(2):
        slope = 2.0 * A * s + B
        if slope == 0:
            break
        s -= (A * s * s + B * s + 1.0) / slope
    return s


def mp_alternate_root(z: complex, y: float) -> complex:
    """The other root ``-(y + z - 1) / (y z) - s`` of the fixed point."""
    s = mp_stieltjes(z, y)
    return -(y + z - 1.0) / (y * z) - s


def mp_root_separation(z: complex, y: float) -> float:
    return abs(mp_alternate_root(z, y) - mp_stieltjes(z, y))


def mp_stieltjes_quadrature(z: complex, y: float) -> complex:
    """Direct quadrature of ``int rho(x) / (x - z) dx``; a cross-check."""
    a, b = mp_edges(y)
    h = 0.5 * (b - a)

    def part(t: float, imag: bool) -> float:
        x = a + 2.0 * h * math.sin(0.5 * t) ** 2
        weight = h * h * math.sin(t) ** 2 / (2.0 * math.pi * y * x)
        value = weight / (x - z)
        return value.imag if imag else value.real

    re, _ = integrate.quad(part, 0.0, math.pi, args=(False,),
                           epsabs=1e-13, epsrel=1e-12, limit=400)
    im, _ = integrate.quad(part, 0.0, math.pi, args=(True,),
                           epsabs=1e-13, epsrel=1e-12, limit=400)
    return complex(re, im)


def _check_spectrum(spectrum: Iterable[float]) -> np.ndarray:
    values = np.asarray(spectrum, dtype=float)
    if values.ndim != 1 or len(values) == 0:
        raise PreconditionError('Spectrum must be a nonempty list.')
    if np.any(np.diff(values) < 0.0):
        raise PreconditionError('Spectrum must be sorted ascending.')
    return values


def esd_distance(spectrum: Iterable[float], y: float) -> float:
    """Kolmogorov-Smirnov distance between the empirical spectral
    distribution and the MP distribution function.

    .. versionadded:: 0.1

    """

    values = _check_spectrum(spectrum)
    p = len(values)
    F = mp_cdf(values, y)
    i = np.arange(1, p + 1)
    return float(max(np.max(i / p - F), np.max(F - (i - 1) / p)))


def empirical_stieltjes(spectrum: Iterable[float], z: complex) -> complex:
    values = np.asarray(spectrum, dtype=float)
    return complex(np.mean(1.0 / (values - z)))


def stieltjes_deviation(spectrum: Iterable[float], y: float,
                        zs: Iterable[complex]) -> float:
    """``max |s_emp(z) - s_MP(z)|`` over the points ``zs``."""
    values = _check_spectrum(spectrum)
    return max(
        abs(empirical_stieltjes(values, z) - mp_stieltjes(z, y)) for z in zs
    )


class MPModel:
    """Marchenko-Pastur law with aspect ratio ``y`` in ``(0, 1]``.

    .. versionadded:: 0.1

    """

    def __init__(self, y: float) -> None:
        self.a, self.b = mp_edges(y)
        self.y = float(y)

    @classmethod
    def from_shape(cls, p: int, n: int) -> 'MPModel':
        """Model for a ``p x n`` sample, using the exact ratio ``p / n``."""
        return cls(p / n)

    @property
    def edges(self) -> Tuple[float, float]:
        return self.a, self.b

    def density(self, x: ArrayLike) -> ArrayLike:
        return mp_density(x, self.y)

    def cdf(self, x: ArrayLike) -> ArrayLike:
        return mp_cdf(x, self.y)

    def quantile(self, q: float) -> float:
        return mp_quantile(q, self.y)

    def stieltjes(self, z: complex) -> complex:
        return mp_stieltjes(z, self.y)

    def mass(self, lo: float, hi: float) -> float:
        """``int_lo^hi rho(x) dx``."""
        return float(self.cdf(hi)) - float(self.cdf(lo))

    def classical_locations(self, p: int) -> np.ndarray:
        """``quantile(i / (p + 1))`` for ``i = 1..p``."""
        return np.array([self.quantile(i / (p + 1)) for i in range(1, p + 1)])

    def __repr__(self) -> str:
        return '<MPModel y=%r a=%.6g b=%.6g>' % (self.y, self.a, self.b)


def mp_table(y: float, points: int=401) -> pd.DataFrame:
    """Tabulate density and distribution function on ``[a, b]``.

    .. versionadded:: 0.1

    """

    a, b = mp_edges(y)
    x = np.linspace(a, b, points)
    return pd.DataFrame({
        'x': x,
        'pdf': mp_density(x, y),
        'cdf': mp_cdf(x, y),
    })
