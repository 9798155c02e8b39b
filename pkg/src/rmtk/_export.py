# -*- coding: utf-8 -*-


import os

import numpy as np
import pandas as pd

from typing import Dict

from ._correlation import CorrelationEstimate
from ._spectral import Matrix, _entries
from ._stats import SpectrumSample


def estimate_frame(estimate: CorrelationEstimate) -> pd.DataFrame:
    """Flatten a binned estimate into rows of bin centers, estimate and
    standard error.

    A ``k``-point estimate gets one ``alpha<j>`` column per axis; a pair
    estimate gets a single ``r`` column.

    .. versionadded:: 0.1

    """

    centers = estimate.centers
    prediction = estimate.prediction()
    if estimate.kind == 'pair':
        columns = {'r': centers}
    else:
        grids = np.meshgrid(*([centers] * estimate.k), indexing='ij')
        columns = {
            'alpha%d' % (j + 1): grid.ravel() for j, grid in enumerate(grids)
        }
    columns.update({
        'estimate': estimate.estimate.ravel(),
        'stderr': estimate.stderr.ravel(),
        'prediction': np.ravel(prediction),
    })
    return pd.DataFrame(columns)


def spectrum_frame(sample: SpectrumSample) -> pd.DataFrame:
    """One row per eigenvalue (0-based ``index``, ``lambda`` and
    ``sigma``)."""
    return pd.DataFrame({
        'index': np.arange(sample.p),
        'lambda': sample.eigenvalues,
        'sigma': sample.sigma,
    })


def matrix_frame(M: Matrix) -> pd.DataFrame:
    """One row per entry of ``M`` in row-major order: 0-based ``i`` and
    ``j`` plus the real and imaginary parts ``re`` and ``im``.

    .. versionadded:: 0.1

    """

    A = _entries(M)
    i, j = np.indices(A.shape)
    return pd.DataFrame({
        'i': i.ravel(),
        'j': j.ravel(),
        're': A.real.ravel(),
        'im': A.imag.ravel(),
    })


def sidecar_path(output: str, table: str) -> str:
    """``report.json`` plus table ``mp`` gives ``report.mp.csv``."""
    stem, _ = os.path.splitext(output)
    return '%s.%s.csv' % (stem, table)


def write_tables(tables: Dict[str, pd.DataFrame],
                 output: str) -> Dict[str, str]:
    """Write every table as a CSV sidecar of ``output``.

    :return: Mapping of table name to the written path.

    """

    paths = {}
    for name in sorted(tables):
        path = sidecar_path(output, name)
        tables[name].to_csv(path, index=False, float_format='%.17g')
        paths[name] = path
    return paths
