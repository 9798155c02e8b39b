# -*- coding: utf-8 -*-


from ._atoms import (
    AtomDistribution,
    ComplexGaussian,
    Discrete,
    GaussDivisible,
    MatchReport,
    MomentTable,
    RealGaussian,
    Truncated,
    gauss_divisible_mix,
    match_order,
    mixed_moment,
    moment_table,
    sample_atom,
    truncate_standardize,
)
from ._cancel import cancel, cancel_all, follow_through
from ._catalog import catalog, parse_atom
from ._cli import main
from ._config import (
    CONFIG_SCHEMA,
    EXPERIMENTS,
    ExperimentConfig,
    four_moment_atoms,
    load_config,
    parse_config,
)
from ._correlation import (
    CorrelationEstimate,
    agreement_fraction,
    averaged_correlation,
    kpoint_correlation,
    pair_correlation,
    sine_det_prediction,
    sine_kernel,
)
from ._errors import (
    ConfigError,
    InsufficientTrials,
    MatchingError,
    PoolClosed,
    PreconditionError,
    RMTError,
    ShapeMismatch,
    SolverError,
    TrialError,
    TruncationError,
    UnsupportedMoment,
)
from ._export import (
    estimate_frame,
    matrix_frame,
    spectrum_frame,
    write_tables,
)
from ._fourmoment import (
    FourMomentResult,
    TestFunctionSpec,
    four_moment_compare,
    four_moment_contrast,
    random_test_functions,
)
from ._gaps import (
    GapReport,
    RegularizedGap,
    gap_report,
    q_upper_bound,
    q_value,
    regularized_gap,
)
from ._harness import (
    run_experiment,
    run_experiment_async,
    run_until_complete,
)
from ._identities import (
    CoordinateCheck,
    IdentityResiduals,
    InterlaceReport,
    eigvec_coordinate_identity,
    identity_suite,
    interlace_check,
    project_distance,
    projection_norm,
    random_subspace,
    singvec_coordinate_identity,
    stieltjes_pair,
    weyl_distance,
    weyl_hermitian_distance,
)
from ._matching import (
    complexify,
    gauss_divisible_match,
    solve_third_order_match,
)
from ._mp import (
    MPModel,
    empirical_stieltjes,
    esd_distance,
    mp_alternate_root,
    mp_cdf,
    mp_density,
    mp_edges,
    mp_fixed_point_residual,
    mp_quantile,
    mp_root_separation,
    mp_stieltjes,
    mp_stieltjes_quadrature,
    mp_table,
    stieltjes_deviation,
)
from ._pool import TrialPool
from ._progress import ProgressLogger
from ._report import REPORT_SCHEMA, Check, RunReport
from ._seeding import trial_rng, trial_seed
from ._spectral import (
    AugmentedMatrix,
    DataMatrix,
    EnsembleSpec,
    SpectralDecomposition,
    augment,
    covariance,
    generate_matrix,
    spectrum,
    svd_full,
)
from ._stats import (
    BulkContainment,
    ConcentrationResult,
    DelocalizationResult,
    SpectrumSample,
    bulk_containment,
    bulk_indices,
    concentration_test,
    count_interval,
    delocalization_stat,
    eigen_upper_check,
    interval_ratio,
)
from ._version import __version__


__all__ = [
    '__version__',
    'agreement_fraction',
    'AtomDistribution',
    'augment',
    'AugmentedMatrix',
    'averaged_correlation',
    'bulk_containment',
    'bulk_indices',
    'BulkContainment',
    'cancel',
    'cancel_all',
    'catalog',
    'Check',
    'complexify',
    'ComplexGaussian',
    'concentration_test',
    'ConcentrationResult',
    'CONFIG_SCHEMA',
    'ConfigError',
    'CoordinateCheck',
    'CorrelationEstimate',
    'count_interval',
    'covariance',
    'DataMatrix',
    'delocalization_stat',
    'DelocalizationResult',
    'Discrete',
    'eigen_upper_check',
    'eigvec_coordinate_identity',
    'empirical_stieltjes',
    'EnsembleSpec',
    'esd_distance',
    'estimate_frame',
    'ExperimentConfig',
    'EXPERIMENTS',
    'follow_through',
    'four_moment_atoms',
    'four_moment_compare',
    'four_moment_contrast',
    'FourMomentResult',
    'gap_report',
    'GapReport',
    'gauss_divisible_match',
    'gauss_divisible_mix',
    'GaussDivisible',
    'generate_matrix',
    'identity_suite',
    'IdentityResiduals',
    'InsufficientTrials',
    'interlace_check',
    'InterlaceReport',
    'interval_ratio',
    'kpoint_correlation',
    'load_config',
    'main',
    'match_order',
    'MatchingError',
    'MatchReport',
    'matrix_frame',
    'mixed_moment',
    'moment_table',
    'MomentTable',
    'mp_alternate_root',
    'mp_cdf',
    'mp_density',
    'mp_edges',
    'mp_fixed_point_residual',
    'mp_quantile',
    'mp_root_separation',
    'mp_stieltjes',
    'mp_stieltjes_quadrature',
    'mp_table',
    'MPModel',
    'pair_correlation',
    'parse_atom',
    'parse_config',
    'PoolClosed',
    'PreconditionError',
    'ProgressLogger',
    'project_distance',
    'projection_norm',
    'q_upper_bound',
    'q_value',
    'random_subspace',
    'random_test_functions',
    'RealGaussian',
    'regularized_gap',
    'RegularizedGap',
    'REPORT_SCHEMA',
    'RMTError',
    'run_experiment',
    'run_experiment_async',
    'run_until_complete',
    'RunReport',
    'sample_atom',
    'ShapeMismatch',
    'sine_det_prediction',
    'sine_kernel',
    'singvec_coordinate_identity',
    'solve_third_order_match',
    'SolverError',
    'SpectralDecomposition',
    'spectrum',
    'spectrum_frame',
    'SpectrumSample',
    'stieltjes_deviation',
    'stieltjes_pair',
    'svd_full',
    'TestFunctionSpec',
    'trial_rng',
    'trial_seed',
    'TrialError',
    'TrialPool',
    'Truncated',
    'truncate_standardize',
    'TruncationError',
    'UnsupportedMoment',
    'weyl_distance',
    'weyl_hermitian_distance',
    'write_tables',
]
