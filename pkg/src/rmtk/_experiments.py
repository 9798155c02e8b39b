# -*- coding: utf-8 -*-


import functools
import math

import numpy as np
import pandas as pd

from typing import (
    Any,
    Awaitable,
    Callable,
    Dict,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from ._atoms import AtomDistribution, Discrete, match_order, moment_table
from ._catalog import parse_atom
from ._config import ExperimentConfig
from ._correlation import (
    CorrelationEstimate,
    agreement_fraction,
    averaged_correlation,
    kpoint_correlation,
    pair_correlation,
)
from ._errors import MatchingError, PreconditionError
from ._export import estimate_frame, matrix_frame, spectrum_frame
from ._fourmoment import (
    FourMomentResult,
    four_moment_trial,
    matched_order,
    random_test_functions,
    summarize,
)
from ._gaps import gap_report
from ._identities import (
    IdentityResiduals,
    identity_residuals,
    projection_norm,
    random_subspace,
)
from ._matching import solve_third_order_match
from ._mp import (
    MPModel,
    esd_distance,
    mp_fixed_point_residual,
    mp_stieltjes,
    mp_stieltjes_quadrature,
    mp_table,
    stieltjes_deviation,
)
from ._pool import TrialPool
from ._report import Check
from ._seeding import trial_rng, trial_seed
from ._spectral import EnsembleSpec, generate_matrix, svd_full
from ._stats import (
    SpectrumSample,
    bulk_containment,
    bulk_indices,
    concentration_test,
    delocalization_stat,
    eigen_upper_check,
)


class Outcome(NamedTuple):
    """What an experiment hands back to the harness."""

    statistics: Dict[str, Any]
    checks: List[Check]
    per_trial: List[Dict[str, Any]]
    tables: Dict[str, pd.DataFrame]


Experiment = Callable[[ExperimentConfig, TrialPool], Awaitable[Outcome]]
TrialTotal = Callable[[ExperimentConfig], int]

_REGISTRY = {}  # type: Dict[str, Experiment]
_TOTALS = {}  # type: Dict[str, TrialTotal]

# Stream reserved for draws shared by all trials (subspaces, test functions).
_SHARED_STREAM = 2 ** 16


def _per_atom(config: ExperimentConfig) -> int:
    return config.trials * len(config.atoms)


def experiment(name: str, total: TrialTotal=_per_atom
               ) -> Callable[[Experiment], Experiment]:
    """Register an experiment; ``total`` counts the pool trials it runs."""
    def register(fn: Experiment) -> Experiment:
        _REGISTRY[name] = fn
        _TOTALS[name] = total
        return fn
    return register


def get_experiment(name: str) -> Experiment:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise PreconditionError('Unknown experiment %r.' % name)


def trial_total(config: ExperimentConfig) -> int:
    """Number of pool trials ``config.experiment`` will run."""
    get_experiment(config.experiment)
    return _TOTALS[config.experiment](config)


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values) if len(values) else math.nan


def _stderr(values: Sequence[float]) -> float:
    if len(values) < 2:
        return math.nan
    return float(np.std(values, ddof=1)) / math.sqrt(len(values))


def _frequency_check(name: str, failures: int, trials: int,
                     threshold: float) -> Check:
    return Check(name, failures / trials, threshold, '<=',
                 failures=failures, trials=trials)


def _sample(law: AtomDistribution, p: int, n: int,
            seed: np.random.SeedSequence) -> SpectrumSample:
    return SpectrumSample.from_matrix(generate_matrix(p, n, law, seed))


async def _samples(pool: TrialPool, law: AtomDistribution, p: int, n: int,
                   trials: int, master_seed: int,
                   stream: int) -> List[SpectrumSample]:
    seeds = [trial_seed(master_seed, t, stream) for t in range(trials)]
    return await pool.map(functools.partial(_sample, law, p, n), seeds)


def _z_grid(y: float) -> np.ndarray:
    _, b = MPModel(y).edges
    re = np.linspace(-1.0, b + 1.0, 20)
    im = np.logspace(-3.0, 1.0, 20)
    return (re[:, None] + 1j * im[None, :]).ravel()


@experiment('mp-test')
async def mp_test(config: ExperimentConfig, pool: TrialPool) -> Outcome:
    """Goodness of fit of the empirical spectral distribution."""
    y = config.p / config.n
    model = MPModel(y)
    grid = _z_grid(y)
    residual = max(
        mp_fixed_point_residual(mp_stieltjes(z, y), z, y) for z in grid
    )
    quadrature = max(
        abs(mp_stieltjes_quadrature(z, y) - mp_stieltjes(z, y))
        for z in grid if z.imag >= 0.1
    )
    energies = [complex(x, 0.1) for x in np.linspace(model.a + config.eps,
                                                      model.b - config.eps,
                                                      9)]
    stats = {
        'fixed_point_residual': residual,
        'quadrature_error': quadrature,
        'y': y,
    }  # type: Dict[str, Any]
    checks = [
        Check('fixed_point_residual', residual,
              config.threshold('fixed_point_residual', 1e-12)),
        Check('quadrature_error', quadrature,
              config.threshold('quadrature_error', 1e-7)),
    ]
    per_trial = []
    tables = {'mp_table': mp_table(y)}
    for stream, atom in enumerate(config.atoms):
        samples = await _samples(pool, parse_atom(atom), config.p, config.n,
                                 config.trials, config.master_seed, stream)
        ks = [esd_distance(s.eigenvalues, y) for s in samples]
        deviation = [
            stieltjes_deviation(s.eigenvalues, y, energies) for s in samples
        ]
        stats[atom] = {
            'ks_single': ks[0],
            'ks_mean': _mean(ks),
            'ks_stderr': _stderr(ks),
            'stieltjes_deviation_mean': _mean(deviation),
        }
        checks.append(Check('ks_single[%s]' % atom, ks[0],
                            config.threshold('ks_single', 0.05), '<'))
        checks.append(Check('ks_mean[%s]' % atom, _mean(ks),
                            config.threshold('ks_mean', 0.03), '<'))
        per_trial.extend(
            {'atom': atom, 'trial': t, 'ks': d, 'stieltjes_deviation': s}
            for t, (d, s) in enumerate(zip(ks, deviation))
        )
        tables['spectrum_%s' % atom] = spectrum_frame(samples[0])
        if config.csv:
            M = generate_matrix(config.p, config.n, parse_atom(atom),
                                trial_seed(config.master_seed, 0, stream))
            tables['matrix_%s' % atom] = matrix_frame(M)
    return Outcome(stats, checks, per_trial, tables)


@experiment('concentration')
async def concentration(config: ExperimentConfig,
                        pool: TrialPool) -> Outcome:
    """Eigenvalue counts in a macroscopic bulk interval."""
    lo, hi = config.interval
    limit = config.threshold('ratio', 0.02)
    stats = {'interval': [lo, hi]}  # type: Dict[str, Any]
    checks, per_trial = [], []
    for stream, atom in enumerate(config.atoms):
        samples = await _samples(pool, parse_atom(atom), config.p, config.n,
                                 config.trials, config.master_seed, stream)
        results = [
            concentration_test(s, lo, hi, eps=config.eps) for s in samples
        ]
        ratios = [r.ratio for r in results]
        failures = sum(1 for r in ratios if not r < limit)
        stats[atom] = {
            'ratio_mean': _mean(ratios),
            'ratio_max': max(ratios),
            'expected': results[0].expected,
        }
        checks.append(_frequency_check(
            'ratio_failures[%s]' % atom, failures, len(ratios),
            config.threshold('failure_rate', 0.05),
        ))
        per_trial.extend(
            dict(r._asdict(), atom=atom, trial=t)
            for t, r in enumerate(results)
        )
    return Outcome(stats, checks, per_trial, {})


@experiment('bulk')
async def bulk(config: ExperimentConfig, pool: TrialPool) -> Outcome:
    """Bulk eigenvalues stay away from the spectral edges.

    The default margin threshold is 0.05, capped at half the distance from
    the classical locations of the bulk boundary to the edges (the hard
    edge at ``a = 0`` leaves only about 0.025 when ``p = n``).

    """

    model = MPModel.from_shape(config.p, config.n)
    classical = min(model.quantile(config.eps) - model.a,
                    model.b - model.quantile(1.0 - config.eps))
    limit = config.threshold('margin', min(0.05, 0.5 * classical))
    stats = {'margin_threshold': limit}  # type: Dict[str, Any]
    checks, per_trial = [], []
    for stream, atom in enumerate(config.atoms):
        samples = await _samples(pool, parse_atom(atom), config.p, config.n,
                                 config.trials, config.master_seed, stream)
        results = [bulk_containment(s, config.eps) for s in samples]
        margins = [r.margin for r in results]
        failures = sum(1 for m in margins if not m > limit)
        stats[atom] = {'margin_min': min(margins),
                       'margin_mean': _mean(margins)}
        checks.append(_frequency_check(
            'margin_failures[%s]' % atom, failures, len(margins),
            config.threshold('failure_rate', 0.01),
        ))
        per_trial.extend(
            dict(r._asdict(), atom=atom, trial=t)
            for t, r in enumerate(results)
        )
    return Outcome(stats, checks, per_trial, {})


def _delocalization_trial(law: AtomDistribution, p: int, n: int, eps: float,
                          seed: np.random.SeedSequence
                          ) -> Tuple[Optional[float], float]:
    d = svd_full(generate_matrix(p, n, law, seed))
    return delocalization_stat(d, eps=eps).raw, d.residual


@experiment('delocalization',
            total=lambda c: c.trials * len(c.atoms) * len(c.sizes))
async def delocalization(config: ExperimentConfig,
                         pool: TrialPool) -> Outcome:
    """Growth of the largest singular vector coordinate with ``n``."""
    lo = config.threshold('slope_min', -0.6)
    hi = config.threshold('slope_max', -0.4)
    stats = {'sizes': list(config.sizes)}  # type: Dict[str, Any]
    checks, per_trial = [], []
    residual = 0.0
    for a, atom in enumerate(config.atoms):
        law = parse_atom(atom)
        means = []
        for s, n in enumerate(config.sizes):
            p = max(1, int(round(config.aspect * n)))
            seeds = [
                trial_seed(config.master_seed, t, a * len(config.sizes) + s)
                for t in range(config.trials)
            ]
            results = await pool.map(
                functools.partial(_delocalization_trial, law, p, n,
                                  config.eps),
                seeds,
            )
            values = [v for v, _ in results]
            residual = max([residual] + [r for _, r in results])
            observed = [v for v in values if v is not None]
            if not observed:
                raise PreconditionError('No eigenvalue fell in the bulk '
                                        'window at n=%d.' % n)
            means.append(_mean(observed))
            per_trial.extend(
                {'atom': atom, 'n': n, 'trial': t, 'raw': v, 'residual': r}
                for t, (v, r) in enumerate(results)
            )
        slope, intercept = np.polyfit(np.log(config.sizes), np.log(means), 1)
        stats[atom] = {
            'mean_raw': means,
            'slope': float(slope),
            'intercept': float(intercept),
        }
        checks.append(Check('slope_min[%s]' % atom, float(slope), lo, '>='))
        checks.append(Check('slope_max[%s]' % atom, float(slope), hi, '<='))
    stats['max_residual'] = residual
    return Outcome(stats, checks, per_trial, {})


@experiment('eigen-upper')
async def eigen_upper(config: ExperimentConfig, pool: TrialPool) -> Outcome:
    """Largest normalized interval count over a grid of bulk intervals."""
    stats = {}  # type: Dict[str, Any]
    checks, per_trial = [], []
    for stream, atom in enumerate(config.atoms):
        samples = await _samples(pool, parse_atom(atom), config.p, config.n,
                                 config.trials, config.master_seed, stream)
        ratios = [eigen_upper_check(s, eps=config.eps) for s in samples]
        stats[atom] = {'ratio_max': max(ratios), 'ratio_mean': _mean(ratios)}
        checks.append(Check('ratio_max[%s]' % atom, max(ratios),
                            config.threshold('ratio', 2.0), '<'))
        per_trial.extend(
            {'atom': atom, 'trial': t, 'ratio': r}
            for t, r in enumerate(ratios)
        )
    return Outcome(stats, checks, per_trial, {})


def _gap_trial(law: AtomDistribution, config: ExperimentConfig,
               seed: np.random.SeedSequence) -> Dict[str, Any]:
    M = generate_matrix(config.p, config.n, law, seed)
    p = M.p
    indices = config.indices or None
    report = gap_report(M, config.eps, config.c, config.C1, indices,
                        regularized=[(p // 2, 1, p)] if p >= 2 else [])
    bounded = all(
        report.q_values[i] <= report.q_bounds[i] for i in report.q_values
    )
    return dict(report.to_dict(), q_bounded=bounded)


@experiment('gaps')
async def gaps(config: ExperimentConfig, pool: TrialPool) -> Outcome:
    """Frequency of bulk gaps below ``n^(-1-c)``."""
    stats = {'threshold': float(config.n) ** (-1.0 - config.c)}
    checks, per_trial = [], []
    reference = None  # type: Optional[float]
    for stream, atom in enumerate(config.atoms):
        law = parse_atom(atom)
        seeds = [trial_seed(config.master_seed, t, stream)
                 for t in range(config.trials)]
        reports = await pool.map(
            functools.partial(_gap_trial, law, config), seeds,
        )
        failures = sum(1 for r in reports if not r['gap_property_holds'])
        frequency = failures / len(reports)
        smallest = [r['min_bulk_gap'] for r in reports]
        finite = [g for g in smallest if isinstance(g, float)]
        regularized = [
            r['regularized'][0]['value'] for r in reports
            if r['regularized'] and isinstance(r['regularized'][0]['value'],
                                               float)
        ]
        stats[atom] = {
            'failure_frequency': frequency,
            'min_bulk_gap_mean': _mean(finite),
            'regularized_gap_mean': _mean(regularized),
        }
        if reference is None:
            reference = frequency
            checks.append(_frequency_check(
                'gap_failures[%s]' % atom, failures, len(reports),
                config.threshold('failure_rate', 0.10),
            ))
        else:
            checks.append(Check(
                'gap_frequency_difference[%s]' % atom,
                abs(frequency - reference),
                config.threshold('frequency_difference', 0.05),
            ))
        unbounded = sum(1 for r in reports if not r['q_bounded'])
        checks.append(_frequency_check('q_bound_failures[%s]' % atom,
                                       unbounded, len(reports), 0.0))
        per_trial.extend(dict(r, atom=atom, trial=t)
                         for t, r in enumerate(reports))
    return Outcome(stats, checks, per_trial, {})


def _edges(config: ExperimentConfig) -> np.ndarray:
    lo, hi, count = config.bins
    return np.linspace(lo, hi, int(count) + 1)


async def _correlation(config: ExperimentConfig, pool: TrialPool,
                       eps: float) -> Outcome:
    edges = _edges(config)
    stats = {'u': config.u, 'eps': eps}  # type: Dict[str, Any]
    checks = []
    tables = {}
    reference = None  # type: Optional[CorrelationEstimate]
    for stream, atom in enumerate(config.atoms):
        samples = await _samples(pool, parse_atom(atom), config.p, config.n,
                                 config.trials, config.master_seed, stream)
        pair = pair_correlation(samples, config.u, edges, eps=eps)
        if eps > 0.0:
            points = averaged_correlation(samples, config.k, config.u, eps,
                                          edges)
        else:
            points = kpoint_correlation(samples, config.k, config.u, edges)
        stats[atom] = {
            'pair_l2_error': pair.l2_error(),
            'kpoint_l2_error': points.l2_error(),
            'pair': pair.to_dict(),
            'kpoint': points.to_dict(),
        }
        checks.append(Check('l2_error[%s]' % atom, pair.l2_error(),
                            config.threshold('l2_error', 0.1), '<'))
        if reference is None:
            reference = pair
        else:
            fraction = agreement_fraction(pair, reference)
            stats[atom]['agreement'] = fraction
            checks.append(Check('agreement[%s]' % atom, fraction,
                                config.threshold('agreement', 0.95), '>='))
        tables['pair_%s' % atom] = estimate_frame(pair)
        tables['kpoint_%s' % atom] = estimate_frame(points)
    return Outcome(stats, checks, [], tables)


@experiment('correlation')
async def correlation(config: ExperimentConfig, pool: TrialPool) -> Outcome:
    """Bulk correlation functions against the sine kernel."""
    return await _correlation(config, pool, 0.0)


@experiment('averaged-correlation')
async def averaged(config: ExperimentConfig, pool: TrialPool) -> Outcome:
    """Energy-averaged correlation functions against the sine kernel."""
    return await _correlation(config, pool, config.window)


@experiment('four-moment')
async def four_moment(config: ExperimentConfig, pool: TrialPool) -> Outcome:
    """Compare ``E G(n lambda_i)`` across ensembles.

    The first atom is the reference; the second should match it to fourth
    order and the third to a lower order only.

    """

    if len(config.atoms) < 2:
        raise PreconditionError('Four-moment comparisons need two atoms.')
    p, n = config.p, config.n
    indices = list(config.indices) or [p // 2]
    window = bulk_indices(p, config.eps)
    for i in indices:
        if i not in window:
            raise PreconditionError('Index %d is outside the bulk.' % i)
    model = MPModel.from_shape(p, n)
    centers = [n * model.quantile((i + 1) / (p + 1)) for i in indices]
    functions = random_test_functions(
        config.functions, centers,
        trial_rng(config.master_seed, 0, _SHARED_STREAM),
        widths=(1.0, config.width),
    )
    specs = [EnsembleSpec(atom, p, n) for atom in config.atoms]
    values = []
    for stream, spec in enumerate(specs):
        seeds = [trial_seed(config.master_seed, t, stream)
                 for t in range(config.trials)]
        values.append(np.stack(await pool.map(
            functools.partial(four_moment_trial, spec, indices, functions),
            seeds,
        )))
    comparisons = []  # type: List[List[FourMomentResult]]
    for other in range(1, len(specs)):
        comparisons.append(summarize(
            values[0], values[other], specs[0], specs[other], functions,
            matched_order(specs[0], specs[other]),
        ))
    matched = comparisons[0]
    within = sum(1 for r in matched if r.sigmas <= 3.0) / len(matched)
    stats = {
        'indices': indices,
        'certificate': functions[0].certificate(),
        'comparisons': {
            spec.atom: [r.to_dict() for r in results]
            for spec, results in zip(specs[1:], comparisons)
        },
        'matched_within_3se': within,
    }  # type: Dict[str, Any]
    checks = [Check('matched_within_3se', within,
                    config.threshold('matched_within', 0.95), '>=')]
    if len(comparisons) >= 2:
        contrast = comparisons[1]
        wins = sum(1 for a, b in zip(matched, contrast) if a.delta < b.delta)
        stats['win_fraction'] = wins / len(matched)
        checks.append(Check('win_fraction', wins / len(matched),
                            config.threshold('win_fraction', 0.9), '>='))
    per_trial = [
        {'atom': spec.atom, 'trial': t, 'values': list(row)}
        for spec, block in zip(specs, values) for t, row in enumerate(block)
    ]
    return Outcome(stats, checks, per_trial, {})


@experiment('identities', total=lambda c: c.trials)
async def identities(config: ExperimentConfig, pool: TrialPool) -> Outcome:
    """Finite-n identities on random small instances."""
    seeds = [trial_seed(config.master_seed, t) for t in range(config.trials)]
    results = await pool.map(
        functools.partial(identity_residuals, config.p, config.n), seeds,
    )
    totals = dict.fromkeys(IdentityResiduals._fields, 0.0)
    for result in results:
        for key, value in result.items():
            if key == 'skipped':
                totals[key] += value
            else:
                totals[key] = max(totals[key], value)
    totals['skipped'] = int(totals['skipped'])
    summary = IdentityResiduals(**totals)  # type: ignore
    limit = config.threshold('residual', 1e-8)
    checks = [
        Check('%s_residual' % name, getattr(summary, name), limit, '<')
        for name in IdentityResiduals._fields if name != 'skipped'
    ]
    stats = dict(summary._asdict(), max_residual=summary.max_residual)
    per_trial = [dict(r, trial=t) for t, r in enumerate(results)]
    return Outcome(stats, checks, per_trial, {})


def _projection_trial(law: AtomDistribution, H: np.ndarray,
                      seed: np.random.SeedSequence) -> float:
    rng = np.random.default_rng(seed)
    return projection_norm(law.sample(rng, H.shape[0]), H)


@experiment('projection')
async def projection(config: ExperimentConfig, pool: TrialPool) -> Outcome:
    """Concentration of the projection of a random vector on a subspace."""
    n, d = config.n, config.dimension
    H = random_subspace(n, d, trial_rng(config.master_seed, 0,
                                        _SHARED_STREAM))
    stats = {'n': n, 'dimension': d}  # type: Dict[str, Any]
    checks, per_trial = [], []
    deviation = config.threshold('deviation', 5.0)
    for stream, atom in enumerate(config.atoms):
        seeds = [trial_seed(config.master_seed, t, stream)
                 for t in range(config.trials)]
        norms = await pool.map(
            functools.partial(_projection_trial, parse_atom(atom), H), seeds,
        )
        squares = [v * v for v in norms]
        far = sum(1 for v in norms if abs(v - math.sqrt(d)) >= deviation)
        stats[atom] = {
            'mean_square': _mean(squares),
            'mean_square_stderr': _stderr(squares),
        }
        checks.append(Check('mean_square_min[%s]' % atom, _mean(squares),
                            d - config.threshold('mean_square_slack', 1.0),
                            '>='))
        checks.append(Check('mean_square_max[%s]' % atom, _mean(squares),
                            d + config.threshold('mean_square_slack', 1.0),
                            '<='))
        checks.append(_frequency_check(
            'far_from_sqrt_d[%s]' % atom, far, len(norms),
            config.threshold('failure_rate', 0.05),
        ))
        per_trial.extend({'atom': atom, 'trial': t, 'norm': v}
                         for t, v in enumerate(norms))
    return Outcome(stats, checks, per_trial, {})


def random_target(rng: np.random.Generator, limit: float=5.0,
                  points: int=5) -> Discrete:
    """A random complex law on ``points`` atoms, mean 0 and variance 1, with
    every third-order mixed moment at most ``limit`` in magnitude."""
    while True:
        z = rng.standard_normal(points) + 1j * rng.standard_normal(points)
        w = rng.dirichlet(np.ones(points))
        z = z - np.sum(w * z)
        z = z / math.sqrt(float(np.sum(w * np.abs(z) ** 2)))
        law = Discrete(z, w / w.sum(), name='random-target')
        third = [law.mixed_moment(m, 3 - m) for m in range(4)]
        if max(abs(v) for v in third) <= limit:
            return law


def _matching_trial(seed: np.random.SeedSequence) -> Dict[str, Any]:
    rng = np.random.default_rng(seed)
    target = moment_table(random_target(rng), 3)
    try:
        law = solve_third_order_match(target,
                                      seed=int(rng.integers(2 ** 31)))
    except MatchingError as error:
        return {
            'matched': False,
            'discrepancy': error.residual,
            'radius': math.inf,
            'support': 0,
        }
    report = match_order(law, target, 3)
    return {
        'matched': report.matched,
        'discrepancy': report.discrepancy,
        'radius': law.radius,
        'support': len(law.support),
    }


@experiment('matching', total=lambda c: c.trials)
async def matching(config: ExperimentConfig, pool: TrialPool) -> Outcome:
    """Third-order matching on random feasible targets."""
    seeds = [trial_seed(config.master_seed, t) for t in range(config.trials)]
    results = await pool.map(_matching_trial, seeds)
    failures = sum(1 for r in results if not r['matched'])
    radius = max(r['radius'] for r in results)
    stats = {
        'radius_max': radius,
        'discrepancy_max': max(r['discrepancy'] for r in results),
    }
    checks = [
        _frequency_check('match_failures', failures, len(results), 0.0),
        Check('radius_max', radius, config.threshold('radius', 20.0)),
    ]
    per_trial = [dict(r, trial=t) for t, r in enumerate(results)]
    return Outcome(stats, checks, per_trial, {})
