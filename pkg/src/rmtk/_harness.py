# -*- coding: utf-8 -*-


import asyncio
import logging
import time

from typing import Any, Awaitable, Optional

from ._config import ExperimentConfig
from ._experiments import get_experiment, trial_total
from ._export import write_tables
from ._pool import TrialPool
from ._progress import ProgressLogger
from ._report import RunReport
from ._version import __version__


def run_until_complete(coro: Awaitable) -> Any:
    """Run a coroutine through to completion on a fresh event loop.

    ``asyncio.run()`` propagates ``KeyboardInterrupt`` without letting the
    task clean up.  Here the interrupt cancels the task and resumes it, so
    pending trials are canceled and the executor is shut down before
    control returns.  A canceled run returns ``None``.

    .. versionadded:: 0.1

    """

    loop = asyncio.new_event_loop()
    try:
        task = loop.create_task(coro)
        try:
            loop.run_until_complete(task)
        except KeyboardInterrupt:
            task.cancel()
            try:
                loop.run_until_complete(task)
            except asyncio.CancelledError:
                return None
        return task.result()
    finally:
        loop.run_until_complete(loop.shutdown_asyncgens())
        loop.close()


async def run_experiment_async(config: ExperimentConfig,
                               workers: Optional[int]=None,
                               progress: float=30.0) -> RunReport:
    """Coroutine version of :py:func:`run_experiment`.

    .. versionadded:: 0.1

    """

    fn = get_experiment(config.experiment)
    started = time.perf_counter()
    logging.info('Running %s (%s).', config.experiment, config.config_hash)
    async with TrialPool(workers) as pool:
        async with ProgressLogger(pool, trial_total(config), progress):
            outcome = await fn(config, pool)
    report = RunReport(
        experiment=config.experiment,
        config=config.to_dict(),
        config_hash=config.config_hash,
        version=__version__,
        statistics=outcome.statistics,
        checks=outcome.checks,
        per_trial=outcome.per_trial if config.per_trial else None,
        wall_time=time.perf_counter() - started,
    )
    if config.output:
        report.write(config.output)
        if config.csv and outcome.tables:
            write_tables(outcome.tables, config.output)
    for check in report.checks:
        if not check.passed:
            logging.warning('Check %s failed: %r %s %r', check.name,
                            check.value, check.comparison, check.threshold)
    return report


def run_experiment(config: ExperimentConfig, workers: Optional[int]=None,
                   progress: float=30.0) -> Optional[RunReport]:
    """Execute the named experiment and build its report.

    Trials run on a :py:class:`rmtk.TrialPool`; trial ``t`` of ensemble
    ``s`` draws from ``trial_seed(master_seed, t, s)``, so the aggregates
    depend only on the config.  The report is written to ``config.output``
    when set, with CSV sidecars when ``config.csv`` is true.

    :param workers: Pool size; defaults to ``RMT_THREADS`` or the CPU count.
    :param progress: Seconds between progress log lines.
    :return: The report, or ``None`` if the run was interrupted.
    :raises TrialError: A trial crashed; ``.index`` names it.

    .. versionadded:: 0.1

    """

    return run_until_complete(
        run_experiment_async(config, workers=workers, progress=progress)
    )
