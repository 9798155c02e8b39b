# -*- coding: utf-8 -*-


import asyncio
import logging

from asyncio import Task  # noqa: F401
from typing import Any, Optional

from ._cancel import cancel
from ._pool import TrialPool


class ProgressLogger:
    """Periodically log how many trials of a pool have completed.

    .. code-block:: python

       async with ProgressLogger(pool, total=2000, interval=10.0):
           values = await pool.map(run_one, seeds)

    .. versionadded:: 0.1

    """

    def __init__(self, pool: TrialPool, total: int,
                 interval: float=10.0) -> None:
        if interval <= 0.0:
            raise ValueError('Progress interval must be positive.')
        self._pool = pool
        self._total = total
        self._ival = interval
        self._start = 0
        self._task = None  # type: Optional[Task]

    async def __aenter__(self) -> 'ProgressLogger':
        """Schedule the background task."""
        assert self._task is None
        self._start = self._pool.completed
        self._task = asyncio.get_running_loop().create_task(self._run())
        return self

    async def __aexit__(self, *args: Any) -> None:
        """Stop the background task and log the final count."""
        assert self._task
        await cancel(self._task)
        self._task = None
        self.report()

    @property
    def done(self) -> int:
        return self._pool.completed - self._start

    def report(self) -> None:
        logging.info('%d/%d trials complete', self.done, self._total)

    async def _run(self) -> None:
        while True:
            await asyncio.sleep(self._ival)
            try:
                self.report()
            except Exception:
                logging.exception('Reporting progress.')
