# -*- coding: utf-8 -*-


import asyncio
import functools
import logging
import os

from asyncio import Task
from concurrent.futures import ThreadPoolExecutor
from typing import (
    Any,
    Callable,
    List,
    Optional,
    Sequence,
    Set,
)

from ._cancel import cancel_all, follow_through
from ._errors import PoolClosed, PreconditionError, TrialError


def default_workers() -> int:
    """Pool size from ``RMT_THREADS``, else the number of CPUs."""
    value = os.environ.get('RMT_THREADS', '').strip()
    if value:
        try:
            workers = int(value)
        except ValueError:
            raise PreconditionError('RMT_THREADS must be an integer, got %r.'
                                    % value)
        if workers < 1:
            raise PreconditionError('RMT_THREADS must be at least 1.')
        return workers
    return os.cpu_count() or 1


class TrialPool:
    """Run independent Monte Carlo trials on a thread executor.

    Trials are plain functions (NumPy and LAPACK release the GIL), wrapped
    in asyncio tasks so the experiment can be canceled cleanly.  Results of
    :py:meth:`map` come back ordered by trial index whatever the completion
    order, which keeps aggregates reproducible.

    .. code-block:: python

       async with TrialPool(workers=4) as pool:
           values = await pool.map(run_one, seeds)

    .. versionadded:: 0.1

    """

    def __init__(self, workers: Optional[int]=None) -> None:
        self._workers = workers or default_workers()
        self._executor = None  # type: Optional[ThreadPoolExecutor]
        self._pool = set()  # type: Set[Task]
        self._done = False
        self._completed = 0

    @property
    def workers(self) -> int:
        return self._workers

    @property
    def completed(self) -> int:
        """Number of trials that finished successfully so far."""
        return self._completed

    async def __aenter__(self) -> 'TrialPool':
        self.start()
        return self

    async def __aexit__(self, *args: Any) -> None:
        self.close()
        await self.wait_closed()

    def start(self) -> None:
        """Create the executor."""
        assert self._executor is None
        self._executor = ThreadPoolExecutor(max_workers=self._workers,
                                            thread_name_prefix='rmtk-trial')

    def close(self) -> None:
        """Refuse new trials from now on."""
        assert self._executor is not None
        self._done = True

    async def wait_closed(self) -> None:
        """Cancel pending trials and shut the executor down.

        Trials already running in a thread cannot be interrupted; this waits
        for them to return.

        """

        self._done = True
        if self._pool:
            await cancel_all(self._pool)
        if self._executor is not None:
            executor, self._executor = self._executor, None
            await asyncio.get_running_loop().run_in_executor(
                None, functools.partial(executor.shutdown, wait=True,
                                        cancel_futures=True),
            )

    async def spawn(self, index: int, fn: Callable, *args: Any) -> Task:
        """Schedule trial ``index``, i.e. ``fn(*args)`` on the executor.

        :raises PoolClosed: The pool was closed.

        """

        if self._done or self._executor is None:
            raise PoolClosed()
        task = asyncio.get_running_loop().create_task(
            self._run(index, fn, *args)
        )
        self._pool.add(task)
        task.add_done_callback(self._pool.discard)
        return task

    async def _run(self, index: int, fn: Callable, *args: Any) -> Any:
        loop = asyncio.get_running_loop()
        try:
            result = await loop.run_in_executor(
                self._executor, functools.partial(fn, *args),
            )
        except asyncio.CancelledError:
            raise
        except Exception as error:
            logging.exception('Trial %d crashed!', index)
            raise TrialError(index, error) from error
        self._completed += 1
        return result

    async def map(self, fn: Callable, items: Sequence[Any]) -> List[Any]:
        """Run ``fn(item)`` for every item, one trial per item.

        :return: Results in the order of ``items``.
        :raises TrialError: The first failing trial (by index); remaining
         trials are canceled.

        """

        tasks = [await self.spawn(i, fn, item) for i, item in enumerate(items)]
        results = []
        try:
            for task in tasks:
                results.append(await follow_through(task))
        except BaseException:
            await cancel_all(t for t in tasks if not t.done())
            raise
        return results
