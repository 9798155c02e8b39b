# -*- coding: utf-8 -*-


import asyncio

from asyncio import Task
from typing import Any, Iterable, Set


async def _settle(tasks: Set[Task]) -> None:
    # A cancellation of the caller still waits for ``tasks`` before it
    # propagates.
    try:
        await asyncio.wait(tasks)
    except asyncio.CancelledError:
        await asyncio.wait(tasks)
        raise


async def cancel_all(tasks: Iterable[Task]) -> None:
    """Cancel trials and wait until every one of them is done.

    **Note**: this function is a coroutine.

    If the caller is canceled while waiting, the trials are still seen
    through to completion before ``asyncio.CancelledError`` propagates, so
    no trial outlives the experiment that spawned it.

    :param tasks: The ``asyncio.Task`` objects to cancel.  An empty
     iterable is a no-op.

    .. versionadded:: 0.1

    """

    pending = set(tasks)
    if not pending:
        return
    for task in pending:
        task.cancel()
    await _settle(pending)


async def cancel(task: Task) -> None:
    """Single task version of :py:func:`cancel_all`.

    .. versionadded:: 0.1

    """
    await cancel_all((task,))


async def follow_through(task: Task) -> Any:
    """Wait for a trial's result, canceling the trial if the caller is
    canceled first.

    **Note**: this function is a coroutine.

    :return: The task's result (its exception is re-raised).

    .. versionadded:: 0.1

    """

    try:
        await asyncio.wait({task})
    except asyncio.CancelledError:
        await cancel(task)
        raise
    return task.result()
