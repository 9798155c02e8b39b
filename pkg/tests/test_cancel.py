# -*- coding: utf-8 -*-


import asyncio
import pytest

from rmtk import TrialError, cancel, cancel_all, follow_through
from unittest import mock


async def stuck_trial(started, gate, log):
    """Trial that blocks forever and needs ``gate`` to finish cleaning up."""

    try:
        await asyncio.get_running_loop().create_future()
    except asyncio.CancelledError:
        started.set()
        await gate.wait()
        log.append('cleaned')
        raise


@pytest.mark.asyncio
async def test_follow_through_result():
    """The trial's result is handed back."""

    async def trial():
        await asyncio.sleep(0)
        return [0.25, 2.25]

    task = asyncio.ensure_future(trial())
    assert await follow_through(task) == [0.25, 2.25]
    assert not task.cancelled()


@pytest.mark.asyncio
async def test_follow_through_error():
    """The trial's exception is re-raised as is."""

    error = TrialError(3)

    async def trial():
        raise error

    task = asyncio.ensure_future(trial())
    with pytest.raises(TrialError) as exc:
        print(await follow_through(task))
    assert exc.value is error


@pytest.mark.asyncio
async def test_follow_through_cancels_trial():
    """Canceling the caller cancels the trial it follows."""

    started, gate, log = asyncio.Event(), asyncio.Event(), []
    gate.set()
    trial = asyncio.ensure_future(stuck_trial(started, gate, log))
    caller = asyncio.ensure_future(follow_through(trial))
    await asyncio.sleep(0)

    caller.cancel()
    with pytest.raises(asyncio.CancelledError):
        await caller
    assert trial.cancelled()
    assert log == ['cleaned']


@pytest.mark.asyncio
async def test_cancel_pending_trial():
    """A pending trial ends up canceled and its cancellation is absorbed."""

    started, gate, log = asyncio.Event(), asyncio.Event(), []
    gate.set()
    trial = asyncio.ensure_future(stuck_trial(started, gate, log))
    await asyncio.sleep(0)

    await cancel(trial)
    assert trial.cancelled()
    assert log == ['cleaned']


@pytest.mark.asyncio
async def test_cancel_finished_trial():
    """Finished trials keep their result."""

    async def trial():
        return 42

    task = asyncio.ensure_future(trial())
    await task
    await cancel(task)
    assert not task.cancelled()
    assert task.result() == 42


@pytest.mark.asyncio
async def test_cancel_outlives_caller_cancel():
    """A canceled caller still waits for the trial to finish cleaning up."""

    started, gate, log = asyncio.Event(), asyncio.Event(), []
    trial = asyncio.ensure_future(stuck_trial(started, gate, log))
    await asyncio.sleep(0)
    caller = asyncio.ensure_future(cancel(trial))
    await started.wait()

    caller.cancel()
    await asyncio.sleep(0)
    assert not caller.done()
    assert log == []

    gate.set()
    with pytest.raises(asyncio.CancelledError):
        await caller
    assert trial.cancelled()
    assert log == ['cleaned']


@pytest.mark.asyncio
async def test_cancel_all_trials():
    """Every pending trial is canceled."""

    started, gate, log = asyncio.Event(), asyncio.Event(), []
    gate.set()
    trials = [
        asyncio.ensure_future(stuck_trial(started, gate, log))
        for _ in range(5)
    ]
    await asyncio.sleep(0)

    await cancel_all(trials)
    assert all(trial.cancelled() for trial in trials)
    assert log == ['cleaned'] * 5


@pytest.mark.asyncio
async def test_cancel_all_empty():
    """An empty batch returns without waiting."""

    with mock.patch('asyncio.wait') as wait:
        await cancel_all(iter(()))
    wait.assert_not_called()


@pytest.mark.asyncio
async def test_cancel_all_outlives_caller_cancel():
    """A canceled caller waits for the whole batch."""

    started, gate, log = asyncio.Event(), asyncio.Event(), []
    trials = [
        asyncio.ensure_future(stuck_trial(started, gate, log))
        for _ in range(3)
    ]
    await asyncio.sleep(0)
    caller = asyncio.ensure_future(cancel_all(trials))
    await started.wait()

    caller.cancel()
    await asyncio.sleep(0)
    assert not caller.done()

    gate.set()
    with pytest.raises(asyncio.CancelledError):
        await caller
    assert all(trial.cancelled() for trial in trials)
    assert log == ['cleaned'] * 3
