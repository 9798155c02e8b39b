# -*- coding: utf-8 -*-


import numpy as np

from ._errors import PreconditionError


#: Largest trial index for which seeds are guaranteed distinct.
MAX_TRIALS = 2 ** 32


def trial_seed(master_seed: int, index: int,
               stream: int=0) -> np.random.SeedSequence:
    """Derive the seed of trial ``index`` from ``master_seed``.

    Seeds are counter based: the trial index and the stream number (one per
    ensemble of an experiment) go into the ``spawn_key`` of a
    ``numpy.random.SeedSequence``, so distinct ``(stream, index)`` pairs
    never share a seed and no state is carried between trials.

    .. versionadded:: 0.1

    """

    if not 0 <= index < MAX_TRIALS:
        raise PreconditionError('Trial index %d is out of range.' % index)
    if master_seed < 0 or stream < 0:
        raise PreconditionError('Seeds and streams are nonnegative.')
    return np.random.SeedSequence(master_seed, spawn_key=(stream, index))


def trial_rng(master_seed: int, index: int,
              stream: int=0) -> np.random.Generator:
    return np.random.default_rng(trial_seed(master_seed, index, stream))
