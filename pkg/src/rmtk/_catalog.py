# -*- coding: utf-8 -*-


import math

from typing import Callable, Dict, List

from ._atoms import (
    AtomDistribution,
    ComplexGaussian,
    Discrete,
    RealGaussian,
    gauss_divisible_mix,
    truncate_standardize,
)
from ._errors import PreconditionError
from ._matching import complexify, gauss_divisible_match


def _rademacher() -> AtomDistribution:
    return Discrete([-1.0, 1.0], [0.5, 0.5], name='rademacher')


def _three_point() -> Discrete:
    r = math.sqrt(3.0)
    return Discrete([-r, 0.0, r], [1 / 6, 2 / 3, 1 / 6], name='three-point')


def _skewed_three_point() -> Discrete:
    return Discrete([-1.0, 0.0, 3.0], [1 / 4, 2 / 3, 1 / 12],
                    name='skewed-three-point')


def _complex_gaussian() -> AtomDistribution:
    return ComplexGaussian()


def _wishart() -> AtomDistribution:
    law = ComplexGaussian()
    law.name = 'wishart'
    return law


_NAMED = {
    'rademacher': _rademacher,
    'complex-bernoulli': lambda: complexify(
        Discrete([-1.0, 1.0], [0.5, 0.5]), name='complex-bernoulli',
    ),
    'three-point': _three_point,
    'complex-three-point': lambda: complexify(
        _three_point(), name='complex-three-point',
    ),
    'skewed-three-point': _skewed_three_point,
    'complex-skewed-three-point': lambda: complexify(
        _skewed_three_point(), name='complex-skewed-three-point',
    ),
    'gaussian': RealGaussian,
    'complex-gaussian': _complex_gaussian,
    'wishart': _wishart,
}  # type: Dict[str, Callable[[], AtomDistribution]]

_PARAMETRIC = [
    'gauss-divisible:t=<t>:base=<atom>',
    'gauss-divisible-match:t=<t>:base=<atom>',
    'truncated:K=<K>:base=<atom>',
]


def catalog() -> List[str]:
    """List the atom names understood by :py:func:`parse_atom`.

    .. versionadded:: 0.1

    """
    return sorted(_NAMED) + _PARAMETRIC


def _parameters(spec: str, rest: str) -> Dict[str, str]:
    params = {}
    while rest:
        key, sep, tail = rest.partition('=')
        if not sep:
            raise PreconditionError('Malformed atom spec %r.' % spec)
        if key == 'base':
            params[key] = tail
            break
        value, _, rest = tail.partition(':')
        params[key] = value
    return params


def _number(spec: str, params: Dict[str, str], key: str) -> float:
    try:
        return float(params[key])
    except KeyError:
        raise PreconditionError(
            'Atom %r is missing parameter %s.' % (spec, key)
        )
    except ValueError:
        raise PreconditionError(
            'Atom %r has a non-numeric %s=%r.' % (spec, key, params[key])
        )


def parse_atom(spec: str) -> AtomDistribution:
    """Resolve a catalog string into an atom law.

    Parametric kinds take ``key=value`` pairs separated by colons; ``base=``
    consumes the rest of the string, so parametric kinds nest, e.g.
    ``truncated:K=5:base=gauss-divisible:t=0.5:base=rademacher``.

    :raises PreconditionError: Unknown name or malformed parameters.

    .. versionadded:: 0.1

    """

    spec = spec.strip()
    if spec in _NAMED:
        return _NAMED[spec]()
    kind, _, rest = spec.partition(':')
    params = _parameters(spec, rest)
    try:
        if kind == 'gauss-divisible':
            law = gauss_divisible_mix(parse_atom(params['base']),
                                      _number(spec, params, 't'))
        elif kind == 'gauss-divisible-match':
            law = gauss_divisible_match(parse_atom(params['base']),
                                        _number(spec, params, 't'))
        elif kind == 'truncated':
            law = truncate_standardize(parse_atom(params['base']),
                                       _number(spec, params, 'K'))
        else:
            raise PreconditionError('Unknown atom %r.' % spec)
    except KeyError as error:
        raise PreconditionError(
            'Atom %r is missing parameter %s.' % (spec, error)
        )
    law.name = spec
    return law
