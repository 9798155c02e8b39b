# -*- coding: utf-8 -*-


import configparser
import dataclasses
import hashlib

from typing import (
    Any,
    Callable,
    Dict,
    List,
    Optional,
    Tuple,
)

from ._catalog import parse_atom
from ._errors import ConfigError, RMTError


#: Schema string accepted in the ``schema`` key and echoed by reports.
CONFIG_SCHEMA = 'rmtk-config/1'

#: Experiments understood by :py:func:`rmtk.run_experiment`.
EXPERIMENTS = (
    'averaged-correlation',
    'bulk',
    'concentration',
    'correlation',
    'delocalization',
    'eigen-upper',
    'four-moment',
    'gaps',
    'identities',
    'matching',
    'mp-test',
    'projection',
)

_SECTION = 'experiment'

# Reference law of the default four-moment comparison.
_REFERENCE = 'complex-skewed-three-point'

# Protocol defaults per experiment, applied below explicit keys.
EXPERIMENT_DEFAULTS = {
    'averaged-correlation': {'p': 400, 'n': 400, 'trials': 2000},
    'bulk': {'p': 500, 'n': 500, 'trials': 100},
    'concentration': {'atoms': ('wishart', 'rademacher'), 'p': 1000,
                      'n': 1000},
    'correlation': {'atoms': ('wishart', 'complex-bernoulli'), 'p': 400,
                    'n': 400, 'trials': 2000},
    'delocalization': {'atoms': ('wishart', 'rademacher'), 'trials': 50},
    'eigen-upper': {'p': 500, 'n': 500, 'trials': 50},
    'four-moment': {'p': 400, 'n': 400, 'trials': 2000},
    'gaps': {'atoms': ('wishart', 'complex-bernoulli'), 'p': 500,
             'n': 500, 'trials': 100},
    'identities': {'p': 6, 'n': 8, 'trials': 1000},
    'matching': {'trials': 100},
    'mp-test': {'atoms': ('wishart', 'rademacher'), 'p': 1000,
                'n': 1000},
    'projection': {'atoms': ('rademacher',), 'n': 1000, 'trials': 200},
}  # type: Dict[str, Dict[str, Any]]


def four_moment_atoms(base: str, t: float) -> Tuple[str, ...]:
    """Reference, Gauss-divisible fourth-order partner with weight ``t`` and
    complex Gaussian contrast for ``four-moment``.

    .. versionadded:: 0.1

    """
    return (base, 'gauss-divisible-match:t=%r:base=%s' % (t, base),
            'complex-gaussian')


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """Typed experiment configuration.

    Configs are written as flat ``key = value`` files; see
    :py:func:`parse_config` for the format.  ``p`` and ``n`` are swapped on
    load when ``p > n``.

    .. versionadded:: 0.1

    """

    experiment: str
    atoms: Tuple[str, ...] = ('wishart',)
    p: int = 100
    n: int = 100
    sizes: Tuple[int, ...] = (100, 200, 400, 800)
    aspect: float = 1.0
    trials: int = 20
    master_seed: int = 0
    eps: float = 0.1
    c: float = 0.5
    C1: float = 10.0
    u: float = 2.0
    window: float = 0.2
    bins: Tuple[float, float, int] = (-3.0, 3.0, 24)
    k: int = 2
    indices: Tuple[int, ...] = ()
    functions: int = 20
    width: float = 4.0
    dimension: int = 50
    interval: Tuple[float, float] = (1.0, 2.0)
    t: float = 0.1
    output: Optional[str] = None
    csv: bool = False
    per_trial: bool = False
    thresholds: Tuple[Tuple[str, float], ...] = ()

    def threshold(self, name: str, default: float) -> float:
        """Declared threshold ``name``, or ``default``."""
        return dict(self.thresholds).get(name, default)

    def to_dict(self) -> Dict[str, Any]:
        values = dataclasses.asdict(self)
        values['thresholds'] = dict(self.thresholds)
        for key, value in values.items():
            if isinstance(value, tuple):
                values[key] = list(value)
        values['schema'] = CONFIG_SCHEMA
        return values

    def canonical(self) -> str:
        """One ``key = value`` line per field, in field order."""
        lines = ['schema = %s' % CONFIG_SCHEMA]
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            lines.append('%s = %s' % (field.name, _format(field.name, value)))
        return '\n'.join(lines) + '\n'

    @property
    def config_hash(self) -> str:
        """SHA-256 of :py:meth:`canonical`."""
        return hashlib.sha256(self.canonical().encode('utf-8')).hexdigest()


def _format(name: str, value: Any) -> str:
    if value is None:
        return ''
    if name == 'thresholds':
        return ', '.join('%s:%r' % item for item in value)
    if name in ('bins', 'interval'):
        return ':'.join(repr(v) for v in value)
    if isinstance(value, tuple):
        return ', '.join(str(v) for v in value)
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return repr(value) if isinstance(value, float) else str(value)


def _items(raw: str) -> List[str]:
    return [item.strip() for item in raw.split(',') if item.strip()]


def _boolean(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ('1', 'true', 'yes', 'on'):
        return True
    if lowered in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError('expected a boolean, got %r' % raw)


def _range(raw: str) -> Tuple[float, float]:
    lo, hi = (float(v) for v in raw.split(':'))
    if hi < lo:
        raise ValueError('bounds are reversed')
    return lo, hi


def _bins(raw: str) -> Tuple[float, float, int]:
    lo, hi, count = raw.split(':')
    edges = float(lo), float(hi), int(count)
    if edges[1] <= edges[0] or edges[2] < 1:
        raise ValueError('expected lo:hi:count with lo < hi, count >= 1')
    return edges


def _thresholds(raw: str) -> Tuple[Tuple[str, float], ...]:
    pairs = []
    for item in _items(raw):
        name, _, value = item.partition(':')
        pairs.append((name.strip(), float(value)))
    return tuple(sorted(pairs))


def _optional(raw: str) -> Optional[str]:
    return raw.strip() or None


_PARSERS = {
    'experiment': str.strip,
    'atoms': lambda raw: tuple(_items(raw)),
    'p': int,
    'n': int,
    'sizes': lambda raw: tuple(int(v) for v in _items(raw)),
    'aspect': float,
    'trials': int,
    'master_seed': int,
    'eps': float,
    'c': float,
    'C1': float,
    'u': float,
    'window': float,
    'bins': _bins,
    'k': int,
    'indices': lambda raw: tuple(int(v) for v in _items(raw)),
    'functions': int,
    'width': float,
    'dimension': int,
    'interval': _range,
    't': float,
    'output': _optional,
    'csv': _boolean,
    'per_trial': _boolean,
    'thresholds': _thresholds,
}  # type: Dict[str, Callable[[str], Any]]


def _check(field: str, ok: bool, message: str) -> None:
    if not ok:
        raise ConfigError('%s.%s' % (_SECTION, field), message)


def _validate(values: Dict[str, Any]) -> None:
    _check('experiment', values['experiment'] in EXPERIMENTS,
           'unknown experiment %r' % values['experiment'])
    _check('trials', values['trials'] >= 1, 'must be at least 1')
    _check('p', values['p'] >= 1, 'must be at least 1')
    _check('n', values['n'] >= 1, 'must be at least 1')
    _check('sizes', all(v >= 2 for v in values['sizes']),
           'sizes must be at least 2')
    _check('aspect', 0.0 < values['aspect'] <= 1.0, 'must lie in (0, 1]')
    _check('master_seed', 0 <= values['master_seed'] < 2 ** 64,
           'must be a 64-bit unsigned integer')
    _check('eps', 0.0 < values['eps'] <= 0.5, 'must lie in (0, 1/2]')
    _check('window', values['window'] >= 0.0, 'must be nonnegative')
    _check('k', values['k'] in (1, 2, 3), 'must be 1, 2 or 3')
    _check('functions', values['functions'] >= 1, 'must be at least 1')
    _check('width', values['width'] >= 1.0, 'must be at least 1')
    _check('dimension', values['dimension'] >= 0, 'must be nonnegative')
    _check('t', 0.0 < values['t'] < 1.0, 'must lie in (0, 1)')
    _check('atoms', len(values['atoms']) >= 1, 'needs at least one atom')
    for atom in values['atoms']:
        try:
            parse_atom(atom)
        except RMTError as error:
            raise ConfigError('%s.atoms' % _SECTION, str(error))


def parse_config(text: str) -> ExperimentConfig:
    """Parse a flat ``key = value`` experiment config.

    Lines starting with ``#`` are comments.  List values are comma
    separated; ``bins`` is ``lo:hi:count``, ``interval`` is ``lo:hi`` and
    ``thresholds`` is a comma list of ``name:value`` pairs.
    For ``four-moment``, a missing ``atoms`` key or a single atom is
    expanded with :py:func:`four_moment_atoms` using ``t``.

    :raises ConfigError: Unknown key, bad value or unresolvable atom; the
     ``field`` attribute names the key, e.g. ``experiment.trials``.

    .. versionadded:: 0.1

    """

    parser = configparser.ConfigParser(
        interpolation=None, comment_prefixes=('#',),
        inline_comment_prefixes=('#',),
    )
    parser.optionxform = str  # type: ignore
    try:
        parser.read_string('[%s]\n%s' % (_SECTION, text))
    except configparser.Error as error:
        raise ConfigError(_SECTION, 'malformed config: %s' % error)
    section = parser[_SECTION]
    values = {}  # type: Dict[str, Any]
    for key, raw in section.items():
        if key == 'schema':
            if raw.strip() != CONFIG_SCHEMA:
                raise ConfigError('%s.schema' % _SECTION,
                                  'expected %r' % CONFIG_SCHEMA)
            continue
        if key not in _PARSERS:
            raise ConfigError('%s.%s' % (_SECTION, key), 'unknown key')
        try:
            values[key] = _PARSERS[key](raw)
        except ValueError as error:
            raise ConfigError('%s.%s' % (_SECTION, key), str(error))
    if 'experiment' not in values:
        raise ConfigError('%s.experiment' % _SECTION, 'missing key')
    defaults = {
        f.name: f.default for f in dataclasses.fields(ExperimentConfig)
        if f.name != 'experiment'
    }
    defaults.update(EXPERIMENT_DEFAULTS.get(values['experiment'], {}))
    merged = dict(defaults, **values)
    if merged['experiment'] == 'four-moment':
        if 'atoms' not in values:
            merged['atoms'] = four_moment_atoms(_REFERENCE, merged['t'])
        elif len(merged['atoms']) == 1:
            merged['atoms'] = four_moment_atoms(merged['atoms'][0],
                                                merged['t'])
    if merged['p'] > merged['n']:
        merged['p'], merged['n'] = merged['n'], merged['p']
    _validate(merged)
    return ExperimentConfig(**merged)


def load_config(path: str) -> ExperimentConfig:
    """Read and parse a config file.

    :raises FileNotFoundError: ``path`` does not exist.

    """

    with open(path, 'r', encoding='utf-8') as stream:
        return parse_config(stream.read())
