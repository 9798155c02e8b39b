# -*- coding: utf-8 -*-


import dataclasses
import json
import math

from typing import (
    Any,
    Dict,
    List,
    Optional,
)
from typing_extensions import Literal

from ._errors import PreconditionError


#: Schema string embedded in every report.
REPORT_SCHEMA = 'rmtk-report/1'

Comparison = Literal['<', '<=', '>', '>=']


def _jsonable(value: Any) -> Any:
    # JSON has no infinity; NaN and inf become strings.
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, 'item') and callable(value.item):
        return _jsonable(value.item())
    return value


@dataclasses.dataclass
class Check:
    """A statistic compared against a declared threshold.

    ``failures`` and ``trials`` carry the empirical failure frequency for
    checks that count per-trial events.

    """

    name: str
    value: float
    threshold: float
    comparison: Comparison = '<='
    failures: Optional[int] = None
    trials: Optional[int] = None

    @property
    def passed(self) -> bool:
        value = self.value
        if self.comparison == '<':
            return value < self.threshold
        if self.comparison == '<=':
            return value <= self.threshold
        if self.comparison == '>':
            return value > self.threshold
        if self.comparison == '>=':
            return value >= self.threshold
        raise PreconditionError('Unknown comparison %r.' % self.comparison)

    @property
    def frequency(self) -> Optional[float]:
        if self.failures is None or not self.trials:
            return None
        return self.failures / self.trials

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'value': self.value,
            'threshold': self.threshold,
            'comparison': self.comparison,
            'passed': self.passed,
            'failures': self.failures,
            'trials': self.trials,
            'frequency': self.frequency,
        }


@dataclasses.dataclass
class RunReport:
    """Outcome of one experiment run.

    :py:meth:`to_json` is stable: keys are sorted and everything except
    ``wall_time`` is a function of the config.

    .. versionadded:: 0.1

    """

    experiment: str
    config: Dict[str, Any]
    config_hash: str
    version: str
    statistics: Dict[str, Any]
    checks: List[Check]
    per_trial: Optional[List[Dict[str, Any]]] = None
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return _jsonable({
            'schema': REPORT_SCHEMA,
            'experiment': self.experiment,
            'config': self.config,
            'config_hash': self.config_hash,
            'version': self.version,
            'statistics': self.statistics,
            'checks': [check.to_dict() for check in self.checks],
            'passed': self.passed,
            'per_trial': self.per_trial,
            'wall_time': self.wall_time,
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + '\n'

    def write(self, path: str) -> None:
        with open(path, 'w', encoding='utf-8') as stream:
            stream.write(self.to_json())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunReport':
        if not isinstance(data, dict) or data.get('schema') != REPORT_SCHEMA:
            raise PreconditionError('Not a %s document.' % REPORT_SCHEMA)
        checks = [
            Check(name=c['name'], value=_number(c['value']),
                  threshold=_number(c['threshold']),
                  comparison=c['comparison'], failures=c.get('failures'),
                  trials=c.get('trials'))
            for c in data['checks']
        ]
        return cls(
            experiment=data['experiment'],
            config=data['config'],
            config_hash=data['config_hash'],
            version=data['version'],
            statistics=data['statistics'],
            checks=checks,
            per_trial=data.get('per_trial'),
            wall_time=data.get('wall_time', 0.0),
        )

    @classmethod
    def read(cls, path: str) -> 'RunReport':
        with open(path, 'r', encoding='utf-8') as stream:
            try:
                data = json.load(stream)
            except ValueError as error:
                raise PreconditionError('Malformed report: %s' % error)
        return cls.from_dict(data)

    def summary(self) -> str:
        """Human readable listing of the checks."""
        lines = ['%s (%s) %s' % (self.experiment, self.config_hash[:12],
                                 'PASS' if self.passed else 'FAIL')]
        for check in self.checks:
            line = '  [%s] %s = %.6g %s %.6g' % (
                'ok' if check.passed else '!!', check.name, check.value,
                check.comparison, check.threshold,
            )
            if check.frequency is not None:
                line += ' (failures %d/%d)' % (check.failures, check.trials)
            lines.append(line)
        return '\n'.join(lines)


def _number(value: Any) -> float:
    return float(value)
