"""Cox rings of root stack lifts.

The document functions take and return the JSON documents of the command line
tool as Python dicts.
"""

import json
from dataclasses import dataclass

from . import _core
from ._core import Error, InputError, InvariantViolation, element_order, group, pushout_root, smith_normal_form

__all__ = [
    "Error",
    "InputError",
    "InvariantViolation",
    "Outcome",
    "decompose",
    "element_order",
    "factor",
    "group",
    "lift",
    "pushout_root",
    "smith_normal_form",
    "verify",
]


@dataclass
class Outcome:
    status: int
    log: str
    document: dict

    @property
    def ok(self):
        return self.status == 0


def _doc(d):
    return d if isinstance(d, str) else json.dumps(d)


def _wrap(triple):
    status, log, text = triple
    return Outcome(status, log, json.loads(text))


def lift(problem, step_cap=10000, spotcheck_bound=4):
    return _wrap(_core.lift(_doc(problem), step_cap, spotcheck_bound))


def verify(problem, result, step_cap=10000):
    return _wrap(_core.verify(_doc(problem), _doc(result), step_cap))


def decompose(doc, step_cap=10000):
    return _wrap(_core.decompose(_doc(doc), step_cap))


def factor(doc, element, step_cap=10000):
    return _wrap(_core.factor(_doc(doc), element, step_cap))
