"""Finite selection games: solving, strategy synthesis, duality and fuzzing.

Scenarios, strategies and reports are plain dicts in the JSON forms used by
the ``selectlab`` command-line tool.
"""

import json

from . import _core
from ._core import SelectlabError

__all__ = [
    "SelectlabError",
    "check_duality",
    "cofinality",
    "corpus",
    "fuzz",
    "solve",
    "suite_ids",
    "synthesize",
    "verify",
]


def corpus():
    """Built-in scenarios."""
    return [json.loads(s) for s in _core.corpus()]


def solve(scenario, horizon=None):
    return json.loads(_core.solve(json.dumps(scenario), horizon))


def synthesize(kind, scenario, horizon=None, budget=10_000_000):
    """A winning "pre-one" or "markov-two" strategy, or None."""
    out = _core.synthesize(kind, json.dumps(scenario), horizon, budget)
    return None if out is None else json.loads(out)


def verify(scenario, strategy, horizon=None):
    return json.loads(_core.verify(json.dumps(scenario), json.dumps(strategy), horizon))


def check_duality(first, second):
    return json.loads(_core.check_duality(json.dumps(first), json.dumps(second)))


def cofinality(pair):
    """Relative cofinality as a string: a number, "omega" or "undefined"."""
    return _core.cofinality(json.dumps(pair))


def fuzz(seed, count, suites=()):
    return json.loads(_core.fuzz(seed, count, list(suites)))


def suite_ids():
    return list(_core.suite_ids())
