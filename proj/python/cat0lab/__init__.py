"""Random walks on CAT(0) model spaces.

Thin wrapper over the native core: points, boundary points and step
distributions use the same JSON shapes as the experiment configs.
"""

import json
import math

from . import _core
from ._core import DomainError, RefusalError, UsageError, ValidationError

__all__ = [
    "DomainError",
    "RefusalError",
    "UsageError",
    "ValidationError",
    "distance",
    "drift_estimate",
    "experiment_names",
    "horofunction",
    "rankone_audit",
    "report_without_timing",
    "run_experiment",
    "tits_distance",
    "tree_drift",
    "tree_mean_speed",
]

__version__ = _core.library_version()


def _dump(value):
    return json.dumps(value)


def distance(model, p, q):
    return json.loads(_core.distance(model, _dump(p), _dump(q)))


def horofunction(model, xi, x, z):
    """h_xi^x(z), zero at x."""
    return _core.horofunction(model, _dump(xi), _dump(x), _dump(z))


def tits_distance(model, xi, eta):
    """Tits distance; math.inf when the points are not joined by a flat."""
    value = json.loads(_core.tits_distance(model, _dump(xi), _dump(eta)))
    return math.inf if value == "inf" else value


def drift_estimate(distribution, n, m_samples, seed, basepoint=None, allow_uncertified=False, threads=1):
    text = _core.drift_estimate(
        _dump(distribution), "" if basepoint is None else _dump(basepoint), n, m_samples, seed, allow_uncertified, threads
    )
    return json.loads(text)


def rankone_audit(distribution):
    return json.loads(_core.rankone_audit(_dump(distribution)))


def run_experiment(config, allow_uncertified=False, threads=1):
    """Runs one experiment config (dict) and returns the report dict."""
    return json.loads(_core.run_experiment(_dump(config), allow_uncertified, threads))


def report_without_timing(report):
    return _core.report_without_timing(_dump(report))


def experiment_names():
    return list(_core.experiment_names())


def tree_drift(rank=2):
    return _core.tree_drift(rank)


def tree_mean_speed(n, rank=2):
    return _core.tree_mean_speed(n, rank)
