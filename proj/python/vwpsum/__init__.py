"""Evaluate and verify very-well-poised hypergeometric summation identities.

Jobs use the keys of the command-line flags (identity, n, q, g, g1..g4, gs,
perm, z, N, mode, precision_bits, tol, max_radius, seed, threads). Numbers
may be given as strings to keep their exact decimal or rational text.
"""

import json

from . import _core

__all__ = ["VwpError", "battery", "suite_names", "sweep", "verify"]

VwpError = _core.VwpError


def _job(job, overrides):
    spec = dict(job or {})
    spec.update(overrides)
    return json.dumps(spec)


def verify(job=None, *, include_timing=True, **overrides):
    """Verify one identity; returns (report dict, exit code 0/1/2)."""
    text, code = _core.verify_json(_job(job, overrides), include_timing)
    return json.loads(text), code


def battery(suite, *, seed=1, threads=1, precision_bits=256, include_timing=True):
    """Run a fixed suite; returns a list of case dicts."""
    return [json.loads(t) for t in _core.battery_json(suite, seed, threads, precision_bits, include_timing)]


def sweep(job=None, *, axis, values, include_timing=True, **overrides):
    """Verify along one axis; returns CSV text with a header row."""
    return _core.sweep_csv(_job(job, overrides), axis, [str(v) for v in values], include_timing)


def suite_names():
    return list(_core.suite_names())
