"""Eventual domination of matrix semigroups.

Generators are given as operator spec strings (``"interval:mixed:200"``,
``"fixture:ex34A"``, ...), square numpy arrays, or ``(matrix, weight)`` pairs.
Reports are plain dicts with the same keys as the CLI's JSON output.
"""

import json

from . import _evdom
from ._evdom import EvdomError, assemble, expm, fixture_names, run_cli, spectral_bound

__all__ = [
    "EvdomError",
    "assemble",
    "certify",
    "decide",
    "expm",
    "fixture_names",
    "orbit",
    "run_cli",
    "simulate",
    "spectral_bound",
]


def _grid(grid):
    if grid is None:
        return ""
    if isinstance(grid, str):
        return grid
    t_min, t_max, points = grid
    return f"{t_min!r}:{t_max!r}:{int(points)}"


def decide(a, b, u=None, grid=None, seed=42, paper_faithful=False, tol_pos=-1.0, tol_gap=-1.0):
    """Does e^{tB} eventually dominate e^{tA}? Returns the verdict dict."""
    return json.loads(
        _evdom.decide(a, b, u, _grid(grid), seed, paper_faithful, tol_pos, tol_gap)
    )


def certify(a, b, u=None, paper_faithful=False, tol_pos=-1.0, tol_gap=-1.0):
    """Certified uniform domination time for a self-adjoint pair."""
    return json.loads(_evdom.certify(a, b, u, paper_faithful, tol_pos, tol_gap))


def simulate(a, b, grid=None):
    """Min entry of e^{tB} - e^{tA} over a time grid."""
    return json.loads(_evdom.simulate(a, b, _grid(grid)))


def orbit(a, b, x, grid=None):
    """Classify the orbits of one nonnegative vector."""
    return json.loads(_evdom.orbit(a, b, x, _grid(grid)))
