"""Python access to the prerep verification workbench.

The heavy lifting is in the C++ core; results come back as the same JSON
documents the ``prerep`` command line writes, parsed into dicts.
"""

import json

from . import _core
from ._core import (
    CapExceeded,
    DomainError,
    NumericalError,
    bell_probabilities,
    chsh,
    chsh_classical_bound,
    singlet_correlation,
)

schema_version = _core.schema_version

__all__ = [
    "CapExceeded",
    "DomainError",
    "NumericalError",
    "bell_probabilities",
    "check",
    "chsh",
    "chsh_classical_bound",
    "run",
    "sim",
    "singlet_correlation",
    "solve",
    "schema_version",
]


def _config(kw):
    return json.dumps(kw) if kw else ""


def check(suite, **config):
    """Run a check suite (algebra, invariance, su, adjoints, x-functions, interaction, all)."""
    return json.loads(_core.check(suite, _config(config)))


def solve(what, **config):
    """ground, spectrum or scaling."""
    return json.loads(_core.solve(what, _config(config)))


def sim(what, **config):
    """stern-gerlach, detectors, bell, chsh or antisym."""
    return json.loads(_core.sim(what, _config(config)))


def run(*args):
    """Command line driver in-process. Returns (exit_code, stdout, stderr)."""
    return _core.run([str(a) for a in args])
