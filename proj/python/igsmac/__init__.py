"""Improper Gaussian signaling for an underlay secondary MAC.

Thin wrapper over the C++ core: canonical reduction of physical scenarios,
closed-form single-user and rate-region boundary solvers, brute-force
verification oracles and seeded Monte Carlo studies.
"""

from ._igsmac import *  # noqa: F401,F403
from ._igsmac import __version__  # noqa: F401
