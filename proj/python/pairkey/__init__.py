"""Pairwise secret-key capacity bounds for three users.

Thin wrapper over the C++ extension; see the project README for the model
and the available operations.
"""

from ._pairkey import *  # noqa: F401,F403
from ._pairkey import __version__  # noqa: F401
