"""Deterministic simulator of an EPR-pair key distribution and
authentication protocol, its entanglement-swapping network, and its
eavesdropping strategies. Thin wrapper over the C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
