"""Lens-space invariant I_k computed from Euclidean tetrahedra with signed volumes."""

from ._lensinv import *  # noqa: F401,F403
from ._lensinv import __doc__  # noqa: F401

__version__ = "0.1.0"
