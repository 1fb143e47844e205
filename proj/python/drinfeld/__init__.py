"""Finite-level computations on the Drinfeld symmetric space."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
