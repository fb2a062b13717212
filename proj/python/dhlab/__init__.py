"""Sigma-model and Gross-Neveu numerical laboratory."""

from ._dhlab import *  # noqa: F401,F403
from ._dhlab import __doc__  # noqa: F401
