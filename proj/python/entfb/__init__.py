"""Steady-state entanglement of two damped, parametrically coupled bosonic
modes under Markovian homodyne feedback, in the Gaussian covariance picture.
"""

from ._entfb import *  # noqa: F401,F403
from ._entfb import __version__  # noqa: F401
