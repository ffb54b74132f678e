"""Polaron resonances of solvated electrons in polar liquids and impostoron matching."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
