"""Quermassintegrals, Firey combinations, projection bodies and their inequalities."""

from ._core import *  # noqa: F401,F403
from ._core import GeometryError, Polytope, __version__  # noqa: F401
