"""Finitely presented graded algebras over Q."""

from ._core import *  # noqa: F401,F403
from ._core import Error, ParseError

__version__ = "0.1.0"
