"""Finite-dimensional weak Kac algebras: constructors, axiom checks and derived structures."""

from ._wka import *  # noqa: F401,F403
from ._wka import WkaError, ParseError  # noqa: F401

__version__ = "0.1.0"
