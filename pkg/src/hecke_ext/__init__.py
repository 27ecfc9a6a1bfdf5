"""Ext^1 between simple supersingular modules of pro-p-Iwahori Hecke algebras at q = 0."""
from .errors import InconsistencyError, ParameterError
from .hecke_data import GenericHeckeData, build_gl_n, validate

__all__ = ["GenericHeckeData", "InconsistencyError", "ParameterError", "build_gl_n", "validate"]
