"""Tools for scattered linearized binomials over finite field towers."""

from .field import FieldCtx, make_field

__version__ = "0.1.0"

__all__ = ["FieldCtx", "make_field", "__version__"]
