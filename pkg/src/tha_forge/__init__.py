"""Exact computations with local Lie superalgebras, focally associative local
algebras and tensor hierarchy algebras attached to (g, lambda, kappa)."""

from .errors import (ConfigurationError, DomainError, InvalidNormalisationError,
                     NotPeripheralError, PreconditionError, SingularBError, ThaForgeError,
                     UnsupportedError)
from .rootsys import build_B, build_cartan, is_pseudo_minuscule, make_weight
from .superlocal import build_local_part, prop41_scan
from .focal import FocalAlgebra, LocalElement, ProductConstants
from .tha import lemma42_check, thm43_check, w_presentation

__version__ = "0.1.0"


def setup(type_label, rank, labels, kappa="auto", constants=None):
    """Cartan data, weight, B, local tables and product engine in one go."""
    cartan = build_cartan(type_label, rank)
    weight = make_weight(cartan, labels, kappa)
    ext = build_B(cartan, weight)
    tables = build_local_part(cartan, weight, ext)
    return tables, FocalAlgebra(tables, constants)
