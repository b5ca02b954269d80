"""Exact verification of homogeneous spinor connections and geometric
supersymmetry on Cahen-Wallach spaces."""

__version__ = "0.1.0"

from .cahen_wallach import BForm, CWParams, b_form, decomposability, killing_basis, lie_algebra
from .moduli import ClassificationRecord, ModuliPoint, classify, special_points, sweep
from .spinor_connection import ConnectionPair, family_pair, flat_check, parallel_dimension
from .superalgebra import bracket_table, susy_check, susy_check_reduced

__all__ = [
    "__version__",
    "BForm",
    "CWParams",
    "b_form",
    "decomposability",
    "killing_basis",
    "lie_algebra",
    "ConnectionPair",
    "family_pair",
    "flat_check",
    "parallel_dimension",
    "bracket_table",
    "susy_check",
    "susy_check_reduced",
    "ModuliPoint",
    "ClassificationRecord",
    "classify",
    "special_points",
    "sweep",
]
