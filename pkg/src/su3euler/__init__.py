"""SU(3) in Euler angles: representation matrices, invariant operators, irreps,
Haar integration and coupling coefficients."""
from .algebra import DomainError, LAMBDA, gellmann_basis, structure_constants, unitary_exp
from .euler import (
    EulerAngles, FundamentalRep, adjoint_closed, adjoint_from_conjugation, closed_rep, product_rep,
)
from .diffops import Ladder, Side, build_operator, apply
from .polystate import PolyState, FundamentalSymbol
from .haar import V0, Mode, QuadratureSpec, group_volume, gram_matrix, inner_product, orthogonality_suite
from .irreps import IrrepLabel, WeightLabel, generate_irrep, highest_weight, isospin_components
from .cg import tensor_decompose, wcg_coefficients
from .estimators import RepresentationFeatures, check_angles

__version__ = "0.1.0"

__all__ = [
    "DomainError", "LAMBDA", "gellmann_basis", "structure_constants", "unitary_exp",
    "EulerAngles", "FundamentalRep", "adjoint_closed", "adjoint_from_conjugation", "closed_rep", "product_rep",
    "Ladder", "Side", "build_operator", "apply", "PolyState", "FundamentalSymbol",
    "V0", "Mode", "QuadratureSpec", "group_volume", "gram_matrix", "inner_product", "orthogonality_suite",
    "IrrepLabel", "WeightLabel", "generate_irrep", "highest_weight", "isospin_components",
    "tensor_decompose", "wcg_coefficients", "RepresentationFeatures", "check_angles",
]
