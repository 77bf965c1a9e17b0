from .field import (DegreeGuardError, FieldMismatchError, FieldSpec, degree_guard,
                    is_prime, max_degree)
from .fieldmat import KMatrix
from .matrix import PolyMatrix, ShapeError, block_diag, det, hstack, mat_mul, vstack
from .normal_forms import (SmithForm, coker_kdim, column_rank, hermite_normal_form, inverse,
                           kernel_basis, smith_normal_form, solve_right)
from .poly import Poly

__all__ = [
    "DegreeGuardError", "FieldMismatchError", "FieldSpec", "KMatrix", "Poly", "PolyMatrix",
    "ShapeError", "SmithForm", "block_diag", "coker_kdim", "column_rank", "degree_guard", "det",
    "hermite_normal_form", "hstack", "inverse", "is_prime", "kernel_basis", "mat_mul", "max_degree",
    "smith_normal_form", "solve_right", "vstack",
]
