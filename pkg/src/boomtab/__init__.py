"""boomtab: boomerang connectivity tables over GF(2^n).

Brute-force engines for DDT, BCT, FBCT, DD, UBCT, LBCT, EBCT and DBCT,
plus independent DDT-level closed forms (general delta-uniform, Gold,
Kasami, Bracken-Leander, inverse) and CCZ/EA/affine invariance checks.
"""

from .field import FieldCtx, FieldError, make_field, enumerate_primitive_representations
from .kernels import BACKEND as kernel_backend
from .vecfun import (VecFun, VecFunError, from_family, gold_function,
                     inverse_function, kasami_function, bracken_function,
                     power_function, polynomial_function, read_lut_file,
                     write_lut_file)

__version__ = "0.1.0"

__all__ = [
    "FieldCtx", "FieldError", "make_field", "enumerate_primitive_representations",
    "VecFun", "VecFunError", "from_family", "gold_function", "inverse_function",
    "kasami_function", "bracken_function", "power_function",
    "polynomial_function", "read_lut_file", "write_lut_file",
    "kernel_backend", "__version__",
]
