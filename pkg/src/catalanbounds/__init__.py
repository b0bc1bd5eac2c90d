"""Heights, effective bounds and search oracles for ``x^p - y^q = 1``."""

from ._kernels import BACKEND
from .extscalar import ExtScalar, ext_cmp, ext_exp, ext_from_real, ext_ln, ext_mul, ext_pow

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ExtScalar",
    "ext_cmp",
    "ext_exp",
    "ext_from_real",
    "ext_ln",
    "ext_mul",
    "ext_pow",
    "__version__",
]
