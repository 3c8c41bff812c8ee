"""Derivatives of Bessel J_nu and Struve H_nu: evaluation, zeros and zero statistics."""

__version__ = "0.1.0"

from .errors import BsDerivError, NumericalFailure
from .specfun import EvalOptions, EvenKernel, Family, Params
from .zerofinder import ZeroTable, check_interlacing, check_separation, combo_zero_table, zero_table

__all__ = [
    "__version__",
    "BsDerivError",
    "NumericalFailure",
    "EvalOptions",
    "EvenKernel",
    "Family",
    "Params",
    "ZeroTable",
    "check_interlacing",
    "check_separation",
    "combo_zero_table",
    "zero_table",
]
