"""Lorentz and grand Lorentz norms, Hausdorff-Young type inequalities and a checking harness."""

from .fourier import OrthonormalSystem, trig_coefficients, walsh_coefficients
from .grand import EpsSearch, grand_fun_norm, grand_seq_star_norm
from .norms import (
    NormParams,
    lambda_norm,
    lorentz_fun_norm,
    lorentz_seq_norm,
    lorentz_seq_star_norm,
    lpqtau_fun_norm,
)
from .rearrange import DyadicStepFunction, decreasing_rearrangement
from .report import CheckReport

__all__ = [
    "CheckReport",
    "DyadicStepFunction",
    "EpsSearch",
    "NormParams",
    "OrthonormalSystem",
    "decreasing_rearrangement",
    "grand_fun_norm",
    "grand_seq_star_norm",
    "lambda_norm",
    "lorentz_fun_norm",
    "lorentz_seq_norm",
    "lorentz_seq_star_norm",
    "lpqtau_fun_norm",
    "trig_coefficients",
    "walsh_coefficients",
]
