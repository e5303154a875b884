"""Exact distribution of ratios of products of independent zero-mean normals.

Z = (X_1 ... X_M) / (Y_1 ... Y_N).  The density, distribution function and
characteristic function are Meijer G-functions, evaluated here by contour
quadrature, with closed forms and limiting forms for the special cases.

>>> from normratio import NormalProductRatio
>>> d = NormalProductRatio(1, 1)          # the standard Cauchy law
>>> round(float(d.pdf(0.0)) * 3.141592653589793, 12)
1.0
"""

from .dist import (
    Method,
    NormalProductRatio,
    SampleBatch,
    Shape,
    cdf,
    cf,
    fractional_moment,
    log_pdf,
    log_sf,
    pdf,
    quantile,
    sample,
    sf,
    shape,
)
from .errors import (
    CaseMismatch,
    ContourFailure,
    ConvergenceFailure,
    DomainError,
    MethodUnsupported,
    MomentUndefined,
    NormRatioError,
    NumericalFailure,
    ParameterError,
    QuadratureFailure,
    SpecUnsupported,
)
from .params import DistParams, EvalMethod, EvalResult, new_params

__all__ = [
    "CaseMismatch",
    "ContourFailure",
    "ConvergenceFailure",
    "DistParams",
    "DomainError",
    "EvalMethod",
    "EvalResult",
    "Method",
    "MethodUnsupported",
    "MomentUndefined",
    "NormRatioError",
    "NormalProductRatio",
    "NumericalFailure",
    "ParameterError",
    "QuadratureFailure",
    "SampleBatch",
    "Shape",
    "SpecUnsupported",
    "cdf",
    "cf",
    "fractional_moment",
    "log_pdf",
    "log_sf",
    "new_params",
    "pdf",
    "quantile",
    "sample",
    "sf",
    "shape",
]

__version__ = "0.1.0"
