"""Distribution parameters and evaluation results."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import LengthMismatch, NonFiniteSigma, NonPositiveSigma, ZeroFactors


class EvalMethod(str, enum.Enum):
    """Which backend produced a value."""

    CONTOUR = "contour"
    RESIDUE_SERIES = "residue_series"
    CLOSED_FORM = "closed_form"
    ASYMPTOTIC = "asymptotic"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class EvalResult:
    """A value with an absolute error estimate and the method that produced it."""

    value: float
    abs_err_estimate: float
    method: EvalMethod
    singular: bool = False

    def __post_init__(self):
        if not self.abs_err_estimate >= 0:
            raise ValueError("abs_err_estimate must be nonnegative")
        object.__setattr__(self, "method", EvalMethod(self.method))

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class DistParams:
    """Parameters of Z = (X_1 ... X_M) / (Y_1 ... Y_N).

    The X_i and Y_j are independent zero-mean normals with standard deviations
    ``sigma_x[i]`` and ``sigma_y[j]``.  Use :func:`new_params` to build one; the
    derived fields are filled in there.

    Attributes
    ----------
    sigma_prod : float
        Product of ``sigma_x`` (1 when M = 0).
    s_prod : float
        Product of ``sigma_y`` (1 when N = 0).
    scale_lambda : float
        ``2**((N - M)/2) * s_prod / sigma_prod``.  The density at z depends on
        z only through ``(scale_lambda * z)**2``.
    """

    m_count: int
    n_count: int
    sigma_x: tuple[float, ...]
    sigma_y: tuple[float, ...]
    sigma_prod: float = field(compare=False)
    s_prod: float = field(compare=False)
    scale_lambda: float = field(compare=False)
    log_sigma_prod: float = field(compare=False, repr=False)
    log_s_prod: float = field(compare=False, repr=False)

    @property
    def log_lambda(self) -> float:
        return (
            0.5 * (self.n_count - self.m_count) * math.log(2.0)
            + self.log_s_prod
            - self.log_sigma_prod
        )

    @property
    def total(self) -> int:
        return self.m_count + self.n_count

    def reciprocal(self) -> DistParams:
        """Parameters of 1/Z."""
        return new_params(self.n_count, self.m_count, self.sigma_y, self.sigma_x)

    def to_dict(self) -> dict:
        return {
            "m": self.m_count,
            "n": self.n_count,
            "sigma_x": list(self.sigma_x),
            "sigma_y": list(self.sigma_y),
        }

    @classmethod
    def from_dict(cls, d: dict) -> DistParams:
        return new_params(d["m"], d["n"], d["sigma_x"], d["sigma_y"])


def _check_sigmas(name: str, values: Sequence[float], expected: int) -> tuple[float, ...]:
    values = tuple(float(v) for v in values)
    if len(values) != expected:
        raise LengthMismatch(f"{name} has {len(values)} entries, expected {expected}")
    for v in values:
        if not math.isfinite(v):
            raise NonFiniteSigma(f"{name} contains a non-finite entry {v!r}")
        if v <= 0:
            raise NonPositiveSigma(f"{name} contains a nonpositive entry {v!r}")
    return values


def new_params(
    m: int,
    n: int,
    sigma_x: Sequence[float] | None = None,
    sigma_y: Sequence[float] | None = None,
) -> DistParams:
    """Validate and derive the parameters of the ratio distribution.

    Omitted sigma sequences default to all ones.

    >>> p = new_params(2, 0, [1.0, 2.0], [])
    >>> p.sigma_prod, p.scale_lambda
    (2.0, 0.25)
    """
    if isinstance(m, bool) or isinstance(n, bool) or int(m) != m or int(n) != n:
        raise ValueError("m and n must be integers")
    m, n = int(m), int(n)
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    if m + n == 0:
        raise ZeroFactors("at least one normal factor is required (m + n >= 1)")
    sx = _check_sigmas("sigma_x", [1.0] * m if sigma_x is None else sigma_x, m)
    sy = _check_sigmas("sigma_y", [1.0] * n if sigma_y is None else sigma_y, n)
    # log-space products: M, N may be large enough for the plain product to overflow
    log_sx = math.fsum(math.log(v) for v in sx)
    log_sy = math.fsum(math.log(v) for v in sy)
    log_lam = 0.5 * (n - m) * math.log(2.0) + log_sy - log_sx
    return DistParams(
        m_count=m,
        n_count=n,
        sigma_x=sx,
        sigma_y=sy,
        sigma_prod=math.exp(log_sx),
        s_prod=math.exp(log_sy),
        scale_lambda=math.exp(log_lam),
        log_sigma_prod=log_sx,
        log_s_prod=log_sy,
    )
