"""Limiting forms of the density, tail probability and quantile function.

The functions evaluate the printed leading-order formulas at any admissible
argument; deciding whether the argument is far enough into the asymptotic
regime is left to the caller (see ``dist.Method``).  ``log_*`` variants work
in log space so exponentially small values survive.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, NonFiniteInput, OutOfRangeP, ZeroInput
from .params import DistParams

_LN2 = math.log(2.0)
_LNPI = math.log(math.pi)


class Regime(str, enum.Enum):
    NEAR_ZERO = "near_zero"
    TAIL = "tail"


@dataclass(frozen=True)
class AsymRegime:
    """A regime together with the (M, N) family whose formula applies."""

    regime: Regime
    valid_for: Callable[[int, int], bool]
    formula: str


REGIMES = (
    AsymRegime(Regime.NEAR_ZERO, lambda m, n: m >= 1, "log-power density at the origin"),
    AsymRegime(Regime.NEAR_ZERO, lambda m, n: m == 0, "exponentially vanishing density at the origin"),
    AsymRegime(Regime.TAIL, lambda m, n: n >= 1, "(ln z)^(N-1) / z^2 power tail"),
    AsymRegime(Regime.TAIL, lambda m, n: n == 0, "stretched-exponential tail"),
)


def _abs_arg(z: float) -> float:
    z = float(z)
    if not math.isfinite(z):
        raise NonFiniteInput(f"argument must be finite, got {z!r}")
    if z == 0:
        raise ZeroInput("argument must be nonzero")
    return abs(z)


def _log_signed(value_log: float, base: float, power: int) -> tuple[float, int]:
    # log|base^power| and its sign, with 0^0 = 1
    if power == 0:
        return value_log, 1
    if base == 0:
        return -math.inf, 0
    sign = 1 if base > 0 or power % 2 == 0 else -1
    return value_log + power * math.log(abs(base)), sign


def _signed_exp(log_abs: float, sign: int) -> float:
    return 0.0 if sign == 0 else sign * math.exp(log_abs)


def log_tail_constant(params: DistParams) -> float:
    """log of 2^{(M+N-2)/2} sigma_M / (pi^{(M+N)/2} (N-1)! s_N), shared by the N >= 1 tails."""
    m, n = params.m_count, params.n_count
    if n < 1:
        raise DomainError("the power-law tail constant needs N >= 1")
    return (0.5 * (m + n - 2) * _LN2 + params.log_sigma_prod - 0.5 * (m + n) * _LNPI
            - math.lgamma(n) - params.log_s_prod)


def _log_stretched_parts(params: DistParams) -> tuple[float, float]:
    # N = 0: log of 2^{M/2-1} / sqrt(M pi) and the rate a = M / (2 sigma_M^{2/M})
    m = params.m_count
    log_c = (0.5 * m - 1.0) * _LN2 - 0.5 * (math.log(m) + _LNPI)
    a = 0.5 * m * math.exp(-2.0 * params.log_sigma_prod / m)
    return log_c, a


def log_near_zero_constant(params: DistParams) -> float:
    """log of 2^{(M+N-2)/2} s_N / (pi^{(M+N)/2} sigma_M (M-1)!), for M >= 1."""
    m, n = params.m_count, params.n_count
    if m < 1:
        raise DomainError("the log-power density form needs M >= 1")
    return (0.5 * (m + n - 2) * _LN2 + params.log_s_prod - 0.5 * (m + n) * _LNPI
            - params.log_sigma_prod - math.lgamma(m))


def log_pdf_near_zero(params: DistParams, z: float) -> tuple[float, int]:
    """(log|f|, sign) of the small-|z| density form."""
    az = _abs_arg(z)
    m, n = params.m_count, params.n_count
    if m >= 1:
        return _log_signed(log_near_zero_constant(params), -math.log(az), m - 1)
    log_s = params.log_s_prod / n
    log_c = 0.5 * (n - 2) * _LN2 - 0.5 * (math.log(n) + _LNPI) - log_s
    expo = -0.5 * n * math.exp(-2.0 / n * (params.log_s_prod + math.log(az)))
    return log_c - (n + 1) / n * math.log(az) + expo, 1


def pdf_near_zero(params: DistParams, z: float) -> float:
    """Leading behaviour of the density as z -> 0.

    For M >= 1 this is C (-ln|z|)^{M-1} / (M-1)!; for M = 0 it vanishes
    like exp(-N / (2 (s_N |z|)^{2/N})).

    >>> from normratio.params import new_params
    >>> round(pdf_near_zero(new_params(1, 1), 1e-6) * math.pi, 14)
    1.0
    """
    return _signed_exp(*log_pdf_near_zero(params, z))


def _check_tail(params: DistParams, z: float) -> float:
    az = _abs_arg(z)
    if az * params.scale_lambda < 1.0:
        raise DomainError(f"tail forms need |lambda z| >= 1, got {az * params.scale_lambda:.3g}")
    return az


def _stretched_power(az: float, m: int) -> float:
    # az^(2/M), saturating to inf instead of raising on overflow
    e = (2.0 / m) * math.log(az)
    return math.exp(e) if e < 709.0 else math.inf


def log_pdf_tail(params: DistParams, z: float) -> tuple[float, int]:
    """(log|f|, sign) of the large-|z| density form."""
    az = _check_tail(params, z)
    m, n = params.m_count, params.n_count
    if n >= 1:
        return _log_signed(log_tail_constant(params) - 2.0 * math.log(az), math.log(az), n - 1)
    log_c, a = _log_stretched_parts(params)
    log_c -= params.log_sigma_prod / m
    return log_c + (1.0 / m - 1.0) * math.log(az) - a * _stretched_power(az, m), 1


def pdf_tail(params: DistParams, z: float) -> float:
    """Leading behaviour of the density as |z| -> infinity.

    >>> from normratio.params import new_params
    >>> p = new_params(1, 0)
    >>> math.isclose(pdf_tail(p, 5.0), math.exp(-12.5) / math.sqrt(2 * math.pi))
    True
    """
    return _signed_exp(*log_pdf_tail(params, z))


def log_sf_tail(params: DistParams, z: float) -> tuple[float, int]:
    """(log|sf|, sign) of the large-z survival function form."""
    az = _check_tail(params, z)
    if z < 0:
        raise DomainError("the survival tail form is for z > 0")
    m, n = params.m_count, params.n_count
    if n >= 1:
        return _log_signed(log_tail_constant(params) - math.log(az), math.log(az), n - 1)
    log_c, a = _log_stretched_parts(params)
    log_c += params.log_sigma_prod / m
    return log_c - math.log(az) / m - a * _stretched_power(az, m), 1


def sf_tail(params: DistParams, z: float) -> float:
    """Leading behaviour of P(Z > z) as z -> infinity."""
    return _signed_exp(*log_sf_tail(params, z))


def solve_loglinear(a: float, big_a: float, m: float, z: float) -> float:
    """Three-term solution of big_a * x^m * exp(-a x) = z for small z.

    Returns (1/a) ln(1/z) + (m/a) ln ln(1/z) + ln(big_a / a^m) / a.

    >>> solve_loglinear(1.0, 1.0, 0.0, math.exp(-10.0))
    10.0
    """
    if not (a > 0 and big_a > 0):
        raise DomainError("a and big_a must be positive")
    if not (0 < z < 1):
        raise DomainError(f"z must lie in (0, 1), got {z!r}")
    log_inv = -math.log(z)
    if log_inv <= 1.0:
        raise DomainError("ln(1/z) must exceed 1 for the double logarithm to be meaningful")
    return log_inv / a + m / a * math.log(log_inv) + (math.log(big_a) - m * math.log(a)) / a


def quantile_asym(params: DistParams, p: float, three_term: bool = False) -> float:
    """Small-p approximation of the lower quantile Q(p) (negative).

    For N >= 1 this is -A (ln 1/p)^{N-1} / p.  For N = 0 it is the leading
    term -((1/a) ln(1/p))^{M/2} with a = M / (2 sigma_M^{2/M}); ``three_term``
    instead uses the log-linear solution with m = -1/2, which is much closer
    at moderate p.
    """
    p = float(p)
    if not (0 < p < 0.5):
        raise OutOfRangeP(f"p must lie in (0, 1/2), got {p!r}")
    m, n = params.m_count, params.n_count
    log_inv = -math.log(p)
    if n >= 1:
        lg, sign = _log_signed(log_tail_constant(params) + log_inv, log_inv, n - 1)
        return -sign * math.exp(lg)
    log_c, a = _log_stretched_parts(params)
    big_a = math.exp(log_c + params.log_sigma_prod / m)
    if not three_term or log_inv <= 1.0:
        x = log_inv / a
    else:
        x = solve_loglinear(a, big_a, -0.5, p)
        if x <= 0:
            x = log_inv / a
    return -(x ** (0.5 * m))
