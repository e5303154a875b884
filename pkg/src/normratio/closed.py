"""Closed-form special cases of the normal product ratio distribution.

These serve as fast paths for :mod:`normratio.dist` and as oracles for the
general Meijer G route.  Every function takes a :class:`DistParams` so the
scale parameters are read from one place.
"""

from __future__ import annotations

import decimal
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import CaseMismatch, DomainError, NonFiniteInput
from .params import DistParams
from .quadrature import gauss_kronrod
from .specfun import EULER_GAMMA, bessel_k, dilog, expint_e1, inc_gamma_upper_half, struve_l

_PI2 = math.pi**2
_LN2 = math.log(2.0)
# window around a removable singularity inside which a series is used
REMOVABLE_WINDOW = 1e-4
# above this argument the M=0, N=2 CDF uses int_y^inf K_0 directly; the
# Struve form 1/2 - (y/2)[...] cancels to e^{-y} there
_STRUVE_SPLIT = 1.0


class Pattern(str, enum.Enum):
    PROD_M2_N0 = "prodM2_N0"
    RECIP_N1 = "recipN1"
    RECIP_N2 = "recipN2"
    CAUCHY_M2N2 = "cauchyM2N2"
    CAUCHY_M3N3 = "cauchyM3N3"
    M2N1 = "M2N1"
    M1N2 = "M1N2"
    M3N1_CF = "M3N1_cf"
    M0N1_CF = "M0N1_cf"


@dataclass(frozen=True)
class ClosedCase:
    """A closed-form case and the operations it provides."""

    pattern: Pattern
    applicable_ops: frozenset

    def supports(self, op: str) -> bool:
        return op in self.applicable_ops


_TABLE = {
    (2, 0): (ClosedCase(Pattern.PROD_M2_N0, frozenset({"pdf"})),),
    (0, 1): (
        ClosedCase(Pattern.RECIP_N1, frozenset({"pdf"})),
        ClosedCase(Pattern.M0N1_CF, frozenset({"cf"})),
    ),
    (0, 2): (ClosedCase(Pattern.RECIP_N2, frozenset({"pdf", "cdf"})),),
    (2, 2): (ClosedCase(Pattern.CAUCHY_M2N2, frozenset({"pdf", "cdf"})),),
    (3, 3): (ClosedCase(Pattern.CAUCHY_M3N3, frozenset({"pdf"})),),
    (2, 1): (ClosedCase(Pattern.M2N1, frozenset({"pdf", "cf"})),),
    (1, 2): (ClosedCase(Pattern.M1N2, frozenset({"pdf"})),),
    (3, 1): (ClosedCase(Pattern.M3N1_CF, frozenset({"cf"})),),
}


def match_case(params: DistParams, op: str | None = None) -> ClosedCase | None:
    """Closed-form case for ``(M, N)``, or None.

    (M, N) = (0, 1) carries two cases, the reciprocal normal density and its
    characteristic function; pass ``op`` to pick the one providing it.

    >>> from normratio.params import new_params
    >>> match_case(new_params(2, 2)).pattern.value
    'cauchyM2N2'
    >>> match_case(new_params(4, 3)) is None
    True
    """
    cases = _TABLE.get((params.m_count, params.n_count), ())
    for case in cases:
        if op is None or case.supports(op):
            return case
    return None


def cases_for(params: DistParams) -> tuple[ClosedCase, ...]:
    return _TABLE.get((params.m_count, params.n_count), ())


def _check(case: ClosedCase, params: DistParams, op: str) -> None:
    if case is None:
        raise CaseMismatch(f"no closed form for (M, N) = ({params.m_count}, {params.n_count})")
    if (params.m_count, params.n_count) not in _TABLE or case not in _TABLE[
        (params.m_count, params.n_count)
    ]:
        raise CaseMismatch(
            f"case {case.pattern.value} does not match (M, N) = ({params.m_count}, {params.n_count})"
        )
    if not case.supports(op):
        raise CaseMismatch(f"case {case.pattern.value} has no closed-form {op}")


def _finite(v: float, name: str) -> float:
    v = float(v)
    if not math.isfinite(v):
        raise NonFiniteInput(f"{name} must be finite, got {v!r}")
    return v


def _log_ratio_series(e: float) -> float:
    """ln(1 + e) / (e (2 + e)), i.e. ln u / (u^2 - 1) with u = 1 + e."""
    if abs(e) < REMOVABLE_WINDOW:
        return (1.0 - e / 2.0 + e * e / 3.0 - e**3 / 4.0) / (2.0 + e)
    return math.log1p(e) / (e * (2.0 + e))


def pdf_closed(case: ClosedCase, params: DistParams, z: float) -> float:
    """Density at ``z`` from the closed form of ``case``.

    At z = 0 the value follows the package convention: +inf where the density
    diverges, the finite limit otherwise.
    """
    _check(case, params, "pdf")
    z = abs(_finite(z, "z"))
    pat = case.pattern
    if pat is Pattern.PROD_M2_N0:
        s2 = params.sigma_prod
        return math.inf if z == 0 else bessel_k(0, z / s2) / (math.pi * s2)
    if pat is Pattern.RECIP_N1:
        s1 = params.s_prod
        if z == 0:
            return 0.0
        return math.exp(-0.5 / (s1 * z) ** 2) / (math.sqrt(2 * math.pi) * s1 * z * z)
    if pat is Pattern.RECIP_N2:
        s2 = params.s_prod
        if z == 0:
            return 0.0
        y = 1.0 / (s2 * z)
        if y > 700.0:
            return math.exp(math.log(bessel_k(0, y, scaled=True)) - y) / (math.pi * s2 * z * z)
        return bessel_k(0, y) / (math.pi * s2 * z * z)
    if pat is Pattern.CAUCHY_M2N2:
        r = params.s_prod / params.sigma_prod
        if z == 0:
            return math.inf
        u = r * z
        if u < 0.5:
            return 2.0 * r * math.log(u) / ((u - 1.0) * (u + 1.0)) / _PI2
        return 2.0 * r * _log_ratio_series(u - 1.0) / _PI2
    if pat is Pattern.CAUCHY_M3N3:
        r = params.s_prod / params.sigma_prod
        if z == 0:
            return math.inf
        lg = math.log(r * z)
        return r * (4.0 * lg * lg + _PI2) / (2.0 * math.pi**3 * ((r * z) ** 2 + 1.0))
    c = 1.0 / (math.sqrt(2.0) * math.pi**1.5)
    if pat is Pattern.M2N1:
        s1, s2 = params.s_prod, params.sigma_prod
        if z == 0:
            return math.inf
        log_w = 2.0 * math.log(s1 * z / s2) - _LN2
        if log_w < -80.0:
            # E1(w) = -gamma - ln w + O(w), and exp(w) = 1
            return c * s1 / s2 * (-EULER_GAMMA - log_w)
        return c * s1 / s2 * expint_e1(math.exp(log_w), scaled=True)
    if pat is Pattern.M1N2:
        s1, s2 = params.sigma_prod, params.s_prod
        if z == 0:
            return math.sqrt(2.0) * s2 / (math.pi**1.5 * s1)
        log_w = 2.0 * math.log(s1 / (s2 * z)) - _LN2
        if log_w > 35.0:
            # exp(w) E1(w) = (1 - 1/w + 2/w^2) / w and z^2 w = s1^2 / (2 s2^2)
            iw = math.exp(-log_w)
            return c * 2.0 * s2 / s1 * (1.0 - iw + 2.0 * iw * iw)
        return c * s1 / (s2 * z * z) * expint_e1(math.exp(log_w), scaled=True)
    raise CaseMismatch(f"case {pat.value} has no closed-form pdf")


def log_pdf_closed(case: ClosedCase, params: DistParams, z: float) -> float:
    """Natural log of :func:`pdf_closed`, kept finite where the density underflows."""
    _check(case, params, "pdf")
    az = abs(_finite(z, "z"))
    if az > 0 and case.pattern is Pattern.RECIP_N1:
        s1 = params.s_prod
        return -0.5 / (s1 * az) ** 2 - 0.5 * math.log(2 * math.pi) - math.log(s1 * az * az)
    if az > 0 and case.pattern is Pattern.RECIP_N2:
        s2 = params.s_prod
        y = 1.0 / (s2 * az)
        return math.log(bessel_k(0, y, scaled=True)) - y - math.log(math.pi * s2 * az * az)
    v = pdf_closed(case, params, az)
    return math.log(v) if v > 0 else -math.inf


def _bessel_k0_tail_integral(y: float) -> float:
    # int_y^inf K_0(w) dw = e^{-y} int_0^inf e^y K_0(y + v) e^{-v} dv
    if y > 745.0:
        return 0.0

    def g(v):
        return np.array([bessel_k(0, y + vi, scaled=True) * math.exp(-vi) for vi in v])

    # 1e-13 is the finest tolerance the K_0 rounding lets the estimate certify
    res = gauss_kronrod(g, 0.0, 40.0, rtol=1e-13, breakpoints=[1.0, 4.0, 12.0])
    return math.exp(-y) * float(res.value)


def cdf_closed(case: ClosedCase, params: DistParams, z: float) -> float:
    """CDF at ``z`` from the closed form of ``case``."""
    _check(case, params, "cdf")
    z = _finite(z, "z")
    if z == 0:
        return 0.5
    sgn = 1.0 if z > 0 else -1.0
    if case.pattern is Pattern.RECIP_N2:
        y = 1.0 / (params.s_prod * abs(z))
        if y > _STRUVE_SPLIT:
            return 0.5 + sgn * _bessel_k0_tail_integral(y) / math.pi
        bracket = bessel_k(0, y) * struve_l(-1, y) + struve_l(0, y) * bessel_k(1, y)
        return 0.5 + sgn * (0.5 - 0.5 * y * bracket)
    u = params.s_prod / params.sigma_prod * abs(z)
    inner = _PI2 / 6.0 - dilog(1.0 - u) - dilog(-u) - math.log(u) * math.log1p(u)
    return 0.5 + sgn * inner / _PI2


def _m3n1_ratio(u: float) -> float:
    """arccos(u) / sqrt(1 - u^2), continued analytically to u >= 1."""
    if abs(u - 1.0) < REMOVABLE_WINDOW:
        # 2F1(1, 1; 3/2; (1 - u)/2) about u = 1
        w = (1.0 - u) / 2.0
        return 1.0 + 2.0 * w / 3.0 + 8.0 * w * w / 15.0 + 16.0 * w**3 / 35.0
    if u < 1.0:
        return math.acos(u) / math.sqrt((1.0 - u) * (1.0 + u))
    return math.acosh(u) / math.sqrt((u - 1.0) * (u + 1.0))


def _decimal_pi() -> decimal.Decimal:
    # recipe from the decimal module documentation
    ctx = decimal.getcontext()
    ctx.prec += 2
    three = decimal.Decimal(3)
    lasts, t, s, n, na, d, da = 0, three, 3, 1, 0, 0, 24
    while s != lasts:
        lasts = s
        n, na = n + na, na + 8
        d, da = d + da, da + 32
        t = (t * n) / d
        s += t
    ctx.prec -= 2
    return +s


def _m0n1_cf(t: float, s1: float) -> float:
    x = t * t / (8.0 * s1 * s1)
    # both 0F2 terms grow like exp(3 x^(1/3)) while their difference decays,
    # (roughly as fast), so the sum carries twice that many extra digits
    guard = int(6.0 * x ** (1.0 / 3.0) / math.log(10.0)) + 25
    with decimal.localcontext() as ctx:
        ctx.prec = guard
        # x is formed in decimal: the cancelling terms amplify its rounding error
        d_t, d_s = decimal.Decimal(abs(t)), decimal.Decimal(s1)
        dx = d_t * d_t / (8 * d_s * d_s)
        half, one, three_half = decimal.Decimal("0.5"), decimal.Decimal(1), decimal.Decimal("1.5")
        sa = ta = one
        sb = tb = one
        k = 0
        tiny = decimal.Decimal(10) ** (-guard)
        while True:
            ta = ta * dx / ((half + k) * (half + k) * (k + 1))
            tb = tb * dx / ((one + k) * (three_half + k) * (k + 1))
            sa += ta
            sb += tb
            k += 1
            if k > x ** (1.0 / 3.0) + 2 and ta < tiny * sa and tb < tiny * sb:
                break
        coef = _decimal_pi().sqrt() * d_t / (decimal.Decimal(2).sqrt() * d_s)
        return float(sa - coef * sb)


def cf_closed(case: ClosedCase, params: DistParams, t: float) -> float:
    """Characteristic function at ``t`` from the closed form of ``case``."""
    _check(case, params, "cf")
    t = abs(_finite(t, "t"))
    if t == 0:
        return 1.0
    pat = case.pattern
    if pat is Pattern.M2N1:
        w = (params.sigma_prod * t) ** 2 / (2.0 * params.s_prod**2)
        return inc_gamma_upper_half(w, scaled=True) / math.sqrt(math.pi)
    if pat is Pattern.M3N1_CF:
        u = params.sigma_prod * t / params.s_prod
        return 2.0 / math.pi * _m3n1_ratio(u)
    return _m0n1_cf(t, params.s_prod)


def corollary_reduction(a: float, x: float) -> float:
    """Dilogarithm form of G^{2,3}_{3,3}(x | a+1/2, a, a; a, a, a-1/2).

    >>> round(corollary_reduction(0.5, 1.0), 12) == round(2 * (math.pi**2 / 6 + math.pi**2 / 12), 12)
    True
    """
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"x must be positive and finite, got {x!r}")
    r = math.sqrt(x)
    inner = _PI2 / 6.0 - dilog(1.0 - r) - dilog(-r) - math.log(r) * math.log1p(r)
    return 2.0 * x ** (a - 0.5) * inner
