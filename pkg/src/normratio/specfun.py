"""Special functions used by the contour evaluator and the closed forms.

Only the orders and argument ranges this package needs are covered:
complex log-gamma, K_0/K_1, the modified Struve functions L_0/L_{-1},
E_1, Gamma(1/2, x), the real dilogarithm and 0F2.
"""

from __future__ import annotations

import decimal
import math

import numpy as np

from .errors import DomainError, ParameterPole, PoleInput

EULER_GAMMA = 0.57721566490153286060651209008240243
LOG_SQRT_2PI = 0.91893853320467274178032973640562

# Bernoulli numbers B_2 .. B_20
_BERNOULLI = (
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
)
_STIRLING = tuple(b / ((2 * k + 2) * (2 * k + 1)) for k, b in enumerate(_BERNOULLI))

# Stirling's series is used once |s| >= _STIRLING_RADIUS and Re(s) >= 0; with
# ten terms the truncation error there is below 1e-19.
_STIRLING_RADIUS = 15.0


def _stirling(z: np.ndarray) -> np.ndarray:
    inv = 1.0 / z
    inv2 = inv * inv
    acc = np.full_like(z, _STIRLING[-1])
    for c in _STIRLING[-2::-1]:
        acc = acc * inv2 + c
    return (z - 0.5) * np.log(z) - z + LOG_SQRT_2PI + acc * inv


def log_gamma_array(s) -> np.ndarray:
    """Vectorized principal-branch log Gamma for complex input.

    The branch is the one continuous off the negative real axis that satisfies
    ``log_gamma(s + 1) == log_gamma(s) + log(s)``.  Poles are not checked; they
    produce inf/nan.
    """
    z = np.asarray(s, dtype=complex)
    shape = z.shape
    z = z.ravel()
    re, im = z.real, z.imag
    shift = np.where(
        np.abs(im) < _STIRLING_RADIUS,
        np.ceil(np.maximum(0.0, _STIRLING_RADIUS - re)),
        np.ceil(np.maximum(0.0, -re)),
    ).astype(int)
    out = _stirling(z + shift)
    kmax = int(shift.max()) if shift.size else 0
    if kmax:
        corr = np.zeros_like(z)
        for k in range(kmax):
            sel = shift > k
            corr[sel] += np.log(z[sel] + k)
        out = out - corr
    return out.reshape(shape)


# Lanczos coefficients for g = 607/128 (the set used in Numerical Recipes, 3rd ed.)
_LANCZOS_G = 607.0 / 128.0
_LANCZOS = np.array([
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, 0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
])
_LANCZOS_C0 = 0.999999999999997092
_LN_PI = math.log(math.pi)


def _lanczos(z: np.ndarray) -> np.ndarray:
    # log Gamma(z) for Re(z) >= 1/2
    ser = _LANCZOS_C0 + (_LANCZOS[None, :] / (z[:, None] + np.arange(1, 15)[None, :])).sum(axis=1)
    t = z + _LANCZOS_G + 0.5
    return (z + 0.5) * np.log(t) - t + np.log(2.5066282746310005 * ser / z)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    # log sin(pi z) modulo 2 pi i, without overflow for large |Im z|
    flip = z.imag < 0
    w = np.where(flip, np.conj(z), z)
    # sin(pi (k + r)) = (-1)^k sin(pi r); expm1 keeps digits next to the poles
    k = np.round(w.real)
    r = w - k
    out = (-1j * np.pi * r + np.log(-np.expm1(2j * np.pi * r)) - math.log(2.0)
           + 0.5j * np.pi + 1j * np.pi * k)
    return np.where(flip, np.conj(out), out)


def log_gamma_fast(s) -> np.ndarray:
    """log Gamma(s) modulo 2 pi i, vectorized and loop-free.

    Only exp(log_gamma_fast(s)) is meaningful; the imaginary part may sit on
    any branch.  Used for the Mellin-Barnes integrand, where speed matters and
    the branch does not.
    """
    z = np.asarray(s, dtype=complex)
    shape = z.shape
    z = z.ravel()
    left = z.real < 0.5
    w = np.where(left, 1.0 - z, z)
    out = _lanczos(w)
    if left.any():
        with np.errstate(divide="ignore", invalid="ignore"):
            refl = _LN_PI - _log_sin_pi(z) - out
        out = np.where(left, refl, out)
    return out.reshape(shape)


def log_gamma(s: complex) -> complex:
    """Principal-branch log Gamma(s) for complex s."""
    s = complex(s)
    if s.imag == 0.0 and s.real <= 0.0 and abs(s.real - round(s.real)) <= 1e-300:
        raise PoleInput(f"log_gamma has a pole at {s.real!r}")
    return complex(log_gamma_array(np.array([s]))[0])


def zeta_int(n: int) -> float:
    """Riemann zeta at an integer n >= 2 (Euler-Maclaurin with 20 explicit terms)."""
    if n < 2:
        raise DomainError("zeta_int needs n >= 2")
    if n > 60:
        return 1.0 + 2.0 ** (-n)
    big = 20
    head = math.fsum(k ** (-float(n)) for k in range(1, big))
    tail = big ** (1.0 - n) / (n - 1) + 0.5 * big ** (-float(n))
    # Euler-Maclaurin corrections: B_2k/(2k)! * d^{2k-1}/dk^{2k-1} k^{-n}
    rising = float(n)
    power = big ** (-n - 1.0)
    fact = 2.0
    for j, b in enumerate(_BERNOULLI[:6]):
        tail += b / fact * rising * power
        rising *= (n + 2 * j + 1) * (n + 2 * j + 2)
        power /= big * big
        fact *= (2 * j + 3) * (2 * j + 4)
    return head + tail


# --------------------------------------------------------------------------
# Modified Bessel functions K_0, K_1

def _bessel_k_series(x: float) -> tuple[float, float]:
    # small-argument series (x <= 2)
    y = 0.25 * x * x
    log_half = math.log(0.5 * x)
    term = 1.0
    i0 = 1.0
    i1 = 0.5 * x
    harmonic = 0.0
    k0_sum = 0.0
    k1_sum = 0.0  # sum of (psi(k+1) + psi(k+2)) y^k / (k! (k+1)!)
    t1 = 1.0  # y^k / (k! (k+1)!)
    psi_k1 = -EULER_GAMMA
    k = 0
    while True:
        psi_k2 = psi_k1 + 1.0 / (k + 1)
        k1_sum += (psi_k1 + psi_k2) * t1
        k += 1
        term *= y / (k * k)
        harmonic += 1.0 / k
        k0_sum += harmonic * term
        i0 += term
        t1 *= y / (k * (k + 1))
        i1 += 0.5 * x * t1
        psi_k1 = psi_k2
        if term < 1e-18 * i0 and t1 < 1e-18:
            break
    k0 = -(log_half + EULER_GAMMA) * i0 + k0_sum
    k1 = 1.0 / x + i1 * log_half - 0.25 * x * k1_sum
    return k0, k1


def _bessel_k_cf(x: float) -> tuple[float, float]:
    # Steed/Temme continued fraction (x > 2); returns exp(x)-scaled K_0, K_1
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 100000):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < 1e-17:
            break
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * x)) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


# crossover between the power series and the continued fraction
_BESSEL_K_SWITCH = 2.0
# beyond this the continued fraction loses accuracy and three Hankel terms are exact
_BESSEL_K_HANKEL = 1e8


def _bessel_k_hankel(order: int, x: float) -> float:
    mu = 4.0 * order * order
    t1 = (mu - 1.0) / (8.0 * x)
    t2 = t1 * (mu - 9.0) / (16.0 * x)
    return math.sqrt(math.pi / (2.0 * x)) * (1.0 + t1 + t2)


def bessel_k(order: int, x: float, scaled: bool = False) -> float:
    """Modified Bessel function of the second kind, K_0 or K_1.

    With ``scaled=True`` returns ``exp(x) * K(x)``, which stays finite for
    large x.
    """
    if order not in (0, 1):
        raise DomainError("bessel_k supports orders 0 and 1 only")
    x = float(x)
    if not x > 0:
        raise DomainError(f"bessel_k needs x > 0, got {x!r}")
    if math.isinf(x):
        return 0.0
    if x <= _BESSEL_K_SWITCH:
        vals = _bessel_k_series(x)
        v = vals[order]
        return v * math.exp(x) if scaled else v
    if x > _BESSEL_K_HANKEL:
        v = _bessel_k_hankel(order, x)
    else:
        v = _bessel_k_cf(x)[order]
    return v if scaled else v * math.exp(-x)


# --------------------------------------------------------------------------
# Modified Struve functions L_0, L_{-1}

def struve_l(order: int, x: float) -> float:
    """Modified Struve function of the first kind, L_0 or L_{-1}.

    Power series; every term is positive, so there is no cancellation.  The
    result overflows past x ~ 700.
    """
    if order not in (0, -1):
        raise DomainError("struve_l supports orders 0 and -1 only")
    x = float(x)
    if not x > 0:
        raise DomainError(f"struve_l needs x > 0, got {x!r}")
    half = 0.5 * x
    y = half * half
    nu = order
    term = half ** (nu + 1) / (math.gamma(1.5) * math.gamma(nu + 1.5))
    total = term
    k = 0
    while True:
        term *= y / ((k + 1.5) * (k + nu + 1.5))
        total += term
        k += 1
        if term < 1e-17 * total:
            break
    return total


# --------------------------------------------------------------------------
# Exponential integral and Gamma(1/2, x)

def _e1_scaled_cf(x: float) -> float:
    # Lentz continued fraction for exp(x) E_1(x), x > 1
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h


def expint_e1(x: float, scaled: bool = False) -> float:
    """Exponential integral E_1(x) = int_x^inf exp(-t)/t dt.

    With ``scaled=True`` returns ``exp(x) * E_1(x)``.
    """
    x = float(x)
    if not x > 0:
        raise DomainError(f"expint_e1 needs x > 0, got {x!r}")
    if x > 1.0:
        h = _e1_scaled_cf(x)
        return h if scaled else h * math.exp(-x)
    total = 0.0
    term = 1.0
    k = 1
    while True:
        term *= -x / k
        delta = -term / k
        total += delta
        if abs(delta) < 1e-18 * abs(total) + 1e-300:
            break
        k += 1
    value = -EULER_GAMMA - math.log(x) + total
    return value * math.exp(x) if scaled else value


def _gamma_upper_scaled_cf(a: float, x: float) -> float:
    # Lentz continued fraction for exp(x) x^{-a} Gamma(a, x)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h


_SQRT_PI = math.sqrt(math.pi)


def inc_gamma_upper_half(x: float, scaled: bool = False) -> float:
    """Upper incomplete gamma Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x)).

    With ``scaled=True`` returns ``exp(x) * Gamma(1/2, x)``.
    """
    x = float(x)
    if not x > 0:
        raise DomainError(f"inc_gamma_upper_half needs x > 0, got {x!r}")
    if x < 30.0:
        v = _SQRT_PI * math.erfc(math.sqrt(x))
        return v * math.exp(x) if scaled else v
    h = math.sqrt(x) * _gamma_upper_scaled_cf(0.5, x)
    return h if scaled else h * math.exp(-x)


# --------------------------------------------------------------------------
# Dilogarithm

_PI2_6 = math.pi**2 / 6.0


def _dilog_series(x: float) -> float:
    total = 0.0
    power = x
    k = 1
    while True:
        term = power / (k * k)
        total += term
        if abs(term) < 1e-18 * abs(total) or power == 0.0:
            break
        k += 1
        power *= x
    return total


def dilog(x: float) -> float:
    """Real dilogarithm Li_2(x) for x <= 1."""
    x = float(x)
    if math.isnan(x) or x > 1.0:
        raise DomainError(f"dilog is only implemented for real x <= 1, got {x!r}")
    if x == 1.0:
        return _PI2_6
    if x == 0.0:
        return 0.0
    if -0.5 <= x <= 0.5:
        return _dilog_series(x)
    if x > 0.5:
        # reflection Li2(x) + Li2(1-x) = pi^2/6 - ln x ln(1-x)
        return _PI2_6 - math.log(x) * math.log1p(-x) - _dilog_series(1.0 - x)
    if x >= -1.0:
        # Landen: Li2(x) + Li2(x/(x-1)) = -ln^2(1-x)/2, with x/(x-1) in (1/3, 1/2]
        return -_dilog_series(x / (x - 1.0)) - 0.5 * math.log1p(-x) ** 2
    # inversion for x < -1: Li2(x) + Li2(1/x) = -pi^2/6 - ln^2(-x)/2
    return -_PI2_6 - 0.5 * math.log(-x) ** 2 - dilog(1.0 / x)


# --------------------------------------------------------------------------
# 0F2

def _is_nonpositive_int(b: float) -> bool:
    return b <= 0 and float(b).is_integer()


def hyp0f2(b1: float, b2: float, x: float) -> float:
    """Generalized hypergeometric 0F2(; b1, b2; x) by its power series.

    Negative x gives an alternating series; it is summed in decimal arithmetic
    with enough guard digits to absorb the cancellation.
    """
    b1, b2, x = float(b1), float(b2), float(x)
    if _is_nonpositive_int(b1) or _is_nonpositive_int(b2):
        raise ParameterPole(f"0F2 is undefined for b = ({b1}, {b2})")
    if x == 0.0:
        return 1.0
    if x > 0:
        total = term = 1.0
        k = 0
        while True:
            term *= x / ((b1 + k) * (b2 + k) * (k + 1))
            total += term
            k += 1
            if abs(term) < 1e-17 * abs(total) and k > abs(x) ** (1.0 / 3.0):
                break
        return total
    # largest term is about exp(3 |x|^(1/3)); carry that many extra digits
    guard = int(3.0 * abs(x) ** (1.0 / 3.0) / math.log(10.0)) + 25
    with decimal.localcontext() as ctx:
        ctx.prec = guard
        dx, d1, d2 = decimal.Decimal(x), decimal.Decimal(b1), decimal.Decimal(b2)
        total = term = decimal.Decimal(1)
        k = 0
        peak = decimal.Decimal(1)
        while True:
            term = term * dx / ((d1 + k) * (d2 + k) * (k + 1))
            total += term
            k += 1
            peak = max(peak, abs(term))
            if k > abs(x) ** (1.0 / 3.0) + 2 and abs(term) < peak * decimal.Decimal(10) ** (-guard):
                break
        return float(total)
