"""Distribution functions of Z = (X_1 ... X_M) / (Y_1 ... Y_N).

Every query is routed to one of several backends:

* closed forms for the (M, N) pairs that have one,
* the Meijer G representation (contour quadrature or residue series),
* leading-order asymptotics,
* adaptive quadrature of the density (CDF only).

``Method.AUTO`` picks deterministically from (M, N) and |lambda z|.  The
CDF is only ever evaluated through the half-mass F(|z|) - 1/2 at
|lambda z| <= 1; for larger arguments the tail mass is the half-mass of 1/Z
at 1/|z|, which avoids the cancellation in 1 - F.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import asym, closed, meijer
from .errors import (
    ConvergenceFailure,
    MethodUnsupported,
    MomentUndefined,
    NonFiniteInput,
    NumericalFailure,
    OutOfRangeP,
    QuadratureFailure,
)
from .params import DistParams, EvalMethod, EvalResult, new_params
from .quadrature import gauss_kronrod

_LNPI = math.log(math.pi)

# |lambda z| outside this window goes to the residue series or asymptotics
AUTO_LOW = 1e-8
AUTO_HIGH = 1e8
# relative accuracy claimed for closed forms built on the special functions
CLOSED_RTOL = 1e-13
# chunk size of the seeded sampling streams
SAMPLE_CHUNK = 1 << 16
QUANTILE_MAX_ITER = 200
QUANTILE_BISECT_WIDTH = 0.1  # in ln|z|; Newton is bracketed from here on
QUANTILE_TOL = 1e-10


class Method(str, enum.Enum):
    AUTO = "auto"
    MEIJER = "meijer"
    CLOSED_FORM = "closed_form"
    ASYMPTOTIC = "asymptotic"
    QUADRATURE = "quadrature"


class Shape(str, enum.Enum):
    UNIMODAL_AT_ZERO = "unimodal_at_zero"
    BIMODAL_SYMMETRIC = "bimodal_symmetric"


def _finite(v, name: str) -> float:
    v = float(v)
    if not math.isfinite(v):
        raise NonFiniteInput(f"{name} must be finite, got {v!r}")
    return v


def _log_prefactor(params: DistParams) -> float:
    # log(lambda / pi^{(M+N)/2})
    return params.log_lambda - 0.5 * params.total * _LNPI


# --------------------------------------------------------------------------
# density

def _pdf_at_zero(params: DistParams) -> EvalResult:
    m, n = params.m_count, params.n_count
    if m >= 2:
        return EvalResult(math.inf, 0.0, EvalMethod.CLOSED_FORM, singular=True)
    if m == 0:
        return EvalResult(0.0, 0.0, EvalMethod.CLOSED_FORM)
    # M = 1: the kernel tends to Gamma(1)^N = 1
    v = math.exp(_log_prefactor(params))
    return EvalResult(v, v * CLOSED_RTOL, EvalMethod.CLOSED_FORM)


def _log_pdf_asym(params: DistParams, az: float) -> tuple[float, float]:
    # (log f, relative error guess) from the leading-order forms
    if az * params.scale_lambda >= 1.0:
        lg, sign = asym.log_pdf_tail(params, az)
        u = az * params.scale_lambda
        rel = 1.0 / math.log(u) if params.n_count >= 2 else (
            u**-2 if params.n_count == 1 else (az / params.sigma_prod) ** (-2.0 / params.m_count)
        )
    else:
        lg, sign = asym.log_pdf_near_zero(params, az)
        u = az * params.scale_lambda
        rel = 1.0 / abs(math.log(u)) if params.m_count >= 2 else (
            u**2 if params.m_count == 1 else (az * params.s_prod) ** (2.0 / params.n_count)
        )
    if sign <= 0:
        raise NumericalFailure("asymptotic density form is not positive at this argument")
    return lg, min(rel, 1.0)


def _log_pdf(params: DistParams, z: float, method: Method,
             max_rel_err: float = 1e-6) -> tuple[float, float, EvalMethod]:
    """(log f(z), relative error, method) for z != 0."""
    az = abs(z)
    method = Method(method)
    if method in (Method.AUTO, Method.CLOSED_FORM):
        case = closed.match_case(params, "pdf")
        if case is not None:
            lg = closed.log_pdf_closed(case, params, az)
            if lg > -math.inf:
                return lg, CLOSED_RTOL, EvalMethod.CLOSED_FORM
            if method is Method.CLOSED_FORM:
                return -math.inf, 0.0, EvalMethod.CLOSED_FORM
        elif method is Method.CLOSED_FORM:
            raise closed.CaseMismatch(
                f"no closed-form density for (M, N) = ({params.m_count}, {params.n_count})"
            )
    if method is Method.ASYMPTOTIC:
        lg, rel = _log_pdf_asym(params, az)
        return lg, rel, EvalMethod.ASYMPTOTIC
    if method is Method.QUADRATURE:
        raise MethodUnsupported("quadrature applies to the distribution function only")
    log_x = 2.0 * (params.log_lambda + math.log(az))
    try:
        kern = meijer.pdf_kernel_log(params.m_count, params.n_count, log_x,
                                     max_rel_err=max_rel_err)
    except NumericalFailure:
        if method is Method.MEIJER:
            raise
        lg, rel = _log_pdf_asym(params, az)
        return lg, rel, EvalMethod.ASYMPTOTIC
    return _log_prefactor(params) + kern.log_abs, kern.rel_err, kern.method


def log_pdf(params: DistParams, z: float, method: Method = Method.AUTO,
            max_rel_err: float = 1e-6, with_method: bool = False):
    """Natural log of the density; finite far beyond the range where pdf underflows.

    ``max_rel_err`` bounds the accepted relative error of the Meijer route.
    With ``with_method`` the backend tag is returned as well.
    """
    z = _finite(z, "z")
    if z == 0:
        v = _pdf_at_zero(params).value
        out = (math.log(v) if v > 0 else -math.inf), EvalMethod.CLOSED_FORM
    else:
        lg, _, how = _log_pdf(params, z, Method(method), max_rel_err)
        out = lg, how
    return out if with_method else out[0]


def pdf(params: DistParams, z: float, method: Method = Method.AUTO) -> EvalResult:
    """Density f_Z(z) = lambda / pi^{(M+N)/2} G^{M,N}_{N,M}(lambda^2 z^2 | 0; 0).

    At z = 0 the density is +inf (flagged singular) for M >= 2, finite for
    M = 1 and zero for M = 0.

    >>> from normratio.params import new_params
    >>> round(pdf(new_params(1, 1), 0.0).value * math.pi, 14)
    1.0
    """
    z = _finite(z, "z")
    if z == 0:
        return _pdf_at_zero(params)
    lg, rel, how = _log_pdf(params, z, method)
    v = math.exp(lg) if lg < 709.7 else math.inf
    return EvalResult(v, v * rel, how)


# --------------------------------------------------------------------------
# distribution function

def _half_mass_quadrature(params: DistParams, a: float) -> tuple[float, float]:
    # int_0^a f(x) dx = a int_0^inf f(a e^{-v}) e^{-v} dv
    def g(v):
        out = np.empty_like(v)
        for i, vi in enumerate(v):
            x = a * math.exp(-vi)
            out[i] = math.exp(_log_pdf(params, x, Method.AUTO)[0] - vi) if x > 0 else 0.0
        return out * a

    vmax = 45.0
    res = gauss_kronrod(g, 0.0, vmax, rtol=1e-11, breakpoints=[1.0, 3.0, 8.0, 20.0])
    if not res.converged:
        raise QuadratureFailure(f"density quadrature stopped at error {res.abserr:.3g}")
    # mass below a e^{-vmax}
    rest = _half_mass_asym(params, a * math.exp(-vmax))
    return float(res.value) + rest, res.abserr + rest


def _half_mass_asym(params: DistParams, a: float) -> float:
    m = params.m_count
    if m >= 1:
        # int_0^a C (-ln u)^{M-1} du = C a sum_k (M-1)!/k! (-ln a)^k
        c = math.exp(asym.log_near_zero_constant(params))
        la = -math.log(a)
        terms = (math.factorial(m - 1) / math.factorial(k) * la**k for k in range(m))
        return c * a * math.fsum(terms)
    recip = params.reciprocal()
    if (1.0 / a) * recip.scale_lambda < 1.0:
        return 0.5
    return asym.sf_tail(recip, 1.0 / a)


def _half_mass(params: DistParams, a: float, method: Method) -> EvalResult:
    """F(a) - 1/2 for a > 0 with lambda a <= 1 (up to rounding)."""
    if method is Method.AUTO:
        case = closed.match_case(params, "cdf")
        if case is not None:
            v = closed.cdf_closed(case, params, a) - 0.5
            return EvalResult(v, 1e-15 + abs(v) * CLOSED_RTOL, EvalMethod.CLOSED_FORM)
    if method is Method.QUADRATURE:
        v, err = _half_mass_quadrature(params, a)
        return EvalResult(v, err, EvalMethod.QUADRATURE)
    if method is Method.ASYMPTOTIC:
        v = _half_mass_asym(params, a)
        return EvalResult(v, abs(v), EvalMethod.ASYMPTOTIC)
    x = (params.scale_lambda * a) ** 2
    pref = math.exp(_log_prefactor(params)) * a / 2.0
    try:
        g = meijer.cdf_kernel(params, x) if x > 0 else None
    except NumericalFailure:
        if method is Method.MEIJER:
            raise
        g = None
    if g is None:
        v = _half_mass_asym(params, a)
        return EvalResult(v, abs(v), EvalMethod.ASYMPTOTIC)
    return EvalResult(pref * g.value, pref * g.abs_err_estimate, g.method)


def _log_half_mass(params: DistParams, a: float, method: Method,
                   max_rel_err: float) -> tuple[float, EvalMethod]:
    """log(F(a) - 1/2) for a > 0, valid far below the double range."""
    if method in (Method.AUTO, Method.CLOSED_FORM):
        case = closed.match_case(params, "cdf")
        if case is not None:
            v = closed.cdf_closed(case, params, a) - 0.5
            if v > 1e-13:
                return math.log(v), EvalMethod.CLOSED_FORM
    if method is not Method.ASYMPTOTIC:
        log_x = 2.0 * (params.log_lambda + math.log(a))
        try:
            g = meijer.eval_log_g(meijer.cdf_spec(params.m_count, params.n_count), 0.0,
                                  log_x=log_x, max_rel_err=max_rel_err)
            if g.sign > 0:
                return _log_prefactor(params) + math.log(a / 2.0) + g.log_abs, g.method
        except NumericalFailure:
            if method is Method.MEIJER:
                raise
    if params.m_count == 0:
        recip = params.reciprocal()
        if (1.0 / a) * recip.scale_lambda >= 1.0:
            return asym.log_sf_tail(recip, 1.0 / a)[0], EvalMethod.ASYMPTOTIC
    return math.log(_half_mass_asym(params, a)), EvalMethod.ASYMPTOTIC


def log_sf(params: DistParams, z: float, method: Method = Method.AUTO,
           max_rel_err: float = 1e-6, with_method: bool = False):
    """log P(Z > z), accurate deep into the upper tail."""
    z = _finite(z, "z")
    method = Method(method)
    if z <= 0 or z * params.scale_lambda <= 1.0:
        r = sf(params, z, method)
        out = math.log(r.value), r.method
    else:
        out = _log_half_mass(params.reciprocal(), 1.0 / z, method, max_rel_err)
    return out if with_method else out[0]


def cdf(params: DistParams, z: float, method: Method = Method.AUTO) -> EvalResult:
    """F_Z(z) = 1/2 + lambda z / (2 pi^{(M+N)/2}) G^{M,N+1}_{N+1,M+1}(lambda^2 z^2 | 1/2,0; 0,-1/2).

    ``method='quadrature'`` integrates the density instead of using the
    kernel; ``'closed_form'`` requires a closed-form CDF for (M, N).
    """
    z = _finite(z, "z")
    method = Method(method)
    if z == 0:
        return EvalResult(0.5, 0.0, EvalMethod.CLOSED_FORM)
    if method is Method.CLOSED_FORM:
        case = closed.match_case(params, "cdf")
        if case is None:
            raise closed.CaseMismatch(
                f"no closed-form CDF for (M, N) = ({params.m_count}, {params.n_count})"
            )
        v = closed.cdf_closed(case, params, z)
        return EvalResult(v, 1e-15, EvalMethod.CLOSED_FORM)
    a = abs(z)
    if method is Method.ASYMPTOTIC and a * params.scale_lambda > 1.0:
        tail = asym.sf_tail(params, a)
        return EvalResult(1.0 - tail if z > 0 else tail, tail, EvalMethod.ASYMPTOTIC)
    if a * params.scale_lambda <= 1.0:
        h = _half_mass(params, a, method)
        v = 0.5 + h.value if z > 0 else 0.5 - h.value
        return EvalResult(v, h.abs_err_estimate, h.method)
    # upper tail mass P(Z > a) = P(0 < 1/Z < 1/a)
    t = _half_mass(params.reciprocal(), 1.0 / a, method)
    v = 1.0 - t.value if z > 0 else t.value
    return EvalResult(v, t.abs_err_estimate, t.method)


def sf(params: DistParams, z: float, method: Method = Method.AUTO) -> EvalResult:
    """P(Z > z), evaluated as F(-z) so that upper tails keep full relative accuracy."""
    z = _finite(z, "z")
    return cdf(params, -z, method)


# --------------------------------------------------------------------------
# characteristic function

def cf(params: DistParams, t: float, method: Method = Method.AUTO) -> EvalResult:
    """Characteristic function E[cos(tZ)], via the closed form when one exists.

    Otherwise pi^{-(M+N-1)/2} G^{N+1,M-1}_{M-1,N+1}(y | 1/2; 0,1/2) for M >= 1
    and pi^{-(N-1)/2} G^{N+1,0}_{0,N+2}(y | -; 0,1/2,...) for M = 0, with
    y = t^2 / (4 lambda^2).
    """
    t = _finite(t, "t")
    method = Method(method)
    if t == 0:
        return EvalResult(1.0, 0.0, EvalMethod.CLOSED_FORM)
    if method in (Method.AUTO, Method.CLOSED_FORM):
        case = closed.match_case(params, "cf")
        if case is not None:
            v = closed.cf_closed(case, params, t)
            return EvalResult(v, 1e-15 + abs(v) * CLOSED_RTOL, EvalMethod.CLOSED_FORM)
        if method is Method.CLOSED_FORM:
            raise closed.CaseMismatch(
                f"no closed-form characteristic function for (M, N) = ({params.m_count}, {params.n_count})"
            )
    if method in (Method.ASYMPTOTIC, Method.QUADRATURE):
        raise MethodUnsupported(f"method {method.value} is not available for the characteristic function")
    m, n = params.m_count, params.n_count
    y = math.exp(2.0 * (math.log(abs(t)) - params.log_lambda)) / 4.0
    power = (n + m - 1) if m >= 1 else (n - 1)
    pref = math.pi ** (-0.5 * power)
    g = meijer.cf_kernel(params, y)
    return EvalResult(pref * g.value, pref * g.abs_err_estimate, g.method)


# --------------------------------------------------------------------------
# quantiles

def quantile(params: DistParams, p: float, method: Method = Method.AUTO) -> EvalResult:
    """Solve F_Z(z) = p.

    Only the lower half is searched; Q(1 - p) = -Q(p) holds exactly.  The
    search runs on u = ln|z| with bisection down to a width of 0.1 and
    bracket-safeguarded Newton steps (slope from the density) afterwards.
    """
    p = float(p)
    if not (0.0 < p < 1.0):
        raise OutOfRangeP(f"p must lie in (0, 1), got {p!r}")
    if p == 0.5:
        return EvalResult(0.0, 0.0, EvalMethod.CLOSED_FORM)
    q = min(p, 1.0 - p)
    sgn = -1.0 if p < 0.5 else 1.0
    method = Method(method)

    def tail(u):
        return sf(params, math.exp(u), method)

    # seed
    lam = params.scale_lambda
    if q < 0.05:
        seed = abs(asym.quantile_asym(params, q, three_term=True))
        if not (seed > 0 and math.isfinite(seed)):
            seed = 1.0 / lam
    else:
        seed = 1.0 / lam
    u = math.log(seed)
    r = tail(u)
    evals = 1
    step = 0.5
    # bracket [lo, hi] in u with sf(lo) >= q >= sf(hi)
    if r.value > q:
        lo, hi = u, u + step
        while (r := tail(hi)).value > q:
            lo, step = hi, step * 2.0
            hi = hi + step
            evals += 1
            if evals > QUANTILE_MAX_ITER:
                raise ConvergenceFailure("could not bracket the quantile")
    else:
        lo, hi = u - step, u
        while (r := tail(lo)).value < q:
            hi, step = lo, step * 2.0
            lo = lo - step
            evals += 1
            if evals > QUANTILE_MAX_ITER:
                raise ConvergenceFailure("could not bracket the quantile")
    while hi - lo > QUANTILE_BISECT_WIDTH and evals < QUANTILE_MAX_ITER:
        mid = 0.5 * (lo + hi)
        if tail(mid).value > q:
            lo = mid
        else:
            hi = mid
        evals += 1
    # Newton on g(u) = sf(e^u) - q, g'(u) = -e^u f(e^u)
    u = 0.5 * (lo + hi)
    resid = math.inf
    while evals < QUANTILE_MAX_ITER:
        val = tail(u).value
        resid = val - q
        evals += 1
        if resid == 0:
            break
        slope = -math.exp(u) * pdf(params, math.exp(u), method).value
        if resid > 0:
            lo = u
        else:
            hi = u
        newton = slope != 0 and math.isfinite(slope)
        un = u - resid / slope if newton else math.nan
        if not (lo < un < hi):
            un, newton = 0.5 * (lo + hi), False
        # quadratic convergence: after a Newton step this small the error is
        # ~ step^2; a bisection step gives no such guarantee
        step = abs(un - u)
        u = un
        if step <= 4e-16 * max(1.0, abs(u)) or (newton and step <= 1e-9 * max(1.0, abs(u))):
            break
    z = math.exp(u)
    final = sf(params, z, method)
    resid = abs(final.value - q)
    if resid > QUANTILE_TOL * max(1.0, q) and resid > 4 * final.abs_err_estimate:
        raise ConvergenceFailure(f"quantile residual {resid:.3g} exceeds {QUANTILE_TOL:g}")
    dens = pdf(params, z, method).value
    err = (resid + final.abs_err_estimate) / dens if dens > 0 else math.inf
    return EvalResult(sgn * z, err + 4e-16 * z, final.method)


# --------------------------------------------------------------------------
# moments

def fractional_moment(params: DistParams, r: float) -> EvalResult:
    """E|Z|^r = 2^{(M-N)r/2} sigma_M^r s_N^{-r} pi^{-(M+N)/2} Gamma((r+1)/2)^M Gamma((1-r)/2)^N.

    The moment exists for -1 < r < 1 when M, N >= 1, for r > -1 when N = 0
    and for r < 1 when M = 0.

    >>> from normratio.params import new_params
    >>> round(fractional_moment(new_params(1, 0), 2.0).value, 14)
    1.0
    """
    r = _finite(r, "r")
    m, n = params.m_count, params.n_count
    if m >= 1 and r <= -1:
        near = "a finite nonzero value" if m == 1 else f"(-ln|z|)^{m - 1}"
        raise MomentUndefined(
            f"E|Z|^{r:g} is infinite: the density tends to {near} at 0, "
            "so only r > -1 is integrable there"
        )
    if n >= 1 and r >= 1:
        tail = "1/z^2" if n == 1 else f"(ln|z|)^{n - 1}/z^2"
        raise MomentUndefined(
            f"E|Z|^{r:g} is infinite: the density has a {tail} tail, "
            "so only r < 1 is integrable and the mean is undefined"
        )
    if r == 0:
        return EvalResult(1.0, 0.0, EvalMethod.CLOSED_FORM)
    lg = (0.5 * (m - n) * r * math.log(2.0) + r * (params.log_sigma_prod - params.log_s_prod)
          - 0.5 * (m + n) * _LNPI)
    if m:
        lg += m * math.lgamma(0.5 * (r + 1.0))
    if n:
        lg += n * math.lgamma(0.5 * (1.0 - r))
    v = math.exp(lg)
    return EvalResult(v, v * 1e-14 * (1 + abs(lg)), EvalMethod.CLOSED_FORM)


# --------------------------------------------------------------------------
# sampling

@dataclass(frozen=True)
class SampleBatch:
    """Seeded draws of Z.

    Chunk k (of ``chunk_size`` draws) comes from the generator seeded by
    ``SeedSequence(seed, spawn_key=(k,))``, so any split of the work over
    threads reproduces the sequential stream exactly.
    """

    values: np.ndarray = field(repr=False)
    seed: int
    params: DistParams
    chunk_size: int = SAMPLE_CHUNK

    def __len__(self) -> int:
        return self.values.size


def _sample_chunk(params: DistParams, seed: int, k: int, size: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(k,))))
    num = np.ones(size)
    for s in params.sigma_x:
        num *= rng.standard_normal(size) * s
    den = np.ones(size)
    for s in params.sigma_y:
        den *= rng.standard_normal(size) * s
    bad = den == 0.0
    while bad.any():
        redo = np.ones(int(bad.sum()))
        for s in params.sigma_y:
            redo *= rng.standard_normal(redo.size) * s
        den[bad] = redo
        bad = den == 0.0
    return num / den


def sample(params: DistParams, count: int, seed: int, workers: int = 1,
           chunk_size: int = SAMPLE_CHUNK) -> SampleBatch:
    """Draw ``count`` values of Z; ``workers`` threads give identical output."""
    count = int(count)
    if count < 1:
        raise ValueError("count must be at least 1")
    seed = int(seed)
    if not (0 <= seed < 2**64):
        raise ValueError("seed must be a 64-bit unsigned integer")
    sizes = [min(chunk_size, count - start) for start in range(0, count, chunk_size)]
    jobs = list(enumerate(sizes))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda j: _sample_chunk(params, seed, j[0], j[1]), jobs))
    else:
        parts = [_sample_chunk(params, seed, k, s) for k, s in jobs]
    values = np.concatenate(parts)
    values.setflags(write=False)
    return SampleBatch(values, seed, params, chunk_size)


def shape(params: DistParams) -> Shape:
    """Mode structure: a single mode at 0 iff M >= 1, otherwise two symmetric modes."""
    return Shape.UNIMODAL_AT_ZERO if params.m_count >= 1 else Shape.BIMODAL_SYMMETRIC


# --------------------------------------------------------------------------
# object interface

class NormalProductRatio:
    """Frozen distribution object with array-friendly methods.

    Parameters
    ----------
    m, n : int
        Numbers of normal factors in the numerator and the denominator.
    sigma_x, sigma_y : sequence of float, optional
        Standard deviations; default to ones.
    method : Method or str
        Backend used by the evaluation methods.

    Examples
    --------
    >>> d = NormalProductRatio(1, 1)
    >>> float(d.cdf(1.0))
    0.75
    """

    def __init__(self, m: int, n: int, sigma_x=None, sigma_y=None, method: Method | str = Method.AUTO):
        self.params = new_params(m, n, sigma_x, sigma_y)
        self.method = Method(method)

    @classmethod
    def from_params(cls, params: DistParams, method: Method | str = Method.AUTO) -> NormalProductRatio:
        obj = cls.__new__(cls)
        obj.params = params
        obj.method = Method(method)
        return obj

    def __repr__(self) -> str:
        p = self.params
        return f"NormalProductRatio(m={p.m_count}, n={p.n_count}, sigma_x={list(p.sigma_x)}, sigma_y={list(p.sigma_y)})"

    def _map(self, fn, x):
        arr = np.asarray(x, dtype=float)
        out = np.array([fn(self.params, float(v), self.method).value for v in arr.ravel()])
        return out.reshape(arr.shape) if arr.ndim else out[0]

    def pdf(self, z):
        return self._map(pdf, z)

    def logpdf(self, z):
        arr = np.asarray(z, dtype=float)
        out = np.array([log_pdf(self.params, float(v), self.method) for v in arr.ravel()])
        return out.reshape(arr.shape) if arr.ndim else out[0]

    def cdf(self, z):
        return self._map(cdf, z)

    def sf(self, z):
        return self._map(sf, z)

    def cf(self, t):
        return self._map(cf, t)

    def ppf(self, p):
        return self._map(quantile, p)

    def moment(self, r: float) -> float:
        return fractional_moment(self.params, r).value

    def rvs(self, size: int, seed: int) -> np.ndarray:
        return sample(self.params, size, seed).values

    def shape(self) -> Shape:
        return shape(self.params)
