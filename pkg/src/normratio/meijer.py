"""Mellin-Barnes evaluation of the Meijer G-functions behind the ratio law.

The convention throughout is

    G^{m,n}_{p,q}(x | a; b) = 1/(2 pi i) int_L
        prod_{j<=m} Gamma(b_j - s) prod_{j<=n} Gamma(1 - a_j + s)
        / (prod_{j>n} Gamma(a_j - s) prod_{j>m} Gamma(1 - b_j + s)) x^s ds

with L the vertical line Re(s) = c separating the poles of the Gamma(b_j - s)
factors (to the right) from those of the Gamma(1 - a_j + s) factors (to the
left).  Along L the integrand at c - it is the conjugate of the one at c + it,
so G = (1/pi) int_0^inf Re I(c + it) dt.

Arguments x > 1 are first mapped to 1/x with the inversion identity
G(x | a; b) = G(1/x | 1 - b; 1 - a) (orders m <-> n, p <-> q).  Unless the
spec pins it, the abscissa c is chosen inside the admissible strip to minimise
the size of the integrand, which is the saddle-point choice when a side of the
strip is open.  Everything is carried in log form so that results far below
the double range are still representable as a log.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import ContourFailure, SpecUnsupported
from .params import DistParams, EvalMethod, EvalResult
from .quadrature import gauss_kronrod
from .specfun import EULER_GAMMA, log_gamma_fast, zeta_int

# the supported family: half-integers in this closed range
_PARAM_RANGE = (-2.0, 3.0)
# total phase swing of the integrand beyond which quadrature is abandoned
OSCILLATION_LIMIT = 1e4
DEFAULT_ATOL = 1e-10
DEFAULT_RTOL = 1e-13
# relative envelope level at which the t-integral is truncated
_TRUNCATION = 1e-18
_EPS = np.finfo(float).eps
# nodes per pass of the abscissa grid search
_GRID_NODES = 17
# envelope points evaluated per call while scanning for the truncation point
_SCAN_BATCH = 8


class OscillationLimit(ContourFailure):
    """The contour integrand oscillates too fast for quadrature."""


def _is_half_integer(v: float) -> bool:
    return float(2.0 * v).is_integer()


@dataclass(frozen=True)
class MeijerSpec:
    """Orders, parameters and (optionally) the contour abscissa of a G-function.

    ``contour_re=None`` lets the evaluator pick the abscissa.
    """

    m: int
    n: int
    p: int
    q: int
    a_params: tuple[float, ...]
    b_params: tuple[float, ...]
    contour_re: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "a_params", tuple(float(v) for v in self.a_params))
        object.__setattr__(self, "b_params", tuple(float(v) for v in self.b_params))
        if len(self.a_params) != self.p or len(self.b_params) != self.q:
            raise SpecUnsupported("parameter list lengths must equal p and q")
        if not (0 <= self.m <= self.q and 0 <= self.n <= self.p):
            raise SpecUnsupported("orders must satisfy 0 <= m <= q, 0 <= n <= p")
        if self.m + self.n < 1:
            raise SpecUnsupported("m + n >= 1 is required for a convergent contour")
        lo, hi = _PARAM_RANGE
        for v in self.a_params + self.b_params:
            if not (_is_half_integer(v) and lo <= v <= hi):
                raise SpecUnsupported(f"parameter {v} is outside the half-integer family")
        if self.decay_rate <= 0:
            raise SpecUnsupported("integrand does not decay along vertical lines")
        left, right = self.strip
        if not left < right:
            raise SpecUnsupported("no vertical line separates the two pole families")
        if self.contour_re is not None and not left < self.contour_re < right:
            raise SpecUnsupported(
                f"contour_re={self.contour_re} is not inside the pole-free strip ({left}, {right})"
            )

    @property
    def strip(self) -> tuple[float, float]:
        """Open interval of admissible abscissae (may be unbounded)."""
        left = max((a - 1.0 for a in self.a_params[: self.n]), default=-math.inf)
        right = min(self.b_params[: self.m], default=math.inf)
        return left, right

    @property
    def decay_rate(self) -> int:
        """delta with |integrand| ~ exp(-delta * pi * |t| / 2) * power."""
        return 2 * (self.m + self.n) - self.p - self.q

    def inverted(self) -> MeijerSpec:
        """Spec of G(1/x | 1 - b; 1 - a), equal to G(x | a; b)."""
        return MeijerSpec(
            m=self.n,
            n=self.m,
            p=self.q,
            q=self.p,
            a_params=tuple(1.0 - b for b in self.b_params),
            b_params=tuple(1.0 - a for a in self.a_params),
            contour_re=None if self.contour_re is None else -self.contour_re,
        )

    def shifted(self, alpha: float) -> MeijerSpec:
        """Spec of x^alpha G(x | a; b), i.e. every parameter plus alpha."""
        return MeijerSpec(
            self.m,
            self.n,
            self.p,
            self.q,
            tuple(a + alpha for a in self.a_params),
            tuple(b + alpha for b in self.b_params),
            None if self.contour_re is None else self.contour_re + alpha,
        )

    def gamma_factors(self) -> dict[tuple[int, float], int]:
        """Net multiplicity of each Gamma(kappa + sign * s) in the integrand."""
        c: Counter = Counter()
        for j, a in enumerate(self.a_params):
            if j < self.n:
                c[(1, 1.0 - a)] += 1
            else:
                c[(-1, a)] -= 1
        for j, b in enumerate(self.b_params):
            if j < self.m:
                c[(-1, b)] += 1
            else:
                c[(1, 1.0 - b)] -= 1
        return {k: v for k, v in sorted(c.items()) if v != 0}


@dataclass(frozen=True)
class LogValue:
    """A real number stored as sign * exp(log_abs), with a relative error bound."""

    log_abs: float
    sign: int
    rel_err: float
    method: EvalMethod

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs) if self.log_abs < 709.7 else self.sign * math.inf

    def to_result(self) -> EvalResult:
        v = self.value
        return EvalResult(v, abs(v) * self.rel_err if v else 0.0, self.method)


class _Integrand:
    """log of the Mellin-Barnes integrand for one spec and argument."""

    def __init__(self, spec: MeijerSpec, log_x: float):
        factors = list(spec.gamma_factors().items())
        self.signs = np.array([sign for (sign, _), _ in factors], dtype=float)[:, None]
        self.kappas = np.array([kappa for (_, kappa), _ in factors], dtype=float)[:, None]
        self.counts = np.array([count for _, count in factors], dtype=float)
        self.log_x = log_x

    def log(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=complex)
        # all gamma factors in one vectorized call
        args = self.kappas + self.signs * s.ravel()[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            lg = log_gamma_fast(args)
            out = s.ravel() * self.log_x + self.counts @ lg
        return out.reshape(s.shape)

    def real_log(self, c: float) -> float:
        return float(self.real_log_many(np.array([c]))[0])

    def real_log_many(self, cs: np.ndarray) -> np.ndarray:
        # peak-like size of the integrand near t = 0; the small imaginary
        # offsets keep zeros of 1/Gamma on the real axis from fooling the search
        vals = self.log(cs[:, None] + 1j * np.array([0.0, 0.5, 1.0, 2.0])[None, :]).real
        vals = np.where(np.isfinite(vals), vals, -np.inf)
        out = vals.max(axis=1)
        return np.where(out > -np.inf, out, np.inf)


def _pick_abscissa(spec: MeijerSpec, integrand: _Integrand) -> float:
    left, right = spec.strip
    f = integrand.real_log

    def bounded(lo, hi):
        # near a saddle at s ~ x the envelope is ~ sqrt(x) wide, so the
        # accepted slack grows like the square root of the bracket scale
        slack = 1e-2 * math.sqrt(max(1.0, abs(lo), abs(hi)))
        # nested grids: each pass keeps the two cells around the best node
        while True:
            grid = np.linspace(lo, hi, _GRID_NODES)
            k = int(np.argmin(integrand.real_log_many(grid)))
            if hi - lo <= slack:
                return float(grid[k])
            lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, _GRID_NODES - 1)]

    if math.isfinite(left) and math.isfinite(right):
        margin = min(0.05, 0.05 * (right - left))
        return bounded(left + margin, right - margin)
    # one side open: walk away from the finite edge until the size grows again
    if math.isfinite(right):
        edge, direction = right - 0.05, -1.0
    elif math.isfinite(left):
        edge, direction = left + 0.05, 1.0
    else:
        edge, direction = -1.0, 1.0
    prev = edge
    cur = edge + direction * 0.45
    f_cur = f(cur)
    step = 0.5
    while True:
        nxt = cur + direction * step
        f_nxt = f(nxt)
        if f_nxt >= f_cur or not math.isfinite(f_nxt):
            return bounded(*sorted((prev, nxt)))
        if abs(nxt) > 1e15:
            return nxt
        prev, cur, f_cur = cur, nxt, f_nxt
        step *= 2.0


@dataclass
class _ContourOutcome:
    log_scale: float
    integral: float
    error: float
    abscissa: float
    t_max: float
    neval: int
    converged: bool


def _contour(spec: MeijerSpec, log_x: float, rtol: float, limit: int) -> _ContourOutcome:
    """(1/pi) int_0^T Re I(c + it) dt, returned as exp(log_scale) * integral / pi."""
    integrand = _Integrand(spec, log_x)
    c = spec.contour_re if spec.contour_re is not None else _pick_abscissa(spec, integrand)
    log0 = integrand.real_log(c)
    if not math.isfinite(log0):
        raise ContourFailure(f"integrand is not finite on Re(s) = {c}")

    # scan the envelope for the truncation point; scan points become panel edges
    ts = [0.0]
    logs = [log0]
    thresh = math.log(_TRUNCATION)
    below = 0
    t = 0.125
    fast = True  # the step rule the current batch assumed
    done = False
    while not done:
        # evaluate a batch assuming the step rule stays put; stop using it at
        # the first point where the rule changes, so the sequence is unchanged
        batch = [t]
        for _ in range(_SCAN_BATCH - 1):
            batch.append(batch[-1] * (2.0 if fast else 1.25))
        vals = integrand.log(c + 1j * np.array(batch)).real - log0
        for t, val in zip(batch, vals):
            val = float(val)
            ts.append(t)
            logs.append(val + log0)
            if val < thresh:
                below += 1
                if below >= 2 and logs[-1] <= logs[-2]:
                    done = True
                    break
            else:
                below = 0
            if t > 1e15:
                raise ContourFailure("integrand envelope does not decay")
            step_fast = t < 8 or val > thresh + 30
            t *= 2.0 if step_fast else 1.25
            if step_fast != fast:
                fast = step_fast
                break
    t_max = ts[-1]
    # total phase the quadrature has to resolve; at a saddle-point abscissa the
    # x^{it} rotation is largely cancelled by the gamma factors
    tt = np.asarray(ts)
    h = 1e-6 * np.maximum(1.0, tt)
    both = integrand.log(c + 1j * np.concatenate([tt, tt + h]))
    phase, shifted = both[:tt.size], both[tt.size:]
    dphi = np.angle(np.exp(1j * (shifted.imag - phase.imag))) / h
    swing = float(np.max(np.abs(dphi))) * t_max
    if swing > OSCILLATION_LIMIT:
        raise OscillationLimit(f"phase swing {swing:.3g} exceeds {OSCILLATION_LIMIT:g}")
    env = np.exp(np.array(logs) - log0)
    abs_est = float(np.trapezoid(env, ts))
    # the exponent carries an absolute rounding error of about eps * |log I|
    log_mag = max(1.0, float(np.max(np.abs(phase))))

    def f(tt):
        return np.exp(integrand.log(c + 1j * tt) - log0).real

    floor = 64.0 * _EPS * abs_est * log_mag
    res = gauss_kronrod(f, 0.0, t_max, rtol=rtol, atol=floor, limit=limit, breakpoints=ts[1:-1])
    trunc = math.exp(logs[-1] - log0) * (2.0 / (math.pi * spec.decay_rate) + 1.0)
    err = res.abserr + trunc + 4.0 * _EPS * log_mag * res.abs_integral
    return _ContourOutcome(log0, float(res.value), err, c, t_max, res.neval, res.converged)


def _prepare(spec: MeijerSpec, x: float, allow_inversion: bool = True) -> tuple[MeijerSpec, float]:
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"Meijer G argument must be positive and finite, got {x!r}")
    log_x = math.log(x)
    if log_x > 0 and allow_inversion:
        return spec.inverted(), -log_x
    return spec, log_x


def eval_log_g(spec: MeijerSpec, x: float = 1.0, rtol: float = DEFAULT_RTOL,
               limit: int = 2000, log_x: float | None = None,
               max_rel_err: float = 1e-6, allow_inversion: bool = True) -> LogValue:
    """Evaluate G in log form, sign * exp(log_abs).

    ``log_x`` may be passed instead of ``x`` for arguments outside the double
    range.  Fails unless the relative error estimate is below ``max_rel_err``.
    Arguments above 1 are mapped to 1/x through the inversion identity unless
    ``allow_inversion`` is false.
    """
    if log_x is None:
        spec2, lx = _prepare(spec, x, allow_inversion)
    elif log_x > 0 and allow_inversion:
        spec2, lx = spec.inverted(), -log_x
    else:
        spec2, lx = spec, log_x
    out = _contour(spec2, lx, rtol, limit)
    rel = out.error / abs(out.integral) if out.integral else math.inf
    if rel > max_rel_err:
        raise ContourFailure(
            f"relative error estimate {rel:.3g} exceeds {max_rel_err:g} (abscissa {out.abscissa:.4g})"
        )
    log_abs = out.log_scale + math.log(abs(out.integral)) - math.log(math.pi)
    return LogValue(log_abs, 1 if out.integral > 0 else -1, rel, EvalMethod.CONTOUR)


def eval_g(spec: MeijerSpec, x: float, atol: float = DEFAULT_ATOL,
           rtol: float = DEFAULT_RTOL, limit: int = 2000,
           allow_inversion: bool = True) -> EvalResult:
    """Evaluate G^{m,n}_{p,q}(x | a; b) by contour quadrature.

    The quadrature aims at ``rtol`` relative accuracy; if that is out of reach
    the result is still accepted when its absolute error estimate is below
    ``atol``.  For x > 1 the inversion identity maps the argument to 1/x;
    ``allow_inversion=False`` integrates at x directly (used to test the
    identity).

    Raises
    ------
    ContourFailure
        Neither tolerance was met within ``limit`` panels.
    """
    spec2, lx = _prepare(spec, x, allow_inversion)
    out = _contour(spec2, lx, rtol, limit)
    if out.log_scale > 709.0:
        raise ContourFailure("G-function value overflows")
    scale = math.exp(out.log_scale) / math.pi
    value, err = out.integral * scale, out.error * scale
    if not out.converged and err > max(atol, rtol * abs(value)):
        raise ContourFailure(
            f"contour quadrature stopped at error {err:.3g} (abscissa {out.abscissa:.4g})"
        )
    return EvalResult(value, err, EvalMethod.CONTOUR)


# --------------------------------------------------------------------------
# specs used by the distribution formulas

def pdf_spec(m: int, n: int) -> MeijerSpec:
    """G^{M,N}_{N,M}(. | 0,...,0; 0,...,0) of the density."""
    return MeijerSpec(m, n, n, m, (0.0,) * n, (0.0,) * m)


def cdf_spec(m: int, n: int) -> MeijerSpec:
    """G^{M,N+1}_{N+1,M+1}(. | 1/2,0,...,0; 0,...,0,-1/2) of the distribution function."""
    return MeijerSpec(m, n + 1, n + 1, m + 1, (0.5,) + (0.0,) * n, (0.0,) * m + (-0.5,))


def cf_spec(m: int, n: int) -> MeijerSpec:
    """G-function of the characteristic function (M >= 1 and M = 0 forms)."""
    if m >= 1:
        return MeijerSpec(n + 1, m - 1, m - 1, n + 1, (0.5,) * (m - 1), (0.0,) + (0.5,) * n)
    return MeijerSpec(n + 1, 0, 0, n + 2, (), (0.0,) + (0.5,) * (n + 1))


# --------------------------------------------------------------------------
# residue series of the density kernel

def _series_exp(coeffs: list[float]) -> list[float]:
    # exp of a power series with zero constant term, same truncation order
    order = len(coeffs)
    out = [1.0] + [0.0] * (order - 1)
    for k in range(1, order):
        out[k] = sum(j * coeffs[j] * out[k - j] for j in range(1, k + 1)) / k
    return out


def pdf_kernel_residue(mm: int, nn: int, log_x: float, max_terms: int = 400,
                       terms: int | None = None) -> LogValue:
    """G^{mm,nn}_{nn,mm}(x | 0; 0) as minus the sum of residues at s = 0, 1, 2, ...

    The pole at s = k has order mm; its residue is the coefficient of
    eps^{mm-1} in a product of Laurent series built from zeta values.  The
    series converges for every x when mm > nn and for x < 1 when mm == nn; for
    mm < nn it is asymptotic and is cut at its smallest term.  Intended for
    small x (``log_x`` well below 0).  ``terms`` fixes the number of poles.
    """
    if mm < 1:
        raise ValueError("residue series needs at least one right pole (mm >= 1)")
    order = mm  # coefficients eps^0 .. eps^{mm-1}
    zeta_even = [zeta_int(2 * j) / j for j in range(1, order // 2 + 1)]
    zetas = {j: zeta_int(j) for j in range(2, order + 1)}
    diff = nn - mm
    total = 0.0
    log_ref = None
    prev_mag = math.inf
    last = 0.0
    harmonic = {j: 0.0 for j in range(1, order + 1)}
    n_terms = max_terms if terms is None else terms
    for k in range(n_terms):
        if k > 0:
            for j in harmonic:
                harmonic[j] += k ** (-float(j))
        coeffs = [0.0] * order
        for j, zv in enumerate(zeta_even, start=1):
            if 2 * j < order:
                coeffs[2 * j] += mm * zv
        if order > 1:
            coeffs[1] += log_x + diff * (-EULER_GAMMA + harmonic[1])
            for j in range(2, order):
                coeffs[j] += diff * (-1) ** j * (zetas[j] - harmonic[j]) / j
        series = _series_exp(coeffs)
        log_c0 = diff * math.lgamma(k + 1) + k * log_x
        if log_ref is None:
            log_ref = log_c0
        sign = -1.0 if (mm * (k + 1)) % 2 else 1.0
        term = -sign * series[order - 1] * math.exp(log_c0 - log_ref)
        mag = abs(term)
        if terms is None and k > 0 and diff > 0 and mag > prev_mag:
            break  # asymptotic series: stop at the smallest term
        total += term
        last = mag
        if terms is None and k > 2 and mag <= 1e-17 * abs(total):
            break
        prev_mag = mag if mag > 0 else prev_mag
    if total == 0.0:
        return LogValue(-math.inf, 0, math.inf, EvalMethod.RESIDUE_SERIES)
    rel = (last + 4 * _EPS * abs(total) * max(1.0, abs(log_x))) / abs(total)
    return LogValue(log_ref + math.log(abs(total)), 1 if total > 0 else -1, rel,
                    EvalMethod.RESIDUE_SERIES)


# below this |ln x| the density kernel is summed from its residues
RESIDUE_LOG_THRESHOLD = math.log(1e16)


def pdf_kernel_log(m: int, n: int, log_x: float, rtol: float = DEFAULT_RTOL,
                   max_rel_err: float = 1e-6) -> LogValue:
    """Density kernel G^{M,N}_{N,M}(x | 0; 0) in log form, routed by argument size."""
    if log_x < -RESIDUE_LOG_THRESHOLD and m >= 1:
        return pdf_kernel_residue(m, n, log_x)
    if log_x > RESIDUE_LOG_THRESHOLD and n >= 1:
        # G^{M,N}_{N,M}(x | 0; 0) = x^{-1} G^{N,M}_{M,N}(1/x | 0; 0)
        inner = pdf_kernel_residue(n, m, -log_x)
        return LogValue(inner.log_abs - log_x, inner.sign, inner.rel_err, inner.method)
    return eval_log_g(pdf_spec(m, n), 0.0, rtol=rtol, log_x=log_x, max_rel_err=max_rel_err)


def _kernel_x(params: DistParams, x: float) -> float:
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"kernel argument must be positive and finite, got {x!r}")
    return x


def pdf_kernel(params: DistParams, x: float, atol: float = DEFAULT_ATOL) -> EvalResult:
    """G^{M,N}_{N,M}(x | 0,...,0; 0,...,0), the density kernel at argument x."""
    x = _kernel_x(params, x)
    m, n = params.m_count, params.n_count
    lx = math.log(x)
    if (lx < -RESIDUE_LOG_THRESHOLD and m >= 1) or (lx > RESIDUE_LOG_THRESHOLD and n >= 1):
        return pdf_kernel_log(m, n, lx).to_result()
    try:
        return eval_g(pdf_spec(m, n), x, atol=atol)
    except OscillationLimit:
        return pdf_kernel_log(m, n, lx).to_result()


def cdf_kernel(params: DistParams, x: float, atol: float = DEFAULT_ATOL) -> EvalResult:
    """G^{M,N+1}_{N+1,M+1}(x | 1/2,0,...,0; 0,...,0,-1/2), the distribution-function kernel."""
    x = _kernel_x(params, x)
    return eval_g(cdf_spec(params.m_count, params.n_count), x, atol=atol)


def cf_kernel(params: DistParams, y: float, atol: float = DEFAULT_ATOL) -> EvalResult:
    """G-function of the characteristic function at argument y."""
    y = _kernel_x(params, y)
    return eval_g(cf_spec(params.m_count, params.n_count), y, atol=atol)
