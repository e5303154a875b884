"""Oracle harness: goodness of fit, normalization, route equivalence, trends.

All checks are deterministic given the seed, and the report lists them sorted
by name, so a report is bit-identical across runs and thread counts.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicHermiteSpline

from . import asym, closed, dist
from .errors import CaseMismatch, NumericalFailure, QuadratureFailure
from .params import DistParams, EvalMethod
from .quadrature import gauss_kronrod

DEFAULT_SEED = 20240607
DEFAULT_SAMPLE_SIZE = 10**6
NORMALIZATION_THRESHOLD = 1e-6
EQUIVALENCE_THRESHOLD = 1e-8
MOMENT_THRESHOLD = 1e-4
MOMENT_ORDERS = (-0.5, 0.25, 0.5)
TREND_DECADES = (1e2, 1e4, 1e6, 1e8)
TREND_P = (1e-2, 1e-4, 1e-6, 1e-8)
# window of ln|lambda z| covered by quadrature; beyond it the mass is below 1e-20
_U_WINDOW = 60.0
# ln|lambda z| grid used to tabulate the CDF for the KS statistic
_KS_U = 20.0
_KS_STEP = 0.05


@dataclass(frozen=True)
class Check:
    name: str
    statistic: float
    threshold: float
    passed: bool

    @classmethod
    def make(cls, name: str, statistic: float, threshold: float) -> Check:
        statistic, threshold = float(statistic), float(threshold)
        return cls(name, statistic, threshold, bool(statistic <= threshold))


@dataclass(frozen=True)
class VerifyReport:
    params: DistParams
    checks: tuple[Check, ...]
    seed: int
    sample_size: int
    notes: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "seed": self.seed,
            "sample_size": self.sample_size,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> VerifyReport:
        return cls(
            params=DistParams.from_dict(d["params"]),
            checks=tuple(Check(**c) for c in d["checks"]),
            seed=int(d["seed"]),
            sample_size=int(d["sample_size"]),
            notes=tuple(d.get("notes", ())),
        )

    @classmethod
    def from_json(cls, text: str) -> VerifyReport:
        return cls.from_dict(json.loads(text))


# --------------------------------------------------------------------------
# Kolmogorov-Smirnov

def _cdf_table(params: DistParams):
    """Cubic Hermite model of u -> F(e^u / lambda) - 1/2 on the KS grid."""
    lam = params.scale_lambda
    u = np.arange(-_KS_U, _KS_U + _KS_STEP / 2, _KS_STEP)
    z = np.exp(u) / lam
    h = np.array([dist.cdf(params, zi).value - 0.5 for zi in z])
    # dh/du = z f(z)
    dh = np.array([zi * dist.pdf(params, zi).value for zi in z])
    return CubicHermiteSpline(u, h, dh)


def _model_cdf(params: DistParams, x: np.ndarray, cdf_params: DistParams | None = None) -> np.ndarray:
    cp = params if cdf_params is None else cdf_params
    table = _cdf_table(cp)
    lam = cp.scale_lambda
    ax = np.abs(x)
    out = np.empty_like(x)
    with np.errstate(divide="ignore"):
        u = np.log(ax * lam)
    inside = np.abs(u) <= _KS_U
    h = np.empty_like(x)
    h[inside] = table(u[inside])
    for i in np.flatnonzero(~inside):
        h[i] = 0.0 if ax[i] == 0 else dist.cdf(cp, ax[i]).value - 0.5
    out[:] = 0.5 + np.sign(x) * h
    return out


def ks_check(params: DistParams, n: int = DEFAULT_SAMPLE_SIZE, seed: int = DEFAULT_SEED,
             threshold: float | None = None, workers: int = 1,
             cdf_params: DistParams | None = None) -> tuple[float, float]:
    """Two-sided KS statistic of ``n`` seeded draws against the model CDF.

    ``cdf_params`` evaluates the CDF of a different parameter set, which is
    how the harness is shown to reject a mismatched distribution.
    """
    if n < 1000:
        raise ValueError("ks_check needs at least 1000 draws")
    x = np.sort(dist.sample(params, n, seed, workers=workers).values)
    f = _model_cdf(params, x, cdf_params)
    i = np.arange(1, n + 1)
    stat = float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
    return stat, (2.0 / math.sqrt(n) if threshold is None else float(threshold))


# --------------------------------------------------------------------------
# normalization and moments

def _radial_integral(params: DistParams, weight, u_lo: float, u_hi: float, rtol: float) -> tuple[float, float]:
    """int f(z) weight(z) z du over u = ln(lambda z) in [u_lo, u_hi], z > 0."""
    lam = params.scale_lambda

    def g(u):
        out = np.empty_like(u)
        for k, uk in enumerate(u):
            z = math.exp(uk) / lam
            out[k] = math.exp(dist.log_pdf(params, z) + math.log(z)) * weight(z)
        return out

    edges = list(np.arange(math.ceil(u_lo / 5) * 5, u_hi, 5.0))
    res = gauss_kronrod(g, u_lo, u_hi, rtol=rtol, breakpoints=edges)
    if not res.converged:
        raise QuadratureFailure(f"radial quadrature stopped at error {res.abserr:.3g}")
    return float(res.value), res.abserr


def normalization_check(params: DistParams) -> float:
    """|int pdf - 1|, integrating over ln|lambda z| in [-60, 60] with tail completion."""
    if params.total > 6:
        raise ValueError("normalization_check is limited to M + N <= 6")
    mass, _ = _radial_integral(params, lambda z: 1.0, -_U_WINDOW, _U_WINDOW, 1e-12)
    lam = params.scale_lambda
    z_hi = math.exp(_U_WINDOW) / lam
    z_lo = math.exp(-_U_WINDOW) / lam
    upper = asym.sf_tail(params, z_hi)
    lower = dist._half_mass_asym(params, z_lo)
    return abs(2.0 * (mass + upper + lower) - 1.0)


def moment_quadrature(params: DistParams, r: float) -> float:
    """E|Z|^r by quadrature of the density."""
    val, _ = _radial_integral(params, lambda z: z**r, -80.0, 80.0, 1e-9)
    return 2.0 * val


def moment_check(params: DistParams, r: float) -> float:
    exact = dist.fractional_moment(params, r).value
    return abs(moment_quadrature(params, r) - exact) / exact


def cf_quadrature(params: DistParams, t: float) -> float:
    """E cos(tZ) = 2 int_0^inf cos(tz) f(z) dz by quadrature."""
    t = abs(float(t))
    lam = params.scale_lambda
    split = max(1.0 / lam, 20.0 / t)
    head, _ = _radial_integral(params, lambda z: math.cos(t * z), -_U_WINDOW, math.log(split * lam), 1e-10)
    tail, _ = integrate.quad(lambda z: dist.pdf(params, z).value, split, np.inf,
                             weight="cos", wvar=t, limlst=200)
    return 2.0 * (head + tail)


# --------------------------------------------------------------------------
# route equivalence

def equivalence_sweep(params: DistParams, op: str, grid) -> float:
    """Largest relative gap between the Meijer route and the closed form of ``op``."""
    case = closed.match_case(params, op)
    if case is None:
        raise CaseMismatch(
            f"no closed-form {op} for (M, N) = ({params.m_count}, {params.n_count})"
        )
    fn = {"pdf": dist.pdf, "cdf": dist.cdf, "cf": dist.cf}[op]
    worst = 0.0
    for x in grid:
        a = fn(params, float(x), dist.Method.MEIJER).value
        b = fn(params, float(x), dist.Method.CLOSED_FORM).value
        if a == b:
            continue
        worst = max(worst, abs(a - b) / abs(b))
    return worst


def default_grid(params: DistParams, op: str, count: int = 50) -> np.ndarray:
    """Log-spaced arguments: z in [1e-3, 1e3] / lambda-free, t in [1e-3, 20]."""
    if op == "cf":
        return np.logspace(-3.0, math.log10(20.0), count)
    return np.logspace(-3.0, 3.0, count)


# --------------------------------------------------------------------------
# asymptotic trends

@dataclass(frozen=True)
class Trend:
    """exact / asymptotic ratios of one limiting form across argument decades.

    ``floors`` holds the numerical resolution of each ratio: an increase of
    the gap |ratio - 1| smaller than the floor is rounding, not a trend.
    """

    form: str
    arguments: tuple[float, ...]
    ratios: tuple[float, ...]
    floors: tuple[float, ...]
    skipped: tuple[float, ...]
    threshold: float

    @property
    def gaps(self) -> tuple[float, ...]:
        return tuple(abs(r - 1.0) for r in self.ratios)

    @property
    def monotone(self) -> bool:
        g = self.gaps
        return all(g[k + 1] <= g[k] + self.floors[k] + self.floors[k + 1] for k in range(len(g) - 1))

    @property
    def final_gap(self) -> float:
        return self.gaps[-1] if self.ratios else math.inf

    @property
    def statistic(self) -> float:
        # the final gap, or infinity when the approach to 1 is not monotone
        if len(self.ratios) < 2:
            return math.inf
        return self.final_gap if self.monotone else math.inf


_TREND_REL = 1e-3
_TREND_MAX_LOG = 1e10


def _exact_log(fn, *args):
    # exact routes only: closed forms, contour or residue series, never asymptotic
    try:
        lg, how = fn(*args, method=dist.Method.AUTO, max_rel_err=_TREND_REL, with_method=True)
    except NumericalFailure:
        return None
    return None if how is EvalMethod.ASYMPTOTIC or not math.isfinite(lg) else lg


def asymptotic_trends(params: DistParams) -> list[Trend]:
    """exact / asymptotic ratios across decades for every applicable form."""
    m, n = params.m_count, params.n_count
    out = []

    def collect(form, args, exact_log, approx_log, threshold):
        used, ratios, floors, skipped = [], [], [], []
        for a in args:
            e = exact_log(a)
            g = approx_log(a) if e is not None else math.nan
            # beyond |log| ~ 1e10 a single rounding moves the ratio by more than 1e-4
            if e is None or abs(g) > _TREND_MAX_LOG:
                skipped.append(a)
                continue
            used.append(a)
            ratios.append(math.exp(e - g))
            floors.append(1e-9 + 1e-14 * abs(g))
        out.append(Trend(form, tuple(used), tuple(ratios), tuple(floors), tuple(skipped), threshold))

    near = [1.0 / d for d in TREND_DECADES]
    collect("pdf_near_zero", near,
            lambda z: _exact_log(dist.log_pdf, params, z),
            lambda z: asym.log_pdf_near_zero(params, z)[0],
            0.3 if m >= 2 else 0.1)
    collect("pdf_tail", TREND_DECADES,
            lambda z: _exact_log(dist.log_pdf, params, z),
            lambda z: asym.log_pdf_tail(params, z)[0],
            0.3 if n >= 2 else 0.1)
    collect("sf_tail", TREND_DECADES,
            lambda z: _exact_log(dist.log_sf, params, z),
            lambda z: asym.log_sf_tail(params, z)[0],
            0.3 if n >= 2 else 0.1)

    def exact_q(p):
        try:
            q = dist.quantile(params, p)
        except NumericalFailure:
            return None
        if q.method is EvalMethod.ASYMPTOTIC:
            return None
        return math.log(-q.value)

    collect("quantile", TREND_P, exact_q,
            lambda p: math.log(-asym.quantile_asym(params, p, three_term=True)),
            0.3 if n >= 2 else 0.1)
    return out


# --------------------------------------------------------------------------
# full run

def _shape_check(params: DistParams) -> Check:
    if dist.shape(params) is dist.Shape.BIMODAL_SYMMETRIC:
        # density near the origin must sit below its value away from it
        ratio = dist.pdf(params, 1e-12).value / dist.pdf(params, 0.5).value
        return Check.make("shape_bimodal_symmetric", ratio, 1.0 - 1e-12)
    lam = params.scale_lambda
    z = np.logspace(-3, 3, 61) / lam
    # the density must not increase away from the mode; compare in log space
    lf = np.array([dist.log_pdf(params, zi) for zi in z])
    rise = float(np.max(np.diff(lf)))
    return Check.make("shape_unimodal_at_zero", max(rise, 0.0), 1e-12)


def run_full(params: DistParams, seed: int = DEFAULT_SEED, sample_size: int = DEFAULT_SAMPLE_SIZE,
             workers: int = 1, include_trends: bool = True) -> VerifyReport:
    """Run every applicable check; deterministic in ``seed`` for any ``workers``."""
    tasks = {}
    tasks["ks"] = lambda: Check.make("ks", *ks_check(params, sample_size, seed))
    if params.total <= 6:
        tasks["normalization"] = lambda: Check.make(
            "normalization", normalization_check(params), NORMALIZATION_THRESHOLD)
    for case in closed.cases_for(params):
        for op in sorted(case.applicable_ops):
            name = f"equivalence_{op}"
            tasks[name] = (lambda op=op, name=name: Check.make(
                name, equivalence_sweep(params, op, default_grid(params, op)), EQUIVALENCE_THRESHOLD))
    for r in MOMENT_ORDERS:
        if (params.m_count >= 1 and r <= -1) or (params.n_count >= 1 and r >= 1):
            continue
        name = f"moment_r={r:g}"
        tasks[name] = (lambda r=r, name=name: Check.make(name, moment_check(params, r), MOMENT_THRESHOLD))
    tasks["shape"] = lambda: _shape_check(params)

    def trend_checks():
        checks = []
        for t in asymptotic_trends(params):
            checks.append(Check.make(f"trend_{t.form}", t.statistic, t.threshold))
            if t.skipped:
                skipped = ", ".join(f"{a:g}" for a in t.skipped)
                trend_notes.append(f"trend_{t.form}: no exact route at {skipped}; decade skipped")
        return checks

    notes = []
    trend_notes: list[str] = []
    if params.n_count >= 1:
        notes.append("moment generating function undefined for N >= 1; no MGF check")
    else:
        notes.append("N = 0: moment generating function exists only for M <= 2 and is not evaluated")

    names = sorted(tasks)

    def run(name):
        return [tasks[name]()]

    jobs = [(n, (lambda n=n: run(n))) for n in names]
    if include_trends:
        jobs.append(("trend", trend_checks))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(lambda j: j[1](), jobs))
    else:
        results = [j[1]() for j in jobs]
    checks = sorted((c for group in results for c in group), key=lambda c: c.name)
    notes.extend(sorted(trend_notes))
    return VerifyReport(params, tuple(checks), int(seed), int(sample_size), tuple(notes))
