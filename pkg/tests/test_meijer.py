import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normratio import closed, meijer, specfun
from normratio.errors import ContourFailure, SpecUnsupported
from normratio.params import EvalMethod, new_params
from normratio.quadrature import gauss_kronrod

FAMILIES = [(m, n) for m in range(4) for n in range(4) if 1 <= m + n]


def _mp_meijer(spec, x):
    mp.mp.dps = 30
    a, b = list(spec.a_params), list(spec.b_params)
    return float(mp.re(mp.meijerg([a[: spec.n], a[spec.n:]], [b[: spec.m], b[spec.m:]], x)))


# --------------------------------------------------------------------------
# examples

def test_single_gamma_is_exponential():
    spec = meijer.MeijerSpec(1, 0, 0, 1, (), (0.0,))
    assert meijer.eval_g(spec, 1.0).value == pytest.approx(math.exp(-1), rel=1e-13)


def test_cauchy_kernel():
    spec = meijer.MeijerSpec(1, 1, 1, 1, (0.0,), (0.0,))
    assert meijer.eval_g(spec, 4.0).value == pytest.approx(0.2, rel=1e-13)


def test_product_kernel_is_bessel():
    spec = meijer.MeijerSpec(2, 0, 0, 2, (), (0.0, 0.0))
    assert meijer.eval_g(spec, 1.0).value == pytest.approx(2 * specfun.bessel_k(0, 2.0), rel=1e-13)


def test_pdf_kernel_examples():
    assert meijer.pdf_kernel(new_params(1, 1), 1.0).value == pytest.approx(0.5, rel=1e-13)
    assert meijer.pdf_kernel(new_params(1, 0), 2.0).value == pytest.approx(math.exp(-2), rel=1e-13)
    p = new_params(2, 2)
    x = 4.0
    # f(z) = lambda / pi^2 G(lambda^2 z^2) with lambda = 1 here
    via_closed = closed.pdf_closed(closed.match_case(p), p, math.sqrt(x)) * math.pi**2
    assert meijer.pdf_kernel(p, x).value == pytest.approx(via_closed, rel=1e-12)


@pytest.mark.parametrize("m,n", FAMILIES)
def test_cdf_kernel_vanishes_at_origin(m, n):
    p = new_params(m, n)
    # F(z) - 1/2 = (lambda z / 2) pi^{-(M+N)/2} G(lambda^2 z^2) -> 0 as z -> 0
    # the approach is only logarithmically slow for M >= 2; for M = 0 the kernel is
    # already exponentially small and the contour refuses extreme arguments
    x = 1e-30 if m else 1e-6
    g = meijer.cdf_kernel(p, x).value
    assert abs(math.sqrt(x) * g) < 1e-8


def test_cdf_kernel_normal_and_cauchy():
    p = new_params(1, 0)
    lam = p.scale_lambda
    z = 1.0
    f = 0.5 + lam * z / (2 * math.sqrt(math.pi)) * meijer.cdf_kernel(p, (lam * z) ** 2).value
    phi = 0.5 * (1 + math.erf(1 / math.sqrt(2)))
    assert f == pytest.approx(phi, rel=1e-13)
    p = new_params(1, 1)
    f = 0.5 + 0.5 / math.pi * meijer.cdf_kernel(p, 1.0).value
    assert f == pytest.approx(0.75, rel=1e-13)


def test_cf_kernel_examples():
    # M = 1, N = 0: pi^0 G^{1,0}_{0,1}(t^2/(4 lambda^2) | -; 0) with lambda^2 = 1/2
    p = new_params(1, 0)
    y = 1.0 / (4 * p.scale_lambda**2)
    assert meijer.cf_kernel(p, y).value == pytest.approx(math.exp(-0.5), rel=1e-13)
    p = new_params(1, 1)
    y = 1.0 / (4 * p.scale_lambda**2)
    assert meijer.cf_kernel(p, y).value / math.sqrt(math.pi) == pytest.approx(math.exp(-1), rel=1e-13)


@pytest.mark.parametrize("m,n", FAMILIES)
def test_cf_kernel_at_zero_is_one(m, n):
    p = new_params(m, n)
    pref = math.pi ** (-(n + m - 1) / 2) if m >= 1 else math.pi ** (-(n - 1) / 2)
    # 1 - phi(t) shrinks like |t| (ln t)^(N-1), so compare two small arguments
    gaps = [abs(1 - pref * meijer.cf_kernel(p, y).value) for y in (1e-10, 1e-14)]
    assert gaps[1] < 1e-3
    assert gaps[1] < gaps[0] or gaps[1] < 1e-12


# --------------------------------------------------------------------------
# spec validation

def test_spec_rejects_out_of_family_parameters():
    with pytest.raises(SpecUnsupported):
        meijer.MeijerSpec(1, 0, 0, 1, (), (0.3,))
    with pytest.raises(SpecUnsupported):
        meijer.MeijerSpec(2, 0, 0, 1, (), (0.0,))
    with pytest.raises(SpecUnsupported):
        meijer.MeijerSpec(0, 0, 0, 1, (), (0.0,))


def test_spec_rejects_contour_outside_strip():
    with pytest.raises(SpecUnsupported):
        meijer.MeijerSpec(1, 1, 1, 1, (0.0,), (0.0,), contour_re=0.5)
    spec = meijer.MeijerSpec(1, 1, 1, 1, (0.0,), (0.0,), contour_re=-0.5)
    assert spec.strip == (-1.0, 0.0)


@pytest.mark.parametrize("m,n", FAMILIES)
def test_pole_separation(m, n):
    for spec in (meijer.pdf_spec(m, n), meijer.cdf_spec(m, n), meijer.cf_spec(m, n)):
        left, right = spec.strip
        assert left < right
        assert spec.decay_rate > 0


def test_invalid_argument():
    spec = meijer.pdf_spec(1, 1)
    for x in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(ValueError):
            meijer.eval_g(spec, x)


# --------------------------------------------------------------------------
# identities

@pytest.mark.parametrize("m,n", FAMILIES)
def test_inversion_identity(m, n):
    for spec in (meijer.pdf_spec(m, n), meijer.cdf_spec(m, n), meijer.cf_spec(m, n)):
        for x in (0.1, 0.5, 0.9):
            a = meijer.eval_g(spec, x).value
            b = meijer.eval_g(spec.inverted(), 1 / x, allow_inversion=False).value
            assert b == pytest.approx(a, rel=1e-9)


@pytest.mark.parametrize("m,n", FAMILIES)
def test_shift_identity_on_cdf_family(m, n):
    spec = meijer.cdf_spec(m, n)
    for x in (0.1, 0.9, 3.0):
        a = math.sqrt(x) * meijer.eval_g(spec, x).value
        b = meijer.eval_g(spec.shifted(0.5), x).value
        assert b == pytest.approx(a, rel=1e-9)


def _cf_before_reduction(m, n):
    return meijer.MeijerSpec(m, n + 1, n + 2, m, (0.5,) + (0.0,) * (n + 1), (0.0,) * m)


def _cf_after_reduction(m, n):
    return meijer.MeijerSpec(m - 1, n + 1, n + 1, m - 1, (0.5,) + (0.0,) * n, (0.0,) * (m - 1))


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_order_reduction_in_cf_routes(m, n):
    for y in (0.25, 1.0):
        before = meijer.eval_g(_cf_before_reduction(m, n), 1 / y).value
        after = meijer.eval_g(_cf_after_reduction(m, n), 1 / y).value
        final = math.sqrt(y) * meijer.eval_g(meijer.cf_spec(m, n), y).value
        assert after == pytest.approx(before, rel=1e-9)
        assert final == pytest.approx(before, rel=1e-9)


def _pdf_kernel_value(m, n, log_x):
    if m == 0 and log_x < -10:
        return 0.0  # exp(-N x^(-1/N)) underflows relative to the rest
    k = meijer.pdf_kernel_log(m, n, log_x)
    return k.sign * math.exp(k.log_abs)


@pytest.mark.parametrize("m,n", FAMILIES)
def test_integral_identity(m, n):
    # int_0^u x^{-1/2} G^{M,N}_{N,M}(x) dx = u^{1/2} G^{M,N+1}_{N+1,M+1}(u | 1/2, 0; 0, -1/2)
    for u in (0.25, 4.0):
        lu = math.log(u)

        def f(v):
            return np.array([math.exp(0.5 * (lu - vi)) * _pdf_kernel_value(m, n, lu - vi) for vi in v])

        res = gauss_kronrod(f, 0.0, 80.0, rtol=1e-12, breakpoints=[5, 10, 20, 40])
        rhs = math.sqrt(u) * meijer.eval_g(meijer.cdf_spec(m, n), u).value
        assert res.value == pytest.approx(rhs, rel=1e-9)


def test_large_argument_limiting_form():
    x = 1e4
    g = meijer.eval_log_g(meijer.MeijerSpec(2, 0, 0, 2, (), (0.0, 0.0)), x)
    approx = math.log(math.sqrt(2 * math.pi) / math.sqrt(2)) - 0.25 * math.log(x) - 2 * math.sqrt(x)
    assert abs(math.exp(g.log_abs - approx) - 1) < 0.05


# --------------------------------------------------------------------------
# accuracy and error estimates

@pytest.mark.parametrize("m,n", [(0, 1), (2, 2), (2, 0), (0, 2), (2, 1), (1, 2), (3, 3)])
def test_error_estimate_is_honest_against_closed_forms(m, n):
    p = new_params(m, n)
    case = closed.match_case(p, "pdf")
    lam = p.scale_lambda
    for z in np.logspace(-3, 3, 13) / lam:
        pref = lam / math.pi ** ((m + n) / 2)
        r = meijer.pdf_kernel(p, (lam * z) ** 2)
        exact = closed.pdf_closed(case, p, z) / pref
        assert abs(r.value - exact) <= 10 * r.abs_err_estimate + 1e-300


@pytest.mark.parametrize(
    "spec_fn,m,n,x",
    [
        (meijer.pdf_spec, 3, 1, 0.3),
        (meijer.pdf_spec, 2, 3, 7.0),
        (meijer.cdf_spec, 3, 2, 0.05),
        (meijer.cdf_spec, 1, 3, 20.0),
        (meijer.cf_spec, 3, 2, 0.5),
        (meijer.cf_spec, 0, 3, 2.0),
    ],
)
def test_against_mpmath(spec_fn, m, n, x):
    spec = spec_fn(m, n)
    r = meijer.eval_g(spec, x)
    ref = _mp_meijer(spec, x)
    assert r.value == pytest.approx(ref, rel=1e-11)
    assert abs(r.value - ref) <= 10 * r.abs_err_estimate + 1e-15 * abs(ref)
    assert r.method is EvalMethod.CONTOUR


@pytest.mark.parametrize("m,n", [(2, 0), (2, 1), (3, 1), (3, 2), (4, 2)])
def test_residue_series_matches_contour(m, n):
    # inside the contour's comfort zone the two routes must agree
    for log_x in (-6.0, -12.0):
        a = meijer.pdf_kernel_residue(m, n, log_x)
        b = meijer.eval_log_g(meijer.pdf_spec(m, n), log_x=log_x)
        assert a.sign == b.sign
        assert math.exp(a.log_abs - b.log_abs) == pytest.approx(1.0, rel=1e-9)


def test_log_form_reaches_tiny_arguments():
    v = meijer.pdf_kernel_log(3, 1, -2000.0)
    assert v.method is EvalMethod.RESIDUE_SERIES
    # leading behaviour (ln x)^2 / 2 up to lower-order logs
    assert v.log_abs == pytest.approx(math.log(2000.0**2 / 2), rel=1e-2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.floats(-8, 8))
def test_kernel_conjugate_symmetry_free_real_values(m, n, lx):
    if m + n == 0:
        return
    try:
        v = meijer.eval_log_g(meijer.pdf_spec(m, n), log_x=lx)
    except ContourFailure:
        return
    # the density kernel is positive
    assert v.sign == 1
    assert math.isfinite(v.log_abs)


def test_concurrent_evaluation_is_bit_identical():
    from concurrent.futures import ThreadPoolExecutor

    spec = meijer.pdf_spec(3, 2)
    xs = list(np.logspace(-4, 4, 24))
    seq = [meijer.eval_g(spec, x).value for x in xs]
    with ThreadPoolExecutor(max_workers=4) as ex:
        par = list(ex.map(lambda x: meijer.eval_g(spec, x).value, xs))
    assert seq == par
