import json
import math

import numpy as np
import pytest

from normratio import closed, verify
from normratio.errors import CaseMismatch
from normratio.params import new_params


def test_ks_cauchy():
    stat, thr = verify.ks_check(new_params(1, 1), 10**6, seed=11)
    assert thr == pytest.approx(0.002)
    assert stat <= 0.002


def test_ks_m2n1():
    stat, _ = verify.ks_check(new_params(2, 1), 10**6, seed=12)
    assert stat <= 0.002


def test_ks_rejects_wrong_params():
    p = new_params(2, 1)
    wrong = new_params(2, 1, [2.0, 1.0], [1.0])
    stat, thr = verify.ks_check(p, 1000, seed=3, cdf_params=wrong)
    assert stat > thr


def test_ks_needs_enough_draws():
    with pytest.raises(ValueError):
        verify.ks_check(new_params(1, 1), 999, seed=1)


def test_ks_matches_scipy_for_normal():
    from scipy import stats

    from normratio import dist

    p = new_params(1, 0, [1.7])
    stat, _ = verify.ks_check(p, 5000, seed=8)
    x = dist.sample(p, 5000, 8).values
    ref = stats.kstest(x, stats.norm(scale=1.7).cdf).statistic
    assert stat == pytest.approx(ref, abs=1e-9)


@pytest.mark.parametrize("mn,limit", [((1, 1), 1e-8), ((3, 2), 1e-6), ((0, 1), 1e-8), ((2, 0), 1e-8)])
def test_normalization(mn, limit):
    assert verify.normalization_check(new_params(*mn)) <= limit


def test_normalization_guard():
    with pytest.raises(ValueError):
        verify.normalization_check(new_params(4, 3))


def test_equivalence_examples():
    assert verify.equivalence_sweep(new_params(2, 2), "pdf", np.logspace(-3, 3, 50)) <= 1e-8
    assert verify.equivalence_sweep(new_params(2, 1), "cf", np.linspace(0.1, 5, 50)) <= 1e-8
    assert verify.equivalence_sweep(new_params(0, 2), "cdf", np.linspace(0.1, 10, 50)) <= 1e-7


def test_equivalence_requires_case():
    with pytest.raises(CaseMismatch):
        verify.equivalence_sweep(new_params(3, 2), "pdf", [1.0])
    with pytest.raises(CaseMismatch):
        verify.equivalence_sweep(new_params(3, 3), "cdf", [1.0])


def test_moment_check():
    for r in verify.MOMENT_ORDERS:
        assert verify.moment_check(new_params(2, 1), r) <= 1e-4


def test_trend_statistic():
    t = verify.Trend("x", (1.0, 2.0, 3.0), (1.2, 1.1, 1.05), (0.0, 0.0, 0.0), (), 0.1)
    assert t.monotone and t.statistic == pytest.approx(0.05)
    bad = verify.Trend("x", (1.0, 2.0), (1.05, 1.1), (0.0, 0.0), (), 0.1)
    assert not bad.monotone and bad.statistic == math.inf
    noisy = verify.Trend("x", (1.0, 2.0), (1.0 + 1e-12, 1.0 + 2e-12), (1e-12, 1e-12), (), 0.1)
    assert noisy.monotone


def test_run_full_cauchy_passes():
    rep = verify.run_full(new_params(1, 1), sample_size=10**5)
    names = [c.name for c in rep.checks]
    assert names == sorted(names)
    assert {"ks", "normalization", "shape_unimodal_at_zero"} <= set(names)
    assert rep.passed, [c for c in rep.checks if not c.passed]


def test_run_full_bimodal_shape():
    rep = verify.run_full(new_params(0, 1), sample_size=10**4, include_trends=False)
    shape = [c for c in rep.checks if c.name.startswith("shape")]
    assert shape[0].name == "shape_bimodal_symmetric" and shape[0].passed


def test_run_full_product_notes():
    rep = verify.run_full(new_params(2, 0), sample_size=10**4, include_trends=False)
    assert not any("mgf" in c.name.lower() for c in rep.checks)
    assert any(n.startswith("N = 0") for n in rep.notes)


def test_report_round_trip(tmp_path):
    rep = verify.run_full(new_params(2, 2), sample_size=10**4, include_trends=False)
    text = rep.to_json()
    back = verify.VerifyReport.from_json(text)
    assert back == rep
    assert back.to_json() == text
    path = tmp_path / "r.json"
    path.write_text(text)
    assert json.loads(path.read_text())["passed"] == rep.passed
    for c in rep.checks:
        assert c.passed == (c.statistic <= c.threshold)


def test_reports_independent_of_worker_count():
    p = new_params(2, 1)
    a = verify.run_full(p, seed=5, sample_size=2 * 10**5, workers=1, include_trends=False)
    b = verify.run_full(p, seed=5, sample_size=2 * 10**5, workers=3, include_trends=False)
    assert a.to_json() == b.to_json()


@pytest.mark.parametrize("target", ["pdf_closed", "cdf_closed", "cf_closed"])
def test_mutation_is_detected(monkeypatch, target):
    params = {"pdf_closed": (2, 2), "cdf_closed": (2, 2), "cf_closed": (2, 1)}[target]
    original = getattr(closed, target)
    monkeypatch.setattr(closed, target, lambda *a: 1.01 * original(*a))
    rep = verify.run_full(new_params(*params), sample_size=10**4, include_trends=False)
    assert not rep.passed


def test_mutation_of_shared_constant_is_detected(monkeypatch):
    monkeypatch.setattr(closed, "_PI2", closed._PI2 * 1.01)
    rep = verify.run_full(new_params(2, 2), sample_size=10**4, include_trends=False)
    failed = {c.name for c in rep.checks if not c.passed}
    assert "equivalence_pdf" in failed and "equivalence_cdf" in failed
