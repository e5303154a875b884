import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normratio.errors import LengthMismatch, NonFiniteSigma, NonPositiveSigma, ZeroFactors
from normratio.params import DistParams, new_params


def test_unit_cauchy():
    p = new_params(1, 1, [1.0], [1.0])
    assert (p.sigma_prod, p.s_prod, p.scale_lambda) == (1.0, 1.0, 1.0)


def test_product_scale():
    p = new_params(2, 0, [1.0, 2.0], [])
    assert p.sigma_prod == 2.0
    assert p.s_prod == 1.0
    assert p.scale_lambda == pytest.approx(2 ** (-1.0) * 0.5, rel=1e-15)


def test_defaults_to_ones():
    p = new_params(3, 2)
    assert p.sigma_x == (1.0, 1.0, 1.0) and p.sigma_y == (1.0, 1.0)


@pytest.mark.parametrize(
    "args,exc",
    [
        ((0, 0, [], []), ZeroFactors),
        ((1, 1, [1.0, 2.0], [1.0]), LengthMismatch),
        ((1, 1, [0.0], [1.0]), NonPositiveSigma),
        ((1, 1, [1.0], [-2.0]), NonPositiveSigma),
        ((1, 1, [math.inf], [1.0]), NonFiniteSigma),
        ((1, 1, [1.0], [math.nan]), NonFiniteSigma),
    ],
)
def test_invalid(args, exc):
    with pytest.raises(exc):
        new_params(*args)


def test_negative_or_fractional_counts():
    with pytest.raises(ValueError):
        new_params(-1, 2)
    with pytest.raises(ValueError):
        new_params(1.5, 1)


sigmas = st.lists(st.floats(1e-3, 1e3), min_size=0, max_size=5)


@given(sigmas, sigmas)
def test_derived_fields(sx, sy):
    if len(sx) + len(sy) == 0:
        return
    p = new_params(len(sx), len(sy), sx, sy)
    assert p.sigma_prod == pytest.approx(math.prod(sx), rel=1e-14)
    assert p.s_prod == pytest.approx(math.prod(sy), rel=1e-14)
    expect = 2 ** ((len(sy) - len(sx)) / 2) * math.prod(sy) / math.prod(sx)
    assert p.scale_lambda > 0
    assert p.scale_lambda == pytest.approx(expect, rel=1e-13)
    assert math.exp(p.log_lambda) == pytest.approx(expect, rel=1e-13)


@given(sigmas, sigmas)
def test_dict_round_trip_and_reciprocal(sx, sy):
    if len(sx) + len(sy) == 0:
        return
    p = new_params(len(sx), len(sy), sx, sy)
    assert DistParams.from_dict(p.to_dict()) == p
    r = p.reciprocal()
    assert (r.m_count, r.n_count) == (p.n_count, p.m_count)
    assert r.reciprocal() == p
