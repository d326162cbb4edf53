import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ganelius.kernel import (BlaschkeForm, BlaschkeProduct, SpaceParams, basis_function,
                             basis_matrix, blaschke_eval, in_region, quotient_paths, se_map,
                             se_map_inv, sinc_kernel)
from ganelius.numerics import Points, Precision, UnitPoint, to_float
from ganelius.sampling import ganelius_nodes, transform_nodes


def _tn(N, r, d, prec="binary64"):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return transform_nodes(ganelius_nodes(N, r, prec), d)


def test_space_params():
    p = SpaceParams("pi/2", "sqrt(2)")
    assert p.d_float == pytest.approx(math.pi / 2)
    assert to_float(p.r_in(Precision.BINARY64)) == pytest.approx(math.sqrt(2) / 2)
    with pytest.raises(ValueError):
        SpaceParams(3.5, 1)
    with pytest.raises(ValueError):
        SpaceParams(1, 0)


def test_in_region():
    assert in_region(0.5, 0.1)
    assert in_region(1j * 0.9, math.pi / 2)
    assert not in_region(1j * 1.1, math.pi / 2)
    # the disc is the region for d = pi/2; a lens for smaller d
    assert not in_region(0.5j, math.pi / 4)
    with pytest.raises(ValueError):
        in_region(1.0, 1.0)


def test_se_map_roundtrip():
    for t in (-3.0, 0.0, 0.7, 12.0):
        assert se_map_inv(se_map(t)) == pytest.approx(t, rel=1e-15, abs=1e-15)
    far = se_map(50.0)
    assert far.delta is not None and se_map_inv(far) == pytest.approx(50.0, rel=1e-15)


def test_sinc_kernel():
    h = 0.4
    assert sinc_kernel(3, h, 3 * h) == 1.0
    vals = sinc_kernel(3, h, h * np.arange(-5, 6, dtype=float))
    assert np.count_nonzero(vals) == 1
    assert sinc_kernel(0, h, h / 2) == pytest.approx(2 / math.pi, rel=1e-15)
    with pytest.raises(ValueError):
        sinc_kernel(0, 0.0, 1.0)


@pytest.mark.parametrize("prec", list(Precision))
def test_quotient_series_matches_direct_at_switch(prec):
    c = prec.real(1.5)
    D = prec.asarray(np.array([prec.tau * 1.01, -prec.tau * 1.01]))
    direct, series = quotient_paths(D, c, prec)
    assert np.max(np.abs(to_float(direct - series))) <= 8 * prec.eps


@pytest.mark.parametrize("d", [math.pi / 3, math.pi / 2, 2 * math.pi / 3])
@pytest.mark.parametrize("prec", list(Precision))
def test_cardinal(d, prec):
    tn = _tn(16, d / math.pi, d, prec)
    M = basis_matrix(tn, 1, tn.beta_points())
    assert np.max(np.abs(to_float(M) - np.eye(32))) < (1e-12 if prec is Precision.BINARY64 else 1e-25)


def test_basis_function_signed_index():
    tn = _tn(9, 0.5, math.pi / 2)
    pts = tn.beta_points()
    col = basis_function(-3, pts, tn, 1)
    assert to_float(col[tn.position(-3)]) == pytest.approx(1.0, abs=1e-13)
    with pytest.raises(IndexError):
        basis_function(0, pts, tn, 1)
    assert basis_function(2, UnitPoint.endpoint(1, 0), tn, 1) == 0.0


def test_blaschke_zero_at_nodes_and_bounded_on_axis():
    tn = _tn(9, 1.0, 1.2)
    B = BlaschkeProduct(tn)
    sign, logmag, val = blaschke_eval(B, tn.beta_points())
    assert np.all(sign == 0) and np.all(np.isneginf(logmag))
    sign, logmag, val = blaschke_eval(B, Points.interior(np.linspace(-0.99, 0.99, 301)))
    assert np.all(np.abs(val) <= 1)
    _, _, end = blaschke_eval(B, UnitPoint.endpoint(1, 0).points())
    assert abs(end[0]) == 1


def test_rational_form_only_for_disc():
    with pytest.raises(ValueError):
        BlaschkeProduct(_tn(4, 0.5, 1.0), BlaschkeForm.RATIONAL)


def test_rational_and_tanh_forms_agree_on_real_axis():
    tn = _tn(16, 0.5, math.pi / 2)
    x = Points.interior(np.linspace(-0.999, 0.999, 513))
    _, _, v_t = blaschke_eval(BlaschkeProduct(tn), x)
    _, _, v_r = blaschke_eval(BlaschkeProduct(tn, BlaschkeForm.RATIONAL), x)
    np.testing.assert_allclose(v_t, v_r, rtol=1e-12, atol=1e-300)


def test_complex_outside_region_rejected():
    B = BlaschkeProduct(_tn(4, 0.5, math.pi / 3))
    with pytest.raises(ValueError):
        blaschke_eval(B, np.array([0.9j]))


@given(st.floats(-6, 6), st.floats(-0.999, 0.999), st.sampled_from([0.6, math.pi / 2, 2.5]))
def test_modulus_below_one_in_region(xi, frac, d):
    z = np.tanh((xi + 1j * frac * d) / 2)
    B = BlaschkeProduct(_tn(9, 0.5, d))
    assert abs(blaschke_eval(B, np.array([z]))[0]) < 1 + 1e-12
