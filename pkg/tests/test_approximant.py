import numpy as np
import pytest

from ganelius.approximant import (Scheme, build, build_ganelius, check_nu, default_nu,
                                  evaluate, sesinc_step)
from ganelius.corpus import TEST_FUNCTIONS, custom_function, test_function
from ganelius.kernel import SpaceParams, basis_matrix
from ganelius.numerics import Points, Precision, UnitPoint, one_minus_x_sq, to_float
from ganelius.tables import REFERENCE_ERRORS
from ganelius.verify import PaperGrid


def test_default_nu():
    assert default_nu(1) == 1
    assert default_nu(3) == 2
    assert default_nu(2 ** 0.5) == 1
    assert default_nu(2) == 1.5  # even mu: midpoint of the open interval
    check_nu(1.2, 2 ** 0.5)
    with pytest.raises(ValueError):
        check_nu(0.5, 1)


def test_nu_out_of_range_rejected():
    with pytest.raises(ValueError):
        build_ganelius(TEST_FUNCTIONS["f1"], nu=2.0, N=9)


def test_interpolates_at_nodes():
    f = TEST_FUNCTIONS["f3"]
    A = build(f, "ganelius", 16)
    back = evaluate(A, A.nodes.beta_points())
    assert np.max(np.abs(back - A.samples)) < 1e-13


def test_sesinc_step_and_samples():
    f = TEST_FUNCTIONS["f1"]
    h = to_float(sesinc_step(f.params, 16, Precision.BINARY64))
    assert h == pytest.approx(np.sqrt(2 * np.pi * 1.57 / 16))
    A = build(f, Scheme.SESINC, 16)
    assert len(A.samples) == 33
    assert evaluate(A, UnitPoint.interior(0)) == pytest.approx(1.0, abs=1e-15)


def test_endpoints_give_zero():
    for s in Scheme:
        A = build(TEST_FUNCTIONS["f2"], s, 9)
        assert evaluate(A, UnitPoint.endpoint(-1, 0)) == 0.0


@pytest.mark.parametrize("scheme", ["ganelius", "sesinc"])
def test_small_n_matches_reference(scheme):
    f = TEST_FUNCTIONS["f1"]
    pts = PaperGrid().points()
    for N in (4, 9):
        err = np.max(np.abs(f(pts) - evaluate(build(f, scheme, N), pts)))
        assert err == pytest.approx(REFERENCE_ERRORS["f1"][scheme][N], rel=0.01)


def test_extended_and_binary64_agree_at_moderate_n():
    # the binary64 formula is built on rounded nodes; its distance from the
    # extended one is governed by eps times the pointwise Lebesgue-type sum
    f = TEST_FUNCTIONS["f4"]
    xs = np.linspace(-0.95, 0.95, 41)
    pts_b, pts_e = Points.interior(xs), Points.interior(xs, "extended")
    eps = Precision.BINARY64.eps
    A, E = build(f, "ganelius", 25), build(f, "ganelius", 25, precision="extended")
    lam = np.abs(basis_matrix(A.nodes, A.nu, pts_b) * A.samples).sum(axis=1)
    diff = np.abs(evaluate(A, pts_b) - to_float(evaluate(E, pts_e)))
    assert np.all(diff <= 64 * eps * lam)
    A, E = build(f, "sesinc", 25), build(f, "sesinc", 25, precision="extended")
    assert np.max(np.abs(evaluate(A, pts_b) - to_float(evaluate(E, pts_e)))) < 1e-14


def test_custom_function_and_override_params():
    g = custom_function("g", lambda p: one_minus_x_sq(p), "pi/2", 2, 1.5)
    A = build(g, "ganelius", 25)
    x = Points.interior([0.1, 0.5])
    assert np.max(np.abs(evaluate(A, x) - np.array([0.99, 0.75]))) < 1e-4
    B = build_ganelius(TEST_FUNCTIONS["f1"], params=SpaceParams("pi/2", 1), N=9)
    assert B.params.d_float == pytest.approx(np.pi / 2)
