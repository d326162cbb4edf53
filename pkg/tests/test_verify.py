import json
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ganelius.corpus import TEST_FUNCTIONS
from ganelius.numerics import to_float
from ganelius.sampling import ganelius_nodes
from ganelius.verify import (PaperGrid, blaschke_bound_lhs, check_cardinal, decay_fit,
                             error_sweep, ganelius_lhs, j_bound, j_instantiation, j_integral,
                             j_suite, log_ganelius_product, report_csv, theoretical_rate,
                             uniform_grid, weighted_ganelius_lhs)

# 30-digit golden-section maximization in mpmath of s^r prod|(s-a)/(s+a)|
LHS = {(4, 0.5): 0.08418671330420339866, (9, 0.5): 0.0063386719537622688969,
       (16, 1.5): 3.3310097973976468798e-6}
# mpmath quadrature
J_1_HALF_0 = 2.3962804694711844149
J_HALF_0_2 = 5.2441151085842396209
J_2_MHALF_15 = 3.4824799963282270306


def test_paper_grid():
    g = PaperGrid()
    assert len(g.X) == 1999 and len(g.Y) == 234 and len(g) == 2233
    from fractions import Fraction
    assert {p.delta for p in g.Y} == {Fraction(k, 10 ** l) for k in range(1, 10) for l in range(4, 17)}
    assert g.Y[-1].label() == "-(1-9e-16)"
    assert len(g.points("extended")) == 2233


def test_uniform_grid():
    pts = uniform_grid(3)
    assert [float(p.x) for p in pts] == [-0.5, 0.0, 0.5]


@pytest.mark.parametrize("key", sorted(LHS))
def test_ganelius_lhs_oracle(key):
    assert ganelius_lhs(*key) == pytest.approx(LHS[key], rel=1e-12)


def test_lhs_vanishes_at_nodes_and_below_one():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        log_a = to_float(ganelius_nodes(9, 0.5).log_a)
    assert np.all(np.isneginf(log_ganelius_product(log_a, log_a, 0.5)))
    v = np.linspace(-30, 0, 2001)
    assert np.all(log_ganelius_product(v, log_a, 0.5) < 0)


def test_lhs_dominates_grid():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        log_a = to_float(ganelius_nodes(16, 1.5).log_a)
    v = np.linspace(-40, 0, 20001)
    assert ganelius_lhs(16, 1.5) >= math.exp(log_ganelius_product(v, log_a, 1.5).max())


@pytest.mark.parametrize("N", [4, 9, 16])
@pytest.mark.parametrize("r", [0.5, 1.5])
def test_t_form_vs_s_form(N, r):
    t_form = blaschke_bound_lhs(N, r)
    # the t-form is the s-form weighted by (1 + t^2)^r = (2/(1+s))^r
    assert t_form == pytest.approx(weighted_ganelius_lhs(N, r), rel=1e-6)
    g = ganelius_lhs(N, r)
    assert g <= t_form <= 2 ** r * g


def test_blaschke_lhs_zero_at_node_and_scaled_bounded():
    val, t = blaschke_bound_lhs(9, 0.5, argmax=True)
    assert 0 <= t <= 1
    for r in (0.5, 1.0, 1.5):
        for N in (16, 64, 144):
            assert blaschke_bound_lhs(N, r) * math.exp(math.pi * math.sqrt(N * r)) < 100


def test_j_integral_values():
    assert j_integral(1, 1, 0) == pytest.approx(2.0, abs=1e-10)
    assert j_integral(1, 0.5, 0) == pytest.approx(J_1_HALF_0, abs=1e-10)
    assert j_integral(0.5, 0, 2) == pytest.approx(J_HALF_0_2, abs=1e-10)
    assert j_integral(2, -0.5, 1.5) == pytest.approx(J_2_MHALF_15, abs=1e-10)
    with pytest.raises(ValueError):
        j_integral(0.5, -0.5, 0)


@given(st.floats(-0.9, 3), st.floats(-0.9, 3), st.floats(-5, 5))
def test_j_symmetry(a, b, t):
    if a + b <= 0.1:
        return
    assert j_integral(a, b, t) == pytest.approx(j_integral(b, a, t), rel=1e-8, abs=1e-10)


def test_j_bound():
    assert j_bound(1, 0.5, 0) == pytest.approx(4 * 2 ** 0.5 / 0.75 * 0.5, rel=1e-15)
    assert j_bound(1, 0.5, 0) == pytest.approx(3.7712, abs=1e-4)
    assert j_bound(1, 0.5, 200) < 1e-40
    with pytest.raises(ValueError):
        j_bound(1, 1, 0)
    with pytest.raises(ValueError):
        j_bound(-1, 0.5, 0)


def test_j_suite_contains_instantiations():
    suite = j_suite()
    assert len(suite) == 50 and suite == j_suite()
    for f in TEST_FUNCTIONS.values():
        a, b = j_instantiation(f)
        assert any(s[:2] == (a, b) for s in suite)
    assert j_instantiation(TEST_FUNCTIONS["f4"])[1] == pytest.approx((2 ** 0.5 - 1) / 2)


def test_theoretical_rate():
    f = TEST_FUNCTIONS
    assert theoretical_rate(f["f1"].params, "ganelius") == pytest.approx(9.2, abs=0.05)
    assert theoretical_rate(f["f5"].params, "ganelius") == pytest.approx(46.8, abs=0.05)
    assert theoretical_rate(f["f3"].params, "sesinc") == pytest.approx(6.1, abs=0.05)


def test_decay_fit():
    N = [4, 9, 16, 25]
    assert decay_fit(N, [math.exp(-2 * math.sqrt(n) + 1) for n in N]) == pytest.approx(-2)
    assert math.isnan(decay_fit([4], [0.1]))


def test_error_sweep_ratios_and_single_row():
    f = TEST_FUNCTIONS["f1"]
    rep = error_sweep(f, "ganelius", [4, 9, 25])
    assert [r.ratio is None for r in rep.rows] == [True, False, True]
    assert rep.rows[1].ratio == pytest.approx(to_float(rep.rows[0].max_error) / to_float(rep.rows[1].max_error))
    one = error_sweep(TEST_FUNCTIONS["f2"], "ganelius", [4])
    assert len(one.rows) == 1 and one.rows[0].ratio is None
    assert rep.skipped == ()


def test_error_sweep_deterministic_across_workers():
    f = TEST_FUNCTIONS["f3"]
    a = report_csv([error_sweep(f, "sesinc", [4, 9, 16], workers=1)])
    b = report_csv([error_sweep(f, "sesinc", [4, 9, 16], workers=3)])
    assert a == b


def test_report_formats():
    rep = error_sweep(TEST_FUNCTIONS["f1"], "sesinc", [4, 9])
    lines = rep.to_csv().splitlines()
    assert lines[0] == "N,max_error,argmax,ratio"
    assert lines[1].split(",")[1] == "3.4812613185885917e-02"
    data = json.loads(rep.to_json())
    assert set(data) >= {"function", "scheme", "d", "mu", "nu", "rows", "theoretical_ratio",
                         "fitted_slope"}
    assert data["rows"][1]["N"] == 9
    ext = error_sweep(TEST_FUNCTIONS["f1"], "sesinc", [4], precision="extended")
    assert len(ext.to_csv().splitlines()[1].split(",")[1].split("e")[0]) == 37  # 36 digits


def test_check_cardinal():
    res = check_cardinal(TEST_FUNCTIONS["f5"], 16)
    assert res.passed and res.details["max_basis_deviation"] < 1e-12
