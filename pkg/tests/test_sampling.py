import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ganelius.numerics import Precision, to_float
from ganelius.sampling import (NodeCollisionError, ganelius_nodes, split_index,
                               transform_nodes)

# mpmath, 50 digits, straight from the definition (N = 4, r = 1/2)
A_4 = [0.0018674427317079888144, 0.15876941189660673421, 0.43093965319217522761, 0.8]
B_4 = [0.99813429768781612801, 0.85203810261144977399, 0.63062110726394133455,
       0.33333333333333333333]
# sigma_k for k = -4..-1, 1..4 from prod (1 - b_l b_k)/(b_k - b_l)
SIGMA_4 = [8.3505603535171088826, -8.0781275373579139446, 3.3593701823178033721,
           -1.0375501405624409555, 1.0375501405624409555, -3.3593701823178033721,
           8.0781275373579139446, -8.3505603535171088826]
BETA_4_PI3 = [0.98107456204543571479, 0.68705831839536066082, 0.45814775492080973373,
              0.22702358087138125809]


def _nodes(N, r, prec="binary64"):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return ganelius_nodes(N, r, prec)


@pytest.mark.parametrize("prec", list(Precision))
def test_nodes_n4(prec):
    g = _nodes(4, 0.5, prec)
    assert g.N0 == 2
    # a = exp(log a): |log a_1| ~ 6 ulps of amplification in binary64
    np.testing.assert_allclose(to_float(g.a), A_4, rtol=5e-15)
    tn = transform_nodes(g, "pi/2")
    np.testing.assert_allclose(to_float(tn.b[4:]), B_4, rtol=1e-15)
    sig = to_float(tn.sigma_sign) * np.exp(to_float(tn.sigma_logmag))
    np.testing.assert_allclose(sig, SIGMA_4, rtol=1e-13)
    tn3 = transform_nodes(g, "pi/3")
    np.testing.assert_allclose(to_float(tn3.beta[4:]), BETA_4_PI3, rtol=1e-14)


def test_split_index():
    assert split_index(4, 0.5) == 2
    assert split_index(144, 1.57 / math.pi) == 137
    assert split_index(9, 3.0) == 4


def test_guards():
    with pytest.raises(ValueError, match="N0"):
        ganelius_nodes(1, 0.5)
    with pytest.raises(ValueError):
        ganelius_nodes(9, 0)
    with pytest.warns(UserWarning, match="N0"):
        ganelius_nodes(4, 0.5)
    with pytest.raises(ValueError):
        transform_nodes(_nodes(9, 0.5), 3.2)


def test_collision_error_is_value_error():
    assert issubclass(NodeCollisionError, ValueError)


def test_extended_agrees_with_binary64():
    b = _nodes(100, 1.0)
    e = _nodes(100, 1.0, "extended")
    np.testing.assert_allclose(to_float(e.log_a), to_float(b.log_a), rtol=1e-14)


@given(st.integers(4, 160), st.floats(0.1, 3.0))
def test_nodes_shape(N, r):
    if split_index(N, r) < 1:
        return
    g = _nodes(N, r)
    a = to_float(g.a)
    head, tail = a[:g.N0 + 1], a[g.N0 + 1:]
    assert np.all(np.diff(head) > 0)
    assert np.all(np.diff(tail) < 0)  # the linear tail runs down from 1
    assert np.all(tail >= 0.8) and np.all(a > 0) and np.all(a < 1)
    assert len(np.unique(a)) == N
    tn = transform_nodes(g, 1.2)
    b = to_float(tn.b)
    assert np.array_equal(b, -b[::-1])
    assert np.all(np.abs(b) <= 1)
