"""Where the error lives.

The worst point of the Ganelius formula for f1 drifts toward x = +-1 as N
grows, to 1 - 2e-12 by N = 49.  Those points only make sense if they are
kept as (sign, delta): written as a float, 1 - 9e-16 is already a
different number.

(Stay at moderate N in binary64.  The formula's sum carries a
Lebesgue-type factor that grows fast with N, and faster for nu = 2 as in
f5, where it is ~3e7 at N = 81; past that the rounding noise, not the
approximation error, sets the max.)
"""
import warnings

import numpy as np

from ganelius import Points, TEST_FUNCTIONS, UnitPoint, build, error_sweep

warnings.simplefilter("ignore")
f = TEST_FUNCTIONS["f1"]

rep = error_sweep(f, "ganelius", [9, 16, 25, 36, 49])
for row in rep.rows:
    print(f"N = {row.N:3d}: max error {float(row.max_error):.2e} at x = {row.argmax.label()}")

# Same point, coded two ways.
coded = UnitPoint.endpoint(1, "9e-16").points()
naive = Points.interior(np.array([1 - 9e-16]))
print("delta kept exactly:", coded.delta[0], " delta from float x:", naive.delta[0])

A = build(f, "ganelius", 49)
print("f at 1-9e-16      :", f(coded)[0])
print("approximant there :", A(coded)[0])
