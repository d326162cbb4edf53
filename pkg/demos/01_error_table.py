"""Max-error table for f1 on the X u Y grid, next to quad-precision reference values.

Binary64 tracks the reference column down to about N = 81; beyond that the
Ganelius sum loses digits to cancellation (terms of size ~1e5 adding up to
O(1)), so the deep entries need ``--precision extended``:

    python demos/01_error_table.py extended
"""
import sys
import warnings

from ganelius import TEST_FUNCTIONS, error_sweep
from ganelius.tables import REFERENCE_ERRORS, SQUARES

warnings.simplefilter("ignore")
prec = sys.argv[1] if len(sys.argv) > 1 else "binary64"
f = TEST_FUNCTIONS["f1"]

reports = {s: error_sweep(f, s, SQUARES, prec) for s in ("ganelius", "sesinc")}
print(f"f1 = {f.formula}, d = {f.params.d_float}, mu = {f.params.mu_float}, {prec}")
print(f"{'N':>4} {'ganelius':>10} {'reference':>10}   {'sesinc':>10} {'reference':>10}")
for i, N in enumerate(SQUARES):
    g, s = (float(reports[k].errors()[i]) for k in ("ganelius", "sesinc"))
    print(f"{N:4d} {g:10.2e} {REFERENCE_ERRORS['f1']['ganelius'][N]:10.2e}   "
          f"{s:10.2e} {REFERENCE_ERRORS['f1']['sesinc'][N]:10.2e}")

for k, rep in reports.items():
    print(f"{k}: fitted slope {rep.fitted_slope:.3f}, theory ratio {rep.theoretical_ratio:.1f}")
