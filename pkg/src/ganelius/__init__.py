"""Approximation of functions with endpoint singularities on ``[-1, 1]``
by modified Ganelius sampling points and a generalized Blaschke product,
with the SE-Sinc formula as baseline.

Quick start::

    >>> from ganelius import test_function, build, PaperGrid
    >>> f = test_function("f1")
    >>> A = build(f, "ganelius", N=36)
    >>> pts = PaperGrid().points()
    >>> float(abs(f(pts) - A(pts)).max())  # doctest: +ELLIPSIS
    1.1...e-06
"""

from .approximant import (Approximant, Scheme, build, build_ganelius, build_sesinc,
                          default_nu, evaluate)
from .corpus import TEST_FUNCTIONS, TestFunction, custom_function, test_function
from .kernel import (BlaschkeForm, BlaschkeProduct, SpaceParams, basis_function,
                     basis_matrix, blaschke_eval, in_region, se_map, se_map_inv, sinc_kernel)
from .numerics import Points, Precision, UnitPoint, atanh_stable
from .sampling import (GaneliusNodes, NodeCollisionError, TransformedNodes, ganelius_nodes,
                       transform_nodes)
from .verify import (ErrorReport, PaperGrid, blaschke_bound_lhs, error_sweep, ganelius_lhs,
                     j_bound, j_integral, theoretical_rate)

__all__ = [
    "Approximant", "Scheme", "build", "build_ganelius", "build_sesinc", "default_nu",
    "evaluate", "TEST_FUNCTIONS", "TestFunction", "custom_function", "test_function",
    "BlaschkeForm", "BlaschkeProduct", "SpaceParams", "basis_function", "basis_matrix",
    "blaschke_eval", "in_region", "se_map", "se_map_inv", "sinc_kernel", "Points",
    "Precision", "UnitPoint", "atanh_stable", "GaneliusNodes", "NodeCollisionError",
    "TransformedNodes", "ganelius_nodes", "transform_nodes", "ErrorReport", "PaperGrid",
    "blaschke_bound_lhs", "error_sweep", "ganelius_lhs", "j_bound", "j_integral",
    "theoretical_rate",
]

__version__ = "0.1.0"
