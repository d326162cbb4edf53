"""Reference maximum errors on the X u Y grid, from quadruple precision runs.

``REFERENCE_ERRORS[fid][scheme]`` maps ``N`` to the max error;
``REFERENCE_RATES[fid][scheme]`` holds the theoretical ratio to one decimal.
"""

from types import MappingProxyType

SQUARES = tuple(m * m for m in range(2, 13))


def _col(*vals):
    return MappingProxyType(dict(zip(SQUARES, vals)))


REFERENCE_ERRORS = MappingProxyType({
    "f1": {
        "ganelius": _col(7.73e-3, 1.47e-3, 1.06e-4, 9.57e-6, 1.10e-6, 1.07e-7, 1.25e-8,
                         1.25e-9, 2.78e-11, 2.31e-12, 2.55e-13),
        "sesinc": _col(3.48e-2, 7.49e-3, 1.88e-3, 3.38e-4, 9.67e-5, 1.98e-5, 2.85e-6,
                       9.23e-7, 2.04e-7, 2.92e-8, 1.30e-9),
    },
    "f2": {
        "ganelius": _col(1.89e-1, 5.17e-3, 1.44e-3, 9.13e-5, 1.28e-5, 2.34e-6, 3.57e-7,
                         6.06e-8, 9.46e-9, 1.40e-9, 6.17e-11),
        "sesinc": _col(8.96e-2, 2.40e-2, 8.56e-3, 2.27e-3, 6.41e-4, 1.94e-4, 3.91e-5,
                       1.15e-5, 4.58e-6, 1.25e-6, 3.39e-7),
    },
    "f3": {
        "ganelius": _col(3.63e-3, 4.35e-4, 2.36e-5, 1.85e-6, 1.22e-7, 1.00e-8, 7.97e-10,
                         5.76e-12, 3.60e-13, 2.33e-14, 1.83e-15),
        "sesinc": _col(1.33e-2, 2.33e-3, 5.06e-4, 8.04e-5, 1.52e-5, 2.49e-6, 4.25e-7,
                       7.14e-8, 1.17e-8, 2.82e-10, 4.39e-11),
    },
    "f4": {
        "ganelius": _col(5.83e-2, 1.90e-3, 3.41e-4, 3.35e-5, 6.26e-7, 9.30e-8, 5.77e-9,
                         6.14e-10, 5.04e-11, 1.23e-12, 2.55e-14),
        "sesinc": _col(1.06e-1, 1.81e-2, 3.14e-3, 5.59e-4, 5.95e-5, 1.47e-5, 2.54e-6,
                       3.78e-7, 5.88e-8, 7.63e-9, 1.01e-9),
    },
    "f5": {
        "ganelius": _col(1.64e-2, 1.30e-4, 2.98e-6, 6.43e-8, 1.38e-9, 2.93e-11, 6.29e-13,
                         1.33e-14, 2.85e-16, 6.06e-18, 1.30e-19),
        "sesinc": _col(1.24e-2, 9.91e-4, 7.37e-5, 5.38e-6, 3.85e-7, 2.72e-8, 1.91e-9,
                       1.33e-10, 9.23e-12, 6.36e-13, 4.36e-14),
    },
})

REFERENCE_RATES = MappingProxyType({
    "f1": {"ganelius": 9.2, "sesinc": 4.8},
    "f2": {"ganelius": 6.1, "sesinc": 3.6},
    "f3": {"ganelius": 13.0, "sesinc": 6.1},
    "f4": {"ganelius": 14.0, "sesinc": 6.5},
    "f5": {"ganelius": 46.8, "sesinc": 15.1},
})
