"""Backend selection for the hot kernel-assembly routines.

Two interchangeable implementations exist for every assembly kernel: a
Numba ``@njit`` scalar-loop version and a pure-NumPy vectorized version.
The NumPy path is always available; the Numba path is used by default
when numba is importable.  Setting the environment variable
``ELLIPSEBIE_NO_NUMBA=1`` forces the pure-NumPy fallback.

Both paths evaluate the same formulas; results agree to rounding noise.
For bitwise-reproducible output across runs, keep the flag constant.
"""

import os

ENV_FLAG = "ELLIPSEBIE_NO_NUMBA"

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get(ENV_FLAG, "0") != "1"


def backend_name() -> str:
    """Name of the active assembly backend ('numba' or 'numpy')."""
    return "numba" if USE_NUMBA else "numpy"
