"""Kernel backend selection.

The hot loops exist twice: compiled with numba (``_kernels_nb``) and as
stage-vectorized pure numpy (``_kernels_np``).  The environment variable
``OLSCONV_BACKEND`` picks one:

  auto   use numba when importable, else fall back to numpy (default)
  numba  require numba; raise if it cannot be imported
  numpy  force the pure-numpy path

Both backends expose identical function names and signatures and produce
the same results within floating-point tolerance.
"""

import os
import warnings

_flag = os.environ.get("OLSCONV_BACKEND", "auto").strip().lower()
if _flag not in ("auto", "numba", "numpy"):
    warnings.warn(
        f"OLSCONV_BACKEND={_flag!r} not recognized, using 'auto'",
        stacklevel=1)
    _flag = "auto"

if _flag == "numpy":
    from . import _kernels_np as kernels
    BACKEND = "numpy"
else:
    try:
        from . import _kernels_nb as kernels
        BACKEND = "numba"
    except ImportError:
        if _flag == "numba":
            raise
        from . import _kernels_np as kernels
        BACKEND = "numpy"


def backend_name() -> str:
    return BACKEND
