"""Honor POLARON_THREADS before any BLAS-backed library is imported.

Importing this module first from the package __init__ caps the thread pools
of common BLAS backends; results are bit-identical for a fixed setting.
"""

import os

_cap = os.environ.get("POLARON_THREADS")
if _cap:
    for var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS",
                "NUMEXPR_NUM_THREADS"):
        os.environ.setdefault(var, _cap)
