"""Pin BLAS to a single thread before numpy loads.

The timing-sensitive tests (solver races, scaling ratios) need stable
wall-clock numbers; multi-threaded BLAS adds noise without helping the
O(n log n) kernels used here. Must run before the first numpy import
in the test process, hence conftest at collection time.
"""

import os

for _var in (
    "OPENBLAS_NUM_THREADS",
    "MKL_NUM_THREADS",
    "OMP_NUM_THREADS",
    "NUMEXPR_NUM_THREADS",
    "VECLIB_MAXIMUM_THREADS",
):
    os.environ.setdefault(_var, "1")
