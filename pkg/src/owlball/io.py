"""Vector file formats used by the command line interface.

Two formats, chosen by file extension:

* ``.csv``: text, one value per line, read/written at full precision.
* ``.f64``: raw little-endian float64, no header.

These exist for the CLI only; library callers pass arrays directly.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

__all__ = ["read_vector", "write_vector"]


def read_vector(path) -> np.ndarray:
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".csv":
        return np.loadtxt(path, dtype=np.float64, ndmin=1)
    if suffix == ".f64":
        return np.fromfile(path, dtype="<f8")
    raise ValueError(f"unsupported vector format {suffix!r} (use .csv or .f64)")


def write_vector(path, x) -> None:
    path = Path(path)
    x = np.asarray(x, dtype=np.float64)
    suffix = path.suffix.lower()
    if suffix == ".csv":
        np.savetxt(path, x, fmt="%.17g")
    elif suffix == ".f64":
        x.astype("<f8").tofile(path)
    else:
        raise ValueError(f"unsupported vector format {suffix!r} (use .csv or .f64)")
