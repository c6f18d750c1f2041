"""Input validation helpers shared across the package.

All helpers convert to float64 numpy arrays and raise :class:`InvalidInput`
on malformed data, so the statistical code can assume clean inputs.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInput


def as_vector(v, name: str = "x") -> np.ndarray:
    """1-d float64 array with all entries finite."""
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidInput(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} contains non-finite values")
    return arr


def as_sample(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Validated paired sample: equal lengths, n >= 2, finite entries."""
    xa = as_vector(x, "x")
    ya = as_vector(y, "y")
    if len(xa) != len(ya):
        raise InvalidInput(f"x and y have different lengths: {len(xa)} vs {len(ya)}")
    if len(xa) < 2:
        raise InvalidInput(f"need at least 2 observations, got {len(xa)}")
    return xa, ya


def as_matrix(X, name: str = "X") -> np.ndarray:
    """2-d float64 array with all entries finite."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidInput(f"{name} must be two-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} contains non-finite values")
    return arr


def check_binary(y, name: str = "y") -> None:
    """Require values in {0, 1} with both classes present."""
    vals = np.unique(np.asarray(y, dtype=np.float64))
    if len(vals) != 2 or vals[0] != 0.0 or vals[1] != 1.0:
        raise InvalidInput(
            f"{name} must take exactly the two values 0 and 1 with both present, "
            f"got values {vals[:6]}"
        )


def is_constant(v: np.ndarray) -> bool:
    return bool(np.min(v) == np.max(v))
