"""Input validation helpers shared by the optimizers and the harness."""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import InvalidParameterError


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidParameterError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_interval(value, name, low, high, *, low_open=False, high_open=False):
    """Check ``value`` is a real number in the interval [low, high] (ends optionally open)."""
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise InvalidParameterError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not np.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value}")
    below = value <= low if low_open else value < low
    above = value >= high if high_open else value > high
    if below or above:
        lb = "(" if low_open else "["
        rb = ")" if high_open else "]"
        raise InvalidParameterError(f"{name} must lie in {lb}{low}, {high}{rb}, got {value}")
    return value


def check_choice(value, name, choices):
    if value not in choices:
        raise InvalidParameterError(f"{name} must be one of {sorted(choices)}, got {value!r}")
    return value


def check_seed(seed):
    """Accept ``None`` or an unsigned 64-bit integer."""
    if seed is None:
        return None
    if isinstance(seed, bool) or not isinstance(seed, numbers.Integral):
        raise InvalidParameterError(f"seed must be a non-negative integer, got {seed!r}")
    if not 0 <= seed < 2**64:
        raise InvalidParameterError(f"seed must fit in 64 unsigned bits, got {seed}")
    return int(seed)


def check_vector(x, name="x", dim=None):
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise InvalidParameterError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise InvalidParameterError(f"{name} must have length {dim}, got {arr.shape[0]}")
    return arr
