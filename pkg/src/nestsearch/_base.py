"""Shared data types and the estimator base class for all optimizers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_positive_int
from .exceptions import InvalidParameterError


@dataclass(frozen=True, eq=False)
class SearchSpace:
    """Axis-aligned feasible box ``lower <= x <= upper``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.array(self.lower, dtype=float, ndmin=1)
        upper = np.array(self.upper, dtype=float, ndmin=1)
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise InvalidParameterError(
                f"lower and upper must be 1-D arrays of equal length, got {lower.shape} and {upper.shape}"
            )
        if lower.size == 0:
            raise InvalidParameterError("search space must have at least one dimension")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise InvalidParameterError("bounds must be finite")
        if np.any(lower >= upper):
            raise InvalidParameterError("every lower bound must be strictly below its upper bound")
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def box(cls, low, high, dim):
        dim = check_positive_int(dim, "dim")
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dim(self):
        return self.lower.shape[0]

    @property
    def width(self):
        return self.upper - self.lower

    def uniform(self, rng, size=None):
        """Uniform sample(s) in the box; ``size`` rows if given."""
        shape = (self.dim,) if size is None else (size, self.dim)
        return self.lower + rng.random(shape) * self.width

    def contains(self, x):
        x = np.asarray(x)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def __eq__(self, other):
        if not isinstance(other, SearchSpace):
            return NotImplemented
        return np.array_equal(self.lower, other.lower) and np.array_equal(self.upper, other.upper)

    def __repr__(self):
        if np.all(self.lower == self.lower[0]) and np.all(self.upper == self.upper[0]):
            return f"SearchSpace.box({self.lower[0]}, {self.upper[0]}, dim={self.dim})"
        return f"SearchSpace(lower={self.lower.tolist()}, upper={self.upper.tolist()})"


def as_space(bounds):
    """Coerce a SearchSpace, a ``(lower, upper)`` pair or an ``(d, 2)`` array to a SearchSpace."""
    if isinstance(bounds, SearchSpace):
        return bounds
    arr = np.asarray(bounds, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 2 and arr.shape[0] != 2:
        return SearchSpace(arr[:, 0], arr[:, 1])
    if arr.ndim == 2 and arr.shape[0] == 2:
        return SearchSpace(arr[0], arr[1])
    raise InvalidParameterError(f"cannot interpret bounds of shape {arr.shape}")


@dataclass(frozen=True, eq=False)
class Nest:
    """One candidate solution and its objective value (lower is better)."""

    position: np.ndarray
    value: float

    def __eq__(self, other):
        if not isinstance(other, Nest):
            return NotImplemented
        return self.value == other.value and np.array_equal(self.position, other.position)


@dataclass(eq=False)
class RunResult:
    best: Nest
    evals_used: int
    success: bool
    generations: int
    trace: list = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, RunResult):
            return NotImplemented
        return (
            self.best == other.best
            and self.evals_used == other.evals_used
            and self.success == other.success
            and self.generations == other.generations
            and self.trace == other.trace
        )


class CountingObjective:
    """Wraps a user objective, counts evaluated points and enforces the budget.

    Objectives that set ``vectorized = True`` accept an ``(m, d)`` array and
    return ``m`` values; others are called once per point.
    """

    def __init__(self, objective, max_evals):
        self.objective = objective
        self.max_evals = max_evals
        self.count = 0
        self._vectorized = bool(getattr(objective, "vectorized", False))

    @property
    def remaining(self):
        return self.max_evals - self.count

    def one(self, x):
        if self.count >= self.max_evals:
            raise RuntimeError("evaluation budget exceeded")
        self.count += 1
        return float(self.objective(x))

    def many(self, xs):
        m = xs.shape[0]
        if self.count + m > self.max_evals:
            raise RuntimeError("evaluation budget exceeded")
        self.count += m
        if self._vectorized:
            return np.asarray(self.objective(xs), dtype=float).reshape(m)
        return np.array([float(self.objective(x)) for x in xs])


def reached(value, known_optimum, tol):
    """True once ``value`` is within ``tol`` above ``known_optimum`` (or anywhere below it).

    Values below a non-analytic reference optimum count as reaching it.
    """
    return known_optimum is not None and value - known_optimum <= tol


class BaseOptimizer(BaseEstimator):
    """Estimator-style front end: hyperparameters in ``__init__``, work in ``fit``.

    ``fit(objective, bounds)`` minimizes ``objective`` over the box and stores
    the outcome in trailing-underscore attributes.
    """

    def _run(self, objective, space, known_optimum, rng):  # pragma: no cover
        raise NotImplementedError

    def fit(self, objective, bounds, known_optimum=None, rng=None):
        space = as_space(bounds)
        result = self._run(objective, space, known_optimum, rng)
        self.result_ = result
        self.best_position_ = result.best.position
        self.best_value_ = result.best.value
        self.n_evals_ = result.evals_used
        self.success_ = result.success
        self.n_features_in_ = space.dim
        return self

    def minimize(self, objective, bounds, known_optimum=None, rng=None):
        """Run the optimizer and return the :class:`RunResult` directly."""
        return self.fit(objective, bounds, known_optimum=known_optimum, rng=rng).result_
