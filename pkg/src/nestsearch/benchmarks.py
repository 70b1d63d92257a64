"""Nine standard multimodal test functions with domains and known optima.

All functions take a point of shape ``(d,)`` and return a float, or a batch of
shape ``(m, d)`` and return an array of ``m`` values. Each function object
carries ``vectorized = True`` so optimizers can evaluate batches in one call.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from ._base import SearchSpace
from ._validation import check_positive_int
from .exceptions import InvalidParameterError, NotFoundError

MICHALEWICZ_M = 10

# Minimizer of the one-dimensional Schwefel term -x sin(sqrt|x|) and its value.
SCHWEFEL_X = 420.96874635998205
SCHWEFEL_F = -418.9828872724337

MICHALEWICZ_POINTS = {
    2: (2.2029055201726, 1.5707963267949),
    5: (2.2029055201726, 1.5707963267949, 1.2849915714680, 1.9230584739268, 1.7204697683062),
}
MICHALEWICZ_VALUES = {2: -1.8013034100985532, 5: -4.6876581790881495}
# The function is a sum of per-coordinate terms, so its minimum is the sum of
# 1-D minima, each found by dense grid plus polish (scripts/michalewicz_reference.py).
# Numerical rather than closed form.
MICHALEWICZ_16_REFERENCE = -15.641864818949863
MICHALEWICZ_16_POINT = (
    2.2029055201716035, 1.5707963267948966, 1.2849915705494115, 1.9230584698654551,
    1.7204697725658575, 1.5707963267948966, 1.4544139713617037, 1.7560865209441525,
    1.6557174168207853, 1.5707963267948966, 1.4977288035554888, 1.6966163085691546,
    1.6300760803960734, 1.5707963267945149, 1.5175461146672276, 1.6660645117258381,
)

# Shubert: the product g(x) g(y) of g(t) = sum_i i cos((i+1) t + i) is minimal
# where one factor sits at its minimum and the other at its maximum.
_SHUBERT_G_MIN = (-7.708313735499347, -1.425128428319761, 4.858056878859825)
_SHUBERT_G_MAX = (-7.0835064076515595, -0.8003211004719731, 5.482864206707613)
SHUBERT_F = -186.73090883102384


def _batch(x):
    arr = np.asarray(x, dtype=float)
    if arr.ndim not in (1, 2):
        raise InvalidParameterError(f"expected a point or a batch of points, got shape {arr.shape}")
    return np.atleast_2d(arr), arr.ndim == 1


def _finish(values, single):
    return float(values[0]) if single else values


def sphere(x):
    """De Jong's first function, sum of squares."""
    X, single = _batch(x)
    return _finish(np.sum(X * X, axis=1), single)


def easom(x):
    X, single = _batch(x)
    a, b = X[:, 0], X[:, 1]
    val = -np.cos(a) * np.cos(b) * np.exp(-((a - np.pi) ** 2) - (b - np.pi) ** 2)
    return _finish(val, single)


def _shubert_factor(t):
    i = np.arange(1, 6)
    return np.sum(i * np.cos((i + 1) * t[:, None] + i), axis=1)


def shubert(x):
    X, single = _batch(x)
    return _finish(_shubert_factor(X[:, 0]) * _shubert_factor(X[:, 1]), single)


def griewank(x):
    X, single = _batch(x)
    i = np.arange(1, X.shape[1] + 1)
    val = np.sum(X * X, axis=1) / 4000.0 - np.prod(np.cos(X / np.sqrt(i)), axis=1) + 1.0
    return _finish(val, single)


def ackley(x):
    X, single = _batch(x)
    d = X.shape[1]
    rms = np.sqrt(np.sum(X * X, axis=1) / d)
    val = -20.0 * np.exp(-0.2 * rms) - np.exp(np.sum(np.cos(2.0 * np.pi * X), axis=1) / d) + 20.0 + math.e
    return _finish(val, single)


def rosenbrock(x):
    X, single = _batch(x)
    head, tail = X[:, :-1], X[:, 1:]
    return _finish(np.sum((1.0 - head) ** 2 + 100.0 * (tail - head**2) ** 2, axis=1), single)


def schwefel(x):
    X, single = _batch(x)
    return _finish(np.sum(-X * np.sin(np.sqrt(np.abs(X))), axis=1), single)


def rastrigin(x):
    X, single = _batch(x)
    d = X.shape[1]
    return _finish(10.0 * d + np.sum(X * X - 10.0 * np.cos(2.0 * np.pi * X), axis=1), single)


def michalewicz(x, m=MICHALEWICZ_M):
    X, single = _batch(x)
    i = np.arange(1, X.shape[1] + 1)
    val = -np.sum(np.sin(X) * np.sin(i * X**2 / np.pi) ** (2 * m), axis=1)
    return _finish(val, single)


for _f in (sphere, easom, shubert, griewank, ackley, rosenbrock, schwefel, rastrigin, michalewicz):
    _f.vectorized = True


@dataclass(frozen=True)
class Optimum:
    value: float
    points: tuple | None
    analytic: bool


@dataclass(frozen=True)
class BenchmarkFunction:
    name: str
    label: str
    func: object
    lower: float
    upper: float
    default_dim: int
    fixed_dim: int | None = None
    min_dim: int = 1

    vectorized = True

    @property
    def dim_rule(self):
        return f"FIXED({self.fixed_dim})" if self.fixed_dim else "ANY_D"

    def check_dim(self, dim):
        dim = check_positive_int(dim, "dim")
        if self.fixed_dim is not None and dim != self.fixed_dim:
            raise InvalidParameterError(f"{self.name} is only defined for d={self.fixed_dim}, got d={dim}")
        if dim < self.min_dim:
            raise InvalidParameterError(f"{self.name} needs d >= {self.min_dim}, got d={dim}")
        return dim

    def space(self, dim=None):
        dim = self.check_dim(self.default_dim if dim is None else dim)
        return SearchSpace.box(self.lower, self.upper, dim)

    def __call__(self, x):
        return self.func(x)

    def optimum(self, dim=None):
        dim = self.check_dim(self.default_dim if dim is None else dim)
        return _OPTIMA[self.name](dim)


def _zeros(dim):
    return Optimum(0.0, (tuple([0.0] * dim),), True)


def _michalewicz_optimum(dim):
    if dim in MICHALEWICZ_VALUES:
        return Optimum(MICHALEWICZ_VALUES[dim], (MICHALEWICZ_POINTS[dim],), True)
    if dim == 16:
        return Optimum(MICHALEWICZ_16_REFERENCE, (MICHALEWICZ_16_POINT,), False)
    raise InvalidParameterError(f"no reference optimum for michalewicz at d={dim}")


_OPTIMA = {
    "sphere": _zeros,
    "easom": lambda dim: Optimum(-1.0, ((math.pi, math.pi),), True),
    "shubert": lambda dim: Optimum(
        SHUBERT_F,
        tuple(p for a in _SHUBERT_G_MIN for b in _SHUBERT_G_MAX for p in ((a, b), (b, a))),
        True,
    ),
    "griewank": _zeros,
    "ackley": _zeros,
    "rosenbrock": lambda dim: Optimum(0.0, (tuple([1.0] * dim),), True),
    "schwefel": lambda dim: Optimum(SCHWEFEL_F * dim, (tuple([SCHWEFEL_X] * dim),), True),
    "rastrigin": _zeros,
    "michalewicz": _michalewicz_optimum,
}

CATALOG = {
    f.name: f
    for f in (
        BenchmarkFunction("michalewicz", "Michalewicz", michalewicz, 0.0, math.pi, 16),
        BenchmarkFunction("rosenbrock", "Rosenbrock", rosenbrock, -2.048, 2.048, 16, min_dim=2),
        BenchmarkFunction("sphere", "De Jong (sphere)", sphere, -5.12, 5.12, 256),
        BenchmarkFunction("schwefel", "Schwefel", schwefel, -500.0, 500.0, 128),
        BenchmarkFunction("ackley", "Ackley", ackley, -32.768, 32.768, 128),
        BenchmarkFunction("rastrigin", "Rastrigin", rastrigin, -5.12, 5.12, 16),
        BenchmarkFunction("easom", "Easom", easom, -100.0, 100.0, 2, fixed_dim=2),
        BenchmarkFunction("griewank", "Griewank", griewank, -600.0, 600.0, 16),
        BenchmarkFunction("shubert", "Shubert", shubert, -10.0, 10.0, 2, fixed_dim=2),
    )
}


def get_function(name):
    try:
        return CATALOG[name]
    except KeyError:
        raise NotFoundError(
            f"unknown function {name!r}; valid names: {', '.join(sorted(CATALOG))}"
        ) from None


def evaluate(name, x):
    bench = get_function(name)
    arr = np.asarray(x, dtype=float)
    bench.check_dim(arr.shape[-1] if arr.ndim else 0)
    return bench.func(arr)


def known_optimum(name, dim):
    """``(value, points)`` of the global minimum at dimension ``dim``."""
    opt = get_function(name).optimum(dim)
    return opt.value, opt.points


def list_functions():
    return list(CATALOG.values())


def catalog_records():
    rows = []
    for f in CATALOG.values():
        try:
            opt = f.optimum()
            value, analytic = opt.value, opt.analytic
        except InvalidParameterError:
            value, analytic = None, False
        rows.append(
            {
                "name": f.name,
                "dim_rule": f.dim_rule,
                "default_dim": f.default_dim,
                "lower": f.lower,
                "upper": f.upper,
                "known_best_value": value,
                "analytic": analytic,
            }
        )
    return rows


def catalog_json(indent=2):
    return json.dumps(catalog_records(), indent=indent)
