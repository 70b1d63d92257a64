"""Reference real-coded GA and global-best PSO minimizers.

Both share the Cuckoo Search run contract: every objective call is counted,
the budget is never exceeded, the best-so-far trace never increases and a run
is fully determined by its seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._base import BaseOptimizer, CountingObjective, Nest, RunResult, reached
from ._validation import check_interval, check_positive_int, check_seed
from .exceptions import InvalidParameterError
from .levy import make_rng


@dataclass(frozen=True)
class GaConfig:
    population: int = 100
    crossover_rate: float = 0.95
    mutation_rate: float = 0.05
    tournament_size: int = 3
    mutation_sigma_frac: float = 0.1
    elitism_count: int = 1
    max_evals: int = 100_000
    tol: float = 1e-5
    seed: int | None = None

    def __post_init__(self):
        check_positive_int(self.population, "population", minimum=2)
        check_interval(self.crossover_rate, "crossover_rate", 0.0, 1.0)
        check_interval(self.mutation_rate, "mutation_rate", 0.0, 1.0)
        check_positive_int(self.tournament_size, "tournament_size", minimum=2)
        check_interval(self.mutation_sigma_frac, "mutation_sigma_frac", 0.0, math.inf, high_open=True)
        check_positive_int(self.elitism_count, "elitism_count", minimum=0)
        if self.elitism_count >= self.population:
            raise InvalidParameterError("elitism_count must be smaller than population")
        check_positive_int(self.max_evals, "max_evals")
        check_interval(self.tol, "tol", 0.0, math.inf, low_open=True, high_open=True)
        check_seed(self.seed)
        if self.max_evals < self.population:
            raise InvalidParameterError(
                f"max_evals={self.max_evals} is below one generation ({self.population} evaluations)"
            )


@dataclass(frozen=True)
class PsoConfig:
    swarm: int = 30
    inertia: float = 0.7
    c1: float = 1.5
    c2: float = 1.5
    vmax_frac: float = 0.5
    max_evals: int = 100_000
    tol: float = 1e-5
    seed: int | None = None

    def __post_init__(self):
        check_positive_int(self.swarm, "swarm")
        check_interval(self.inertia, "inertia", 0.0, 1.0, low_open=True)
        check_interval(self.c1, "c1", 0.0, math.inf, low_open=True, high_open=True)
        check_interval(self.c2, "c2", 0.0, math.inf, low_open=True, high_open=True)
        check_interval(self.vmax_frac, "vmax_frac", 0.0, math.inf, low_open=True, high_open=True)
        check_positive_int(self.max_evals, "max_evals")
        check_interval(self.tol, "tol", 0.0, math.inf, low_open=True, high_open=True)
        check_seed(self.seed)
        if self.max_evals < self.swarm:
            raise InvalidParameterError(
                f"max_evals={self.max_evals} is below one iteration ({self.swarm} evaluations)"
            )


def _tournament(rng, values, size, count):
    """Indices of ``count`` tournament winners; ties go to the lower index."""
    entrants = np.sort(rng.integers(values.shape[0], size=(count, size)), axis=1)
    # argmin takes the first minimum, i.e. the lowest index among tied entrants.
    return entrants[np.arange(count), np.argmin(values[entrants], axis=1)]


def run_ga(objective, space, cfg, known_optimum=None, rng=None, observer=None):
    """Generational GA: tournament selection, BLX-0.5 crossover, Gaussian mutation, elitism.

    ``observer``, if given, is called with ``(positions, values)`` of each
    generation, starting with the initial population.
    """
    if rng is None:
        rng = make_rng(cfg.seed)
    counter = CountingObjective(objective, cfg.max_evals)
    lo, hi, width = space.lower, space.upper, space.width
    d = space.dim
    pop_size = cfg.population
    n_children = pop_size - cfg.elitism_count

    pop = space.uniform(rng, size=pop_size)
    values = counter.many(pop)
    ib = int(np.argmin(values))
    best = Nest(pop[ib].copy(), float(values[ib]))
    trace = [(counter.count, best.value)]
    success = reached(best.value, known_optimum, cfg.tol)
    generations = 0
    if observer is not None:
        observer(pop.copy(), values.copy())

    while not success and counter.remaining >= n_children:
        order = np.argsort(values, kind="stable")
        elites = order[: cfg.elitism_count]

        parents = _tournament(rng, values, cfg.tournament_size, 2 * n_children)
        p1 = pop[parents[0::2]]
        p2 = pop[parents[1::2]]
        cross = rng.random(n_children) < cfg.crossover_rate
        low = np.minimum(p1, p2)
        spread = np.abs(p1 - p2)
        blend = low - 0.5 * spread + rng.random((n_children, d)) * 2.0 * spread
        children = np.where(cross[:, None], blend, p1)

        mutate = rng.random((n_children, d)) < cfg.mutation_rate
        noise = rng.standard_normal((n_children, d)) * cfg.mutation_sigma_frac * width
        children = np.clip(children + np.where(mutate, noise, 0.0), lo, hi)
        child_values = counter.many(children)

        pop = np.concatenate([pop[elites], children])
        values = np.concatenate([values[elites], child_values])
        generations += 1
        if observer is not None:
            observer(pop.copy(), values.copy())

        ib = int(np.argmin(values))
        if values[ib] < best.value:
            best = Nest(pop[ib].copy(), float(values[ib]))
        trace.append((counter.count, best.value))
        success = reached(best.value, known_optimum, cfg.tol)

    return RunResult(best, counter.count, success, generations, trace)


def run_pso(objective, space, cfg, known_optimum=None, rng=None, observer=None):
    """Global-best PSO with inertia, velocity clamping and position clamping.

    ``observer``, if given, is called after each iteration with
    ``(personal_best_values, global_best_value)``.
    """
    if rng is None:
        rng = make_rng(cfg.seed)
    counter = CountingObjective(objective, cfg.max_evals)
    lo, hi = space.lower, space.upper
    vmax = cfg.vmax_frac * space.width
    n, d = cfg.swarm, space.dim

    x = space.uniform(rng, size=n)
    v = np.zeros((n, d))
    fx = counter.many(x)
    pbest, pbest_val = x.copy(), fx.copy()
    g = int(np.argmin(pbest_val))
    trace = [(counter.count, float(pbest_val[g]))]
    success = reached(float(pbest_val[g]), known_optimum, cfg.tol)
    iterations = 0

    while not success and counter.remaining >= n:
        r1 = rng.random((n, d))
        r2 = rng.random((n, d))
        v = cfg.inertia * v + cfg.c1 * r1 * (pbest - x) + cfg.c2 * r2 * (pbest[g] - x)
        v = np.clip(v, -vmax, vmax)
        x = np.clip(x + v, lo, hi)
        fx = counter.many(x)
        improved = fx < pbest_val
        pbest[improved] = x[improved]
        pbest_val[improved] = fx[improved]
        g = int(np.argmin(pbest_val))
        iterations += 1
        trace.append((counter.count, float(pbest_val[g])))
        if observer is not None:
            observer(pbest_val.copy(), float(pbest_val[g]))
        success = reached(float(pbest_val[g]), known_optimum, cfg.tol)

    best = Nest(pbest[g].copy(), float(pbest_val[g]))
    return RunResult(best, counter.count, success, iterations, trace)


class GeneticAlgorithm(BaseOptimizer):
    """Real-coded genetic algorithm; parameters mirror :class:`GaConfig`."""

    def __init__(
        self,
        population=100,
        crossover_rate=0.95,
        mutation_rate=0.05,
        tournament_size=3,
        mutation_sigma_frac=0.1,
        elitism_count=1,
        max_evals=100_000,
        tol=1e-5,
        seed=None,
    ):
        self.population = population
        self.crossover_rate = crossover_rate
        self.mutation_rate = mutation_rate
        self.tournament_size = tournament_size
        self.mutation_sigma_frac = mutation_sigma_frac
        self.elitism_count = elitism_count
        self.max_evals = max_evals
        self.tol = tol
        self.seed = seed

    def config(self):
        return GaConfig(**self.get_params())

    def _run(self, objective, space, known_optimum, rng):
        return run_ga(objective, space, self.config(), known_optimum=known_optimum, rng=rng)


class ParticleSwarm(BaseOptimizer):
    """Global-best particle swarm; parameters mirror :class:`PsoConfig`."""

    def __init__(
        self,
        swarm=30,
        inertia=0.7,
        c1=1.5,
        c2=1.5,
        vmax_frac=0.5,
        max_evals=100_000,
        tol=1e-5,
        seed=None,
    ):
        self.swarm = swarm
        self.inertia = inertia
        self.c1 = c1
        self.c2 = c2
        self.vmax_frac = vmax_frac
        self.max_evals = max_evals
        self.tol = tol
        self.seed = seed

    def config(self):
        return PsoConfig(**self.get_params())

    def _run(self, objective, space, known_optimum, rng):
        return run_pso(objective, space, self.config(), known_optimum=known_optimum, rng=rng)
