"""Cuckoo Search with Lévy flights.

Each generation lays one cuckoo egg: a Lévy-flight move from a randomly chosen
nest, which takes over another randomly chosen nest if it is strictly better.
Then a fraction ``p_a`` of the worst nests are abandoned and rebuilt. The best
nest is never abandoned, so the incumbent value never increases.

Two step rules are available. ``"around_best"`` (default) scales the Lévy
vector entrywise by the offset of the source nest from the current best, so
steps shrink as the nests gather. ``"domain"`` scales it by a fixed fraction of
each coordinate's domain width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._base import BaseOptimizer, CountingObjective, Nest, RunResult, reached
from ._validation import (
    check_choice,
    check_interval,
    check_positive_int,
    check_seed,
)
from .exceptions import InvalidParameterError
from .levy import DEFAULT_LAMBDA, LevyParams, make_rng, sample_levy_step

DISCOVERY_MODES = ("rank", "bernoulli")
STEP_MODES = ("around_best", "domain")
BOUNDARY_MODES = ("reflect", "clip")
SCOUT_MODES = ("coordinate", "uniform")
DEFAULT_ALPHA = {"around_best": 1.0, "domain": 0.01}


@dataclass(frozen=True)
class CsConfig:
    """Validated Cuckoo Search settings.

    ``alpha=None`` resolves to 1.0 for ``step_mode="around_best"`` and to
    0.01 (of each coordinate's width) for ``step_mode="domain"``.
    ``far_field`` is the probability that a rebuilt nest is a scout sample
    rather than a Lévy move around the best nest. A ``"uniform"`` scout is a
    fresh point anywhere in the box; a ``"coordinate"`` scout copies the best
    nest and redraws each coordinate uniformly with probability ``1/d`` (at
    least one). ``far_field=1``, ``scout="uniform"`` and ``keep_better=False``
    together give pure random abandonment.
    """

    n_nests: int = 15
    p_a: float = 0.25
    alpha: float | None = None
    lam: float = DEFAULT_LAMBDA
    max_evals: int = 100_000
    tol: float = 1e-5
    seed: int | None = None
    discovery: str = "rank"
    step_mode: str = "around_best"
    far_field: float = 0.5
    scout: str = "coordinate"
    keep_better: bool = True
    boundary: str = "reflect"

    def __post_init__(self):
        check_positive_int(self.n_nests, "n_nests")
        check_interval(self.p_a, "p_a", 0.0, 1.0)
        check_choice(self.step_mode, "step_mode", STEP_MODES)
        if self.alpha is not None:
            check_interval(self.alpha, "alpha", 0.0, math.inf, high_open=True)
        check_interval(self.lam, "lam", 1.0, 3.0, low_open=True, high_open=True)
        check_positive_int(self.max_evals, "max_evals")
        check_interval(self.tol, "tol", 0.0, math.inf, low_open=True, high_open=True)
        check_seed(self.seed)
        check_choice(self.discovery, "discovery", DISCOVERY_MODES)
        check_interval(self.far_field, "far_field", 0.0, 1.0)
        check_choice(self.scout, "scout", SCOUT_MODES)
        check_choice(self.boundary, "boundary", BOUNDARY_MODES)
        if self.max_evals < self.n_nests:
            raise InvalidParameterError(
                f"max_evals={self.max_evals} cannot cover the {self.n_nests} initial nests"
            )

    @cached_property
    def step_scale(self):
        return DEFAULT_ALPHA[self.step_mode] if self.alpha is None else float(self.alpha)

    @cached_property
    def levy(self):
        return LevyParams(self.lam)

    @property
    def n_abandon(self):
        """Nests rebuilt per generation in rank mode; the best one is always kept."""
        return min(math.floor(self.p_a * self.n_nests), self.n_nests - 1)


class Population:
    """Nest positions ``(n, d)`` and their objective values ``(n,)``, updated in place."""

    def __init__(self, positions, values):
        self.positions = np.asarray(positions, dtype=float)
        self.values = np.asarray(values, dtype=float)

    def __len__(self):
        return self.values.shape[0]

    def best_index(self):
        # argmin returns the first minimum: ties go to the lowest index.
        return int(np.argmin(self.values))

    def best(self):
        i = self.best_index()
        return Nest(self.positions[i].copy(), float(self.values[i]))

    def nest(self, i):
        return Nest(self.positions[i].copy(), float(self.values[i]))

    def copy(self):
        return Population(self.positions.copy(), self.values.copy())


def _evaluate(objective, points):
    if isinstance(objective, CountingObjective):
        return objective.many(points)
    return np.array([float(objective(p)) for p in points])


def clamp_to_bounds(pos, space):
    pos = np.asarray(pos, dtype=float)
    if pos.shape != space.lower.shape:
        raise InvalidParameterError(
            f"position has shape {pos.shape}, search space has dimension {space.dim}"
        )
    return np.minimum(space.upper, np.maximum(space.lower, pos))


def reflect_into_bounds(pos, space):
    """Fold out-of-box coordinates back in by mirror reflection at the walls.

    Coordinates already inside are returned untouched. Unlike clamping this
    does not pile points onto the boundary itself.
    """
    pos = np.asarray(pos, dtype=float)
    if pos.shape != space.lower.shape:
        raise InvalidParameterError(
            f"position has shape {pos.shape}, search space has dimension {space.dim}"
        )
    out = (pos < space.lower) | (pos > space.upper)
    if not out.any():
        return pos.copy()
    lo, w = space.lower, space.width
    y = np.mod(pos - lo, 2.0 * w)
    folded = lo + np.where(y > w, 2.0 * w - y, y)
    return clamp_to_bounds(np.where(out, folded, pos), space)


def _repair(pos, space, cfg):
    if cfg.boundary == "clip":
        return clamp_to_bounds(pos, space)
    return reflect_into_bounds(pos, space)


def _step(source, best, space, cfg, rng):
    levy = sample_levy_step(rng, cfg.levy, space.dim)
    if cfg.step_mode == "domain":
        return cfg.step_scale * space.width * levy
    return cfg.step_scale * (source - best) * levy


def initialize_population(space, n, rng, objective):
    """``n`` nests drawn uniformly from the box, each evaluated once."""
    n = check_positive_int(n, "n")
    positions = space.uniform(rng, size=n)
    return Population(positions, _evaluate(objective, positions))


def levy_flight_move(current, best, space, cfg, rng):
    """New candidate position ``current + step``, repaired into the box.

    Consumes exactly ``space.dim`` Lévy coordinates from ``rng``.
    """
    current = np.asarray(current.position if isinstance(current, Nest) else current, dtype=float)
    best = np.asarray(best.position if isinstance(best, Nest) else best, dtype=float)
    return _repair(current + _step(current, best, space, cfg, rng), space, cfg)


def greedy_replace(candidate_pos, candidate_val, nests, j):
    """Put the candidate into nest ``j`` if it is strictly better. Returns whether it did."""
    n = len(nests)
    if isinstance(j, bool) or not 0 <= j < n:
        raise InvalidParameterError(f"nest index {j} out of range for {n} nests")
    if candidate_val < nests.values[j]:
        nests.positions[j] = candidate_pos
        nests.values[j] = candidate_val
        return True
    return False


def _pick_other(rng, n, exclude):
    """Uniform index in ``range(n)`` other than ``exclude`` (or ``exclude`` itself when n == 1)."""
    if n == 1:
        return 0
    r = int(rng.integers(n - 1))
    return r + 1 if r >= exclude else r


def _scout(base, space, cfg, rng):
    point = space.uniform(rng)
    if cfg.scout == "uniform":
        return point
    mask = rng.random(space.dim) < 1.0 / space.dim
    if not mask.any():
        mask[rng.integers(space.dim)] = True
    return np.where(mask, point, base)


def abandon_worst(nests, cfg, space, rng, objective):
    """Rebuild a fraction ``p_a`` of the worse nests; returns evaluations consumed.

    ``rank`` mode rebuilds the ``floor(p_a * n)`` worst nests (ties broken by
    index); ``bernoulli`` mode rebuilds each non-best nest with probability
    ``p_a``. The best nest is never touched. Each rebuilt nest is a uniform
    scout (see :class:`CsConfig`) with probability ``far_field``, otherwise a
    Lévy move around the best nest. With ``keep_better`` the slot keeps whichever of the old and new
    solution is better; otherwise the new one always takes the slot.
    """
    n = len(nests)
    ib = nests.best_index()
    if cfg.discovery == "rank":
        k = cfg.n_abandon
        if k == 0:
            return 0
        order = np.argsort(nests.values, kind="stable")
        slots = np.sort(order[n - k:])
    else:
        mask = rng.random(n) < cfg.p_a
        mask[ib] = False
        slots = np.flatnonzero(mask)
    if isinstance(objective, CountingObjective):
        slots = slots[: max(objective.remaining, 0)]
    if slots.size == 0:
        return 0

    best = nests.positions[ib].copy()
    fresh = np.empty((slots.size, space.dim))
    for row in range(slots.size):
        if rng.random() < cfg.far_field:
            fresh[row] = _scout(nests.positions[slots[row]], space, cfg, rng)
        else:
            src = nests.positions[_pick_other(rng, n, ib)]
            fresh[row] = _repair(best + _step(src, best, space, cfg, rng), space, cfg)
    values = _evaluate(objective, fresh)
    for row, slot in enumerate(slots):
        if not cfg.keep_better or values[row] < nests.values[slot]:
            nests.positions[slot] = fresh[row]
            nests.values[slot] = values[row]
    return int(slots.size)


def run(objective, space, cfg, known_optimum=None, rng=None):
    """Minimize ``objective`` over ``space``; stops on budget or on reaching ``known_optimum``.

    Evaluation cost: ``n_nests`` for initialization, then one per cuckoo plus
    one per rebuilt nest. The run ends as soon as the best value is within
    ``cfg.tol`` of ``known_optimum`` or the budget is spent.
    """
    if cfg.max_evals < cfg.n_nests:
        raise InvalidParameterError("max_evals must be at least n_nests")
    if rng is None:
        rng = make_rng(cfg.seed)
    counter = CountingObjective(objective, cfg.max_evals)
    nests = initialize_population(space, cfg.n_nests, rng, counter)
    n = cfg.n_nests

    best_value = float(nests.values.min())
    trace = [(counter.count, best_value)]
    success = reached(best_value, known_optimum, cfg.tol)
    generations = 0
    while not success and counter.remaining >= 1:
        ib = nests.best_index()
        if cfg.step_mode == "around_best":
            i = _pick_other(rng, n, ib)
        else:
            i = int(rng.integers(n))
        candidate = levy_flight_move(nests.positions[i], nests.positions[ib], space, cfg, rng)
        value = counter.one(candidate)
        greedy_replace(candidate, value, nests, int(rng.integers(n)))
        best_value = float(nests.values.min())
        success = reached(best_value, known_optimum, cfg.tol)
        if not success:
            abandon_worst(nests, cfg, space, rng, counter)
            best_value = float(nests.values.min())
            success = reached(best_value, known_optimum, cfg.tol)
        generations += 1
        trace.append((counter.count, best_value))

    return RunResult(
        best=nests.best(),
        evals_used=counter.count,
        success=success,
        generations=generations,
        trace=trace,
    )


class CuckooSearch(BaseOptimizer):
    """Cuckoo Search minimizer with an estimator-style interface.

    Parameters mirror :class:`CsConfig`. ``fit(objective, bounds)`` runs the
    search; the result lands in ``result_``, ``best_position_``,
    ``best_value_`` and ``n_evals_``.

    Examples
    --------
    >>> from nestsearch import CuckooSearch
    >>> cs = CuckooSearch(seed=0, max_evals=2000).fit(lambda x: (x ** 2).sum(), [[-1, -1], [1, 1]])
    >>> cs.best_value_ < 1e-3
    True
    """

    def __init__(
        self,
        n_nests=15,
        p_a=0.25,
        alpha=None,
        lam=DEFAULT_LAMBDA,
        max_evals=100_000,
        tol=1e-5,
        seed=None,
        discovery="rank",
        step_mode="around_best",
        far_field=0.5,
        scout="coordinate",
        keep_better=True,
        boundary="reflect",
    ):
        self.n_nests = n_nests
        self.p_a = p_a
        self.alpha = alpha
        self.lam = lam
        self.max_evals = max_evals
        self.tol = tol
        self.seed = seed
        self.discovery = discovery
        self.step_mode = step_mode
        self.far_field = far_field
        self.scout = scout
        self.keep_better = keep_better
        self.boundary = boundary

    def config(self):
        return CsConfig(**self.get_params())

    def _run(self, objective, space, known_optimum, rng):
        return run(objective, space, self.config(), known_optimum=known_optimum, rng=rng)


