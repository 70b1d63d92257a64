"""Multi-trial experiments: success rates and evaluation-count statistics.

Every trial draws from its own stream ``substream(master_seed, trial)``, so an
experiment gives identical statistics however its trials are scheduled.
Evaluation-count statistics are taken over successful trials only; the
success rate is reported alongside.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

from ._validation import check_interval, check_positive_int, check_seed
from .baselines import GeneticAlgorithm, ParticleSwarm
from .benchmarks import get_function
from .cuckoo import CuckooSearch
from .exceptions import InvalidParameterError, NotFoundError
from .levy import substream

ALGORITHMS = {"cs": CuckooSearch, "ga": GeneticAlgorithm, "pso": ParticleSwarm}
_SIZE_PARAM = {"cs": "n_nests", "ga": "population", "pso": "swarm"}

THREADS_ENV = "NESTSEARCH_THREADS"

CSV_FIELDS = (
    "algorithm",
    "function",
    "dim",
    "n_or_pop",
    "p_a",
    "trials",
    "successes",
    "success_rate",
    "mean_evals",
    "std_evals",
    "epsilon",
    "max_evals",
    "master_seed",
)


def get_algorithm(name):
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise NotFoundError(
            f"unknown algorithm {name!r}; valid names: {', '.join(ALGORITHMS)}"
        ) from None


@dataclass(frozen=True)
class ExperimentSpec:
    """One algorithm on one benchmark function, repeated ``trials`` times.

    ``config`` holds estimator parameters; ``seed``, ``max_evals`` and ``tol``
    are set by the experiment itself.
    """

    algorithm: str
    function: str
    dim: int | None = None
    config: dict = field(default_factory=dict)
    trials: int = 100
    master_seed: int = 0
    epsilon: float = 1e-5
    max_evals: int = 100_000

    def __post_init__(self):
        get_algorithm(self.algorithm)
        bench = get_function(self.function)
        object.__setattr__(self, "dim", bench.check_dim(bench.default_dim if self.dim is None else self.dim))
        check_positive_int(self.trials, "trials")
        check_seed(self.master_seed)
        if self.master_seed is None:
            raise InvalidParameterError("master_seed is required")
        check_interval(self.epsilon, "epsilon", 0.0, math.inf, low_open=True, high_open=True)
        check_positive_int(self.max_evals, "max_evals")
        reserved = {"seed", "max_evals", "tol"} & set(self.config)
        if reserved:
            raise InvalidParameterError(f"config may not set {sorted(reserved)}; use the ExperimentSpec fields")
        # Fail fast on bad parameters rather than inside a worker.
        self.estimator().config()

    def estimator(self):
        est = get_algorithm(self.algorithm)()
        return est.set_params(**self.config, max_evals=self.max_evals, tol=self.epsilon)

    @property
    def n_or_pop(self):
        est = self.estimator()
        return est.get_params()[_SIZE_PARAM[self.algorithm]]

    @property
    def p_a(self):
        return self.estimator().get_params()["p_a"] if self.algorithm == "cs" else None


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    success: bool
    evals_used: int
    best_value: float


@dataclass(frozen=True)
class SummaryStats:
    algorithm: str
    function: str
    dim: int
    n_or_pop: int
    p_a: float | None
    trials: int
    successes: int
    success_rate: float
    mean_evals: float
    std_evals: float
    epsilon: float
    max_evals: int
    master_seed: int
    records: tuple = ()

    @property
    def no_success(self):
        return self.successes == 0

    def to_dict(self):
        out = asdict(self)
        out["records"] = [asdict(r) for r in self.records]
        return out

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data["records"] = tuple(TrialRecord(**r) for r in data.get("records", ()))
        return cls(**data)


def summarize(values):
    """Arithmetic mean and sample standard deviation (n - 1 denominator)."""
    values = [float(v) for v in values]
    if not values:
        raise InvalidParameterError("cannot summarize an empty list")
    n = len(values)
    mean = math.fsum(values) / n
    if n == 1:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var)


def _round_half_away(x):
    return int(Decimal(x).to_integral_value(rounding=ROUND_HALF_UP))


def _format_rate(rate):
    pct = rate * 100.0
    if abs(pct - round(pct)) < 1e-9:
        return str(int(round(pct)))
    return f"{pct:.2f}".rstrip("0").rstrip(".")


def format_cell(mean, std, rate):
    return f"{_round_half_away(mean)} ± {_round_half_away(std)} ({_format_rate(rate)}%)"


def format_summary(stats):
    """Render as ``"927 ± 105 (100%)"``: mean and std of evaluations, then success rate."""
    return format_cell(stats.mean_evals, stats.std_evals, stats.success_rate)


_CELL_RE = re.compile(r"^\s*(-?\d+) ± (\d+) \((\d+(?:\.\d+)?)%\)\s*$")


def parse_summary(text):
    """Inverse of :func:`format_summary`: ``(mean, std, rate_percent)``."""
    m = _CELL_RE.match(text)
    if not m:
        raise InvalidParameterError(f"not a summary cell: {text!r}")
    return int(m.group(1)), int(m.group(2)), float(m.group(3))


def run_trial(spec, index):
    """Run trial ``index`` of ``spec`` on its own stream."""
    bench = get_function(spec.function)
    target = bench.optimum(spec.dim).value
    result = spec.estimator().minimize(
        bench, bench.space(spec.dim), known_optimum=target, rng=substream(spec.master_seed, index)
    )
    return TrialRecord(index, bool(result.success), int(result.evals_used), float(result.best.value))


def _run_trial_args(args):
    return run_trial(*args)


def default_workers():
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidParameterError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None


def summarize_records(spec, records):
    records = tuple(sorted(records, key=lambda r: r.trial))
    wins = [r.evals_used for r in records if r.success]
    mean, std = summarize(wins) if wins else (0.0, 0.0)
    return SummaryStats(
        algorithm=spec.algorithm,
        function=spec.function,
        dim=spec.dim,
        n_or_pop=spec.n_or_pop,
        p_a=spec.p_a,
        trials=len(records),
        successes=len(wins),
        success_rate=len(wins) / len(records),
        mean_evals=mean,
        std_evals=std,
        epsilon=spec.epsilon,
        max_evals=spec.max_evals,
        master_seed=spec.master_seed,
        records=records,
    )


def run_trials(spec, workers=None):
    """Run every trial of ``spec`` and aggregate; ``workers`` > 1 uses a process pool."""
    if workers is None:
        workers = default_workers()
    workers = check_positive_int(workers, "workers")
    jobs = [(spec, i) for i in range(spec.trials)]
    if workers == 1:
        records = [run_trial(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_trial_args, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return summarize_records(spec, records)


def parameter_sweep(function, grid_n, grid_pa, trials=100, master_seed=0, dim=None,
                    epsilon=1e-5, max_evals=100_000, config=None, workers=None):
    """Cuckoo Search statistics for every ``(n_nests, p_a)`` pair, row-major in ``grid_n``."""
    grid_n, grid_pa = list(grid_n), list(grid_pa)
    if not grid_n or not grid_pa:
        raise InvalidParameterError("parameter grids must be non-empty")
    base = dict(config or {})
    cells = []
    for n in grid_n:
        for pa in grid_pa:
            spec = ExperimentSpec(
                "cs", function, dim, {**base, "n_nests": n, "p_a": pa},
                trials=trials, master_seed=master_seed, epsilon=epsilon, max_evals=max_evals,
            )
            cells.append(run_trials(spec, workers=workers))
    return cells


def compare(functions, algorithms=("cs", "ga", "pso"), trials=100, master_seed=0,
            epsilon=1e-5, max_evals=100_000, configs=None, dims=None, workers=None):
    """Run each algorithm on each function under the same budget and tolerance."""
    configs = configs or {}
    dims = dims or {}
    out = []
    for fn in functions:
        for algo in algorithms:
            spec = ExperimentSpec(
                algo, fn, dims.get(fn), dict(configs.get(algo, {})),
                trials=trials, master_seed=master_seed, epsilon=epsilon, max_evals=max_evals,
            )
            out.append(run_trials(spec, workers=workers))
    return out


# --- reports ---------------------------------------------------------------


def _csv_value(value):
    return "" if value is None else value


def render_csv(results):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for s in results:
        writer.writerow([_csv_value(getattr(s, name)) for name in CSV_FIELDS])
    return buf.getvalue()


def render_json(results):
    return json.dumps([s.to_dict() for s in results], indent=2) + "\n"


def render_markdown(results):
    """Table with one row per function and one column per algorithm."""
    algos, rows, cells = [], [], {}
    for s in results:
        if s.algorithm not in algos:
            algos.append(s.algorithm)
        key = (s.function, s.dim)
        if key not in rows:
            rows.append(key)
        cells[key, s.algorithm] = format_summary(s)
    lines = [
        "| Function | " + " | ".join(a.upper() for a in algos) + " |",
        "|---|" + "---|" * len(algos),
    ]
    for fn, dim in rows:
        label = f"{get_function(fn).label} (d={dim})"
        lines.append(f"| {label} | " + " | ".join(cells.get(((fn, dim), a), "n/a") for a in algos) + " |")
    return "\n".join(lines) + "\n"


_RENDERERS = {"csv": render_csv, "json": render_json, "markdown": render_markdown}


def render(results, fmt):
    try:
        renderer = _RENDERERS[fmt.lower()]
    except KeyError:
        raise InvalidParameterError(f"unknown report format {fmt!r}; use csv, json or markdown") from None
    return renderer(results)


def _write(text, destination):
    if hasattr(destination, "write"):
        destination.write(text)
        return
    # newline="" keeps LF line endings on every platform.
    with open(Path(destination), "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def emit_report(results, fmt, destination):
    """Write ``results`` as CSV, JSON or a Markdown table to a path or open text file."""
    results = list(results)
    if not results:
        raise InvalidParameterError("no results to report")
    _write(render(results, fmt), destination)


def read_json(source):
    if hasattr(source, "read"):
        data = json.load(source)
    else:
        with open(Path(source), encoding="utf-8") as fh:
            data = json.load(fh)
    return [SummaryStats.from_dict(d) for d in data]


def write_trace(result, destination):
    """Per-generation ``evals,best_value`` CSV of one run, for convergence plots."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["evals", "best_value"])
    for evals, best in result.trace:
        writer.writerow([evals, repr(float(best))])
    _write(buf.getvalue(), destination)


