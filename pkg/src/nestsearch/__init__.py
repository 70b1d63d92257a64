"""Cuckoo Search via Lévy flights, reference GA/PSO baselines and a benchmark harness."""

from ._base import Nest, RunResult, SearchSpace
from .benchmarks import CATALOG, evaluate, get_function, known_optimum, list_functions
from .cuckoo import CsConfig, CuckooSearch
from .exceptions import InvalidParameterError, NotFoundError
from .levy import LevyParams, make_rng, mantegna_sigma, sample_levy_step, substream

__version__ = "0.1.0"

__all__ = [
    "CATALOG",
    "CsConfig",
    "CuckooSearch",
    "InvalidParameterError",
    "LevyParams",
    "Nest",
    "NotFoundError",
    "RunResult",
    "SearchSpace",
    "evaluate",
    "get_function",
    "known_optimum",
    "list_functions",
    "make_rng",
    "mantegna_sigma",
    "sample_levy_step",
    "substream",
]
