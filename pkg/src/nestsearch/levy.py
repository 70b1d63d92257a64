"""Heavy-tailed Lévy-flight steps via Mantegna's algorithm, plus seedable streams.

Streams are numpy ``Generator`` objects on the PCG64 bit generator. A trial's
stream is derived from ``(master_seed, trial_index)`` with ``SeedSequence``
spawn keys, so trials are reproducible in isolation and in any order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_interval, check_positive_int, check_seed
from .exceptions import InvalidParameterError

DEFAULT_LAMBDA = 2.5


def make_rng(seed=None):
    """Return a fresh PCG64 generator seeded with ``seed`` (an unsigned 64-bit int)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(check_seed(seed))))


def substream(master_seed, trial_index):
    """Independent generator for one trial of an experiment."""
    master_seed = check_seed(master_seed)
    if master_seed is None:
        raise InvalidParameterError("substream requires an explicit master seed")
    trial_index = check_positive_int(trial_index, "trial_index", minimum=0)
    seq = np.random.SeedSequence(master_seed, spawn_key=(trial_index,))
    return np.random.Generator(np.random.PCG64(seq))


def mantegna_sigma(beta):
    """Scale of the numerator Gaussian in Mantegna's algorithm.

    sigma_u = [Γ(1+β) sin(πβ/2) / (Γ((1+β)/2) β 2^((β-1)/2))]^(1/β), for 0 < β < 2.
    """
    beta = check_interval(beta, "beta", 0.0, 2.0, low_open=True, high_open=True)
    num = math.gamma(1.0 + beta) * math.sin(math.pi * beta / 2.0)
    den = math.gamma((1.0 + beta) / 2.0) * beta * 2.0 ** ((beta - 1.0) / 2.0)
    return (num / den) ** (1.0 / beta)


@dataclass(frozen=True)
class LevyParams:
    """Power-law exponent ``lam`` of the step-length density and derived sampler constants.

    The stable index is ``beta = lam - 1``; ``lam = 3`` (beta = 2, the Gaussian
    limit) is rejected because the Mantegna scale degenerates there.
    """

    lam: float = DEFAULT_LAMBDA
    beta: float = field(init=False)
    sigma_u: float = field(init=False)

    def __post_init__(self):
        lam = check_interval(self.lam, "lambda", 1.0, 3.0, low_open=True, high_open=True)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "beta", lam - 1.0)
        object.__setattr__(self, "sigma_u", mantegna_sigma(lam - 1.0))


def sample_levy_step(rng, params, dim):
    """Draw a ``dim``-vector of independent Lévy steps ``u / |v|**(1/beta)``.

    Draw order is coordinate-major with ``u`` before ``v``: the stream yields
    ``u_0, v_0, u_1, v_1, ...``, exactly ``2 * dim`` standard normals.
    """
    dim = check_positive_int(dim, "dim")
    z = rng.standard_normal(2 * dim).reshape(dim, 2)
    u = z[:, 0] * params.sigma_u
    v = z[:, 1]
    return u / np.abs(v) ** (1.0 / params.beta)
