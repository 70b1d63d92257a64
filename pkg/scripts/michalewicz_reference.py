"""Reference optimum for d-dimensional Michalewicz (default d=16).

The function is a sum of one-dimensional terms, one per coordinate, so the
global minimum is the sum of the per-coordinate minima. Each 1-D minimum is
located on a dense grid over [0, pi] and then polished with a bounded
scalar minimizer. Optionally cross-checks against differential evolution.
"""

import argparse

import numpy as np
from scipy.optimize import differential_evolution, minimize_scalar

M = 10


def term(x, i):
    return -np.sin(x) * np.sin(i * x * x / np.pi) ** (2 * M)


def coordinate_minimum(i, points=2_000_001):
    grid = np.linspace(0.0, np.pi, points)
    k = int(np.argmin(term(grid, i)))
    h = grid[1] - grid[0]
    lo, hi = max(0.0, grid[k] - 2 * h), min(np.pi, grid[k] + 2 * h)
    res = minimize_scalar(term, bounds=(lo, hi), args=(i,), method="bounded",
                          options={"xatol": 1e-14})
    return float(res.x), float(res.fun)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dim", type=int, default=16)
    parser.add_argument("--de-runs", type=int, default=0, help="differential evolution cross-check runs")
    args = parser.parse_args()

    coords = [coordinate_minimum(i) for i in range(1, args.dim + 1)]
    position = [c[0] for c in coords]
    value = float(np.sum([term(x, i) for i, x in enumerate(position, start=1)]))
    print(f"reference={value!r}")
    print(f"position={position!r}")

    idx = np.arange(1, args.dim + 1)
    for seed in range(args.de_runs):
        res = differential_evolution(lambda x: float(np.sum(term(x, idx))), [(0, np.pi)] * args.dim,
                                     seed=seed, tol=0, maxiter=2000, polish=True)
        print(f"de seed={seed} best={res.fun!r} gap={res.fun - value:.3e}")


if __name__ == "__main__":
    main()
