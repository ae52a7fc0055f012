"""Seeded Monte Carlo estimators for the analytic quantities.

Samples are split into fixed chunks of ``CHUNK`` draws.  Chunk ``c`` of a run
with seed ``s`` draws from ``make_generator(s, c)`` (PCG64 seeded with
``SeedSequence(s, spawn_key=(c,))``) and partial sums are reduced in chunk
order.  A result therefore depends only on the inputs and the seed; the
number of workers changes wall time, not the bits.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .errors import SimplexError
from .simplex_core import GENERATOR_NAME, draw_spacings, make_generator
from .stochastic_orders import OrderKind, compare_batch, hr_upper_prob_batch

__all__ = [
    "CHUNK",
    "MCEstimate",
    "mc_hr_upper_mean",
    "mc_hr_upper_prob",
    "mc_joint_cdf",
    "mc_max_cdf",
    "mc_moment",
    "mc_restrictiveness",
]

CHUNK = 1 << 16


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    std_error: float
    samples: int
    seed: int
    generator: str = GENERATOR_NAME

    def within(self, target: float, k: float = 4.0) -> bool:
        """``|estimate - target| <= k * std_error`` (exact match when the error is 0)."""
        return abs(self.estimate - target) <= k * self.std_error

    def to_dict(self) -> dict:
        return asdict(self)


def _check_run(samples: int, workers: int) -> None:
    if int(samples) != samples or samples < 1:
        raise SimplexError(f"samples must be an integer >= 1, got {samples}")
    if int(workers) != workers or workers < 1:
        raise SimplexError(f"workers must be an integer >= 1, got {workers}")


def _run_chunks(
    kernel: Callable[[np.random.Generator, int], np.ndarray],
    samples: int,
    seed: int,
    workers: int = 1,
) -> np.ndarray:
    """Sum ``kernel(rng, size)`` over all chunks, reducing in chunk order."""
    _check_run(samples, workers)
    make_generator(seed)  # validates the seed up front
    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)

    def job(c: int) -> np.ndarray:
        return np.asarray(kernel(make_generator(seed, c), sizes[c]), dtype=float)

    if workers == 1:
        parts = [job(c) for c in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(len(sizes))))
    total = parts[0].copy()
    for part in parts[1:]:
        total += part
    return total


def _bernoulli(count: float, samples: int, seed: int) -> MCEstimate:
    p = count / samples
    return MCEstimate(p, math.sqrt(p * (1.0 - p) / samples), int(samples), int(seed))


def _mean(total: float, total_sq: float, samples: int, seed: int) -> MCEstimate:
    m = total / samples
    if samples > 1:
        var = max(total_sq - samples * m * m, 0.0) / (samples - 1)
        se = math.sqrt(var / samples)
    else:
        se = 0.0
    return MCEstimate(m, se, int(samples), int(seed))


def mc_restrictiveness(
    order: OrderKind | str, n: int, samples: int, seed: int, workers: int = 1
) -> MCEstimate:
    """Fraction of independent uniform pairs ``(Theta, Theta')`` with ``Theta <= Theta'``."""
    order = OrderKind.parse(order)
    if int(n) != n or n < 1:
        raise SimplexError(f"n must be an integer >= 1, got {n}")

    def kernel(rng: np.random.Generator, size: int) -> np.ndarray:
        a = draw_spacings(rng, size, n)
        b = draw_spacings(rng, size, n)
        return np.array([np.count_nonzero(compare_batch(order, a, b))])

    (count,) = _run_chunks(kernel, samples, seed, workers)
    return _bernoulli(count, samples, seed)


def mc_max_cdf(
    n: int, u: float, b_grid: Sequence[float], samples: int, seed: int, workers: int = 1
) -> list[MCEstimate]:
    """Empirical CDF of the largest coordinate on ``b_grid`` from one shared sample."""
    grid = np.asarray(b_grid, dtype=float).reshape(-1)

    def kernel(rng: np.random.Generator, size: int) -> np.ndarray:
        mx = draw_spacings(rng, size, n, u).max(axis=1)
        mx.sort()
        return np.searchsorted(mx, grid, side="right").astype(float)

    counts = _run_chunks(kernel, samples, seed, workers)
    return [_bernoulli(c, samples, seed) for c in counts]


def mc_moment(n: int, u: float, t: int, samples: int, seed: int, workers: int = 1) -> MCEstimate:
    """Sample mean of ``max(Theta)**t`` with its standard error."""
    if n == 1:
        _check_run(samples, workers)
        return MCEstimate(float(u) ** t, 0.0, int(samples), int(seed))

    def kernel(rng: np.random.Generator, size: int) -> np.ndarray:
        x = draw_spacings(rng, size, n, u).max(axis=1) ** t
        return np.array([x.sum(), (x * x).sum()])

    total, total_sq = _run_chunks(kernel, samples, seed, workers)
    return _mean(total, total_sq, samples, seed)


def mc_hr_upper_prob(theta: Sequence[float], u: float, samples: int, seed: int, workers: int = 1) -> MCEstimate:
    """Fraction of uniform draws that dominate ``theta`` in hazard rate order."""
    th = np.asarray(theta, dtype=float).reshape(1, -1)
    n = th.shape[1]

    def kernel(rng: np.random.Generator, size: int) -> np.ndarray:
        draws = draw_spacings(rng, size, n, u)
        return np.array([np.count_nonzero(compare_batch(OrderKind.HR, th, draws))])

    (count,) = _run_chunks(kernel, samples, seed, workers)
    return _bernoulli(count, samples, seed)


def mc_hr_upper_mean(n: int, samples: int, seed: int, workers: int = 1) -> MCEstimate:
    """Mean of the analytic ``P(Theta' >=hr theta)`` over uniform ``theta``."""

    def kernel(rng: np.random.Generator, size: int) -> np.ndarray:
        x = hr_upper_prob_batch(draw_spacings(rng, size, n))
        return np.array([x.sum(), (x * x).sum()])

    total, total_sq = _run_chunks(kernel, samples, seed, workers)
    return _mean(total, total_sq, samples, seed)


def mc_joint_cdf(theta: Sequence[float], u: float, samples: int, seed: int, workers: int = 1) -> MCEstimate:
    """Fraction of uniform draws lying coordinatewise below ``theta``."""
    th = np.asarray(theta, dtype=float).reshape(-1)
    n = th.size

    def kernel(rng: np.random.Generator, size: int) -> np.ndarray:
        draws = draw_spacings(rng, size, n, u)
        return np.array([np.count_nonzero(np.all(draws <= th, axis=1))])

    (count,) = _run_chunks(kernel, samples, seed, workers)
    return _bernoulli(count, samples, seed)
