"""Points of the simplex of size ``u``: sampling, joint CDF and tail probability.

A point of the ``n``-simplex of size ``u`` is a vector of ``n`` nonnegative
reals summing to ``u``.  Two samplers are provided (uniform spacings and
normalised exponentials); they produce the same distribution and are used to
cross-check each other.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, SimplexError

__all__ = [
    "JOINT_CDF_MAX_N",
    "SUM_RTOL",
    "SimplexVector",
    "derive_seed",
    "draw_exponential",
    "draw_spacings",
    "joint_cdf",
    "make_generator",
    "sample_exponential",
    "sample_spacings",
    "simplex_volume",
    "spacings",
    "spacings_batch",
    "tail_prob",
]

SUM_RTOL = 1e-12
JOINT_CDF_MAX_N = 25
# subsets of the leading coordinates are materialised as one array
_SUBSET_BLOCK = 20

GENERATOR_NAME = "numpy PCG64 seeded by SeedSequence(entropy=seed, spawn_key=key)"


def make_generator(seed: int, *key: int) -> np.random.Generator:
    """Return an independent PCG64 stream for ``seed`` and an optional spawn key."""
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise SimplexError(f"seed must be a 64-bit unsigned integer, got {seed}")
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def derive_seed(seed: int, *key: int) -> int:
    """Derive a child 64-bit seed; used to hand seeds to independent streams."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return int(lo) | (int(hi) << 32)


@dataclass(frozen=True)
class SimplexVector:
    """A point of the simplex of size ``u``.

    Coordinates are stored as a tuple of floats.  Construction validates
    nonnegativity and that the coordinates sum to ``u`` up to
    ``SUM_RTOL * max(1, u)``.
    """

    coords: tuple[float, ...]
    u: float = 1.0

    def __post_init__(self) -> None:
        coords = tuple(float(c) for c in self.coords)
        u = float(self.u)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "u", u)
        if not coords:
            raise SimplexError("a simplex vector needs at least one coordinate")
        if not (u > 0 and math.isfinite(u)):
            raise SimplexError(f"simplex size must be a positive real, got {u}")
        if any(not (c >= 0) or not math.isfinite(c) for c in coords):
            raise SimplexError(f"coordinates must be finite and nonnegative: {coords}")
        total = math.fsum(coords)
        if abs(total - u) > SUM_RTOL * max(1.0, u):
            raise SimplexError(f"coordinates sum to {total!r}, expected {u!r}")

    @classmethod
    def from_array(cls, values: Sequence[float] | np.ndarray, u: float = 1.0) -> SimplexVector:
        return cls(tuple(np.asarray(values, dtype=float).tolist()), u)

    @property
    def n(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[float]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> float:
        return self.coords[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    def suffix_sums(self) -> np.ndarray:
        """``S_i = theta_i + ... + theta_n`` for ``i = 1..n`` (0-based array)."""
        return np.cumsum(self.as_array()[::-1])[::-1]


def _check_size(u: float) -> float:
    u = float(u)
    if not (u > 0 and math.isfinite(u)):
        raise SimplexError(f"simplex size must be a positive real, got {u}")
    return u


def spacings_batch(points: np.ndarray, u: float = 1.0) -> np.ndarray:
    """Row-wise spacings: ``(m, k)`` points in [0, 1] -> ``(m, k + 1)`` simplex points."""
    pts = np.sort(np.asarray(points, dtype=float), axis=-1, kind="stable")
    out = np.diff(pts, axis=-1, prepend=0.0, append=1.0)
    if u != 1.0:
        out *= u
    return out


def spacings(points: Sequence[float], u: float = 1.0) -> SimplexVector:
    """Map ``k`` points of [0, 1] to a point of the ``(k+1)``-simplex of size ``u``.

    The points are sorted and differenced against 0 and 1.  Ties give zero
    coordinates.

    >>> spacings([0.5, 0.2]).coords
    (0.2, 0.3, 0.5)
    """
    u = _check_size(u)
    pts = np.asarray(points, dtype=float).reshape(-1)
    if pts.size and (np.any(~(pts >= 0.0)) or np.any(~(pts <= 1.0))):
        bad = pts[~((pts >= 0.0) & (pts <= 1.0))][0]
        raise SimplexError(f"spacings points must lie in [0, 1], got {bad!r}")
    return SimplexVector.from_array(spacings_batch(pts, u), u)


def _check_dim(n: int) -> int:
    if int(n) != n or n < 1:
        raise SimplexError(f"dimension n must be an integer >= 1, got {n}")
    return int(n)


def draw_spacings(rng: np.random.Generator, size: int, n: int, u: float = 1.0) -> np.ndarray:
    """``size`` uniform points of the ``n``-simplex as rows, by uniform spacings."""
    return spacings_batch(rng.random((size, n - 1)), u)


def draw_exponential(rng: np.random.Generator, size: int, n: int, u: float = 1.0) -> np.ndarray:
    """``size`` uniform points of the ``n``-simplex as rows, by normalised exponentials."""
    y = rng.standard_exponential((size, n))
    y /= y.sum(axis=1, keepdims=True)
    if u != 1.0:
        y *= u
    return y


def sample_spacings(n: int, u: float = 1.0, seed: int = 0) -> SimplexVector:
    """One uniform point of the ``n``-simplex of size ``u`` (spacings construction)."""
    n, u = _check_dim(n), _check_size(u)
    return SimplexVector.from_array(draw_spacings(make_generator(seed), 1, n, u)[0], u)


def sample_exponential(n: int, u: float = 1.0, seed: int = 0) -> SimplexVector:
    """One uniform point of the ``n``-simplex of size ``u`` (exponential construction)."""
    n, u = _check_dim(n), _check_size(u)
    if n == 1:
        return SimplexVector((u,), u)
    return SimplexVector.from_array(draw_exponential(make_generator(seed), 1, n, u)[0], u)


def _subset_sums(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sums and sizes of all subsets of ``values``, in binary-counter order."""
    sums = np.zeros(1)
    sizes = np.zeros(1, dtype=np.int64)
    for v in values:
        sums = np.concatenate((sums, sums + v))
        sizes = np.concatenate((sizes, sizes + 1))
    return sums, sizes


def joint_cdf(theta: Sequence[float], n: int | None = None, u: float = 1.0) -> float:
    """``P(Theta_1 <= theta_1, ..., Theta_n <= theta_n)`` for a uniform point.

    Inclusion-exclusion over every subset ``K`` of the coordinates of
    ``(max(u - sum_K theta, 0) / u) ** (n - 1)``.  The enumeration is
    exponential, so ``n`` is capped at ``JOINT_CDF_MAX_N``.
    """
    th = np.asarray(theta, dtype=float).reshape(-1)
    if n is None:
        n = th.size
    n = _check_dim(n)
    u = _check_size(u)
    if th.size != n:
        raise SimplexError(f"theta has {th.size} entries, expected n={n}")
    if n > JOINT_CDF_MAX_N:
        raise CapacityError(
            f"joint_cdf enumerates 2**n subsets; n={n} exceeds the limit {JOINT_CDF_MAX_N}"
        )
    if n == 1:
        return 1.0 if th[0] >= u else 0.0
    if np.any(th <= 0):
        return 0.0
    # coordinates above u never bind
    th = np.minimum(th / u, 1.0)
    head, tail = th[:_SUBSET_BLOCK], th[_SUBSET_BLOCK:]
    head_sums, head_sizes = _subset_sums(head)
    head_sign = np.where(head_sizes % 2 == 0, 1.0, -1.0)
    tail_sums, tail_sizes = _subset_sums(tail)
    total = 0.0
    for ts, tk in zip(tail_sums, tail_sizes):
        rem = np.maximum(1.0 - ts - head_sums, 0.0)
        terms = head_sign * rem ** (n - 1)
        total += (-1.0) ** int(tk) * float(np.sum(terms))
    return min(max(total, 0.0), 1.0)


def tail_prob(theta: Sequence[float], n: int | None = None, u: float = 1.0) -> float:
    """``P(Theta_1 > theta_1, ..., Theta_n > theta_n)`` for nonnegative ``theta``."""
    th = np.asarray(theta, dtype=float).reshape(-1)
    if n is None:
        n = th.size
    n = _check_dim(n)
    u = _check_size(u)
    if th.size != n:
        raise SimplexError(f"theta has {th.size} entries, expected n={n}")
    if np.any(~(th >= 0)):
        raise SimplexError("tail_prob requires nonnegative thresholds")
    slack = u - math.fsum(th.tolist())
    if slack <= 0:
        return 0.0
    return (slack / u) ** (n - 1)


def simplex_volume(n: int, u: float = 1.0) -> float:
    """``(n-1)``-dimensional volume of the simplex: ``sqrt(n) u**(n-1) / (n-1)!``."""
    n, u = _check_dim(n), _check_size(u)
    try:
        return math.sqrt(n) * u ** (n - 1) / math.factorial(n - 1)
    except OverflowError:
        return math.exp(0.5 * math.log(n) + (n - 1) * math.log(u) - math.lgamma(n))
