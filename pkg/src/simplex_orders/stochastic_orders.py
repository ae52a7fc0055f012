"""Usual stochastic, hazard rate and likelihood ratio orders on the simplex.

A simplex point ``theta`` is read as the law of a random variable taking the
values ``x_1 < ... < x_n`` with probabilities ``theta_1, ..., theta_n``.
With suffix sums ``S_i = theta_i + ... + theta_n``:

* ``a <=st b``  iff ``S_i(a) <= S_i(b)`` for every ``i``;
* ``a <=hr b``  iff ``S_i(a) S_j(b) >= S_j(a) S_i(b)`` for every ``i <= j``;
* ``a <=lr b``  iff ``a_i b_j >= b_i a_j`` for every ``i <= j``.

Every comparator accepts a slack ``eps`` (default 0): an inequality
``lhs >= rhs`` is accepted when ``lhs >= rhs - eps``.

The ``*_batch`` kernels work on ``(m, n)`` arrays of row vectors and are what
the Monte Carlo and randomness-test code call.
"""

from __future__ import annotations

import enum
import logging
import math
from fractions import Fraction

import numpy as np

from .errors import SimplexError
from .simplex_core import SimplexVector

__all__ = [
    "OrderKind",
    "compare_batch",
    "hr_batch",
    "hr_fast_batch",
    "hr_reduce",
    "hr_upper_prob",
    "hr_upper_prob_batch",
    "leq",
    "leq_hr",
    "leq_lr",
    "leq_st",
    "lr_batch",
    "restrictiveness_constant",
    "st_batch",
    "suffix_sums",
]

log = logging.getLogger(__name__)


class OrderKind(enum.Enum):
    ST = "st"
    HR = "hr"
    LR = "lr"

    @classmethod
    def parse(cls, value: str | OrderKind) -> OrderKind:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise SimplexError(f"unknown order {value!r}; expected one of st, hr, lr") from None


def suffix_sums(x: np.ndarray) -> np.ndarray:
    """Suffix sums along the last axis: ``out[..., i] = x[..., i:].sum()``."""
    return np.cumsum(x[..., ::-1], axis=-1)[..., ::-1]


def st_batch(a: np.ndarray, b: np.ndarray, eps: float = 0.0) -> np.ndarray:
    sa, sb = suffix_sums(a), suffix_sums(b)
    # S_1 is the total mass on both sides; comparing the two rounded totals
    # would only inject noise
    return np.all(sa[..., 1:] <= sb[..., 1:] + eps, axis=-1)


def hr_batch(a: np.ndarray, b: np.ndarray, eps: float = 0.0) -> np.ndarray:
    """Definitional O(n^2) hazard rate check over every index pair ``i < j``."""
    sa, sb = suffix_sums(a), suffix_sums(b)
    n = a.shape[-1]
    ok = np.ones(np.broadcast_shapes(a.shape, b.shape)[:-1], dtype=bool)
    for i in range(n - 1):
        lhs = sa[..., i, None] * sb[..., i + 1 :]
        rhs = sa[..., i + 1 :] * sb[..., i, None]
        ok &= np.all(lhs >= rhs - eps, axis=-1)
    return ok


def hr_fast_batch(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """O(n) hazard rate check through adjacent cross-products (no slack).

    For ``S_i(a) > 0`` the definition says ``S_i(b) / S_i(a)`` is
    nondecreasing, which adjacent comparisons establish by transitivity.  Once
    ``S_{k}(a) = 0`` every later suffix of ``a`` is zero too and all remaining
    inequalities hold trivially, so those positions are masked out.
    """
    sa, sb = suffix_sums(a), suffix_sums(b)
    live = sa[..., 1:] > 0
    adjacent = sa[..., :-1] * sb[..., 1:] >= sa[..., 1:] * sb[..., :-1]
    return np.all(adjacent | ~live, axis=-1)


def lr_batch(a: np.ndarray, b: np.ndarray, eps: float = 0.0) -> np.ndarray:
    """Product-form likelihood ratio check: ``a_i b_j >= b_i a_j`` for ``i < j``."""
    n = a.shape[-1]
    ok = np.ones(np.broadcast_shapes(a.shape, b.shape)[:-1], dtype=bool)
    for i in range(n - 1):
        lhs = a[..., i, None] * b[..., i + 1 :]
        rhs = b[..., i, None] * a[..., i + 1 :]
        ok &= np.all(lhs >= rhs - eps, axis=-1)
    return ok


_BATCH = {OrderKind.ST: st_batch, OrderKind.HR: hr_batch, OrderKind.LR: lr_batch}


def compare_batch(order: OrderKind | str, a: np.ndarray, b: np.ndarray, eps: float = 0.0) -> np.ndarray:
    """Row-wise ``a[k] <= b[k]`` under ``order``; returns a boolean array."""
    return _BATCH[OrderKind.parse(order)](np.asarray(a, float), np.asarray(b, float), eps)


def _pair(a: SimplexVector, b: SimplexVector) -> tuple[np.ndarray, np.ndarray]:
    if not isinstance(a, SimplexVector) or not isinstance(b, SimplexVector):
        raise SimplexError("order comparators take SimplexVector arguments")
    if a.n != b.n:
        raise SimplexError(f"length mismatch: {a.n} vs {b.n}")
    if a.u != b.u:
        raise SimplexError(f"size mismatch: {a.u} vs {b.u}")
    return a.as_array(), b.as_array()


def leq_st(a: SimplexVector, b: SimplexVector, eps: float = 0.0) -> bool:
    """True iff ``a <=st b``."""
    x, y = _pair(a, b)
    return bool(st_batch(x, y, eps))


def leq_hr(a: SimplexVector, b: SimplexVector, eps: float = 0.0, *, fast: bool = False) -> bool:
    """True iff ``a <=hr b``.

    The definitional all-pairs scan is the reference semantics.  ``fast=True``
    switches to the adjacent cross-product test, which is only available
    without slack.
    """
    x, y = _pair(a, b)
    if fast:
        if eps:
            raise SimplexError("the O(n) hazard rate path does not support a slack")
        return bool(hr_fast_batch(x, y))
    return bool(hr_batch(x, y, eps))


def leq_lr(a: SimplexVector, b: SimplexVector, eps: float = 0.0) -> bool:
    """True iff ``a <=lr b`` (``b_k / a_k`` nondecreasing, written without division)."""
    x, y = _pair(a, b)
    return bool(lr_batch(x, y, eps))


def leq(order: OrderKind | str, a: SimplexVector, b: SimplexVector, eps: float = 0.0) -> bool:
    order = OrderKind.parse(order)
    if order is OrderKind.ST:
        return leq_st(a, b, eps)
    if order is OrderKind.HR:
        return leq_hr(a, b, eps)
    return leq_lr(a, b, eps)


def _reduce(a: list[float], b: list[float]) -> bool:
    # a and b carry the same total mass at every level
    while len(a) > 1:
        if b[0] > a[0]:
            return False
        b_rest = math.fsum(b[1:])
        a_rest = math.fsum(a[1:])
        if b_rest <= 0:
            # only the first vertex lies below the first vertex
            return a_rest <= 0
        if a_rest <= 0:
            # the first vertex lies below every point
            return True
        # the order is invariant under scaling either argument, so both tails
        # go back to unit mass instead of rescaling a to b's mass (no overflow
        # for tiny tails)
        a = [x / a_rest for x in a[1:]]
        b = [y / b_rest for y in b[1:]]
    return True


def hr_reduce(a: SimplexVector, b: SimplexVector) -> bool:
    """Hazard rate comparison by peeling off the first coordinate.

    ``a <=hr b`` iff ``b_1 <= a_1`` and the tails, brought to a common mass,
    compare in one dimension less.  Kept as an oracle for :func:`leq_hr`.
    """
    x, y = _pair(a, b)
    return _reduce(x.tolist(), y.tolist())


def hr_upper_prob_batch(theta: np.ndarray) -> np.ndarray:
    """Row-wise ``P(Theta >=hr theta)``; a factor with ``S_i = 0`` counts as 1."""
    s = suffix_sums(np.asarray(theta, float))
    n = s.shape[-1]
    out = np.ones(s.shape[:-1])
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(n - 1):
            ratio = s[..., i + 1] / s[..., i]
            factor = 1.0 - ratio ** (n - 1 - i)
            out *= np.where(s[..., i] > 0, factor, 1.0)
    return out


def hr_upper_prob(theta: SimplexVector) -> float:
    """Probability that a fresh uniform point dominates ``theta`` in hazard rate order.

    Product over ``i = 1..n-1`` of ``1 - (S_{i+1} / S_i) ** (n - i)``.
    """
    if not isinstance(theta, SimplexVector):
        raise SimplexError("hr_upper_prob takes a SimplexVector")
    x = theta.as_array()
    s = suffix_sums(x)
    if np.any(s[:-1] == 0):
        log.debug("hr_upper_prob: zero suffix sum in %s; factor taken as 1", theta.coords)
    return float(hr_upper_prob_batch(x))


def restrictiveness_constant(order: OrderKind | str, n: int) -> Fraction:
    """Probability that two independent uniform points of the ``n``-simplex compare.

    ``1/n`` for st, ``1/2**(n-1)`` for hr and ``1/n!`` for lr, as exact
    fractions.
    """
    order = OrderKind.parse(order)
    if int(n) != n or n < 1:
        raise SimplexError(f"n must be an integer >= 1, got {n}")
    n = int(n)
    if order is OrderKind.ST:
        return Fraction(1, n)
    if order is OrderKind.HR:
        return Fraction(1, 2 ** (n - 1))
    return Fraction(1, math.factorial(n))
