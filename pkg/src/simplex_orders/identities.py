"""Exact combinatorial identities behind the moments of the largest coordinate.

Everything here runs on :class:`fractions.Fraction` and Python integers.
Real-valued inputs (``x``, ``y``, ``u``, ``a``, ``b``) are converted to the
exact rational value of the float and only the final result is rounded, so
the two sides of each identity can be compared without cancellation noise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import SimplexError

__all__ = [
    "F_xynr",
    "F_xynr_series",
    "beta_diff",
    "beta_diff_exact",
    "f_alternating",
    "f_closed_forms_check",
    "f_nt",
    "harmonic",
    "let_identity",
]


def _nonneg_int(name: str, value: int, minimum: int = 0) -> int:
    if int(value) != value or value < minimum:
        raise SimplexError(f"{name} must be an integer >= {minimum}, got {value}")
    return int(value)


def harmonic(n: int, t: int = 1) -> Fraction:
    """Generalised harmonic number ``sum_{s=1}^n 1/s**t``."""
    n = _nonneg_int("n", n, 1)
    t = _nonneg_int("t", t, 1)
    return sum((Fraction(1, s**t) for s in range(1, n + 1)), Fraction(0))


@lru_cache(maxsize=256)
def _f_row(n: int, t: int) -> tuple[Fraction, ...]:
    """``(f(0, t), f(1, t), ..., f(n, t))`` with ``f(0, t) = 0``."""
    if t == 0:
        return (Fraction(0),) + (Fraction(1),) * n
    prev = _f_row(n, t - 1)
    row = [Fraction(0)]
    for s in range(1, n + 1):
        row.append(row[-1] + prev[s] / s)
    return tuple(row)


def f_nt(n: int, t: int) -> Fraction:
    """``f(n, t) = sum_{k=1}^n (-1)**(k-1) C(n, k) / k**t``, exactly.

    Evaluated through ``f(n, t) = f(n-1, t) + f(n, t-1) / n``, whose terms are
    all positive, with ``f(n, 0) = f(1, t) = 1``.
    """
    n = _nonneg_int("n", n, 1)
    t = _nonneg_int("t", t)
    return _f_row(n, t)[n]


def f_alternating(n: int, t: int) -> Fraction:
    """The defining alternating binomial sum of ``f(n, t)``; a cross-check only."""
    n = _nonneg_int("n", n, 1)
    t = _nonneg_int("t", t)
    return sum(
        (Fraction((-1) ** (k - 1) * math.comb(n, k), k**t) for k in range(1, n + 1)),
        Fraction(0),
    )


def f_closed_forms_check(n: int) -> bool:
    """Check ``f(n,1) = H_n`` and ``f(n,2) = (H_n**2 + H_n^(2)) / 2`` exactly."""
    h1, h2 = harmonic(n, 1), harmonic(n, 2)
    return f_nt(n, 1) == h1 and f_nt(n, 2) == (h1 * h1 + h2) / 2


def let_identity(n: int, t: int, i: int) -> int:
    """``sum_{l=i+1}^{t+1} (-1)**(t+l-1) C(n-1+t, n+l-2) C(n+l-2, n+i-1)``.

    Equals 1 when ``i == t`` and 0 for ``0 <= i < t``.
    """
    n = _nonneg_int("n", n, 2)
    t = _nonneg_int("t", t, 1)
    i = _nonneg_int("i", i)
    if i > t:
        raise SimplexError(f"i must lie in [0, t], got i={i}, t={t}")
    return sum(
        (-1) ** (t + l - 1) * math.comb(n - 1 + t, n + l - 2) * math.comb(n + l - 2, n + i - 1)
        for l in range(i + 1, t + 2)
    )


def _exact(x: float | int | Fraction) -> Fraction:
    if isinstance(x, float) and not math.isfinite(x):
        raise SimplexError(f"expected a finite real, got {x}")
    return Fraction(x)


def F_xynr(x: float, y: float, n: int, r: int) -> float:
    """Direct sum ``sum_{k=0}^{n-1} (-1)**k C(n,k) ((n-k) x - y)**(n-1+r) / (n-k)**r``."""
    n = _nonneg_int("n", n, 1)
    r = _nonneg_int("r", r)
    fx, fy = _exact(x), _exact(y)
    total = sum(
        (
            (-1) ** k * math.comb(n, k) * ((n - k) * fx - fy) ** (n - 1 + r) / (n - k) ** r
            for k in range(n)
        ),
        Fraction(0),
    )
    return float(total)


def F_xynr_series(x: float, y: float, n: int, r: int) -> float:
    """The same quantity as :func:`F_xynr`, expanded in ``f(n, i)``:

    ``sum_{i=0}^r x**(r-i) y**(n-1+i) C(n+r-1, n+i-1) (-1)**i f(n, i)``.
    """
    n = _nonneg_int("n", n, 1)
    r = _nonneg_int("r", r)
    fx, fy = _exact(x), _exact(y)
    total = sum(
        (
            fx ** (r - i) * fy ** (n - 1 + i) * math.comb(n + r - 1, n + i - 1) * (-1) ** i * f_nt(n, i)
            for i in range(r + 1)
        ),
        Fraction(0),
    )
    return float(total)


def beta_diff_exact(u, a, b, p: int, q: int) -> Fraction:
    """Exact closed form of ``int_{u/b}^{u/a} x**p (b x - u)**q dx`` for ``0 < a <= b``."""
    p = _nonneg_int("p", p)
    q = _nonneg_int("q", q)
    fu, fa, fb = _exact(u), _exact(a), _exact(b)
    if not (fu > 0 and fa > 0 and fb > 0):
        raise SimplexError("beta_diff needs u, a, b > 0")
    if fa > fb:
        raise SimplexError(f"beta_diff needs a <= b, got a={a}, b={b}")
    total = Fraction(0)
    falling = 1  # p (p-1) ... (p-k+2)
    rising = 1  # (q+1) (q+2) ... (q+k)
    for k in range(1, p + 2):
        if k > 1:
            falling *= p - k + 2
        rising *= q + k
        total += (-1) ** (k - 1) * (fb - fa) ** (q + k) * falling / (fb**k * rising)
    return (fu / fa) ** (p + q + 1) * total


def beta_diff(u: float, a: float, b: float, p: int, q: int) -> float:
    """Closed form of ``int_{u/b}^{u/a} x**p (b x - u)**q dx`` (incomplete beta difference)."""
    return float(beta_diff_exact(u, a, b, p, q))
