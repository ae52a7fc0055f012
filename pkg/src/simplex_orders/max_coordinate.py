"""Distribution of the largest coordinate of a uniform point of the simplex.

For ``u/n < b <= u`` Whitworth's formula reads

    P(max <= b) = u**-(n-1) * sum_{k=0}^{m} C(n,k) (-1)**k ((n-k) b - u)**(n-1)

with ``m`` the unique integer in ``[0, n-2]`` such that
``u/(n-m) < b <= u/(n-m-1)``.  Inclusion-exclusion on the events
``{Theta_i > b}`` gives the complementary form

    P(max > b) = sum_{k=1}^{n-m-1} (-1)**(k-1) C(n,k) (1 - k b / u)**(n-1)

with ``n - m - 1`` terms.  Both are alternating; ``method="auto"`` evaluates
whichever has fewer terms, ``"branch"`` and ``"complement"`` force one form,
and ``"exact"`` runs the first form in rational arithmetic.  The first form
alone loses every digit in doubles by ``n = 14``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SimplexError
from .identities import f_nt, harmonic

__all__ = [
    "MaxDistParams",
    "m_index",
    "mean",
    "moment",
    "moment_exact",
    "variance",
    "variance_exact",
    "variance_from_moments",
    "whitworth_branch",
    "whitworth_cdf",
]


@dataclass(frozen=True)
class MaxDistParams:
    """Dimension ``n`` and size ``u`` of the simplex.

    ``n = 1`` is accepted as the degenerate case where the maximum is the
    constant ``u``.
    """

    n: int
    u: float = 1.0

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 1:
            raise SimplexError(f"n must be an integer >= 1, got {self.n}")
        if not (self.u > 0 and math.isfinite(self.u)):
            raise SimplexError(f"u must be a positive real, got {self.u}")
        object.__setattr__(self, "n", int(self.n))


def _params(params: MaxDistParams | int, u: float | None = None) -> MaxDistParams:
    if isinstance(params, MaxDistParams):
        return params
    return MaxDistParams(params, 1.0 if u is None else u)


def m_index(params: MaxDistParams, b: float) -> int:
    """The branch index ``m`` with ``u/(n-m) < b <= u/(n-m-1)``.

    Breakpoints belong to the lower branch.  Comparisons are exact in the
    rational value of ``b``.
    """
    n, u = params.n, Fraction(params.u)
    fb = Fraction(b)
    if n < 2:
        raise SimplexError("m_index needs n >= 2")
    if not (u / n < fb <= u):
        raise SimplexError(f"b must lie in (u/n, u] = ({float(u / n)}, {float(u)}], got {b}")
    k = math.floor(u / fb)  # k = n - m - 1, so that u/(k+1) < b <= u/k
    return n - 1 - k


def whitworth_branch(params: MaxDistParams, b: float, m: int) -> float:
    """Evaluate the ``m``-th branch sum at ``b`` in floating point, regardless of range."""
    n, u = params.n, params.u
    x = b / u
    terms = [math.comb(n, k) * (-1) ** k * ((n - k) * x - 1.0) ** (n - 1) for k in range(m + 1)]
    return math.fsum(terms)


def _cdf_scalar(params: MaxDistParams, b: float, method: str) -> float:
    n, u = params.n, params.u
    if n == 1:
        return 1.0 if b >= u else 0.0
    if b <= u / n:
        return 0.0
    if b >= u:
        return 1.0
    m = m_index(params, b)
    if method == "exact":
        fb, fu = Fraction(b), Fraction(u)
        total = sum(
            (math.comb(n, k) * (-1) ** k * ((n - k) * fb - fu) ** (n - 1) for k in range(m + 1)),
            Fraction(0),
        )
        value = float(total / fu ** (n - 1))
    elif method == "branch" or (method == "auto" and m + 1 <= n - m - 1):
        value = whitworth_branch(params, b, m)
    elif method in ("auto", "complement"):
        x = b / u
        terms = [
            (-1) ** (k - 1) * math.comb(n, k) * max(1.0 - k * x, 0.0) ** (n - 1)
            for k in range(1, n - m)
        ]
        value = 1.0 - math.fsum(terms)
    else:
        raise SimplexError(f"unknown method {method!r}")
    return min(max(value, 0.0), 1.0)


def whitworth_cdf(params: MaxDistParams, b, method: str = "auto"):
    """``P(max(Theta) <= b)`` for ``Theta`` uniform on the simplex of size ``u``.

    Returns 0 for ``b <= u/n`` and 1 for ``b >= u``.  ``b`` may be a scalar
    or an array.
    """
    params = _params(params)
    if np.ndim(b) == 0:
        return _cdf_scalar(params, float(b), method)
    arr = np.asarray(b, dtype=float)
    return np.array([_cdf_scalar(params, float(v), method) for v in arr.ravel()]).reshape(arr.shape)


def moment_exact(n: int, t: int, u: float | Fraction | int = 1) -> Fraction:
    """Exact ``E[max(Theta)**t] = u**t f(n, t) / C(n-1+t, t)``."""
    if int(t) != t or t < 0:
        raise SimplexError(f"t must be an integer >= 0, got {t}")
    t = int(t)
    fu = Fraction(u)
    if t == 0:
        return Fraction(1)
    if n == 1:
        return fu**t
    return fu**t * f_nt(n, t) / math.comb(n - 1 + t, t)


def moment(params: MaxDistParams, t: int) -> float:
    """``E[max(Theta)**t]``; ``t = 0`` gives 1 and ``n = 1`` gives ``u**t``."""
    params = _params(params)
    return params.u ** int(t) * float(moment_exact(params.n, t))


def mean(params: MaxDistParams) -> float:
    """``E[max(Theta)] = (u/n) H_n``."""
    return moment(params, 1)


def variance_exact(n: int, u: float | Fraction | int = 1) -> Fraction:
    """``u**2 (n H_n^(2) - H_n**2) / (n**2 (n+1))`` as a fraction."""
    if int(n) != n or n < 1:
        raise SimplexError(f"n must be an integer >= 1, got {n}")
    n = int(n)
    h1, h2 = harmonic(n, 1), harmonic(n, 2)
    return Fraction(u) ** 2 * (n * h2 - h1 * h1) / (n * n * (n + 1))


def variance(params: MaxDistParams) -> float:
    """Variance of the largest coordinate, from the harmonic-number closed form."""
    params = _params(params)
    return params.u**2 * float(variance_exact(params.n))


def variance_from_moments(params: MaxDistParams) -> float:
    """``E[max**2] - E[max]**2``; the second route to :func:`variance`."""
    params = _params(params)
    exact = moment_exact(params.n, 2) - moment_exact(params.n, 1) ** 2
    return params.u**2 * float(exact)
