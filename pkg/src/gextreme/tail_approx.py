"""Exact, Gumbel and large-deviation probabilities for the rescaled maximum ``Z_n``.

All results are natural-log probabilities.  The exact law is
``P(Z_n <= x) = Phi(t_n(x))**n`` with density
``(n a_n / 2) Phi(t_n(x))**(n-1) phi(t_n(x))``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .normal_core import (
    LOG2,
    log1mexp_negexp,
    log_cdf,
    log_diff_exp,
    log_neg_log_cdf,
    log_pdf,
    log_sum_exp,
    log_tail_of_max,
)
from .normalization import NormalizationParams, t_of_x
from .rate_set import IntervalUnion, ess_inf_rate, rate, require_normalized


@dataclass(frozen=True)
class TailComparisonRow:
    x: float
    log_exact: float
    log_gumbel: float
    log_ldp: float


def _finite(x, name="x"):
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{name} must be finite, got {x!r}")


def log_cdf_exact(p: NormalizationParams, x):
    """``log P(Z_n <= x) = n log Phi(t_n(x))``; ``x`` may be an array.

    Evaluated as ``-exp(log n + log(-log Phi))`` so that the product is
    formed in log space; the result rounds to ``-0.0`` once the tail is
    below double range, which is why tails go through :func:`log_tail_exact`.
    """
    _finite(x)
    out = -np.exp(p.log_n + log_neg_log_cdf(t_of_x(p, x)))
    return float(out) if np.ndim(out) == 0 else out


def log_tail_exact(p: NormalizationParams, x):
    """``log P(Z_n > x) = log(1 - Phi(t_n(x))**n)``, finite for every finite ``x``."""
    _finite(x)
    return log_tail_of_max(t_of_x(p, x), p.n)


def _log_interval_prob(p: NormalizationParams, lo: float, hi: float) -> float:
    if hi <= lo:
        return -math.inf
    cdf_lo = log_cdf_exact(p, lo)
    if cdf_lo < -LOG2:
        cdf_hi = 0.0 if hi == math.inf else log_cdf_exact(p, hi)
        return log_diff_exp(cdf_hi, cdf_lo)
    # upper half of the law: difference of tails avoids cancellation near 1
    tail_hi = -math.inf if hi == math.inf else log_tail_exact(p, hi)
    return log_diff_exp(log_tail_exact(p, lo), tail_hi)


def log_prob_set_exact(p: NormalizationParams, a: IntervalUnion) -> float:
    """``log P(Z_n in A)`` for a normalized interval union; endpoint flags are immaterial."""
    require_normalized(a)
    return log_sum_exp(_log_interval_prob(p, part.lo, part.hi) for part in a.parts)


def log_tail_gumbel(p: NormalizationParams, x: float) -> float:
    """Gumbel approximation of ``log P(Z_n > x)``.

    ``Z_n log n`` is approximately standard Gumbel, ``Lambda(y) = exp(-exp(-y))``,
    so the tail is ``log(1 - exp(-exp(-x log n)))``.
    """
    if math.isnan(x) or x == math.inf:
        raise DomainError(f"x must be finite or -inf, got {x!r}")
    if x == -math.inf:
        return 0.0
    return log1mexp_negexp(-x * p.log_n)


def log_prob_ldp(p: NormalizationParams, a: IntervalUnion) -> float:
    """Large-deviation approximation ``log P(Z_n in A) ~ -I_A log n``."""
    i_a = ess_inf_rate(a)
    if i_a == math.inf:
        return -math.inf
    return -(i_a * p.log_n) if i_a > 0 else 0.0


def log_tail_ldp(p: NormalizationParams, x: float) -> float:
    """LDP approximation of ``log P(Z_n > x)`` for ``x >= 0``, i.e. ``-I(x) log n``."""
    _finite(x)
    i_x = rate(x)
    return -(i_x * p.log_n) if i_x > 0 else 0.0


def log_density(p: NormalizationParams, x: float) -> float:
    """Log density of ``Z_n`` at ``x``."""
    _finite(x)
    t = t_of_x(p, x)
    return math.log(0.5 * p.n * p.a_n) + (p.n - 1) * log_cdf(t) + log_pdf(t)


def _row(p: NormalizationParams, x: float) -> TailComparisonRow:
    return TailComparisonRow(
        x=x,
        log_exact=log_tail_exact(p, x),
        log_gumbel=log_tail_gumbel(p, x),
        log_ldp=log_tail_ldp(p, x),
    )


def compare_grid(
    p: NormalizationParams, xs: Sequence[float], workers: int = 1
) -> list[TailComparisonRow]:
    """One :class:`TailComparisonRow` per grid point (``xs`` ascending, ``x >= 0``)."""
    xs = [float(x) for x in xs]
    for x in xs:
        _finite(x)
        if x < 0:
            raise DomainError(f"grid points must be >= 0, got {x!r}")
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise DomainError("grid must be sorted ascending")
    if workers <= 1 or len(xs) < 2:
        return [_row(p, x) for x in xs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda x: _row(p, x), xs))


def naive_tail(p: NormalizationParams, x: float) -> float:
    """``1 - Phi(t_n(x))**n`` in linear space, which underflows to 0 in the deep tail.

    Kept only to demonstrate the failure mode the log-domain path avoids.
    """
    t = t_of_x(p, x)
    cdf = 0.5 * math.erfc(-t / math.sqrt(2.0))
    return 1.0 - cdf**p.n


def make_grid(lo: float, hi: float, step: float) -> list[float]:
    """Evenly spaced points ``lo, lo+step, ..., hi`` (inclusive up to rounding)."""
    for v, name in ((lo, "lo"), (hi, "hi"), (step, "step")):
        _finite(v, name)
    if step <= 0:
        raise DomainError("grid step must be positive")
    if hi < lo:
        raise DomainError("grid must be ascending (lo <= hi)")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [float(v) for v in np.round(lo + step * np.arange(count), 12)]
