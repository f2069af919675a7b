"""Normalizing constants for the maximum of n standard Gaussians.

``a_n = sqrt(2 log n)`` and ``b_n = a_n - log(sqrt(2 pi) a_n) / a_n``.  The
rescaled maximum is ``Z_n = (X_(n) - b_n) / (a_n / 2)``; its inverse map is
``t_n(x) = b_n + a_n x / 2``.  Everything depends on ``n`` only through
``log n``, so ``n`` may be any integer up to ``2**63 - 1``.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .normal_core import HALF_LOG_2PI

MAX_N = 2**63 - 1


@dataclass(frozen=True)
class NormalizationParams:
    n: int
    a_n: float
    b_n: float
    log_n: float


def make_norm(n: int) -> NormalizationParams:
    """Build the normalization for sample size ``n >= 2``."""
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise DomainError(f"n must be an integer sample size, got {n!r}")
    n = int(n)
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if n > MAX_N:
        raise DomainError(f"n must be <= 2**63 - 1, got {n}")
    log_n = math.log(n)
    a = math.sqrt(2.0 * log_n)
    b = a - (HALF_LOG_2PI + math.log(a)) / a
    return NormalizationParams(n=n, a_n=a, b_n=b, log_n=log_n)


def _check_finite(value, name):
    if not np.all(np.isfinite(value)):
        raise DomainError(f"{name} must be finite")


def t_of_x(p: NormalizationParams, x):
    """Raw-scale threshold ``b_n + a_n x / 2`` matching ``Z_n = x``."""
    _check_finite(x, "x")
    return p.b_n + 0.5 * p.a_n * x


def z_of_max(p: NormalizationParams, m):
    """Rescale a raw maximum ``m`` to ``Z_n``."""
    _check_finite(m, "m")
    return (m - p.b_n) / (0.5 * p.a_n)
