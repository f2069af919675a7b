"""Standard normal special functions evaluated in the log domain.

All public functions accept a Python float or a numpy array and return the
same kind (a float for scalar input).  Probabilities are carried as natural
logarithms so that values far below the smallest double remain usable;
``-inf`` is the log of an exact zero.

Evaluation of ``log Phi(t)`` for ``t < 0`` (``x = -t > 0``):

* ``x < 3``: ``log(erfc(x / sqrt 2) / 2)``, nothing can underflow here.
* ``3 <= x < 14``: ``log phi(x) + log R(x)`` with the Mills ratio ``R``
  from the Laplace continued fraction, evaluated backwards with a term count
  fixed per band so the truncation error is below 1 ulp.
* ``x >= 14``: the same decomposition with the asymptotic series
  ``R(x) = (1/x) sum_k (-1)^k (2k-1)!! / x^(2k)``.  The series envelops
  ``R``, so the error is bounded by the first omitted term; with 20 terms
  that is ``41!! / 14^42 < 1e-22`` relative at the band edge.

For ``t >= 0`` the value is ``log1mexp(log Phi(-t))``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import erfc

from .errors import DomainError, RangeError

__all__ = [
    "LOG2",
    "HALF_LOG_2PI",
    "log_pdf",
    "log_cdf",
    "log_sf",
    "log_neg_log_cdf",
    "log_tail_of_max",
    "inv_cdf_log",
    "log1mexp",
    "log1mexp_negexp",
    "log_diff_exp",
    "log_sum_exp",
]

LOG2 = math.log(2.0)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SQRT_HALF = math.sqrt(0.5)
_EPS = np.finfo(float).eps

_ERFC_EDGE = 3.0
# (upper edge of the band in x, continued-fraction terms)
_CF_BANDS = ((4.0, 64), (6.0, 40), (9.0, 24), (14.0, 16))
_ASYMPTOTIC_EDGE = 14.0
_ASYMPTOTIC_TERMS = 20

# below this, log(1 + q/2 + q^2/3 + ...) == q/2 to double precision
_SMALL_LOG = -30.0

# Acklam's rational approximation to the normal quantile (rel. error ~1e-9),
# used only as the starting point for Newton refinement.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01, 1.0)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00, 1.0)
_LOG_P_LOW = math.log(0.02425)
_NEWTON_MAX = 60


def _wrap(value):
    arr = np.array(value, dtype=float)
    return np.atleast_1d(arr), arr.ndim == 0


def _unwrap(out, scalar):
    return float(out[0]) if scalar else out


def _require_finite(arr, name):
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")


def _horner(coeffs, x):
    acc = np.zeros_like(x)
    for c in coeffs:
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# array kernels (no validation)


def _log_pdf(t):
    return -0.5 * t * t - HALF_LOG_2PI


def _log_mills_cf(x, terms):
    r = x.copy()
    for k in range(terms, 0, -1):
        r = x + k / r
    return -np.log(r)


def _log_mills_asymptotic(x):
    inv2 = 1.0 / (x * x)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, _ASYMPTOTIC_TERMS + 1):
        term = term * (-(2 * k - 1) * inv2)
        total = total + term
    return np.log(total) - np.log(x)


def _log_upper_tail(x):
    """log(1 - Phi(x)) for x >= 0."""
    out = np.empty_like(x)
    m = x < _ERFC_EDGE
    out[m] = np.log(0.5 * erfc(x[m] * _SQRT_HALF))
    lo = _ERFC_EDGE
    for hi, terms in _CF_BANDS:
        m = (x >= lo) & (x < hi)
        if m.any():
            xm = x[m]
            out[m] = _log_pdf(xm) + _log_mills_cf(xm, terms)
        lo = hi
    m = x >= _ASYMPTOTIC_EDGE
    if m.any():
        xm = x[m]
        out[m] = _log_pdf(xm) + _log_mills_asymptotic(xm)
    return out


def _log1mexp(a):
    out = np.empty_like(a)
    near = a > -LOG2
    with np.errstate(divide="ignore"):
        out[near] = np.log(-np.expm1(a[near]))
    out[~near] = np.log1p(-np.exp(a[~near]))
    return out


def _log_cdf(t):
    out = np.empty_like(t)
    neg = t < 0
    out[neg] = _log_upper_tail(-t[neg])
    pos = ~neg
    out[pos] = _log1mexp(_log_upper_tail(t[pos]))
    return out


def _log_neg_log_cdf(t):
    out = np.empty_like(t)
    neg = t < 0
    out[neg] = np.log(-_log_cdf(t[neg]))
    pos = ~neg
    s = _log_upper_tail(t[pos])
    tiny = s < _SMALL_LOG
    res = np.empty_like(s)
    res[tiny] = s[tiny] + 0.5 * np.exp(s[tiny])
    res[~tiny] = np.log(-np.log1p(-np.exp(s[~tiny])))
    out[pos] = res
    return out


def _log1mexp_negexp(y):
    out = np.empty_like(y)
    tiny = y < _SMALL_LOG
    out[tiny] = y[tiny] - 0.5 * np.exp(y[tiny])
    with np.errstate(over="ignore"):
        out[~tiny] = _log1mexp(-np.exp(y[~tiny]))
    return out


def _solve_lower(target):
    """Return t with log Phi(t) = target, for target <= -log 2."""
    t = np.empty_like(target)
    central = target >= _LOG_P_LOW
    q = np.exp(target[central]) - 0.5
    r = q * q
    t[central] = _horner(_A, r) * q / _horner(_B, r)
    q = np.sqrt(-2.0 * target[~central])
    t[~central] = _horner(_C, q) / _horner(_D, q)

    # log Phi is concave and increasing, so from the first iterate on Newton
    # approaches the root monotonically from the left.
    active = np.ones(target.shape, dtype=bool)
    for _ in range(_NEWTON_MAX):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        ti = t[idx]
        h = _log_cdf(ti)
        with np.errstate(over="ignore", invalid="ignore"):
            step = (h - target[idx]) * np.exp(h - _log_pdf(ti))
        step = np.where(np.isfinite(step), step, 0.0)
        # the root is never positive
        t[idx] = np.minimum(ti - step, 0.0)
        active[idx] = np.abs(step) > 4.0 * _EPS * np.maximum(np.abs(ti), 1.0)
    return t


# ---------------------------------------------------------------------------
# public surface


def log_pdf(t):
    """Log density of the standard normal, ``-t**2/2 - log(2*pi)/2``."""
    arr, scalar = _wrap(t)
    _require_finite(arr, "t")
    return _unwrap(_log_pdf(arr), scalar)


def log_cdf(t):
    """Log of the standard normal CDF, ``log Phi(t)``.

    Accurate to about 1e-15 relative in the log value on ``[-40, 40]`` and
    finite for every finite ``t``.  For ``t`` above ~38.5 the exact value is
    below the smallest subnormal and the result is ``-0.0``.
    """
    arr, scalar = _wrap(t)
    _require_finite(arr, "t")
    return _unwrap(_log_cdf(arr), scalar)


def log_sf(t):
    """Log of the upper tail ``1 - Phi(t)``; identical to ``log_cdf(-t)``."""
    arr, scalar = _wrap(t)
    _require_finite(arr, "t")
    return _unwrap(_log_cdf(-arr), scalar)


def log_neg_log_cdf(t):
    """``log(-log Phi(t))``, finite even where ``log Phi(t)`` rounds to zero."""
    arr, scalar = _wrap(t)
    _require_finite(arr, "t")
    return _unwrap(_log_neg_log_cdf(arr), scalar)


def log_tail_of_max(t, n):
    """``log(1 - Phi(t)**n)``: log probability that the max of ``n`` draws exceeds ``t``.

    Goes through ``log(-n log Phi(t))`` so it stays finite in the deep tail,
    where ``Phi(t)**n`` is 1 to double precision.
    """
    arr, scalar = _wrap(t)
    _require_finite(arr, "t")
    if not n >= 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    log_mass = math.log(n) + _log_neg_log_cdf(arr)
    return _unwrap(_log1mexp_negexp(log_mass), scalar)


def inv_cdf_log(lp):
    """Standard normal quantile of a log probability: ``t`` with ``log Phi(t) = lp``.

    Upper-half arguments (``lp > -log 2``) are reflected so the solve always
    runs on the lower tail, where Newton's method in log-CDF space is well
    scaled.  Works for ``|lp|`` up to at least 1e6.
    """
    arr, scalar = _wrap(lp)
    if np.any(np.isnan(arr)) or np.any(arr > 0):
        raise DomainError("log probability must be <= 0")
    if np.any(arr == 0) or np.any(np.isneginf(arr)):
        raise RangeError("quantile of log probability 0 or -inf is infinite")
    upper = arr > -LOG2
    target = arr.copy()
    target[upper] = _log1mexp(arr[upper])
    t = _solve_lower(target)
    t[upper] = -t[upper]
    return _unwrap(t, scalar)


def log1mexp(a):
    """``log(1 - exp(a))`` for ``a <= 0``; ``-inf`` at ``a == 0``."""
    arr, scalar = _wrap(a)
    if np.any(np.isnan(arr)) or np.any(arr > 0):
        raise DomainError("log1mexp requires a <= 0")
    return _unwrap(_log1mexp(arr), scalar)


def log1mexp_negexp(y):
    """``log(1 - exp(-exp(y)))``, stable for very negative ``y``.

    ``1 - exp(-exp(y))`` is the probability of at least one event of a
    Poisson-like mass ``exp(y)``; the Gumbel tail and the tail of the
    maximum both reduce to it.
    """
    arr, scalar = _wrap(y)
    if np.any(np.isnan(arr)):
        raise DomainError("y must not be NaN")
    return _unwrap(_log1mexp_negexp(arr), scalar)


def log_diff_exp(a, b):
    """``log(exp(a) - exp(b))`` for ``0 >= a >= b``."""
    if math.isnan(a) or math.isnan(b):
        raise DomainError("arguments must not be NaN")
    if a < b:
        raise DomainError(f"log_diff_exp requires a >= b, got a={a!r}, b={b!r}")
    if a == b:
        return -math.inf
    return a + float(_log1mexp(np.array([b - a]))[0])


def log_sum_exp(values):
    """``log(sum(exp(v)))`` over an iterable; ``-inf`` when empty or all ``-inf``."""
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        return -math.inf
    top = float(arr.max())
    if top == -math.inf:
        return -math.inf
    return top + math.log(float(np.sum(np.exp(arr - top))))
