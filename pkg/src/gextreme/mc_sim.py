"""Exact Monte Carlo for the maximum of n standard Gaussians.

Since ``P(X_(n) <= t) = Phi(t)**n``, one uniform ``u`` gives an exact draw
``X_(n) = Phi^-1(u**(1/n))``, computed as ``inv_cdf_log(log(u) / n)``.  The
cost per sample does not depend on ``n``.

Random numbers
--------------
Generator ``philox4x64-10/blocked-v1``: numpy's Philox-4x64-10 counter-based
generator with ``key = seed`` (a 64-bit unsigned integer).  Sample ``i``
belongs to block ``i // 65536``; block ``j`` starts from counter
``(0, 0, j, 0)`` and its raw 64-bit words are mapped to ``(0, 1)`` as
``((w >> 11) + 0.5) / 2**53``.  Blocks are independent of how they are
assigned to workers, so results are identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from statistics import NormalDist

import numpy as np

from .errors import DomainError
from .normal_core import inv_cdf_log
from .normalization import NormalizationParams, z_of_max
from .parallel import resolve_workers

RNG_NAME = "philox4x64-10/blocked-v1"
BLOCK_SIZE = 1 << 16
_Z95 = NormalDist().inv_cdf(0.975)


@dataclass(frozen=True)
class McEstimate:
    n: int
    x: float
    samples: int
    hits: int
    log_p_hat: float
    ci_lo: float
    ci_hi: float
    seed: int

    @property
    def p_hat(self) -> float:
        return self.hits / self.samples

    def to_dict(self) -> dict:
        return asdict(self)


def _sample_size(p) -> int:
    n = p.n if isinstance(p, NormalizationParams) else p
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    return int(n)


def _check_seed(seed: int) -> int:
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < 2**64:
        raise DomainError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return int(seed)


def block_uniforms(seed: int, block: int, count: int) -> np.ndarray:
    """The first ``count`` uniforms of stream block ``block`` (see module docs)."""
    bitgen = np.random.Philox(key=_check_seed(seed), counter=[0, 0, block, 0])
    raw = bitgen.random_raw(count)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def sample_max(p, u):
    """Exact draw of ``X_(n)`` from uniform(s) ``u`` in ``(0, 1)``.

    ``p`` is a :class:`NormalizationParams` or a bare sample size ``n >= 1``.
    Increasing in ``u``.
    """
    n = _sample_size(p)
    arr = np.asarray(u, dtype=float)
    if not np.all((arr > 0) & (arr < 1)):
        raise DomainError("u must lie strictly inside (0, 1)")
    return inv_cdf_log(np.log(arr) / n)


def _z_block(p: NormalizationParams, seed: int, block: int, samples: int) -> np.ndarray:
    start = block * BLOCK_SIZE
    u = block_uniforms(seed, block, min(BLOCK_SIZE, samples - start))
    return z_of_max(p, sample_max(p, u))


def _block_count(samples: int) -> int:
    return -(-samples // BLOCK_SIZE)


def sample_z(p: NormalizationParams, samples: int, seed: int, workers: int | None = None) -> np.ndarray:
    """``samples`` exact draws of ``Z_n``, in stream order."""
    if samples < 1:
        raise DomainError("samples must be >= 1")
    seed = _check_seed(seed)
    blocks = range(_block_count(samples))
    workers = resolve_workers(workers)
    if workers == 1:
        parts = [_z_block(p, seed, j, samples) for j in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda j: _z_block(p, seed, j, samples), blocks))
    return np.concatenate(parts)


def wilson_interval(hits: int, samples: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion (linear scale)."""
    p_hat = hits / samples
    z2n = z * z / samples
    center = (p_hat + 0.5 * z2n) / (1.0 + z2n)
    half = z / (1.0 + z2n) * math.sqrt(p_hat * (1.0 - p_hat) / samples + 0.25 * z2n / samples)
    # the score interval always contains p_hat; guard against last-bit rounding
    return max(0.0, min(center - half, p_hat)), min(1.0, max(center + half, p_hat))


def _log(v: float) -> float:
    return math.log(v) if v > 0 else -math.inf


def estimate_tail(
    p: NormalizationParams,
    x: float,
    samples: int,
    seed: int,
    workers: int | None = None,
) -> McEstimate:
    """Plain Monte Carlo estimate of ``P(Z_n > x)``.

    Reproducible: the result depends only on ``(n, x, samples, seed)``.
    """
    if isinstance(samples, bool) or int(samples) != samples or samples < 1:
        raise DomainError(f"samples must be a positive integer, got {samples!r}")
    if math.isnan(x):
        raise DomainError("x must not be NaN")
    samples = int(samples)
    seed = _check_seed(seed)

    def count(block: int) -> int:
        return int(np.count_nonzero(_z_block(p, seed, block, samples) > x))

    blocks = range(_block_count(samples))
    workers = resolve_workers(workers)
    if workers == 1:
        hits = sum(map(count, blocks))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(count, blocks))

    lo, hi = wilson_interval(hits, samples)
    log_p_hat = _log(hits / samples)
    return McEstimate(
        n=p.n,
        x=float(x),
        samples=samples,
        hits=hits,
        log_p_hat=log_p_hat,
        ci_lo=_log(lo),
        ci_hi=_log(hi),
        seed=seed,
    )
