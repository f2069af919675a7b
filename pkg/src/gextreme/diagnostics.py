"""Numerical checks of the tail inequalities and limits behind the large-deviation result.

Every check works in the log domain; ``1 - Phi(t)**n`` is never formed by
subtraction.  Convergence along a ladder of sample sizes is summarized as a
:class:`ConvergenceReport`: strict monotone decrease of the distance to the
limit plus the final value, since the limits come with no explicit rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError
from .normal_core import log_neg_log_cdf, log_pdf, log_tail_of_max
from .normalization import NormalizationParams, make_norm, t_of_x
from .rate_set import rate
from .tail_approx import log_density, log_tail_exact

DEFAULT_LADDER = (10**3, 10**6, 10**9, 10**12)
BN_LADDER = (10**4, 10**6, 10**8, 10**10, 10**12)
DEFAULT_M = 3.0
DEFAULT_STEP = 0.01
LEMMA1_T_GRID = (0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 40.0)
LEMMA1_N_LADDER = (10, 10**3, 10**6, 10**12)
SLACK = 1e-9


@dataclass(frozen=True)
class ConvergenceReport:
    """Values of a diagnostic along a ladder of sample sizes.

    ``monotone_decreasing`` is computed on ``|values - limit|`` when a limit
    is given, otherwise on ``values`` themselves (already an error).
    """

    label: str
    ladder: tuple[int, ...]
    values: tuple[float, ...]
    monotone_decreasing: bool
    final_value: float
    limit: float | None = None
    details: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        out = {
            "label": self.label,
            "ladder": list(self.ladder),
            "values": list(self.values),
            "monotone_decreasing": self.monotone_decreasing,
            "final_value": self.final_value,
        }
        if self.limit is not None:
            out["limit"] = self.limit
        if self.details:
            out["details"] = self.details
        return out


def strictly_decreasing(values: Sequence[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def make_report(label, ladder, values, limit=None, details=None) -> ConvergenceReport:
    ladder = tuple(int(n) for n in ladder)
    values = tuple(float(v) for v in values)
    if len(ladder) != len(values):
        raise ValueError("ladder and values differ in length")
    dist = values if limit is None else [abs(v - limit) for v in values]
    return ConvergenceReport(
        label=label,
        ladder=ladder,
        values=values,
        monotone_decreasing=strictly_decreasing(dist),
        final_value=values[-1] if values else math.nan,
        limit=limit,
        details=details or {},
    )


def _params(n) -> NormalizationParams:
    return n if isinstance(n, NormalizationParams) else make_norm(n)


def _check_ladder(ladder):
    if not ladder:
        raise DomainError("ladder must not be empty")
    for n in ladder:
        if int(n) != n or n < 2:
            raise DomainError(f"ladder entries must be integers >= 2, got {n!r}")


# ---------------------------------------------------------------------------
# Mills-ratio inequalities


def locate_t0(t_grid: Sequence[float], holds: Sequence[bool]) -> float | None:
    """Smallest grid point from which ``holds`` stays true to the end of the grid."""
    t0 = None
    for t, ok in zip(reversed(t_grid), reversed(holds)):
        if not ok:
            break
        t0 = t
    return t0


def check_lemma1_log(
    t_grid: Sequence[float] = LEMMA1_T_GRID,
    n_ladder: Sequence[int] = LEMMA1_N_LADDER,
    constant: float = 2.0,
    slack: float = SLACK,
) -> ConvergenceReport:
    """Check ``0 <= -log Phi(t) <= c phi(t)/t`` and ``1 - Phi(t)**n <= n phi(t)/t``.

    The first inequality (``c = constant``, 2 in the original bound) is only
    claimed beyond some ``t0``; the empirical ``t0`` on the grid is reported.
    The second must hold for every ``(t, n)``.  ``values[i]`` is the largest
    log-margin ``lhs - rhs`` of the second inequality at ``n_ladder[i]``
    (negative means it holds with room to spare).
    """
    ts = sorted(float(t) for t in t_grid)
    if not ts or ts[0] <= 0 or not all(math.isfinite(t) for t in ts):
        raise DomainError("t grid must be non-empty, finite and strictly positive")
    _check_ladder(n_ladder)

    t_arr = np.asarray(ts)
    log_bound = log_pdf(t_arr) - np.log(t_arr)

    # -log Phi(t) >= 0 is log Phi(t) <= 0; log(-log Phi) is finite iff Phi < 1
    first_margin = log_neg_log_cdf(t_arr) - (math.log(constant) + log_bound)
    first_holds = [bool(m <= slack) for m in first_margin]
    t0 = locate_t0(ts, first_holds)

    second_margin = np.array(
        [log_tail_of_max(t_arr, n) - (math.log(n) + log_bound) for n in n_ladder]
    )
    worst = second_margin.max(axis=1)
    details = {
        "constant": constant,
        "t_grid": ts,
        "t0": t0,
        "first_inequality_holds": t0 is not None,
        "first_margins": [float(m) for m in first_margin],
        "second_inequality_holds": bool(np.all(second_margin <= slack)),
    }
    return make_report("lemma1_mills_bounds", n_ladder, worst, details=details)


def check_lemma2_bound(
    n_ladder: Sequence[int] = DEFAULT_LADDER,
    x_grid: Sequence[float] = tuple(np.round(np.arange(1, 101) * 0.05, 12)),
    slack: float = SLACK,
) -> ConvergenceReport:
    """Check ``log P(Z_n > x) / log n <= 1 + (log phi(t) - log t) / log n`` at ``t = t_n(x)``.

    ``values[i]`` is the largest margin over the x grid at ``n_ladder[i]``.
    """
    _check_ladder(n_ladder)
    margins = []
    for n in n_ladder:
        p = make_norm(n)
        worst = -math.inf
        for x in x_grid:
            if x <= 0:
                raise DomainError("x grid must be strictly positive")
            t = t_of_x(p, x)
            lhs = log_tail_exact(p, x) / p.log_n
            rhs = 1.0 + (log_pdf(t) - math.log(t)) / p.log_n
            worst = max(worst, lhs - rhs)
        margins.append(worst)
    details = {"holds": all(m <= slack for m in margins)}
    return make_report("lemma2_upper_bound", n_ladder, margins, details=details)


# ---------------------------------------------------------------------------
# limits


def bn_limit_value(n) -> float:
    """``n phi(b_n) / b_n``, which tends to 1."""
    p = _params(n)
    return math.exp(p.log_n + log_pdf(p.b_n) - math.log(p.b_n))


def bn_limit_seq(n_ladder: Sequence[int] = BN_LADDER) -> ConvergenceReport:
    _check_ladder(n_ladder)
    values = [bn_limit_value(n) for n in n_ladder]
    return make_report("bn_limit", n_ladder, values, limit=1.0)


def _grid(upper: float, step: float) -> np.ndarray:
    if not (upper > 0 and 0 < step < upper):
        raise DomainError("need M > 0 and 0 < grid_step < M")
    count = int(math.floor(upper / step + 1e-9))
    xs = np.arange(count + 1) * step
    if xs[-1] < upper - 1e-12:
        xs = np.append(xs, upper)
    return xs


def density_rate_error(n, M: float = DEFAULT_M, grid_step: float = DEFAULT_STEP) -> float:
    """Uniform error ``sup_x |log f_n(x) / log n + I(x)|`` over a grid on ``[0, M]``."""
    p = _params(n)
    return max(abs(log_density(p, float(x)) / p.log_n + rate(float(x))) for x in _grid(M, grid_step))


def tail_rate_error(n, x: float) -> float:
    """``|log P(Z_n > x) / log n + I(x)|``."""
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x!r}")
    p = _params(n)
    return abs(log_tail_exact(p, x) / p.log_n + rate(x))


def density_rate_report(
    n_ladder: Sequence[int] = DEFAULT_LADDER, M: float = DEFAULT_M, grid_step: float = DEFAULT_STEP
) -> ConvergenceReport:
    _check_ladder(n_ladder)
    values = [density_rate_error(n, M, grid_step) for n in n_ladder]
    return make_report(
        f"density_rate_error(M={M:g},step={grid_step:g})", n_ladder, values
    )


def tail_rate_report(n_ladder: Sequence[int] = DEFAULT_LADDER, x: float = 1.0) -> ConvergenceReport:
    _check_ladder(n_ladder)
    values = [tail_rate_error(n, x) for n in n_ladder]
    return make_report(f"tail_rate_error(x={x:g})", n_ladder, values)


def all_reports(
    n_ladder: Sequence[int] = DEFAULT_LADDER,
    M: float = DEFAULT_M,
    grid_step: float = DEFAULT_STEP,
    xs: Sequence[float] = (0.5, 1.0, 2.0),
) -> list[ConvergenceReport]:
    """Every diagnostic with default settings, in a fixed order."""
    reports = [
        check_lemma1_log(),
        check_lemma2_bound(n_ladder),
        bn_limit_seq(),
        density_rate_report(n_ladder, M, grid_step),
    ]
    reports.extend(tail_rate_report(n_ladder, x) for x in xs)
    return reports
