"""Log-domain tail probabilities for the maximum of n i.i.d. standard Gaussians.

The maximum is rescaled as ``Z_n = (X_(n) - b_n) / (a_n / 2)``; exact,
Gumbel and large-deviation (``P(Z_n in A) ~ n**-I_A``) approximations are
provided, along with exact Monte Carlo and numerical convergence checks.
"""

__version__ = "0.1.0"

from .errors import ContractError, DomainError, RangeError
from .normal_core import (
    inv_cdf_log,
    log1mexp,
    log_cdf,
    log_diff_exp,
    log_pdf,
    log_sf,
    log_sum_exp,
)
from .normalization import NormalizationParams, make_norm, t_of_x, z_of_max
from .rate_set import Interval, IntervalUnion, ess_inf_rate, normalize_set, parse_set, rate
from .tail_approx import (
    TailComparisonRow,
    compare_grid,
    log_cdf_exact,
    log_density,
    log_prob_ldp,
    log_prob_set_exact,
    log_tail_exact,
    log_tail_gumbel,
)
from .mc_sim import McEstimate, estimate_tail, sample_max
from .diagnostics import (
    ConvergenceReport,
    bn_limit_seq,
    check_lemma1_log,
    density_rate_error,
    tail_rate_error,
)
