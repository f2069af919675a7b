import json
import math

import pytest

from gextreme.diagnostics import (
    ConvergenceReport,
    all_reports,
    bn_limit_seq,
    bn_limit_value,
    check_lemma1_log,
    check_lemma2_bound,
    density_rate_error,
    density_rate_report,
    locate_t0,
    make_report,
    tail_rate_error,
    tail_rate_report,
)
from gextreme.errors import DomainError
from gextreme.normal_core import log_cdf, log_pdf, log_tail_of_max
from gextreme.normalization import make_norm
from gextreme.rate_set import rate
from gextreme.tail_approx import log_tail_exact

LADDER = (10**3, 10**6, 10**9, 10**12)
# mpmath, 60 digits
BN_ORACLE = {10**4: 0.98499718948192636, 10**6: 0.97790571700647203, 10**8: 0.97646971283288137,
             10**10: 0.97659808176747052, 10**12: 0.97723601225509472}
TAIL_ERR_ORACLE = {
    0.5: (0.032739687235160943, 0.025552021568583814, 0.020143779933255382, 0.016709734983064176),
    1.0: (0.08787291927278422, 0.058640260458416719, 0.044690684588185779, 0.036447386580363834),
    2.0: (0.20589370312966878, 0.13050698493889312, 0.09759337225656656, 0.078771228216827505),
}
DENSITY_ERR_ORACLE = (0.73831871269000992, 0.46130043701136451, 0.34307614124908709, 0.27610282447406738)


class TestLemma1:
    def test_small_point(self):
        r = check_lemma1_log([1.0], [10])
        assert r.details["first_inequality_holds"] and r.details["second_inequality_holds"]
        assert -log_cdf(1.0) == pytest.approx(0.17275377902344989, rel=1e-13)
        assert 2 * math.exp(log_pdf(1.0)) == pytest.approx(0.4839414490382867, rel=1e-14)

    def test_far_point(self):
        r = check_lemma1_log([40.0], [10**12])
        assert r.details["second_inequality_holds"]
        lhs = log_tail_of_max(40.0, 10**12)
        rhs = math.log(10**12) + log_pdf(40.0) - math.log(40.0)
        assert lhs == pytest.approx(-776.97742089782524, rel=1e-13)
        assert rhs == pytest.approx(-776.97679687139006, rel=1e-14)
        assert r.values[0] == pytest.approx(lhs - rhs, rel=1e-6)

    def test_default_grid(self):
        r = check_lemma1_log()
        assert r.details["t0"] == 0.5
        assert r.details["second_inequality_holds"]
        assert all(v <= 1e-9 for v in r.values)

    def test_violation_injection(self):
        r = check_lemma1_log(constant=0.5)
        assert not r.details["first_inequality_holds"]
        assert r.details["t0"] is None
        assert r.details["first_margins"][0] > 0

    def test_rejects_nonpositive_t(self):
        with pytest.raises(DomainError):
            check_lemma1_log([0.0, 1.0], [10])
        with pytest.raises(DomainError):
            check_lemma1_log([1.0], [1])

    def test_locate_t0(self):
        assert locate_t0([1, 2, 3, 4], [False, True, False, True]) == 4
        assert locate_t0([1, 2, 3], [True, True, True]) == 1
        assert locate_t0([1, 2], [True, False]) is None


def test_lemma2_upper_bound():
    r = check_lemma2_bound()
    assert r.details["holds"]
    assert all(v <= 1e-9 for v in r.values)


class TestBnLimit:
    def test_values(self):
        r = bn_limit_seq()
        assert r.ladder == tuple(BN_ORACLE)
        for v, want in zip(r.values, BN_ORACLE.values()):
            assert v == pytest.approx(want, rel=1e-12)
            assert 0.9 <= v <= 1.1
        assert r.limit == 1.0

    def test_distance_not_monotone_on_short_ladder(self):
        # |n phi(b_n)/b_n - 1| peaks near n = 1e9 before decaying
        assert not bn_limit_seq().monotone_decreasing

    def test_distance_decreasing_far_out(self):
        assert bn_limit_seq([10**10, 10**12, 10**14, 10**18]).monotone_decreasing

    def test_single_rung(self):
        r = bn_limit_seq([10**4])
        assert r.monotone_decreasing
        assert r.final_value == bn_limit_value(10**4)


class TestRateErrors:
    def test_density_finite_positive(self):
        e = density_rate_error(10**4, 3.0, 0.01)
        assert math.isfinite(e) and e > 0

    def test_density_oracle_and_decay(self):
        r = density_rate_report(LADDER, 3.0, 0.01)
        for v, want in zip(r.values, DENSITY_ERR_ORACLE):
            assert v == pytest.approx(want, rel=1e-10)
        assert r.monotone_decreasing
        assert r.final_value < 0.5

    def test_density_bad_grid(self):
        with pytest.raises(DomainError):
            density_rate_error(100, 1.0, 2.0)

    @pytest.mark.parametrize("x", sorted(TAIL_ERR_ORACLE))
    def test_tail_oracle_and_decay(self, x):
        r = tail_rate_report(LADDER, x)
        for v, want in zip(r.values, TAIL_ERR_ORACLE[x]):
            assert v == pytest.approx(want, rel=1e-10)
        assert r.monotone_decreasing
        assert r.final_value < 0.5

    def test_tail_sign(self):
        for n in LADDER:
            p = make_norm(n)
            scaled = log_tail_exact(p, 1.0) / p.log_n
            assert scaled >= -rate(1.0) - tail_rate_error(n, 1.0) - 1e-15

    def test_tail_bad_x(self):
        with pytest.raises(DomainError):
            tail_rate_error(100, 0.0)


class TestReports:
    def test_make_report(self):
        r = make_report("x", [10, 100], [0.5, 0.25])
        assert r.monotone_decreasing and r.final_value == 0.25
        assert not make_report("x", [10, 100], [0.5, 0.5]).monotone_decreasing
        with pytest.raises(ValueError):
            make_report("x", [10], [1.0, 2.0])

    def test_json_shape(self):
        for r in all_reports():
            d = json.loads(json.dumps(r.to_dict()))
            assert {"label", "ladder", "values", "monotone_decreasing", "final_value"} <= set(d)
            assert len(d["ladder"]) == len(d["values"])

    def test_deterministic(self):
        a = [r.to_dict() for r in all_reports()]
        b = [r.to_dict() for r in all_reports()]
        assert a == b

    def test_dataclass(self):
        r = bn_limit_seq()
        assert isinstance(r, ConvergenceReport)
