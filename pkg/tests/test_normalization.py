import math

import numpy as np
import pytest

from gextreme.errors import DomainError
from gextreme.normalization import make_norm, t_of_x, z_of_max

LADDER = [10**k for k in range(2, 13)]


def test_make_norm_oracle_values():
    p = make_norm(10**6)
    assert p.a_n == pytest.approx(5.256521769756932, rel=1e-14)
    assert p.b_n == pytest.approx(4.7660057605667181, rel=1e-14)
    p = make_norm(10**12)
    assert p.a_n == pytest.approx(7.4338443776996769, rel=1e-14)
    assert p.b_n == pytest.approx(7.0403761367210128, rel=1e-14)


def test_invariants():
    for n in LADDER + [2, 3, 2**63 - 1]:
        p = make_norm(n)
        assert p.log_n == math.log(n)
        assert p.a_n == math.sqrt(2 * math.log(n))
        assert p.b_n < p.a_n


def test_ladder_monotone():
    ps = [make_norm(n) for n in LADDER]
    a = [p.a_n for p in ps]
    b = [p.b_n for p in ps]
    gap = [abs(p.b_n / p.a_n - 1) for p in ps]
    assert all(np.diff(a) > 0)
    assert all(np.diff(b) > 0)
    assert all(np.diff(gap) < 0)


@pytest.mark.parametrize("bad", [1, 0, -5, 2**63, 2.0, 1e6, True, "10"])
def test_make_norm_rejects(bad):
    with pytest.raises(DomainError):
        make_norm(bad)


def test_numpy_integer_accepted():
    assert make_norm(np.int64(1000)) == make_norm(1000)


def test_t_of_x():
    p = make_norm(10**6)
    assert t_of_x(p, 0.0) == p.b_n
    assert t_of_x(p, 2.0) == p.b_n + p.a_n
    assert t_of_x(p, 1.0) == pytest.approx(7.394266645445184, rel=1e-14)


def test_z_of_max():
    p = make_norm(10**6)
    assert z_of_max(p, p.b_n) == 0.0
    assert z_of_max(p, t_of_x(p, 3.7)) == pytest.approx(3.7, abs=1e-12)
    assert z_of_max(p, 7.3943) == pytest.approx(1.0, abs=1e-4)


def test_round_trip_random():
    rng = np.random.default_rng(1234)
    ns = rng.integers(2, 2**62, size=1000)
    xs = rng.uniform(-5, 50, size=1000)
    for n, x in zip(ns, xs):
        p = make_norm(int(n))
        assert z_of_max(p, t_of_x(p, x)) == pytest.approx(x, rel=1e-12, abs=1e-12)


def test_non_finite():
    p = make_norm(100)
    with pytest.raises(DomainError):
        t_of_x(p, math.inf)
    with pytest.raises(DomainError):
        z_of_max(p, math.nan)
