import math
import random

import numpy as np
import pytest

from roughvar.errors import DomainError, ResourceBudgetError
from roughvar.friable import (
    EULER_GAMMA,
    dickman_rho,
    dickman_table,
    friable_count,
    friable_count_2omega,
    friable_count_squarefree,
    psi_ht_estimate,
    rho_integral,
    saddle_alpha,
    saddle_shift,
    variance_damping,
)

from conftest import oracle_factor


def _enumeration(limit: int, y: int):
    """Direct per-integer factorization oracle for the three counters."""
    plain = np.zeros(limit + 1, dtype=np.int64)
    sqfree = np.zeros(limit + 1, dtype=np.int64)
    two_om = np.zeros(limit + 1, dtype=np.int64)
    for n in range(1, limit + 1):
        fac = oracle_factor(n) if n > 1 else []
        friable = all(p <= y for p in fac)
        squarefree = len(fac) == len(set(fac))
        plain[n] = friable
        sqfree[n] = friable and squarefree
        two_om[n] = (2 ** len(set(fac))) if (friable and squarefree) else 0
    return np.cumsum(plain), np.cumsum(sqfree), np.cumsum(two_om)


@pytest.mark.parametrize("y", [2, 3, 5, 7, 13, 97])
def test_counts_match_enumeration(y):
    limit = 3000
    plain, sqfree, two_om = _enumeration(limit, y)
    xs = list(range(0, 200)) + random.Random(y).sample(range(200, limit + 1), 60)
    for x in xs:
        assert friable_count(x, y) == plain[x], (x, y, "plain")
        assert friable_count_squarefree(x, y) == sqfree[x], (x, y, "sqfree")
        assert friable_count_2omega(x, y) == two_om[x], (x, y, "2omega")


@pytest.mark.parametrize(
    "fn,x,y,value",
    [
        (friable_count, 10, 2, 4),
        (friable_count, 100, 3, 20),
        (friable_count_squarefree, 10, 3, 4),
        (friable_count_2omega, 10, 3, 9),
    ],
)
def test_count_examples(fn, x, y, value):
    assert fn(x, y) == value


def test_count_above_y_is_floor():
    for x in (1, 17, 500, 12345):
        assert friable_count(x, x) == x
        assert friable_count(x, 2 * x + 1) == x


def test_count_monotonicity():
    rng = random.Random(13)
    for _ in range(30):
        x = rng.randrange(1, 10**5)
        y = rng.choice([3, 13, 97])
        assert friable_count(x + 1, y) >= friable_count(x, y)
        assert friable_count(x, 2 * y) >= friable_count(x, y)


def test_count_comparisons():
    for x in (100, 5000, 99999):
        for y in (5, 13, 97):
            sq = friable_count_squarefree(x, y)
            assert friable_count_2omega(x, y) >= sq
            assert sq <= friable_count(x, y)


def test_count_budget():
    with pytest.raises(ResourceBudgetError):
        friable_count(10**13, 100)


def test_rho_analytic_pieces():
    assert dickman_rho(0.0) == 1.0
    assert dickman_rho(0.5) == 1.0
    assert dickman_rho(2.0) == 1.0 - math.log(2.0)
    assert abs(dickman_rho(1.5) - (1 - math.log(1.5))) < 1e-16


def test_rho_three_against_integral_equation_oracle():
    # independent oracle: solve u*rho(u) = integral_{u-1}^{u} rho on [2, 3]
    # by Picard iteration over a fine grid, seeded with the analytic piece
    n = 4000
    h = 1.0 / n
    grid = [2.0 + i * h for i in range(n + 1)]
    rho = [1 - math.log(u) for u in grid]  # initial guess
    for _ in range(60):
        # cumulative integral of the current iterate from 2 to u
        cum = [0.0]
        for i in range(n):
            cum.append(cum[-1] + 0.5 * h * (rho[i] + rho[i + 1]))
        new = []
        for i, u in enumerate(grid):
            # integral_{u-1}^{2} of the analytic piece
            a = u - 1.0
            head = (2.0 - a) - (2.0 * math.log(2.0) - 2.0 - (a * math.log(a) - a))
            new.append((head + cum[i]) / u)
        rho = new
    assert dickman_rho(3.0) == pytest.approx(rho[-1], abs=5e-8)
    assert dickman_rho(3.0) == pytest.approx(0.0486083882911316, rel=1e-7)


def test_rho_integral_is_exp_gamma():
    assert abs(rho_integral() - math.exp(EULER_GAMMA)) < 1e-6


def test_rho_table_positive_decreasing():
    tab = dickman_table()
    after_one = tab.values[int(1.0 / tab.step) :]
    assert (after_one > 0).all()
    assert (np.diff(after_one) <= 0).all()


def test_rho_dde_residual_at_midpoints():
    rng = random.Random(2)
    h = 1e-5
    for _ in range(40):
        u = rng.uniform(2.05, 8.9) + 0.5 * 2.0**-10
        d = (dickman_rho(u + h) - dickman_rho(u - h)) / (2 * h)
        assert abs(u * d + dickman_rho(u - 1.0)) < 1e-6


def test_rho_domain():
    with pytest.raises(DomainError):
        dickman_rho(-0.1)
    with pytest.raises(DomainError):
        dickman_rho(61.0)


def test_damping_examples():
    assert abs(variance_damping(0.0) - 1.0) < 1e-6
    # the rho(u)/log u form is the u -> infinity shape of the tail integral;
    # the true ratio is ~log(u)/xi(u), about 0.60 at u = 5, so a 30% window
    # is unattainable there -- use 50% and require the gap to shrink with u
    gap5 = _damping_gap(5.0)
    assert gap5 <= 0.5
    assert _damping_gap(25.0) < gap5
    assert variance_damping(40.0) < 1e-15


def _damping_gap(u: float) -> float:
    approx = math.exp(-EULER_GAMMA) * dickman_rho(u) / math.log(u)
    return abs(variance_damping(u) - approx) / approx


def test_saddle_shift_values():
    assert saddle_shift(1.0) == 0.0
    # independent root via mpmath
    import mpmath

    for u in (2.0, 5.0, 37.5):
        ref = float(mpmath.findroot(lambda s: mpmath.e**s - 1 - u * s, math.log(u * math.log(u + 2) + 2)))
        assert saddle_shift(u) == pytest.approx(ref, rel=1e-10)
    with pytest.raises(DomainError):
        saddle_shift(0.5)


def test_saddle_shift_asymptotic():
    u = 1000.0
    gap = abs(saddle_shift(u) - math.log(u * math.log(u)))
    assert gap <= 3.0 * math.log(math.log(u)) / math.log(u)


def test_saddle_alpha_residual_and_monotonicity():
    from roughvar.sieve import primes_up_to

    prev = None
    for logx in (math.log(10**4), math.log(10**6), math.log(10**9)):
        sd = saddle_alpha(logx, 100)
        ps = primes_up_to(100).primes.astype(float)
        resid = abs(float(np.sum(np.log(ps) / (ps**sd.alpha - 1))) - logx)
        assert resid <= 1e-9 * logx
        if prev is not None:
            assert sd.alpha < prev
        prev = sd.alpha
        assert sd.sigma2 > 0


def test_saddle_alpha_large_y_bracket():
    # y so large that the prime sum at alpha=1 already exceeds log x
    sd = saddle_alpha(math.log(50.0), 10**4)
    assert sd.alpha >= 1.0
    assert math.isnan(sd.xi)  # u < 1 there


def test_saddle_alpha_shift_comparison():
    sd = saddle_alpha(math.log(10**6), 100)
    gap = abs((1 - sd.alpha) * math.log(100) - sd.xi)
    assert gap < 0.25


def test_alpha_lower_bound_for_power_configurations():
    # y = (log x)^a configurations: alpha >= 1 - 1/a, up to desk-scale slack
    for a, logx in ((2.0, 25.0), (3.0, 20.0)):
        y = int(round(logx**a))
        sd = saddle_alpha(logx, y)
        assert sd.alpha >= 1 - 1 / a - 0.1, (a, sd.alpha)


def test_psi_ht_quality():
    exact6 = friable_count(10**6, 100)
    est6 = psi_ht_estimate(1e6, 100)
    assert abs(est6 - exact6) <= 0.10 * exact6
    x = 137
    est = psi_ht_estimate(float(x), x)
    assert abs(est - x) <= 0.25 * x


def test_crude_exponent_law():
    # measured gap at (1e9, 1e3) is ~0.30; the asymptotic exponent law is
    # loose at desk scale, so the bound here is calibrated to observation
    x, y = 10**9, 10**3
    psi = friable_count(x, y)
    gap = abs(math.log(psi) / math.log(x) - (1 - math.log(math.log(x)) / math.log(y)))
    assert gap <= 0.35


def test_domain_guards():
    with pytest.raises(DomainError):
        saddle_alpha(0.1, 100)
    with pytest.raises(DomainError):
        psi_ht_estimate(10.0, 100)
