"""Exact and asymptotic evaluation of the short-interval variance main term.

Two independent exact evaluators are provided and their agreement is the
package's central self-test:

* ``main_term_direct`` sums the weighted Bernoulli shape {H/2n}(1-{H/2n})
  over the finite support (cost 2**(#odd primes <= y), independent of H);
* ``main_term_corr`` uses the exact correlation identity

      M(H, y) = H*P - H^2*P^2 + C * sum_{1<=k<H/2} (H - 2k) * corr_factor(k)

  with P the Mertens product and C the pair density (cost O(H + pi(y)),
  independent of the support size).

Both run entirely in exact rational arithmetic; fractional parts are taken
on reduced rationals, never on floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from gmpy2 import mpz

from .arith import MAX_SUPPORT_PRIMES, corr_factor, enumerate_support, pair_density
from .errors import DomainError, ResourceBudgetError, UnsupportedRegimeError
from .exact import Rational, bernoulli_weight, int_product, mpq
from .sieve import factorize_squarefree, mertens_product, primes_up_to

EULER_GAMMA = 0.5772156649015329

# correlation evaluator refuses k-sums longer than this (memory guard)
CORR_K_BUDGET = 1 << 24


@dataclass(frozen=True)
class MainTermValue:
    H: int
    y: int
    value: Rational
    method: str  # "direct" | "correlation"


@dataclass(frozen=True)
class RegimePrediction:
    """Float prediction for the main term under one asymptotic regime.

    ``alpha`` is filled only by the power_a regime (the saddle exponent for
    target log(H/2)); reports show it next to 1-a, with no accepted gap.
    """

    regime: str  # large_y | bounded_u | mid | power_a
    predicted: float
    H: int
    y: int
    u: float
    a: float
    alpha: float = math.nan


def _check_Hy(H: int, y: int) -> None:
    if H < 1:
        raise DomainError("H must be positive")
    if y < 2:
        raise DomainError("y must be at least 2")


def main_term_direct(H: int, y: int) -> Rational:
    """Support-sum evaluator; needs at most MAX_SUPPORT_PRIMES odd primes."""
    _check_Hy(H, y)
    total = mpq(0)
    for entry in enumerate_support(y):
        total += entry.weight * bernoulli_weight(mpq(H, 2 * entry.n))
    return pair_density(y) * total


def main_term_corr(H: int, y: int) -> Rational:
    """Correlation-identity evaluator; cost O(H + pi(y))."""
    _check_Hy(H, y)
    table = primes_up_to(y)
    P = mertens_product(y, table)
    value = H * P - H * H * P * P
    m = (H - 1) // 2  # number of k with 1 <= k < H/2
    if m >= 1:
        value += pair_density(y, table) * _corr_k_sum(H, m, y, table)
    return value


def _corr_k_sum(H: int, m: int, y: int, table) -> Rational:
    """sum_{k=1}^{m} (H - 2k) * corr_factor(k, y), exactly.

    Sieves num[k] = prod(p-1), den[k] = prod(p-2) over the distinct odd
    primes p <= y dividing k (both bounded by k, so int64 is safe), buckets
    k by the (num, den) pair, and recombines over the common denominator
    D = prod_{2<p<=min(y,m)} (p-2).
    """
    if m > CORR_K_BUDGET:
        raise ResourceBudgetError(
            f"correlation sum of {m} terms exceeds budget {CORR_K_BUDGET}; "
            "use main_term_direct for small y"
        )
    num = np.ones(m + 1, dtype=np.int64)
    den = np.ones(m + 1, dtype=np.int64)
    odd = [int(p) for p in table.odd_primes() if p <= min(y, m)]
    for p in odd:
        num[p::p] *= p - 1
        den[p::p] *= p - 2
    w = H - 2 * np.arange(m + 1, dtype=np.int64)
    # bucket by (num, den); within a bucket both are constant, and the
    # per-bucket weight sum stays below 2**63 (w <= H, counted m times).
    # num, den <= k <= m, so the packed key stays below m*(m+2) < 2**50.
    key = num * np.int64(m + 1) + den
    order = np.argsort(key[1:], kind="stable") + 1
    sk = key[order]
    boundaries = np.flatnonzero(np.concatenate(([True], sk[1:] != sk[:-1])))
    D = int_product(p - 2 for p in odd)
    acc = mpz(0)
    wsums = np.add.reduceat(w[order], boundaries)
    for b, ws in zip(boundaries, wsums):
        i = int(order[b])
        acc += mpz(int(num[i])) * mpz(int(ws)) * (D // mpz(int(den[i])))
    return mpq(acc, D)


def hausman_shapiro_vq(q: int, H: int) -> Rational:
    """Closed form for the window variance of totatives of squarefree q.

    (phi(q)/q)^2 sum_{r|q} [prod_{p|q, p not| r} p(p-2)/(p-1)^2]
                           * r^2/phi(r)^2 * {H/r}(1-{H/r})
    """
    if H < 1:
        raise DomainError("H must be positive")
    primes = factorize_squarefree(q)  # raises DomainError when not squarefree
    phi_over_q = mpq(int_product(p - 1 for p in primes), int_product(primes) or 1)

    def rec(i: int, r: int, weight: Rational) -> Rational:
        if weight == 0:
            return mpq(0)  # the p=2 excluded factor kills the branch early
        if i == len(primes):
            return weight * bernoulli_weight(mpq(H, r))
        p = primes[i]
        included = rec(i + 1, r * p, weight * mpq(p * p, (p - 1) * (p - 1)))
        excluded = rec(i + 1, r, weight * mpq(p * (p - 2), (p - 1) * (p - 1)))
        return included + excluded

    return phi_over_q * phi_over_q * rec(0, 1, mpq(1))


def tail_sum(x, y: int) -> Rational:
    """sum over support entries with n > x of weight(n)/n, exactly."""
    bound = mpq(x)
    total = mpq(0)
    for entry in enumerate_support(y):
        if entry.n > bound:
            total += entry.weight / entry.n
    return total


def support_window_sum(x, y: int) -> Rational:
    """(1/2) sum over the support of weight(n) {x/n}(1-{x/n}), exactly.

    This is the closed form the vertical-line integral of the weighted
    kernel must reproduce; x may be any rational (floats are taken at their
    exact binary value).
    """
    xq = mpq(x)
    total = mpq(0)
    for entry in enumerate_support(y):
        total += entry.weight * bernoulli_weight(xq / entry.n)
    return total / 2


def main_term_value(H: int, y: int, method: str = "auto") -> MainTermValue:
    """Dispatch between the two exact evaluators.

    "auto" prefers the correlation identity (production path for large y)
    and falls back to the support sum when the k-sum would blow the budget.
    """
    if method == "auto":
        m = (H - 1) // 2
        if m <= CORR_K_BUDGET:
            method = "correlation"
        elif primes_up_to(y).count - 1 <= MAX_SUPPORT_PRIMES:
            method = "direct"
        else:
            raise ResourceBudgetError(
                f"neither evaluator fits H={H}, y={y} within budgets"
            )
    if method == "correlation":
        return MainTermValue(H, y, main_term_corr(H, y), "correlation")
    if method == "direct":
        return MainTermValue(H, y, main_term_direct(H, y), "direct")
    raise DomainError(f"unknown method {method!r}")


@lru_cache(maxsize=128)
def _mertens_float(y: int) -> float:
    return float(mertens_product(y))


def predict(H: int, y: int) -> RegimePrediction:
    """Regime-selected float prediction for the main term.

    Selection policy (thresholds are artifact policy, recorded in output):
    y >= H -> large_y; H > y and u <= 10 -> bounded_u; u > 10 and a <= 0.05
    -> mid; u > 10 and 0.05 < a < 1/2 -> power_a; otherwise unsupported.
    """
    from . import friable  # deferred: friable builds tables on first use
    from .contour import zeta_complex

    if H < 16:
        raise DomainError("predict requires H >= 16 so log log H is positive")
    if y < 3:
        raise DomainError("predict requires y >= 3")
    lH, ly = math.log(H), math.log(y)
    u = lH / ly
    a = math.log(lH) / ly
    if y >= H:
        pred = H * _mertens_float(y) * (1.0 - math.exp(-EULER_GAMMA) * u)
        return RegimePrediction("large_y", pred, H, y, u, a)
    if u <= 10.0:
        pred = H * _mertens_float(y) * friable.variance_damping(u)
        return RegimePrediction("bounded_u", pred, H, y, u, a)
    if a >= 0.5:
        raise UnsupportedRegimeError(
            f"a = loglogH/logy = {a:.4f} >= 1/2: outside every regime"
        )
    psi = friable.friable_count(H, y)
    if a <= 0.05:
        pred = psi * _mertens_float(y) * math.exp(-EULER_GAMMA) / math.log(u)
        return RegimePrediction("mid", pred, H, y, u, a)
    # power_a: saddle exponent targeted at log(H/2)
    sd = friable.saddle_alpha(math.log(H / 2), y)
    alpha = sd.alpha
    ps = primes_up_to(y).primes.astype(float)
    inv_zeta_alpha = float(np.exp(np.sum(np.log1p(-(ps ** -alpha)))))
    tame = float(np.exp(np.sum(np.log1p(-(2.0 - ps ** -a) / ps))))
    pred = (
        -2.0
        * zeta_complex(complex(-a)).real
        * psi
        * inv_zeta_alpha
        * ly
        * tame
        / math.log(lH)
    )
    return RegimePrediction("power_a", pred, H, y, u, a, alpha=alpha)
