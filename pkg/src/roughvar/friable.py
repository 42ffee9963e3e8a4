"""Friable (smooth) number statistics: exact counts, the Dickman function,
and the saddle point of the truncated zeta product.

Exact counts use the classic two-way recursion over (quotient, prime index)
states with memoization; the Dickman function is marched with fourth-order
Runge-Kutta from its analytic pieces on [0, 2] and stored on a fine grid
with cubic interpolation between nodes.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ResourceBudgetError
from .sieve import primes_up_to

EULER_GAMMA = 0.5772156649015329

COUNT_X_BUDGET = 10**12
MEMO_BUDGET = 10**8

RHO_STEP = 2.0**-10
RHO_UMAX = 60.0
LAMBDA_TAIL = 40.0  # rho beyond u+40 is far below double precision
RHO_SPLICE = 9.0  # beyond this the table follows the scale-matched saddle form


# ---------------------------------------------------------------------------
# exact friable counts


@lru_cache(maxsize=32)
def _prime_list(y: int) -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(y).primes)


@lru_cache(maxsize=8)
def _mobius_table(limit: int) -> np.ndarray:
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in _prime_list(limit):
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    return mu


def _squarefree_count(x: int) -> int:
    """#squarefree integers <= x, by Mobius over square divisors."""
    if x < 1:
        return 0
    r = math.isqrt(x)
    mu = _mobius_table(1 << max(r, 2).bit_length())  # pow2 sizing: few rebuilds
    d = np.arange(1, r + 1, dtype=np.int64)
    return int(np.sum(mu[1 : r + 1].astype(np.int64) * (x // (d * d))))


def _ensure_depth(primes: tuple[int, ...]) -> None:
    import sys

    need = 2 * len(primes) + 2000
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def _check_count_args(x: int, y: int) -> None:
    if x < 0 or y < 1:
        raise DomainError("need x >= 0 and y >= 1")
    if x > COUNT_X_BUDGET:
        raise ResourceBudgetError(f"x={x} beyond counting budget {COUNT_X_BUDGET}")


_count_caches: dict = {}


def _cache_for(y: int, kind: str) -> dict:
    cache = _count_caches.setdefault((y, kind), {})
    if sum(len(c) for c in _count_caches.values()) > MEMO_BUDGET:
        raise ResourceBudgetError("friable-count memoization budget exceeded")
    return cache


def _clamped(primes: tuple[int, ...], y: int, x: int, i: int) -> tuple[int, bool]:
    """Clamp the usable prime index to pi(x) within the table and decide
    whether *every* prime <= x is usable (the table holds all primes <= y,
    so that test is only conclusive for x <= y or below the next table
    prime)."""
    b = bisect.bisect_right(primes, x)
    i = min(i, b)
    complete = i == b and (b < len(primes) or x <= y)
    return i, complete


def friable_count(x: int, y: int) -> int:
    """Number of y-friable integers in [1, x]."""
    _check_count_args(x, y)
    primes = _prime_list(y)
    memo = _cache_for(y, "plain")
    _ensure_depth(primes)

    def count(x: int, i: int) -> int:
        if x < 1:
            return 0
        i, complete = _clamped(primes, y, x, i)
        if i == 0:
            return 1
        if complete:
            # every prime <= x is usable, so every n <= x is friable
            return x
        key = (x, i)
        r = memo.get(key)
        if r is None:
            p = primes[i - 1]
            r = count(x, i - 1) + count(x // p, i)
            memo[key] = r
        return r

    return count(x, len(primes))


def friable_count_squarefree(x: int, y: int) -> int:
    """Number of squarefree y-friable integers in [1, x]."""
    _check_count_args(x, y)
    primes = _prime_list(y)
    memo = _cache_for(y, "sqfree")
    _ensure_depth(primes)

    def count(x: int, i: int) -> int:
        if x < 1:
            return 0
        i, complete = _clamped(primes, y, x, i)
        if i == 0:
            return 1
        if complete:
            return _squarefree_count(x)
        key = (x, i)
        r = memo.get(key)
        if r is None:
            p = primes[i - 1]
            r = count(x, i - 1) + count(x // p, i - 1)
            memo[key] = r
        return r

    return count(x, len(primes))


def friable_count_2omega(x: int, y: int) -> int:
    """sum of 2^omega(n) over squarefree y-friable n <= x."""
    _check_count_args(x, y)
    primes = _prime_list(y)
    memo = _cache_for(y, "2omega")
    _ensure_depth(primes)

    def count(x: int, i: int) -> int:
        if x < 1:
            return 0
        i, _ = _clamped(primes, y, x, i)
        if i == 0:
            return 1
        key = (x, i)
        r = memo.get(key)
        if r is None:
            p = primes[i - 1]
            r = count(x, i - 1) + 2 * count(x // p, i - 1)
            memo[key] = r
        return r

    return count(x, len(primes))


# ---------------------------------------------------------------------------
# Dickman rho and its tail integral


@dataclass(frozen=True)
class DickmanTable:
    step: float
    umax: float
    values: np.ndarray  # rho at k*step
    logs: np.ndarray  # log rho at k*step (rho spans ~85 decades)
    prefix: np.ndarray  # cumulative trapezoid integral of rho at the nodes


def _analytic_rho(u: float) -> float:
    if u <= 1.0:
        return 1.0
    return 1.0 - math.log(u)


def _cubic(t: float, y0: float, y1: float, y2: float, y3: float) -> float:
    """Lagrange cubic through equally spaced nodes 0..3, evaluated at t."""
    return (
        -y0 * (t - 1) * (t - 2) * (t - 3) / 6.0
        + y1 * t * (t - 2) * (t - 3) / 2.0
        - y2 * t * (t - 1) * (t - 3) / 2.0
        + y3 * t * (t - 1) * (t - 2) / 6.0
    )


def _saddle_rho_log_vec(u: np.ndarray) -> np.ndarray:
    """log of the de Bruijn saddle approximation to rho, vectorized.

    Solves e^xi = 1 + u*xi by Newton from a seed above the positive root
    (f is convex there, so the iteration descends monotonically).
    """
    xi = np.log(u * np.log(u) + 1.0) + 1.0
    for _ in range(60):
        f = np.expm1(xi) - u * xi
        xi = xi - f / (np.exp(xi) - u)
    aux = np.zeros_like(u)
    term = np.ones_like(u)
    for k in range(1, 80):
        term *= xi / k
        aux += term / k
    dxi = xi / (1.0 + u * xi - u)
    return EULER_GAMMA - u * xi + aux + 0.5 * np.log(dxi / (2 * math.pi))


def _build_table() -> DickmanTable:
    """Method of steps with per-interval rescaling, spliced into the saddle
    approximation once marching error would dominate.

    On [k, k+1] march q(u) = rho(u)/rho(k) (so q starts at 1 and stays in
    [1/(u log u + ...), 1]); the slope -rho(u-1)/(u rho(k)) involves only the
    *previous* interval's values, so there is no self-feedback, and the
    rescaling keeps everything O(1).  Quadrature error still re-enters the
    delayed term at a fixed absolute size while rho keeps shrinking, so the
    relative error grows by about rho(k-1)/rho(k) per interval; by u = 9 it
    reaches ~5e-6, and past that no double-precision march can follow the
    85-decade decay.  The table therefore continues with the de Bruijn
    saddle form, rescaled to match the marched value at the splice point.
    """
    h = RHO_STEP
    per = int(round(1.0 / h))  # nodes per unit interval
    n = int(round(RHO_UMAX / h))
    us = np.arange(n + 1) * h
    logs = np.empty(n + 1)
    i2 = int(round(2.0 / h))
    logs[: i2 + 1] = [math.log(_analytic_rho(float(u))) for u in us[: i2 + 1]]

    def prev_interp(p: np.ndarray, t: float) -> float:
        # t in [0, 1]: offset inside the previous interval's node array
        j = int(t / h)
        j = max(1, min(per - 2, j))
        return _cubic(t / h - (j - 1), *p[j - 1 : j + 3])

    # previous interval [1, 2] in scaled form: rho(u)/rho(1) = 1 - log(1+t)
    prev = np.array([1.0 - math.log(1.0 + j * h) for j in range(per + 1)])
    log_rho_k = math.log(1.0 - math.log(2.0))  # log rho(2)
    for k in range(2, int(RHO_SPLICE)):
        ratio = 1.0 / prev[-1]  # rho(k-1)/rho(k)
        q = np.empty(per + 1)
        q[0] = 1.0
        for j in range(per):
            u = k + j * h
            g0 = -prev_interp(prev, j * h) * ratio / u
            gm = -prev_interp(prev, j * h + h / 2) * ratio / (u + h / 2)
            g1 = -prev_interp(prev, (j + 1) * h) * ratio / (u + h)
            q[j + 1] = q[j] + h / 6.0 * (g0 + 4.0 * gm + g1)
        base = k * per
        logs[base : base + per + 1] = log_rho_k + np.log(q)
        log_rho_k += math.log(q[-1])
        prev = q

    isp = int(RHO_SPLICE) * per
    saddle_logs = _saddle_rho_log_vec(us[isp:])
    logs[isp + 1 :] = saddle_logs[1:] + (logs[isp] - saddle_logs[0])

    values = np.exp(logs)
    values[: i2 + 1] = [_analytic_rho(float(u)) for u in us[: i2 + 1]]
    prefix = np.concatenate(([0.0], np.cumsum(0.5 * h * (values[1:] + values[:-1]))))
    return DickmanTable(h, RHO_UMAX, values, logs, prefix)


_TABLE: DickmanTable | None = None


def dickman_table() -> DickmanTable:
    global _TABLE
    if _TABLE is None:
        _TABLE = _build_table()
    return _TABLE


def dickman_rho(u: float) -> float:
    """Dickman rho; analytic on [0, 2], tabulated in log space beyond."""
    if u < 0 or u > RHO_UMAX:
        raise DomainError(f"u={u} outside [0, {RHO_UMAX}]")
    if u <= 2.0:
        return _analytic_rho(u)
    tab = dickman_table()
    h, logs = tab.step, tab.logs
    n = logs.size - 1
    j = int(u / h)
    j = max(1, min(n - 2, j))
    return math.exp(_cubic(u / h - (j - 1), *logs[j - 1 : j + 3]))


def variance_damping(u: float) -> float:
    """exp(-gamma) * integral of rho over [u, u+40].

    The damping factor multiplying H * (rough density) in the bounded-ratio
    regime; the truncated tail is below 1e-16 of the value.  Integrates the
    table slice directly (no prefix differencing), so tiny values at large u
    are not destroyed by cancellation.
    """
    if u < 0:
        raise DomainError("u must be nonnegative")
    tab = dickman_table()
    hi = min(u + LAMBDA_TAIL, tab.umax)
    if u >= tab.umax:
        return 0.0
    h = tab.step
    i0 = math.ceil(u / h)
    i1 = math.floor(hi / h)
    total = 0.0
    if i1 > i0:
        seg = tab.values[i0 : i1 + 1]
        total += float(np.sum(seg)) - 0.5 * float(seg[0] + seg[-1])
        total *= h
    if i0 * h > u:  # partial panel on the left
        total += 0.5 * (i0 * h - u) * (dickman_rho(u) + float(tab.values[i0]))
    if hi > i1 * h:  # partial panel on the right
        total += 0.5 * (hi - i1 * h) * (float(tab.values[i1]) + dickman_rho(hi))
    return math.exp(-EULER_GAMMA) * total


def rho_integral() -> float:
    """integral_0^umax rho: classical value exp(gamma)."""
    return float(dickman_table().prefix[-1])


# ---------------------------------------------------------------------------
# saddle point


def saddle_shift(u: float) -> float:
    """Nonnegative solution of e^s = 1 + u*s (positive branch for u > 1).

    s = 0 always solves the equation; for u > 1 the intended root is the
    strictly positive one.
    """
    if u < 1.0:
        raise DomainError("saddle_shift needs u >= 1")
    if u == 1.0:
        return 0.0

    def f(s: float) -> float:
        return math.expm1(s) - u * s

    lo = 1e-12
    hi = 2.0 * math.log(u * math.log(u + 2.0) + 3.0) + 4.0
    while f(hi) <= 0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15 * hi:
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class SaddleData:
    x: float
    y: int
    alpha: float
    u: float
    xi: float  # NaN when u < 1
    sigma2: float
    zeta_partial_alpha: float


def saddle_alpha(logx: float, y: int) -> SaddleData:
    """Unique positive root of sum_{p<=y} log p / (p^alpha - 1) = logx.

    The map is strictly decreasing in alpha, diverges at 0+ and vanishes at
    infinity, so plain bisection with an expanding bracket converges; also
    fills sigma2 (second log-derivative of the truncated zeta product at
    alpha) and the shift solution at u = logx/logy.
    """
    if logx < math.log(2):
        raise DomainError("logx must be at least log 2")
    if y < 2:
        raise DomainError("y must be at least 2")
    ps = primes_up_to(y).primes.astype(float)
    lp = np.log(ps)

    def total(alpha: float) -> float:
        return float(np.sum(lp / np.expm1(alpha * lp)))

    lo, hi = 1e-12, 1.0
    while total(hi) > logx:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if total(mid) > logx:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14 * hi:
            break
    alpha = 0.5 * (lo + hi)
    pa = np.exp(alpha * lp)
    sigma2 = float(np.sum(pa * lp * lp / (pa - 1.0) ** 2))
    u = logx / math.log(y)
    xi = saddle_shift(u) if u >= 1.0 else math.nan
    zpa = float(np.exp(-np.sum(np.log1p(-(ps ** -alpha)))))
    x = math.exp(logx) if logx < 700 else math.inf
    return SaddleData(x, y, alpha, u, xi, sigma2, zpa)


def psi_ht_estimate(x: float, y: int) -> float:
    """Saddle-point asymptotic for the friable count:
    zeta(alpha, y) * x^alpha / (alpha * sqrt(2*pi*sigma2))."""
    if x < y or y < 2:
        raise DomainError("need x >= y >= 2")
    sd = saddle_alpha(math.log(x), y)
    return sd.zeta_partial_alpha * x ** sd.alpha / (
        sd.alpha * math.sqrt(2.0 * math.pi * sd.sigma2)
    )
