"""Brute-force window statistics of the rough indicator: the ground truth.

``variance_exact`` slides a length-H window across (0, X] in cache-sized
segments, accumulating the integer moments S1 = sum of window counts and
S2 = sum of their squares; the variance is then assembled exactly from
(S1, S2) and the exact Mertens product, so no per-window rational
arithmetic ever happens.  Workers split [0, X) into disjoint chunks and
re-sieve their H-overlap; the merge is integer addition, hence the result
is bit-identical for any worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceBudgetError
from .exact import Rational, mpq, product
from .sieve import (
    DEFAULT_SEGMENT,
    PrimeTable,
    factorize_squarefree,
    mertens_product,
    nu_p,
    primes_up_to,
    rough_segment,
)

# sliding-window engines refuse to sieve beyond this
SIEVE_SPAN_BUDGET = 10**10
MOD_Q_CAP = 10**8


@dataclass(frozen=True)
class VarianceResult:
    X: int
    H: int
    y: int
    S1: int
    S2: int
    variance: Rational
    variance_float: float


def _window_moments(lo: int, hi: int, H: int, y: int, table: PrimeTable, segment: int):
    """(S1, S2) for window start points n in [lo, hi)."""
    S1 = 0
    S2 = 0
    for a in range(lo, hi, segment):
        b = min(a + segment, hi)
        bits = rough_segment(a, b - 1 + H, y, table).bits
        cum = np.concatenate(([0], np.cumsum(bits, dtype=np.int64)))
        counts = cum[H : H + (b - a)] - cum[: b - a]
        if H <= 1 << 20:
            freq = np.bincount(counts, minlength=H + 1)
            ks = np.arange(freq.size, dtype=np.int64)
            S1 += int(freq @ ks)
            S2 += int(freq @ (ks * ks))
        else:
            S1 += int(counts.sum())
            S2 += int(counts @ counts)
    return S1, S2


def default_workers() -> int:
    env = os.environ.get("ROUGHVAR_THREADS")
    if env:
        return max(1, int(env))
    return 1


def variance_exact(
    X: int,
    H: int,
    y: int,
    workers: int | None = None,
    segment: int = DEFAULT_SEGMENT,
) -> VarianceResult:
    """Exact discrete variance of window counts over (n, n+H], n = 0..X-1."""
    if X < 1 or H < 1:
        raise DomainError("X and H must be positive")
    if y < 2:
        raise DomainError("y must be at least 2")
    if X + H > SIEVE_SPAN_BUDGET:
        raise ResourceBudgetError(f"X+H={X + H} beyond sieve budget {SIEVE_SPAN_BUDGET}")
    workers = workers or default_workers()
    table = primes_up_to(y)
    if workers <= 1 or X < 4 * segment:
        S1, S2 = _window_moments(0, X, H, y, table, segment)
    else:
        bounds = [min(X, i * segment) for i in range(0, X // segment + 2)]
        chunks = [(a, b) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    lambda ab: _window_moments(ab[0], ab[1], H, y, table, segment),
                    chunks,
                )
            )
        S1 = sum(p[0] for p in parts)
        S2 = sum(p[1] for p in parts)
    P = mertens_product(y, table)
    variance = mpq(S2, X) - 2 * H * P * mpq(S1, X) + H * H * P * P
    return VarianceResult(X, H, y, S1, S2, variance, float(variance))


def variance_mod_q(q: int, H: int) -> Rational:
    """Window-count variance of residues coprime to squarefree q.

    One pass over Z/qZ; H is reduced mod q first (full cycles shift every
    window count by the same amount and leave the variance unchanged).
    """
    if H < 1:
        raise DomainError("H must be positive")
    if q < 1 or q > MOD_Q_CAP:
        raise ResourceBudgetError(f"q={q} outside (0, {MOD_Q_CAP}]")
    primes = factorize_squarefree(q)
    r = H % q
    coprime = np.ones(q, dtype=bool)
    for p in primes:
        coprime[::p] = False
    if r == 0:
        return mpq(0)
    ext = np.concatenate((coprime, coprime[:r]))
    cum = np.concatenate(([0], np.cumsum(ext, dtype=np.int64)))
    counts = cum[r : r + q] - cum[:q]  # counts[i] = #{1<=n<=r : (n+i, q)=1}
    S1 = int(counts.sum())
    # chunked exact dot: per-chunk partials stay below 2**63
    chunk = max(1, (1 << 62) // (r * r + 1))
    S2 = 0
    for a in range(0, q, chunk):
        c = counts[a : a + chunk]
        S2 += int(c @ c)
    mean = mpq(S1, q)
    return mpq(S2, q) - mean * mean


def singular_product(offsets, y: int) -> Rational:
    """prod_{p <= y} (1 - nu_p(offsets)/p), the sieve main-term density."""
    _check_offsets(offsets)
    table = primes_up_to(y)
    return product(
        mpq(int(p) - nu_p(offsets, int(p)), int(p)) for p in table.primes if p <= y
    )


def correlation_sum(lo: int, X: int, offsets, y: int, segment: int = DEFAULT_SEGMENT) -> int:
    """sum over n in (lo, lo+X] of the product of rough bits at n + each offset."""
    _check_offsets(offsets)
    if X < 1 or lo < 0:
        raise DomainError("need X >= 1 and lo >= 0")
    hmax = max(offsets)
    if lo + X + hmax > SIEVE_SPAN_BUDGET:
        raise ResourceBudgetError("correlation range beyond sieve budget")
    table = primes_up_to(y)
    total = 0
    for a in range(lo, lo + X, segment):
        b = min(a + segment, lo + X)
        bits = rough_segment(a, b + hmax, y, table).bits
        acc = bits[offsets[0] : offsets[0] + (b - a)].copy()
        for h in offsets[1:]:
            acc &= bits[h : h + (b - a)]
        total += int(np.count_nonzero(acc))
    return total


def _check_offsets(offsets) -> None:
    if not offsets:
        raise DomainError("offsets must be nonempty")
    if len(offsets) > 4:
        raise DomainError("at most 4 offsets supported")
    if len(set(offsets)) != len(offsets):
        raise DomainError("offsets must be distinct")
    if any(h < 0 for h in offsets):
        raise DomainError("offsets must be nonnegative")


def mean_identity_check(X: int, H: int, y: int) -> Rational:
    """Residual of the exact boundary identity for the mean window count.

    sum_{n=0}^{X-1} S_n  =  H*sum_{n<=X} a(n) - sum_{j<=H} a(j)(H-j)
                           + sum_{j=X+1}^{X+H} a(j)(X+H-j)

    holds exactly for H <= X; the returned rational is (lhs - rhs)/X.
    """
    if not (1 <= H <= X):
        raise DomainError("identity requires 1 <= H <= X")
    if X + H > SIEVE_SPAN_BUDGET:
        raise ResourceBudgetError("X+H beyond sieve budget")
    table = primes_up_to(y)
    lhs, _ = _window_moments(0, X, H, y, table, DEFAULT_SEGMENT)

    total_a = 0
    for a in range(0, X, DEFAULT_SEGMENT):
        b = min(a + DEFAULT_SEGMENT, X)
        total_a += rough_segment(a, b, y, table).count()
    head = rough_segment(0, H, y, table).bits
    j = np.arange(1, H + 1, dtype=np.int64)
    head_sum = int(((H - j) * head).sum())
    tail = rough_segment(X, X + H, y, table).bits
    tail_sum = int(((X + H - (X + j)) * tail).sum())
    rhs = H * total_a - head_sum + tail_sum
    return mpq(lhs - rhs, X)
