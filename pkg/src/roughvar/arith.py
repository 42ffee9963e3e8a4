"""Multiplicative weights and finite Euler products behind the main term.

The central object is the weight w(n) = prod_{p | n} p/(p-2), supported on
odd squarefree integers whose prime factors all lie in (2, y].  Its support
is the divisor lattice of the odd part of the primorial, so it is finite for
fixed y, and the generating Dirichlet polynomial

    support_series(s, y) = sum_n w(n) n^{-s} = prod_{2<p<=y} (1 + p^{1-s}/(p-2))

factors as regular_factor(s, y) * zeta_partial(s, y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DomainError, SupportTooLargeError
from .exact import Rational, mpq, product
from .sieve import PrimeTable, primes_up_to

# unbounded support enumeration is refused beyond 2**24 entries
MAX_SUPPORT_PRIMES = 24


@dataclass(frozen=True)
class SupportEntry:
    """One point of the weight's support: odd squarefree friable n."""

    n: int
    weight: Rational


def _odd_prime_factors_upto(k: int, y: int) -> list[int] | None:
    """Distinct odd primes p <= y dividing k, or None if k has a repeated
    odd factor <= y (callers that care about squarefreeness check that)."""
    out = []
    rest = k
    while rest % 2 == 0:
        rest //= 2
    p = 3
    while p * p <= rest and p <= y:
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                return None
            out.append(p)
        p += 2
    if 1 < rest <= y:
        out.append(rest)
    return out


def support_weight(n: int, y: int) -> Rational:
    """prod_{p|n} p/(p-2) when n is odd, squarefree, with every prime factor
    in (2, y]; zero otherwise.  n = 1 gives the empty product 1."""
    if n < 1:
        raise DomainError("n must be positive")
    if n == 1:
        return mpq(1)
    if n % 2 == 0:
        return mpq(0)
    w = mpq(1)
    rest = n
    p = 3
    while p * p <= rest:
        if rest % p == 0:
            rest //= p
            if rest % p == 0 or p > y:
                return mpq(0)
            w *= mpq(p, p - 2)
        p += 2
    if rest > 1:
        if rest > y:
            return mpq(0)
        w *= mpq(rest, rest - 2)
    return w


def corr_factor(k: int, y: int) -> Rational:
    """prod over odd primes p <= y dividing k of (1 - 1/p)/(1 - 2/p).

    Multiplicative in k; the pair-correlation density at shift 2k equals
    pair_density(y) times this factor.
    """
    if k < 1:
        raise DomainError("k must be positive")
    w = mpq(1)
    rest = k
    while rest % 2 == 0:
        rest //= 2
    p = 3
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            if p <= y:
                w *= mpq(p - 1, p - 2)
        p += 2
    if rest > 1 and rest <= y:
        w *= mpq(rest - 1, rest - 2)
    return w


def mobius_friable(n: int, y: int) -> int:
    """Mobius function restricted to y-friable n; 0 elsewhere."""
    if n < 1:
        raise DomainError("n must be positive")
    sign = 1
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                return 0
            if p > y:
                return 0
            sign = -sign
        p += 1 if p == 2 else 2
    if rest > 1:
        if rest > y:
            return 0
        sign = -sign
    return sign


def enumerate_support(
    y: int, bound: int | None = None, table: PrimeTable | None = None
) -> Iterator[SupportEntry]:
    """Every odd squarefree y-friable integer (<= bound when given), exactly
    once, with its exact weight; subset-lexicographic in the odd primes.

    Unbounded enumeration needs at most MAX_SUPPORT_PRIMES odd primes, since
    the full support has 2**(#odd primes) entries.
    """
    if y < 2:
        raise DomainError("y must be at least 2")
    table = table if table is not None and table.y >= y else primes_up_to(y)
    odd = [int(p) for p in table.primes if 2 < p <= y]
    if bound is None and len(odd) > MAX_SUPPORT_PRIMES:
        raise SupportTooLargeError(
            f"full support has 2**{len(odd)} entries; pass a bound"
        )
    if bound is not None and bound < 1:
        return

    def rec(start: int, n: int, w: Rational) -> Iterator[SupportEntry]:
        yield SupportEntry(n, w)
        for j in range(start, len(odd)):
            p = odd[j]
            m = n * p
            if bound is not None and m > bound:
                break  # primes ascend, so later branches overflow too
            yield from rec(j + 1, m, w * mpq(p, p - 2))

    yield from rec(0, 1, mpq(1))


def pair_density(y: int, table: PrimeTable | None = None) -> Rational:
    """prod_{2<p<=y} (1 - 2/p) exactly: the density of avoiding two residue
    classes modulo every odd prime up to y."""
    table = table if table is not None and table.y >= y else primes_up_to(y)
    return product(mpq(int(p) - 2, int(p)) for p in table.odd_primes() if p <= y)


def support_series(s, y: int, table: PrimeTable | None = None):
    """Finite product prod_{2<p<=y} (1 + p^(1-s)/(p-2)); entire in s.

    Accepts a complex scalar or a numpy array of points.
    """
    table = table if table is not None and table.y >= y else primes_up_to(y)
    arr = np.asarray(s, dtype=complex)
    out = np.ones_like(arr)
    for p in table.odd_primes():
        p = int(p)
        if p > y:
            break
        out = out * (1.0 + np.exp((1.0 - arr) * math.log(p)) / (p - 2))
    return out if isinstance(s, np.ndarray) else complex(out)


def zeta_partial(s, y: int, table: PrimeTable | None = None):
    """prod_{p<=y} (1 - p^{-s})^{-1}; poles where some p^{-s} = 1."""
    table = table if table is not None and table.y >= y else primes_up_to(y)
    arr = np.asarray(s, dtype=complex)
    out = np.ones_like(arr)
    for p in table.primes:
        p = int(p)
        if p > y:
            break
        fac = 1.0 - np.exp(-arr * math.log(p))
        if np.any(np.abs(fac) < 1e-300):
            raise DomainError(f"zeta_partial pole: p={p}, s={s}")
        out = out / fac
    return out if isinstance(s, np.ndarray) else complex(out)


def regular_factor(s, y: int, table: PrimeTable | None = None):
    """(1 - 2^{-s}) prod_{2<p<=y} (1 + (2 - p^{1-s})/(p^s (p-2))).

    Equals support_series / zeta_partial away from the partial-zeta poles,
    but stays finite on all of C.
    """
    table = table if table is not None and table.y >= y else primes_up_to(y)
    arr = np.asarray(s, dtype=complex)
    out = 1.0 - np.exp(-arr * math.log(2.0)) if y >= 2 else np.ones_like(arr)
    for p in table.odd_primes():
        p = int(p)
        if p > y:
            break
        lp = math.log(p)
        out = out * (1.0 + (2.0 - np.exp((1.0 - arr) * lp)) * np.exp(-arr * lp) / (p - 2))
    out = np.asarray(out, dtype=complex)
    return out if isinstance(s, np.ndarray) else complex(out)
