"""Shared brute-force oracles.

Everything here is deliberately naive (trial division, double loops) and
independent of the package's sieving/recursion paths; expected values in
the tests come from these, never from the code under test.
"""

from __future__ import annotations

import math

import pytest
from gmpy2 import mpq

ORACLE_LIMIT = 100_000


def trial_smallest_factor(n: int) -> int:
    if n < 2:
        return 0
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


@pytest.fixture(scope="session")
def spf_table() -> list[int]:
    """Smallest prime factor for every n <= ORACLE_LIMIT, by trial division."""
    return [trial_smallest_factor(n) for n in range(ORACLE_LIMIT + 1)]


def oracle_is_rough(n: int, y: int) -> bool:
    if n == 1:
        return True
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            if d <= y:
                return False
            m //= d
        else:
            d += 1
    return m > y or m == 1


def oracle_is_prime(n: int) -> bool:
    return n >= 2 and trial_smallest_factor(n) == n


def oracle_mobius(n: int) -> int:
    sign = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            sign = -sign
        d += 1
    if n > 1:
        sign = -sign
    return sign


def oracle_factor(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def oracle_brute_variance(X: int, H: int, y: int) -> mpq:
    """Direct double-loop window variance; keep X*(X+H) small."""
    alpha = [1 if oracle_is_rough(n, y) else 0 for n in range(1, X + H + 1)]
    dens = mpq(1)
    for p in range(2, y + 1):
        if oracle_is_prime(p):
            dens *= mpq(p - 1, p)
    total = mpq(0)
    for n in range(X):
        count = sum(alpha[n : n + H])
        dev = count - H * dens
        total += dev * dev
    return total / X


def oracle_brute_vq(q: int, H: int) -> mpq:
    counts = []
    for i in range(q):
        counts.append(sum(1 for n in range(1, H + 1) if math.gcd(n + i, q) == 1))
    phi = sum(1 for n in range(1, q + 1) if math.gcd(n, q) == 1)
    mean = mpq(H * phi, q)
    return sum((c - mean) ** 2 for c in counts) / q
