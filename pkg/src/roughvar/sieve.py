"""Prime generation, exact prime products, and segmented rough-number sieving.

A number is *y-rough* when every prime factor exceeds y (n = 1 counts: the
condition is vacuous, and the mean-value identities need it).  The indicator
over an interval is produced by striking multiples of the primes <= y only;
no integer in the segment is ever factored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpz

from .errors import DomainError, ResourceBudgetError
from .exact import Rational, int_product, mpq

# primes_up_to refuses beyond this; a plain sieve at 10**8 is ~50 MB.
Y_CAP = 10**8
# rough_segment refuses spans beyond this budget (~64 MB of flags).
SEGMENT_BUDGET = 1 << 26
# chunk size used by the sweeping engines; cache-resident working set.
DEFAULT_SEGMENT = 1 << 22


@dataclass(frozen=True)
class PrimeTable:
    """Immutable ascending table of all primes <= y."""

    y: int
    primes: np.ndarray  # int64, ascending

    @property
    def count(self) -> int:
        return int(self.primes.size)

    def odd_primes(self) -> np.ndarray:
        return self.primes[self.primes > 2]


@dataclass(frozen=True)
class RoughSegment:
    """Membership bits of the rough indicator on (lo, hi].

    ``bits[i]`` corresponds to n = lo + 1 + i.
    """

    lo: int
    hi: int
    y: int
    bits: np.ndarray = field(repr=False)  # bool

    def __contains__(self, n: int) -> bool:
        if not (self.lo < n <= self.hi):
            raise DomainError(f"{n} outside segment ({self.lo}, {self.hi}]")
        return bool(self.bits[n - self.lo - 1])

    def count(self) -> int:
        return int(np.count_nonzero(self.bits))


def primes_up_to(y: int) -> PrimeTable:
    """All primes <= y, by a plain sieve of Eratosthenes."""
    if y < 0:
        raise DomainError("y must be nonnegative")
    if y > Y_CAP:
        raise ResourceBudgetError(f"y={y} exceeds prime table cap {Y_CAP}")
    if y < 2:
        return PrimeTable(y, np.empty(0, dtype=np.int64))
    mask = np.ones(y + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(y) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return PrimeTable(y, np.flatnonzero(mask).astype(np.int64))


def primorial(y: int, table: PrimeTable | None = None) -> mpz:
    """prod of all primes <= y, exactly."""
    table = table if table is not None and table.y >= y else primes_up_to(y)
    ps = table.primes[table.primes <= y]
    return int_product(int(p) for p in ps)


def mertens_product(y: int, table: PrimeTable | None = None) -> Rational:
    """prod_{p <= y} (1 - 1/p) as an exact rational.

    This is the density of the y-rough integers; use float() on the result
    for the mirror value.
    """
    table = table if table is not None and table.y >= y else primes_up_to(y)
    ps = table.primes[table.primes <= y]
    num = int_product(int(p) - 1 for p in ps)
    den = int_product(int(p) for p in ps)
    return mpq(num, den)


def rough_segment(lo: int, hi: int, y: int, table: PrimeTable | None = None) -> RoughSegment:
    """Rough-indicator bits for n in (lo, hi], by striking multiples of p <= y."""
    if lo < 0 or hi < lo:
        raise DomainError(f"bad segment ({lo}, {hi}]")
    if hi - lo > SEGMENT_BUDGET:
        raise ResourceBudgetError(
            f"segment of {hi - lo} integers exceeds budget {SEGMENT_BUDGET}"
        )
    bits = np.ones(hi - lo, dtype=bool)
    if y >= 2 and hi > lo:
        table = table if table is not None and table.y >= y else primes_up_to(min(y, hi))
        for p in table.primes[table.primes <= y]:
            p = int(p)
            if p > hi:
                break
            start = (lo // p + 1) * p  # first multiple of p strictly above lo
            if start <= hi:
                bits[start - lo - 1 :: p] = False
    return RoughSegment(lo, hi, y, bits)


def nu_p(offsets, p: int) -> int:
    """Number of distinct residues of the offsets mod p."""
    if not offsets:
        raise DomainError("offsets must be nonempty")
    return len({int(h) % p for h in offsets})


def factorize_squarefree(q: int) -> list[int]:
    """Prime factors of a squarefree q, ascending; DomainError otherwise.

    Trial division only; q is capped at 10**8 by the callers.
    """
    if q < 1:
        raise DomainError("q must be positive")
    factors = []
    rest = q
    for p in primes_up_to(math.isqrt(q)).primes:
        p = int(p)
        if p * p > rest:
            break
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                raise DomainError(f"q={q} is not squarefree (p={p} repeats)")
            factors.append(p)
    if rest > 1:
        factors.append(rest)
    return factors
