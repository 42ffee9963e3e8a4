import numpy as np
import pytest
from gmpy2 import mpq

from roughvar.errors import DomainError, ResourceBudgetError
from roughvar.sieve import (
    SEGMENT_BUDGET,
    factorize_squarefree,
    mertens_product,
    nu_p,
    primes_up_to,
    primorial,
    rough_segment,
)

from conftest import oracle_is_prime, oracle_is_rough


def test_primes_empty_below_two():
    assert list(primes_up_to(1).primes) == []
    assert list(primes_up_to(0).primes) == []


def test_primes_small():
    assert list(primes_up_to(10).primes) == [2, 3, 5, 7]


def test_primes_thirty_against_trial_division():
    table = primes_up_to(30)
    assert table.count == 10
    assert int(table.primes[-1]) == 29
    assert list(table.primes) == [n for n in range(2, 31) if oracle_is_prime(n)]


def test_prime_table_prefix_stable():
    small = primes_up_to(30)
    big = primes_up_to(100)
    assert list(big.primes[: small.count]) == list(small.primes)
    assert (np.diff(big.primes) > 0).all()


@pytest.mark.parametrize("y,value", [(1, 1), (5, 30), (13, 30030)])
def test_primorial(y, value):
    assert primorial(y) == value


def test_primorial_ratio_property():
    for y1, y2 in [(3, 13), (10, 30), (7, 97)]:
        ratio = primorial(y2) // primorial(y1)
        expected = 1
        for p in range(y1 + 1, y2 + 1):
            if oracle_is_prime(p):
                expected *= p
        assert ratio == expected
        assert primorial(y2) % primorial(y1) == 0


@pytest.mark.parametrize("y,value", [(3, mpq(1, 3)), (10, mpq(8, 35)), (1, 1)])
def test_mertens_examples(y, value):
    assert mertens_product(y) == value


def test_mertens_reduced_and_float_mirror():
    import math

    for y in [2, 13, 97, 1009]:
        P = mertens_product(y)
        assert math.gcd(int(P.numerator), int(P.denominator)) == 1
        # mirror within 1e-15 relative of the exact rational
        assert abs(mpq(float(P)) - P) <= mpq(1, 10**15) * P
        # loose cross-check against an independent float product
        direct = 1.0
        for p in range(2, y + 1):
            if oracle_is_prime(p):
                direct *= 1.0 - 1.0 / p
        assert abs(float(P) - direct) <= 1e-13 * direct


@pytest.mark.parametrize(
    "lo,hi,y,expected",
    [
        (0, 10, 3, {1, 5, 7}),
        (0, 10, 1, set(range(1, 11))),
        (30, 36, 5, {31}),
    ],
)
def test_rough_segment_examples(lo, hi, y, expected):
    seg = rough_segment(lo, hi, y)
    assert {n for n in range(lo + 1, hi + 1) if n in seg} == expected


@pytest.mark.parametrize("y", [2, 3, 5, 13, 97])
def test_rough_segment_matches_trial_division(y, spf_table):
    seg = rough_segment(0, len(spf_table) - 1, y)
    bits = seg.bits
    for n in range(1, len(spf_table)):
        expected = n == 1 or spf_table[n] > y
        assert bool(bits[n - 1]) == expected, (n, y)


def test_rough_values_on_primes_and_small_range():
    seg = rough_segment(0, 1000, 13)
    for p in range(14, 1001):
        if oracle_is_prime(p):
            assert p in seg
    for n in range(2, 14):
        assert (n in seg) == oracle_is_rough(n, 13)
        assert not (n in seg) or n == 1


def test_rough_segment_budget():
    with pytest.raises(ResourceBudgetError):
        rough_segment(0, SEGMENT_BUDGET + 2, 3)


def test_rough_segment_bad_bounds():
    with pytest.raises(DomainError):
        rough_segment(10, 5, 3)


@pytest.mark.parametrize(
    "offsets,p,expected",
    [((0, 10), 5, 1), ((0, 1, 2), 2, 2), ((0, 6, 10), 5, 2)],
)
def test_nu_p(offsets, p, expected):
    assert nu_p(offsets, p) == expected


def test_nu_p_empty():
    with pytest.raises(DomainError):
        nu_p((), 5)


def test_factorize_squarefree():
    assert factorize_squarefree(30030) == [2, 3, 5, 7, 11, 13]
    assert factorize_squarefree(1) == []
    with pytest.raises(DomainError):
        factorize_squarefree(12)
