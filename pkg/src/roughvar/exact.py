"""Exact rational arithmetic helpers.

All identity checks in this package run on arbitrary-precision rationals;
floats are derived mirrors, never the source of truth.  ``gmpy2.mpq`` is the
carrier type: GMP keeps products over every prime up to 10**6 and beyond
cheap, where ``fractions.Fraction`` would spend minutes in quadratic gcds.
"""

from __future__ import annotations

from typing import Iterable

import gmpy2
from gmpy2 import mpq, mpz

Rational = mpq

ZERO = mpq(0)
ONE = mpq(1)


def rational(num, den=1) -> Rational:
    return mpq(num, den)


def is_rational(value) -> bool:
    return isinstance(value, type(ONE))


def product(factors: Iterable) -> Rational:
    """Balanced product of rationals; keeps intermediate operands similar
    in size so GMP multiplication stays near its fast regime."""
    vals = [mpq(v) for v in factors]
    if not vals:
        return mpq(1)
    while len(vals) > 1:
        nxt = [vals[i] * vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def int_product(factors: Iterable[int]) -> mpz:
    vals = [mpz(v) for v in factors]
    if not vals:
        return mpz(1)
    while len(vals) > 1:
        nxt = [vals[i] * vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def frac_part(x: Rational) -> Rational:
    """{x} for a nonnegative rational, exactly."""
    n, d = x.numerator, x.denominator
    return mpq(n - (n // d) * d, d)


def bernoulli_weight(x: Rational) -> Rational:
    """{x}(1 - {x}), the periodic second-Bernoulli shape used throughout."""
    f = frac_part(x)
    return f * (1 - f)


def rational_str(x) -> str:
    """Serialize exactly: "p/q", or plain integer string when q == 1."""
    return str(mpq(x))


def mirror(x) -> float:
    """Float mirror of an exact value."""
    return float(x)
