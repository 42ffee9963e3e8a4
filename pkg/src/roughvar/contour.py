"""Complex zeta evaluation and numerical verification of the contour
representations of the main term.

zeta runs on Euler-Maclaurin with N ~ 1.3|Im s| leading terms and twelve
Bernoulli corrections, valid for Re s > -20 and accurate near 1e-12.

Vertical-line integrals split into a Gauss-Legendre panel sweep over
|Im s| <= T plus a tail.  On lines Re s = c > 2 the integrand's Dirichlet
series converges absolutely, so the tail is summed term by term in closed
form through the exponential integral E1 -- no truncation error budget is
needed and the c > 2 route reaches ~1e-9.  On 1/2 < c < 1 no absolutely
convergent series exists; the direct route grows T until successive
doublings move the value by less than the tolerance, and the preferred
high-precision path is the residue relation: integrate on c = 3, subtract
the exact residues at s = 2 and s = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import exp1

from .arith import support_series
from .errors import DomainError, TruncationError
from .sieve import primes_up_to

# B_2, B_4, ..., B_24
_BERNOULLI = [
    1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510,
    43867 / 798, -174611 / 330, 854513 / 138, -236364091 / 2730,
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)

RE_S_FLOOR = -20.0


def _zeta_em(s: np.ndarray, nterms: int | None = None) -> np.ndarray:
    """Euler-Maclaurin zeta over an array of points (shared N)."""
    s = np.asarray(s, dtype=complex)
    tmax = float(np.max(np.abs(s.imag))) if s.size else 0.0
    N = nterms or max(20, int(math.ceil(1.3 * tmax)) + 10)
    n = np.arange(1, N, dtype=float)
    total = np.exp(-np.multiply.outer(s, np.log(n))).sum(axis=-1)
    total += N ** (1.0 - s) / (s - 1.0) + 0.5 * N ** (-s)
    poch = s.copy()
    fact = 1.0
    for k, b in enumerate(_BERNOULLI, start=1):
        fact *= (2 * k) * (2 * k - 1)
        if k > 1:
            poch = poch * (s + (2 * k - 3)) * (s + (2 * k - 2))
        total += (b / fact) * poch * N ** (1.0 - s - 2 * k)
    return total


def zeta_complex(s: complex) -> complex:
    """Riemann zeta for Re s > -20, s != 1."""
    s = complex(s)
    if abs(s - 1.0) < 1e-12:
        raise DomainError("zeta pole at s = 1")
    if s.real <= RE_S_FLOOR:
        raise DomainError(f"zeta evaluation restricted to Re s > {RE_S_FLOOR}")
    return complex(_zeta_em(np.array([s]))[0])


@dataclass(frozen=True)
class ContourSpec:
    """Vertical-line quadrature parameters.

    ``c`` is the real part of the line, ``T`` the initial truncation height
    (the direct route doubles it until the value stabilizes to ``tolerance``),
    panels use fixed-order Gauss-Legendre nodes.
    """

    c: float
    T: float = 500.0
    tolerance: float = 1e-3
    panel_order: int = 32
    route: str = "auto"  # auto | direct | residue
    max_doublings: int = 5

    def __post_init__(self):
        if self.c in (0.0, 1.0, 2.0):
            raise DomainError("c must avoid the poles at 0, 1, 2")
        if self.T <= 1.0:
            raise DomainError("T must exceed 1")
        if self.tolerance <= 0:
            raise DomainError("tolerance must be positive")


def _panel_sweep(f, a: float, b: float, width: float) -> float:
    """(1/pi) Re integral_a^b f(t) dt by fixed-order panels, left to right."""
    total = 0.0
    t0 = a
    while t0 < b:
        t1 = min(t0 + width, b)
        t = 0.5 * (t1 - t0) * _GL_NODES + 0.5 * (t0 + t1)
        total += 0.5 * (t1 - t0) * float(np.dot(_GL_WEIGHTS, f(t)).real)
        t0 = t1
    return total / math.pi


def _line_integrand(x: float, c: float, y: int | None):
    """t -> integrand on s = c + it: x^s G(s) zeta(s-1) / (s(s-1)),
    with G = 1 for the plain kernel and the support series otherwise."""
    lx = math.log(x)
    table = primes_up_to(y) if y is not None else None

    def f(t: np.ndarray) -> np.ndarray:
        s = c + 1j * t
        val = _zeta_em(s - 1) * np.exp(s * lx) / (s * (s - 1))
        if y is not None:
            val = val * support_series(s, y, table)
        return val

    return f


def _panel_width(x: float) -> float:
    # resolve the e^{it log x} oscillation: ~10 Gauss points per period
    return min(4.0, 20.0 / (abs(math.log(x)) + 4.0)) if x != 1.0 else 4.0


def _dirichlet_coeffs(x: float, y: int | None, mmax: int) -> np.ndarray:
    """Coefficients a_m of G(s) zeta(s-1) = sum a_m m^{-s} up to mmax."""
    a = np.zeros(mmax + 1)
    k = np.arange(1, mmax + 1, dtype=float)
    if y is None:
        a[1:] = k
        return a
    from .arith import enumerate_support

    for entry in enumerate_support(y, bound=mmax):
        mult = np.arange(1, mmax // entry.n + 1)
        a[entry.n * mult] += float(entry.weight) * mult
    return a


def _analytic_tail(x: float, c: float, y: int | None, T: float) -> float:
    """(1/pi) Re of the |t| > T remainder on an absolutely convergent line.

    Term m of the Dirichlet series contributes, on the upper half line,
        -i [ (x/m) E1(-w (c-1+iT)) - E1(-w (c+iT)) ],  w = log(x/m),
    with a log closed form at w = 0.  Valid for c > 2 only.
    """
    if c <= 2.0:
        raise DomainError("analytic tail needs c > 2")
    mmax = max(1 << 16, int(32 * x))
    lx = math.log(x)
    a = _dirichlet_coeffs(x, y, mmax)
    m = np.arange(1, mmax + 1, dtype=float)
    w = lx - np.log(m)
    vals = np.zeros(mmax, dtype=complex)
    nz = (a[1:] != 0) & (w != 0.0)
    vals[nz] = -1j * a[1:][nz] * (
        (x / m[nz]) * exp1(-w[nz] * (c - 1 + 1j * T))
        - exp1(-w[nz] * (c + 1j * T))
    )
    on = (a[1:] != 0) & (w == 0.0)
    vals[on] = a[1:][on] * 1j * np.log((c - 1 + 1j * T) / (c + 1j * T))
    acc = complex(vals.sum())
    # remainder estimate: the top half's phase-cancelled partial sum tracks
    # what the terms beyond mmax could still contribute
    top = abs(complex(vals[mmax // 2 :].sum()))
    if top > 1e-8 * max(1.0, abs(acc)):
        raise TruncationError(
            f"Dirichlet tail not converged by m={mmax}", tail_bound=top
        )
    return acc.real / math.pi


def _integrate_line(x: float, c: float, y: int | None, spec: ContourSpec) -> float:
    """Full line integral (1/2*pi*i) int_(c) x^s G zeta(s-1)/(s(s-1)) ds."""
    f = _line_integrand(x, c, y)
    width = _panel_width(x)
    if c > 2.0:
        main = _panel_sweep(f, 0.0, spec.T, width)
        return main + _analytic_tail(x, c, y, spec.T)
    # direct route on a slowly converging line: double T until stable
    T = spec.T
    value = _panel_sweep(f, 0.0, T, width)
    for _ in range(spec.max_doublings):
        inc = _panel_sweep(f, T, 2 * T, width)
        T *= 2
        value += inc
        if abs(inc) <= 0.5 * spec.tolerance:
            return value
    raise TruncationError(
        f"line c={c} did not stabilize to {spec.tolerance} by T={T}",
        tail_bound=abs(inc),
    )


def perron_single(x: float, c: float, spec: ContourSpec | None = None) -> float:
    """(1/2*pi*i) int_(c) zeta(s-1) x^s / (s(s-1)) ds.

    For c > 2 this equals x*floor(x) - floor(x)(floor(x)+1)/2; for
    1/2 < c < 1 it equals {x}(1-{x})/2.  The band 1 <= c <= 2 is refused.
    """
    if x <= 0:
        raise DomainError("x must be positive")
    if not (c > 2.0 or 0.5 < c < 1.0):
        raise DomainError(f"c={c} in a forbidden band; need c > 2 or 1/2 < c < 1")
    spec = spec or ContourSpec(c=c)
    if c > 2.0:
        return _integrate_line(x, c, None, spec)
    if spec.route == "direct":
        return _integrate_line(x, c, None, spec)
    # residue relation: shift from the fast line across s = 2 and s = 1
    hi = _integrate_line(x, 3.0, None, ContourSpec(c=3.0, T=spec.T))
    return hi - x * x / 2.0 + x / 2.0


def contour_I(x: float, y: int, spec: ContourSpec | None = None) -> float:
    """(1/2*pi*i) int_(c) x^s G(s) zeta(s-1)/(s(s-1)) ds for the support
    series G; equals (1/2) sum_n w(n){x/n}(1-{x/n}) on 1/2 < c < 1."""
    if x < 1:
        raise DomainError("x must be at least 1")
    if y < 3:
        raise DomainError("y must be at least 3")
    spec = spec or ContourSpec(c=0.75)
    c = spec.c
    if c > 2.0:
        return _integrate_line(x, c, y, spec)
    if not 0.5 < c < 1.0:
        raise DomainError(f"c={c} in a forbidden band; need c > 2 or 1/2 < c < 1")
    if spec.route == "direct":
        return _integrate_line(x, c, y, spec)
    hi = _integrate_line(x, 3.0, y, ContourSpec(c=3.0, T=spec.T))
    g2 = complex(support_series(2.0, y)).real
    g1 = complex(support_series(1.0, y)).real
    return hi - x * x * g2 / 2.0 + x * g1 / 2.0


def saddle_line_check(x: float, y: int, spec: ContourSpec | None = None) -> float:
    """Integral on the saddle line divided by its friable-count prediction.

    Returns I_alpha(x, y) / [ regular_factor(alpha) zeta(alpha-1)/(alpha-1)
    * friable_count(x, y) ]; the quotient drifts toward 1 as the parameters
    grow into the saddle regime.
    """
    from .arith import regular_factor
    from .friable import friable_count, saddle_alpha

    if y < 10:
        raise DomainError("saddle check needs y >= 10")
    if x < y:
        raise DomainError("saddle check needs x >= y")
    sd = saddle_alpha(math.log(x), y)
    alpha = sd.alpha
    if not 0.55 < alpha < 0.98:
        raise DomainError(
            f"saddle line alpha={alpha:.3f} too close to the poles at 1/2 and 1"
        )
    f = _line_integrand(x, alpha, y)
    T = 64.0
    value = _panel_sweep(f, 0.0, T, 2.0)
    for _ in range(4):
        inc = _panel_sweep(f, T, 2 * T, 2.0)
        T *= 2
        value += inc
        if abs(inc) <= 1e-4 * abs(value):
            break
    target = (
        complex(regular_factor(alpha, y)).real
        * zeta_complex(complex(alpha - 1)).real
        / (alpha - 1.0)
        * friable_count(int(x), y)
    )
    return value / target
