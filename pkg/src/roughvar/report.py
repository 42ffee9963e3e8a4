"""Report rows, admissible-range checks, and CSV/JSON/table serialization.

Every command produces a list of ordered-dict rows.  Exact rationals are
serialized as "p/q" strings (plain integers when the denominator is 1) and
never as lossy floats; float mirror columns sit next to their exact source.
Identical inputs give byte-identical output: the optional timing column is
off by default for exactly that reason.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass

from . import contour, friable, main_term, sieve, variance
from .errors import RangeRefusedError, SupportTooLargeError
from .exact import is_rational, rational_str


@dataclass(frozen=True)
class RangeCheck:
    """Admissibility of (X, H, y) for the variance-to-main-term comparison.

    stronger_ok: y >= (log H)^(1+epsilon)
    sieve_ok:    (1+a) log H / log log H <= (1-delta) log X / log y
    """

    X: int
    H: int
    y: int
    epsilon: float
    delta: float
    a: float
    u: float
    stronger_ok: bool
    sieve_ok: bool

    @property
    def ok(self) -> bool:
        return self.stronger_ok and self.sieve_ok


def range_check(X: int, H: int, y: int, epsilon: float = 0.1, delta: float = 0.1) -> RangeCheck:
    from .errors import DomainError

    if H < 16:
        raise DomainError("range check requires H >= 16 (log log H must be positive)")
    if y < 3 or X < 2:
        raise DomainError("range check requires y >= 3 and X >= 2")
    lH, ly, lX = math.log(H), math.log(y), math.log(X)
    a = math.log(lH) / ly
    u = lH / ly
    stronger_ok = y >= lH ** (1.0 + epsilon)
    sieve_ok = (1.0 + a) * lH / math.log(lH) <= (1.0 - delta) * lX / ly
    return RangeCheck(X, H, y, epsilon, delta, a, u, stronger_ok, sieve_ok)


def _fmt(value):
    if is_rational(value):
        return rational_str(value)
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def _finish(row: dict, started: float, include_timing: bool) -> dict:
    if include_timing:
        row["elapsed_s"] = round(time.perf_counter() - started, 3)
    return {k: _fmt(v) for k, v in row.items()}


def variance_row(X: int, H: int, y: int, workers: int | None = None,
                 include_timing: bool = False) -> dict:
    t0 = time.perf_counter()
    res = variance.variance_exact(X, H, y, workers=workers)
    P = sieve.mertens_product(y)
    return _finish(
        {
            "command": "variance",
            "X": X,
            "H": H,
            "y": y,
            "S1": res.S1,
            "S2": res.S2,
            "variance_exact": res.variance,
            "variance_float": res.variance_float,
            "mertens_exact": P,
            "mertens_float": float(P),
        },
        t0,
        include_timing,
    )


def mainterm_row(H: int, y: int, method: str = "auto", include_timing: bool = False) -> dict:
    t0 = time.perf_counter()
    mt = main_term.main_term_value(H, y, method=method)
    return _finish(
        {
            "command": "mainterm",
            "H": H,
            "y": y,
            "method": mt.method,
            "value_exact": mt.value,
            "value_float": float(mt.value),
        },
        t0,
        include_timing,
    )


def vq_row(q: int, H: int, include_timing: bool = False) -> dict:
    t0 = time.perf_counter()
    closed = main_term.hausman_shapiro_vq(q, H)
    brute = variance.variance_mod_q(q, H)
    return _finish(
        {
            "command": "vq",
            "q": q,
            "H": H,
            "closed_form_exact": closed,
            "brute_force_exact": brute,
            "agree": closed == brute,
            "value_float": float(closed),
        },
        t0,
        include_timing,
    )


def friable_row(x: int, y: int, include_timing: bool = False) -> dict:
    t0 = time.perf_counter()
    psi = friable.friable_count(x, y)
    row = {
        "command": "friable",
        "x": x,
        "y": y,
        "count": psi,
        "count_squarefree": friable.friable_count_squarefree(x, y),
        "count_2omega": friable.friable_count_2omega(x, y),
    }
    if x >= y >= 2:
        est = friable.psi_ht_estimate(float(x), y)
        row["saddle_estimate"] = est
        row["estimate_ratio"] = est / psi if psi else math.inf
    return _finish(row, t0, include_timing)


def saddle_row(x: float, y: int, include_timing: bool = False) -> dict:
    t0 = time.perf_counter()
    sd = friable.saddle_alpha(math.log(x), y)
    shift_gap = (1.0 - sd.alpha) * math.log(y) - sd.xi if sd.u >= 1 else math.nan
    return _finish(
        {
            "command": "saddle",
            "x": x,
            "y": y,
            "alpha": sd.alpha,
            "u": sd.u,
            "xi": sd.xi,
            "sigma2": sd.sigma2,
            "zeta_partial_alpha": sd.zeta_partial_alpha,
            "shift_gap": shift_gap,
        },
        t0,
        include_timing,
    )


def contour_row(x: float, y: int, c: float, tol: float = 1e-3,
                include_timing: bool = False) -> dict:
    t0 = time.perf_counter()
    spec = contour.ContourSpec(c=c, tolerance=tol)
    value = contour.contour_I(x, y, spec)
    try:
        reference = float(main_term.support_window_sum(x, y))
    except SupportTooLargeError:
        reference = math.nan
    return _finish(
        {
            "command": "contour",
            "x": x,
            "y": y,
            "c": c,
            "tolerance": tol,
            "integral": value,
            "exact_reference": reference,
            "abs_error": abs(value - reference) if not math.isnan(reference) else math.nan,
        },
        t0,
        include_timing,
    )


def converge_rows(H: int, y: int, X_list: list[int], epsilon: float = 0.1,
                  delta: float = 0.1, force: bool = False,
                  workers: int | None = None, include_timing: bool = False) -> list[dict]:
    checks = [range_check(X, H, y, epsilon, delta) for X in X_list]
    bad = [c for c in checks if not c.ok]
    if bad and not force:
        detail = "; ".join(
            f"X={c.X}: stronger_ok={c.stronger_ok} sieve_ok={c.sieve_ok}" for c in bad
        )
        raise RangeRefusedError(
            f"(H={H}, y={y}) violates the admissible range ({detail}); "
            "pass --force to compute anyway"
        )
    M = main_term.main_term_value(H, y).value
    rows = []
    for X, chk in zip(X_list, checks):
        t0 = time.perf_counter()
        V = variance.variance_exact(X, H, y, workers=workers).variance
        ratio = V / M if M != 0 else None
        rows.append(
            _finish(
                {
                    "command": "converge",
                    "X": X,
                    "H": H,
                    "y": y,
                    "variance_exact": V,
                    "main_term_exact": M,
                    "ratio": float(ratio) if ratio is not None else math.nan,
                    "stronger_ok": chk.stronger_ok,
                    "sieve_ok": chk.sieve_ok,
                    "a": chk.a,
                    "u": chk.u,
                },
                t0,
                include_timing,
            )
        )
    return rows


def regimes_rows(pairs: list[tuple[int, int]], include_timing: bool = False) -> list[dict]:
    rows = []
    for H, y in pairs:
        t0 = time.perf_counter()
        pred = main_term.predict(H, y)
        M = main_term.main_term_value(H, y).value
        mf = float(M)
        rows.append(
            _finish(
                {
                    "command": "regimes",
                    "H": H,
                    "y": y,
                    "u": pred.u,
                    "a": pred.a,
                    "regime": pred.regime,
                    "main_term_exact": M,
                    "main_term_float": mf,
                    "predicted": pred.predicted,
                    "ratio": mf / pred.predicted,
                    "psi": friable.friable_count(H, y),
                    "mertens_float": float(sieve.mertens_product(y)),
                    "alpha": pred.alpha,
                    "one_minus_a": 1.0 - pred.a,
                },
                t0,
                include_timing,
            )
        )
    return rows


# --- serialization -----------------------------------------------------------


def to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2, default=str) + "\n"


def to_table(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols = list(rows[0].keys())
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "csv":
        return to_csv(rows)
    if fmt == "json":
        return to_json(rows)
    if fmt == "table":
        return to_table(rows)
    from .errors import DomainError

    raise DomainError(f"unknown format {fmt!r}")
