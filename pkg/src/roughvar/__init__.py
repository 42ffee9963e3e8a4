"""roughvar: exact and asymptotic variance of rough numbers in short intervals.

Core entry points re-exported here; the HTTP surface lives in
``roughvar.service`` and the command line in ``roughvar.cli``.
"""

from .arith import (
    SupportEntry,
    corr_factor,
    enumerate_support,
    mobius_friable,
    pair_density,
    regular_factor,
    support_series,
    support_weight,
    zeta_partial,
)
from .contour import ContourSpec, contour_I, perron_single, saddle_line_check, zeta_complex
from .errors import (
    DomainError,
    RangeRefusedError,
    ResourceBudgetError,
    RoughVarError,
    SupportTooLargeError,
    TruncationError,
    UnsupportedRegimeError,
)
from .exact import Rational, rational_str
from .friable import (
    DickmanTable,
    SaddleData,
    dickman_rho,
    friable_count,
    friable_count_2omega,
    friable_count_squarefree,
    psi_ht_estimate,
    saddle_alpha,
    saddle_shift,
    variance_damping,
)
from .main_term import (
    MainTermValue,
    RegimePrediction,
    hausman_shapiro_vq,
    main_term_corr,
    main_term_direct,
    main_term_value,
    predict,
    tail_sum,
)
from .sieve import (
    PrimeTable,
    RoughSegment,
    mertens_product,
    nu_p,
    primes_up_to,
    primorial,
    rough_segment,
)
from .variance import (
    VarianceResult,
    correlation_sum,
    mean_identity_check,
    singular_product,
    variance_exact,
    variance_mod_q,
)

__version__ = "0.1.0"

__all__ = [
    "ContourSpec",
    "DickmanTable",
    "DomainError",
    "MainTermValue",
    "PrimeTable",
    "RangeRefusedError",
    "Rational",
    "RegimePrediction",
    "ResourceBudgetError",
    "RoughSegment",
    "RoughVarError",
    "SaddleData",
    "SupportEntry",
    "SupportTooLargeError",
    "TruncationError",
    "UnsupportedRegimeError",
    "VarianceResult",
    "contour_I",
    "corr_factor",
    "correlation_sum",
    "dickman_rho",
    "enumerate_support",
    "friable_count",
    "friable_count_2omega",
    "friable_count_squarefree",
    "hausman_shapiro_vq",
    "main_term_corr",
    "main_term_direct",
    "main_term_value",
    "mean_identity_check",
    "mertens_product",
    "mobius_friable",
    "nu_p",
    "pair_density",
    "perron_single",
    "predict",
    "primes_up_to",
    "primorial",
    "psi_ht_estimate",
    "rational_str",
    "regular_factor",
    "rough_segment",
    "saddle_alpha",
    "saddle_line_check",
    "saddle_shift",
    "singular_product",
    "support_series",
    "support_weight",
    "tail_sum",
    "variance_damping",
    "variance_exact",
    "variance_mod_q",
    "zeta_complex",
    "zeta_partial",
]
