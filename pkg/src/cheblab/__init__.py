"""cheblab: a desk-scale laboratory for short-interval prime statistics.

Chebotarev-twisted prime counting in arithmetic progressions, averaged
progression-error reports over moduli with dyadic scans, admissible-tuple
cluster scans, modular-form coefficient statistics, and elliptic-curve trace
scans — with deterministic, byte-reproducible report emission.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .bvlab import BVParams, BVReport, BVRow, bv_error_sum, dyadic_scan, validate_params
from .chebpsi import (
    PsiQuery,
    cdt_ratio,
    frobenius_counts,
    main_term,
    psi_C,
    window_psi_C,
)
from .ellcurves import (
    BAD_REDUCTION,
    CM_CURVE,
    CURVE_2816,
    LEVEL11_CURVE,
    EllipticCurve,
    ap,
    ap_coefficient_check,
    ap_mod_clusters,
    good_residue_exists,
    rank_zero_twist_labels,
)
from .errors import (
    ArgumentError,
    CheblabError,
    ConfigError,
    DomainError,
    RangeOverflowError,
    SpecStringError,
)
from .galois import RAMIFIED, ClassInfo, GaloisContext, class_density, frobenius, make_context
from .modforms import (
    CONGRUENT_NUMBER_RULE,
    DELTA_FACTORS,
    LEVEL11_FACTORS,
    QExpansion,
    TernaryForm,
    TwistRule,
    discriminant_clusters,
    eta_product,
    gap_stats,
    nonvanishing_clusters,
    theta_ternary,
    twist_nonvanishing_proxy,
)
from .sieve import Interval, LambdaEvent, lambda_events, log_weight, primes_in, psi
from .tuples import (
    AdmissibleTuple,
    ClusterReport,
    HypothesisConfig,
    HypothesisReport,
    gen_admissible,
    is_admissible,
    scan_clusters,
    singular_series,
    verify_hypothesis,
)

__all__ = [
    "AdmissibleTuple",
    "ArgumentError",
    "BAD_REDUCTION",
    "BVParams",
    "BVReport",
    "BVRow",
    "CheblabError",
    "CM_CURVE",
    "CONGRUENT_NUMBER_RULE",
    "CURVE_2816",
    "ClassInfo",
    "ClusterReport",
    "ConfigError",
    "DELTA_FACTORS",
    "DomainError",
    "EllipticCurve",
    "GaloisContext",
    "HypothesisConfig",
    "HypothesisReport",
    "Interval",
    "LEVEL11_CURVE",
    "LEVEL11_FACTORS",
    "LambdaEvent",
    "PsiQuery",
    "QExpansion",
    "RAMIFIED",
    "RangeOverflowError",
    "SpecStringError",
    "TernaryForm",
    "TwistRule",
    "__version__",
    "ap",
    "ap_coefficient_check",
    "ap_mod_clusters",
    "bv_error_sum",
    "cdt_ratio",
    "class_density",
    "discriminant_clusters",
    "dyadic_scan",
    "eta_product",
    "frobenius",
    "frobenius_counts",
    "gap_stats",
    "gen_admissible",
    "good_residue_exists",
    "is_admissible",
    "lambda_events",
    "log_weight",
    "main_term",
    "make_context",
    "nonvanishing_clusters",
    "primes_in",
    "psi",
    "psi_C",
    "rank_zero_twist_labels",
    "scan_clusters",
    "singular_series",
    "theta_ternary",
    "twist_nonvanishing_proxy",
    "validate_params",
    "verify_hypothesis",
    "window_psi_C",
]
