"""Frobenius traces of elliptic curves and their cluster statistics.

A curve is short Weierstrass y^2 = x^3 + Ax + B with discriminant
-16(4A^3 + 27B^2); primes dividing that discriminant are treated as bad
reduction (note the -16 makes p = 2 bad for every curve here — callers who
care about 2 need a model-specific argument this module deliberately avoids).

The trace a(p) = p + 1 - #E(F_p) is evaluated as a quadratic-character sum
over x mod p, vectorized with a residue table; cost is O(p) per prime, capped
by default at p <= 10^7.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .arith import is_prime, prime_factors
from .errors import ArgumentError, RangeOverflowError, SpecStringError
from .modforms import QExpansion, TwistRule, discriminant_clusters
from .parallel import map_ordered
from .sieve import MAX_ENDPOINT, _base_primes, _segment_primes, segment_bounds
from .tuples import AdmissibleTuple, ClusterReport, default_threshold

__all__ = [
    "EllipticCurve",
    "BAD_REDUCTION",
    "AP_CAP_DEFAULT",
    "CM_CURVE",
    "CURVE_2816",
    "LEVEL11_CURVE",
    "ap",
    "ap_table",
    "good_residue_exists",
    "ap_mod_clusters",
    "rank_zero_twist_labels",
    "ap_coefficient_check",
    "parse_curve_spec",
]

AP_CAP_DEFAULT = 10**7


class _BadReductionType:
    """Sentinel for primes dividing the curve discriminant."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BAD_REDUCTION"

    def __bool__(self) -> bool:
        return False


BAD_REDUCTION = _BadReductionType()


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 = x^3 + A x + B over Q."""

    A: int
    B: int

    def __post_init__(self) -> None:
        if self.discriminant == 0:
            raise ArgumentError(
                f"curve ({self.A}, {self.B}) is singular (discriminant 0)"
            )

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.A**3 + 27 * self.B**2)

    @property
    def bad_primes(self) -> tuple[int, ...]:
        return prime_factors(abs(self.discriminant))

    def is_good(self, p: int) -> bool:
        return self.discriminant % p != 0

    @property
    def label(self) -> str:
        return f"ec:{self.A},{self.B}"


CM_CURVE = EllipticCurve(-1, 0)  # y^2 = x^3 - x, CM by i
CURVE_2816 = EllipticCurve(-4, 4)
# the weight-2 level-11 newform's curve in scaled short form (u = 6 rescaling
# of the classical minimal model; traces agree at every p not dividing 6)
LEVEL11_CURVE = EllipticCurve(-13392, -1080432)


def ap(curve: EllipticCurve, p: int, cap: int = AP_CAP_DEFAULT):
    """Trace of Frobenius, or BAD_REDUCTION at primes dividing the discriminant.

    Character-sum form: a(p) = -sum_x chi_p(x^3 + Ax + B), chi_p the quadratic
    character mod p; equivalent to p + 1 minus the projective point count.
    """
    if not is_prime(p):
        raise ArgumentError(f"ap needs a prime, got {p}")
    if not curve.is_good(p):
        return BAD_REDUCTION
    if p > cap:
        raise RangeOverflowError(
            f"ap at p = {p} exceeds the evaluation cap {cap}; raise it explicitly"
        )
    x = np.arange(p, dtype=np.int64)
    square = np.zeros(p, dtype=np.int8)
    square[(x * x) % p] = 1
    t = (x * x) % p
    t = (t * x) % p
    t = (t + (curve.A % p) * x + (curve.B % p)) % p
    chi = np.where(t == 0, 0, np.where(square[t] == 1, 1, -1))
    return -int(chi.sum())


def ap_table(curve: EllipticCurve, upto: int, cap: int = AP_CAP_DEFAULT) -> dict:
    """{p: ap or BAD_REDUCTION} for all primes p <= upto, ascending."""
    if upto < 2:
        return {}
    primes = _segment_primes(2, upto, _base_primes(upto))
    return {int(p): ap(curve, int(p), cap) for p in primes}


def good_residue_exists(
    curve: EllipticCurve, m: int, i: int, bound: int, cap: int = AP_CAP_DEFAULT
) -> int | None:
    """Smallest good prime p0 <= bound with a(p0) = i (mod m), else None."""
    if m < 2:
        raise ArgumentError(f"modulus must be >= 2, got {m}")
    if not 0 <= i < m:
        raise ArgumentError(f"residue {i} outside [0, {m})")
    if bound < 2:
        raise ArgumentError(f"bound must be >= 2, got {bound}")
    for p in _segment_primes(2, bound, _base_primes(bound)).tolist():
        if curve.is_good(p) and ap(curve, p, cap) % m == i:
            return p
    return None


def ap_mod_clusters(
    curve: EllipticCurve,
    m: int,
    i: int,
    tup: AdmissibleTuple,
    x: int,
    h: int,
    threshold: int | None = None,
    workers: int = 1,
    cap: int = AP_CAP_DEFAULT,
) -> ClusterReport:
    """Clusters of primes n + h_j of good reduction with a(n+h_j) = i (mod m).

    One sieve pass finds the primes in (x, x+h+spread]; each gets a single
    character-sum evaluation.  Prime powers and bad primes never match.
    """
    if m < 2:
        raise ArgumentError(f"modulus must be >= 2, got {m}")
    if not 0 <= i < m:
        raise ArgumentError(f"residue {i} outside [0, {m})")
    if x < 0 or h < 1:
        raise ArgumentError(f"need x >= 0 and h >= 1, got ({x}, {h})")
    T = default_threshold(tup.k) if threshold is None else threshold
    if T < 1:
        raise ArgumentError(f"threshold must be >= 1, got {T}")
    hi = x + h + tup.spread
    if hi > MAX_ENDPOINT:
        raise ArgumentError(f"window endpoint {hi} exceeds {MAX_ENDPOINT}")
    if hi > cap:
        raise RangeOverflowError(
            f"window needs traces up to {hi}, beyond the evaluation cap {cap}"
        )
    bounds = segment_bounds(x, hi)
    base = _base_primes(hi)

    def flags_chunk(b: tuple[int, int]) -> np.ndarray:
        lo, hiq = b
        out = np.zeros(hiq - lo, dtype=bool)
        for p in _segment_primes(lo + 1, hiq, base).tolist():
            if curve.is_good(p) and ap(curve, p, cap) % m == i:
                out[p - (lo + 1)] = True
        return out

    flags = np.concatenate(map_ordered(flags_chunk, bounds, workers))
    counts = np.zeros(h, dtype=np.int64)
    for off in tup.offsets:
        counts += flags[off : off + h]
    hist = np.bincount(counts, minlength=tup.k + 1)
    hits = np.nonzero(counts >= T)[0]
    return ClusterReport(
        selector=f"{curve.label} trace={i} mod {m} at primes",
        offsets=tup.offsets,
        x=x,
        h=h,
        threshold=T,
        matches=tuple((int(x + 1 + j), int(counts[j])) for j in hits.tolist()),
        histogram=tuple(int(c) for c in hist.tolist()),
    )


def rank_zero_twist_labels(
    rule: TwistRule,
    tup: AdmissibleTuple,
    a: int,
    q: int,
    x: int,
    h: int,
    threshold: int | None = None,
    conductor: int = 32,
    twist_filter: bool = True,
) -> ClusterReport:
    """Relabel proxy-positive discriminant clusters as rank-zero twist labels.

    Delegates the scan to the discriminant machinery; a proxy-positive
    fundamental discriminant d marks the twist by d as "rank 0 (conditional on
    the proxy rule)".  ``conductor`` is caller-supplied metadata (never
    computed); with ``twist_filter`` on, discriminants sharing a factor with
    4 * conductor are excluded, mirroring the usual twist coprimality side
    condition.  Match sets equal the delegate's exactly.
    """
    if conductor < 1:
        raise ArgumentError(f"conductor must be >= 1, got {conductor}")
    report = discriminant_clusters(
        rule,
        tup,
        a,
        q,
        x,
        h,
        threshold=threshold,
        coprime_to=4 * conductor if twist_filter else 1,
    )
    return replace(
        report,
        selector=f"rank0-twists[{rule.name}] (proxy-conditional) {report.selector}",
    )


def ap_coefficient_check(
    curve: EllipticCurve,
    form: QExpansion,
    upto: int,
    cap: int = AP_CAP_DEFAULT,
) -> list[tuple[int, int, int]]:
    """Compare curve traces with q-expansion coefficients at good primes.

    Returns [(p, trace, coefficient)] for every good prime p <= upto where the
    two disagree — empty means the routes are consistent on that range.
    """
    if upto > form.N:
        raise RangeOverflowError(
            f"comparison up to {upto} needs coefficients beyond the truncation {form.N}"
        )
    mismatches = []
    for p in _segment_primes(2, upto, _base_primes(max(upto, 2))).tolist():
        if not curve.is_good(p):
            continue
        trace = ap(curve, p, cap)
        if trace != form.coefficients[p]:
            mismatches.append((p, trace, form.coefficients[p]))
    return mismatches


def parse_curve_spec(spec: str) -> EllipticCurve:
    """'ec:A,B' -> the curve y^2 = x^3 + Ax + B."""
    if not spec.startswith("ec:"):
        raise SpecStringError(f"unknown curve spec {spec!r}; expected ec:A,B")
    parts = spec[3:].split(",")
    if len(parts) != 2:
        raise SpecStringError(f"malformed curve spec {spec!r}; expected ec:A,B")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise SpecStringError(f"malformed curve spec {spec!r}") from exc
    return EllipticCurve(a, b)
