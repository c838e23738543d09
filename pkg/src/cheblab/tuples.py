"""Admissible tuples, prime-cluster scans, and window equidistribution checks.

A tuple of distinct offsets (h_1, ..., h_k) is admissible when no prime p has
all of its residue classes covered by the offsets; only primes p <= k can
possibly cover, so admissibility carries a finite witness: for each such p, a
residue class mod p that the offsets miss.

``scan_clusters`` counts, for each n in a window (x, x+h], how many of the
shifted values n + h_i are primes of a requested Chebotarev class, reporting
the n that reach a threshold plus the full count histogram.

``verify_hypothesis`` measures the three window-level equidistribution inputs
that bounded-gap cluster arguments consume, on one window A = (x, x+h]:

  (i)   sum over q <= floor(x^theta) of max_a |#A(q,a) - #A/q|,
  (ii)  per linear form n -> n + h_i: sum over q <= floor(x^theta) coprime to
        the level B of max over residues a with gcd(a + h_i, q) = 1 of
        |#P_i(q,a) - #P_i / phi_i(q)|, with phi_i(q) = phi(h_i q)/phi(h_i)
        (phi_i = phi for the offset-zero form),
  (iii) max over q and all a of q * #A(q,a) / #A,

each reported alongside its comparison scale (count divided by
(log x)^(100 k^2); astronomically small at desk scale, reported as 0.0 after
float underflow).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import euler_phi
from .errors import ArgumentError
from .galois import GaloisContext, classify_primes
from .parallel import map_ordered
from .sieve import MAX_ENDPOINT, _base_primes, _primes_upto, _segment_primes, segment_bounds

__all__ = [
    "AdmissibleTuple",
    "ClusterReport",
    "HypothesisConfig",
    "FormDiscrepancy",
    "HypothesisReport",
    "is_admissible",
    "gen_admissible",
    "singular_series",
    "scan_clusters",
    "verify_hypothesis",
    "default_threshold",
]


def _validated_offsets(offsets) -> tuple[int, ...]:
    offs = tuple(int(h) for h in offsets)
    if not offs:
        raise ArgumentError("offset tuple may not be empty")
    if any(h < 0 for h in offs):
        raise ArgumentError(f"offsets must be non-negative, got {offs}")
    if len(set(offs)) != len(offs):
        raise ArgumentError(f"offsets must be distinct, got {offs}")
    return offs


def is_admissible(offsets) -> tuple[bool, dict[int, int] | int]:
    """(True, witness) or (False, covering prime).

    The witness maps each prime p <= k to a residue class mod p missed by the
    offsets; primes beyond k cannot cover p classes with k values.
    """
    offs = _validated_offsets(offsets)
    k = len(offs)
    witness: dict[int, int] = {}
    for p in _primes_upto(k).tolist():
        hit = {h % p for h in offs}
        if len(hit) == p:
            return False, p
        witness[p] = min(r for r in range(p) if r not in hit)
    return True, witness


@dataclass(frozen=True)
class AdmissibleTuple:
    """Sorted offsets normalized to start at 0, with a per-prime witness."""

    offsets: tuple[int, ...]
    witness: tuple[tuple[int, int], ...]

    @classmethod
    def from_offsets(cls, offsets) -> "AdmissibleTuple":
        offs = tuple(sorted(_validated_offsets(offsets)))
        offs = tuple(h - offs[0] for h in offs)
        ok, data = is_admissible(offs)
        if not ok:
            raise ArgumentError(
                f"offsets {offs} cover every residue class mod {data}; not admissible"
            )
        return cls(offs, tuple(sorted(data.items())))

    @property
    def k(self) -> int:
        return len(self.offsets)

    @property
    def spread(self) -> int:
        return self.offsets[-1]


def gen_admissible(k: int, method: str = "shifted-primes") -> AdmissibleTuple:
    """A k-tuple by construction: 'shifted-primes' takes k consecutive primes
    beyond k and subtracts the first; 'greedy' extends by the smallest offset
    that keeps the tuple admissible."""
    if k < 1:
        raise ArgumentError(f"gen_admissible needs k >= 1, got {k}")
    if method == "shifted-primes":
        limit = max(2 * k * (int(math.log(k + 2)) + 2), 16)
        primes = _primes_upto(limit)
        while len(primes[primes > k]) < k:
            limit *= 2
            primes = _primes_upto(limit)
        qs = primes[primes > k][:k].tolist()
        return AdmissibleTuple.from_offsets([q - qs[0] for q in qs])
    if method == "greedy":
        offs = [0]
        c = 1
        while len(offs) < k:
            if is_admissible(offs + [c])[0]:
                offs.append(c)
            c += 1
        return AdmissibleTuple.from_offsets(offs)
    raise ArgumentError(f"unknown generation method {method!r}")


def singular_series(offsets, cutoff: int) -> float:
    """Truncated Hardy-Littlewood product over p <= cutoff:
    prod (1 - nu_p/p) / (1 - 1/p)^k, nu_p = #distinct offset residues mod p.
    Returns 0.0 when some prime is fully covered (inadmissible tuple)."""
    offs = _validated_offsets(offsets)
    k = len(offs)
    spread = max(offs) - min(offs)
    value = 1.0
    for p in _primes_upto(cutoff).tolist():
        nu = len({h % p for h in offs}) if p <= spread else k
        if nu == p:
            return 0.0
        value *= (1.0 - nu / p) / (1.0 - 1.0 / p) ** k
    return value


def default_threshold(k: int) -> int:
    """T = max(2, ceil(log k)): the cluster-size target used by default."""
    if k < 1:
        raise ArgumentError(f"threshold needs k >= 1, got {k}")
    return max(2, math.ceil(math.log(k))) if k > 1 else 1


@dataclass(frozen=True)
class ClusterReport:
    """Shared result shape of every cluster-style scanner in the lab.

    ``selector`` names the membership rule in words (context/class, form
    nonvanishing, discriminant+proxy, ...); ``matches`` holds (n, count) for
    every n in (x, x+h] whose count reached the threshold; ``histogram[c]`` is
    the number of window points with count exactly c (sums to h).
    """

    selector: str
    offsets: tuple[int, ...]
    x: int
    h: int
    threshold: int
    matches: tuple[tuple[int, int], ...]
    histogram: tuple[int, ...]


def _class_prime_flags(
    ctx: GaloisContext, class_id: str, lo_excl: int, hi_incl: int, workers: int = 1
) -> np.ndarray:
    """Boolean array over (lo_excl, hi_incl]: value is a prime of class C."""
    ci = ctx.class_index(class_id)
    bounds = segment_bounds(lo_excl, hi_incl)

    def flags_chunk(b: tuple[int, int]) -> np.ndarray:
        a, bend = b
        out = np.zeros(bend - a, dtype=bool)
        primes = _segment_primes(a + 1, bend, _base_primes(bend))
        if len(primes):
            good = primes[classify_primes(ctx, primes) == ci]
            out[good - (a + 1)] = True
        return out

    return np.concatenate(map_ordered(flags_chunk, bounds, workers))


def _cluster_counts(
    member_flags: np.ndarray, offsets: tuple[int, ...], h: int
) -> np.ndarray:
    """counts[n-x-1] = #offsets i with member_flags[n + h_i] set, n in (x, x+h]."""
    counts = np.zeros(h, dtype=np.int64)
    for off in offsets:
        counts += member_flags[off : off + h]
    return counts


def _make_report(
    selector: str,
    offsets: tuple[int, ...],
    x: int,
    h: int,
    threshold: int,
    counts: np.ndarray,
) -> ClusterReport:
    k = len(offsets)
    hist = np.bincount(counts, minlength=k + 1)
    hits = np.nonzero(counts >= threshold)[0]
    matches = tuple(
        (int(x + 1 + i), int(counts[i])) for i in hits.tolist()
    )
    return ClusterReport(
        selector=selector,
        offsets=offsets,
        x=x,
        h=h,
        threshold=threshold,
        matches=matches,
        histogram=tuple(int(v) for v in hist.tolist()),
    )


def scan_clusters(
    ctx: GaloisContext,
    class_id: str,
    tup: AdmissibleTuple,
    x: int,
    h: int,
    threshold: int | None = None,
    workers: int = 1,
) -> ClusterReport:
    """Count class-C prime hits among n + h_i for n in (x, x+h].

    Only genuine primes count (prime powers never match).  threshold defaults
    to max(2, ceil(log k)); values above k simply yield no matches.
    """
    if x < 0 or h < 1:
        raise ArgumentError(f"need x >= 0 and h >= 1, got ({x}, {h})")
    T = default_threshold(tup.k) if threshold is None else threshold
    if T < 1:
        raise ArgumentError(f"threshold must be >= 1, got {T}")
    hi = x + h + tup.spread
    if hi > MAX_ENDPOINT:
        raise ArgumentError(f"window endpoint {hi} exceeds {MAX_ENDPOINT}")
    flags = _class_prime_flags(ctx, class_id, x, hi, workers)
    counts = _cluster_counts(flags, tup.offsets, h)
    selector = f"{ctx.label}|{class_id} primes"
    return _make_report(selector, tup.offsets, x, h, T, counts)


# ------------------------------------------------------------ hypothesis


@dataclass(frozen=True)
class HypothesisConfig:
    """Window A = (x, x+h], prime set = class-C primes of ctx, modulus cutoff
    floor(x^theta), level B (quantity (ii) skips moduli sharing a factor
    with B)."""

    ctx: GaloisContext
    class_id: str
    tup: AdmissibleTuple
    x: int
    h: int
    theta: float
    B: int = 1

    def __post_init__(self) -> None:
        self.ctx.class_index(self.class_id)
        if self.x < 3 or self.h < 1:
            raise ArgumentError(f"need x >= 3 and h >= 1, got ({self.x}, {self.h})")
        if self.theta < 0:
            raise ArgumentError(f"theta must be >= 0, got {self.theta}")
        if self.B < 1:
            raise ArgumentError(f"level B must be >= 1, got {self.B}")


@dataclass(frozen=True)
class FormDiscrepancy:
    """Quantity (ii) data for one linear form n -> n + offset."""

    offset: int
    prime_count: int
    discrepancy: float
    scale: float


@dataclass(frozen=True)
class HypothesisReport:
    window_count: int
    moduli: tuple[int, ...]
    window_discrepancy: float  # quantity (i)
    forms: tuple[FormDiscrepancy, ...]  # quantity (ii), one per offset
    max_ratio: float  # quantity (iii)
    window_scale: float

    @property
    def form_discrepancies(self) -> tuple[float, ...]:
        return tuple(f.discrepancy for f in self.forms)


def _underflow_scale(count: int, x: int, k: int) -> float:
    """count / (log x)^(100 k^2) computed in logs; 0.0 on underflow."""
    if count == 0:
        return 0.0
    log_value = math.log(count) - 100.0 * k * k * math.log(math.log(x))
    try:
        return math.exp(log_value)
    except OverflowError:  # pragma: no cover - enormous windows only
        return math.inf


def verify_hypothesis(cfg: HypothesisConfig, workers: int = 1) -> HypothesisReport:
    """Measure quantities (i)-(iii) for the configured window (module docstring)."""
    x, h, tup = cfg.x, cfg.h, cfg.tup
    k = tup.k
    Q = max(1, math.floor(x**cfg.theta))
    moduli = tuple(range(1, Q + 1))
    window = np.arange(x + 1, x + h + 1, dtype=np.int64)

    # (i): streaming residue counts per q over the raw window
    q1 = 0.0
    max_ratio = 0.0
    for q in moduli:
        counts = np.bincount(window % q, minlength=q)
        expected = h / q
        q1 += float(np.max(np.abs(counts - expected)))
        max_ratio = max(max_ratio, q * float(counts.max()) / h)

    # (ii): per-form shifted prime counts within the window
    flags = _class_prime_flags(cfg.ctx, cfg.class_id, x, x + h + tup.spread, workers)
    forms: list[FormDiscrepancy] = []
    for off in tup.offsets:
        member = flags[off : off + h]
        ns = window[member]
        total = int(len(ns))
        disc = 0.0
        for q in moduli:
            if math.gcd(q, cfg.B) != 1:
                continue
            phi_L = (
                euler_phi(q)
                if off == 0
                else int(Fraction(euler_phi(off * q), euler_phi(off)))
            )
            counts = np.bincount(ns % q, minlength=q)
            expected = total / phi_L
            admissible_res = [
                a for a in range(q) if math.gcd(a + off, q) == 1
            ]
            if admissible_res:
                disc += max(abs(float(counts[a]) - expected) for a in admissible_res)
        forms.append(
            FormDiscrepancy(
                offset=off,
                prime_count=total,
                discrepancy=disc,
                scale=_underflow_scale(total, x, k),
            )
        )

    return HypothesisReport(
        window_count=h,
        moduli=moduli,
        window_discrepancy=q1,
        forms=tuple(forms),
        max_ratio=max_ratio,
        window_scale=_underflow_scale(h, x, k),
    )
