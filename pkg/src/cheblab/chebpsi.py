"""Chebotarev-twisted prime counting in arithmetic progressions.

The twisted von Mangoldt weight attaches to a prime power n = p^m the weight
log p exactly when p is unramified and the m-th power of the Frobenius class
of p lands in the requested class C.  ``psi_C`` sums those weights over
n <= x with n ≡ a (mod q); ``window_psi_C`` does the same over a half-open
window (N, N+y].  The expected main term for a window of length y is
(|C|/|G|) * y / phi(q), defined only for moduli coprime to every ramified
prime.

Accumulation follows the sieve module's convention: single queries fold
weights in ascending n with one running double, so partition identities over
classes and residues are bit-exact at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .arith import euler_phi
from .errors import ArgumentError, DomainError
from .galois import GaloisContext, classify_primes, power_index
from .parallel import map_ordered
from .sieve import EventSegment, Interval, build_event_segment, segment_bounds

__all__ = [
    "ChebotarevEvent",
    "PsiQuery",
    "cheb_events",
    "psi_C",
    "window_psi_C",
    "main_term",
    "cdt_ratio",
    "frobenius_counts",
    "classified_segment",
    "iter_classified_segments",
]


@dataclass(frozen=True)
class ChebotarevEvent:
    """A prime-power event together with its (power-adjusted) class token."""

    n: int
    p: int
    m: int
    weight: float
    class_id: str


@dataclass(frozen=True)
class PsiQuery:
    """Arguments of a twisted summatory evaluation psi_C(x; q, a)."""

    ctx: GaloisContext
    class_id: str
    x: int
    q: int = 1
    a: int = 1

    def __post_init__(self) -> None:
        self.ctx.class_index(self.class_id)  # validate the token
        if self.x < 0:
            raise ArgumentError(f"psi_C needs x >= 0, got {self.x}")
        if self.q < 1:
            raise ArgumentError(f"modulus must be >= 1, got {self.q}")
        if math.gcd(self.a, self.q) != 1:
            raise ArgumentError(
                f"residue {self.a} shares a factor with modulus {self.q}"
            )


def classified_segment(
    ctx: GaloisContext, bounds: tuple[int, int]
) -> tuple[EventSegment, np.ndarray]:
    """Events of (bounds[0], bounds[1]] plus per-event class indices (-1 ramified).

    Classes of prime powers are the power_index of the base prime's class.
    Pure function of its arguments — safe for any worker to compute.
    """
    seg = build_event_segment(*bounds)
    cls = classify_primes(ctx, seg.ps)
    if len(seg.ms) and seg.ms.max() > 1:
        for i in np.nonzero(seg.ms > 1)[0].tolist():
            base = int(cls[i])
            if base >= 0:
                cls[i] = power_index(ctx, base, int(seg.ms[i]))
    return seg, cls


def iter_classified_segments(
    ctx: GaloisContext,
    lo_excl: int,
    hi_incl: int,
    segment_size: int | None = None,
    cuts: Iterable[int] = (),
) -> Iterator[tuple[EventSegment, np.ndarray]]:
    for bounds in segment_bounds(lo_excl, hi_incl, segment_size, cuts):
        yield classified_segment(ctx, bounds)


def cheb_events(ctx: GaloisContext, interval: Interval) -> list[ChebotarevEvent]:
    """Ascending twisted events in the window; ramified prime powers dropped."""
    out: list[ChebotarevEvent] = []
    ids = ctx.class_ids()
    for seg, cls in iter_classified_segments(ctx, interval.start, interval.hi):
        for n, p, m, w, ci in zip(
            seg.ns.tolist(), seg.ps.tolist(), seg.ms.tolist(), seg.ws.tolist(),
            cls.tolist(),
        ):
            if ci >= 0:
                out.append(ChebotarevEvent(n, p, m, w, ids[ci]))
    return out


def _fold_window(
    ctx: GaloisContext, class_id: str, lo_excl: int, hi_incl: int, q: int, a: int
) -> float:
    """Ascending-order fold of class/residue-selected weights over (lo, hi]."""
    ci = ctx.class_index(class_id)
    target = a % q
    total = 0.0
    for seg, cls in iter_classified_segments(ctx, lo_excl, hi_incl):
        mask = cls == ci
        if q > 1:
            mask &= (seg.ns % q) == target
        for w in seg.ws[mask].tolist():
            total += w
    return total


def psi_C(query: PsiQuery) -> float:
    """Twisted summatory function psi_C(x; q, a) for the query's class."""
    if query.x < 2:
        return 0.0
    return _fold_window(query.ctx, query.class_id, 0, query.x, query.q, query.a)


def window_psi_C(
    ctx: GaloisContext,
    class_id: str,
    N: int,
    y: int,
    q: int = 1,
    a: int = 1,
) -> float:
    """psi_C(N+y; q, a) - psi_C(N; q, a) in a single pass over (N, N+y]."""
    if y < 0:
        raise ArgumentError(f"window length must be >= 0, got {y}")
    if y == 0:
        return 0.0
    PsiQuery(ctx, class_id, N + y, q, a)  # validation only
    Interval(N, y)  # range check
    return _fold_window(ctx, class_id, N, N + y, q, a)


def main_term(ctx: GaloisContext, class_id: str, y, q: int) -> float:
    """(|C|/|G|) * y / phi(q); requires gcd(q, ramified primes) = 1."""
    info = ctx.info(class_id)
    if q < 1:
        raise ArgumentError(f"modulus must be >= 1, got {q}")
    for p in ctx.ramified_primes:
        if q % p == 0:
            raise DomainError(
                f"modulus {q} shares ramified prime {p} with context {ctx.label!r}; "
                "the progression density is not |C|/|G| / phi(q) there"
            )
    if isinstance(y, int):
        return float(Fraction(info.size, ctx.group_order) * Fraction(y, euler_phi(q)))
    return info.size / ctx.group_order * y / euler_phi(q)


def cdt_ratio(
    ctx: GaloisContext, class_id: str, x: int, h: int, q: int = 1, a: int = 1
) -> float:
    """window_psi_C(x, h; q, a) divided by main_term(h, q).

    Raises DomainError when the main term vanishes (h = 0).
    """
    if h < 0:
        raise ArgumentError(f"window length must be >= 0, got {h}")
    main = main_term(ctx, class_id, h, q) if h > 0 else 0.0
    if main == 0.0:
        raise DomainError("main term is zero; the CDT ratio is undefined")
    return window_psi_C(ctx, class_id, x, h, q, a) / main


def frobenius_counts(
    ctx: GaloisContext, x: int, workers: int = 1
) -> dict[str, int]:
    """# of unramified primes p <= x in each class (every class keyed).

    Segment-parallel with a fixed merge order; identical for any worker count.
    """
    if x < 0:
        raise ArgumentError(f"frobenius_counts needs x >= 0, got {x}")
    k = len(ctx.classes)
    counts = np.zeros(k, dtype=np.int64)
    if x >= 2:
        bounds = segment_bounds(0, x)

        def count_one(b: tuple[int, int]) -> np.ndarray:
            seg, cls = classified_segment(ctx, b)
            primes_only = cls[seg.ms == 1]
            good = primes_only[primes_only >= 0]
            return np.bincount(good, minlength=k).astype(np.int64)

        for part in map_ordered(count_one, bounds, workers):
            counts += part
    return {c.class_id: int(counts[i]) for i, c in enumerate(ctx.classes)}
