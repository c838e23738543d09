"""Averaged short-interval progression error over moduli (BV-style reports).

For a context/class pair and a scale x, the statistic sums over moduli
q <= Q coprime to every ramified prime the worst observed deviation

    max_a max_(N, y) | psi_C(N+y; q, a) - psi_C(N; q, a) - (|C|/|G|) y / phi(q) |

with a ranging over residues coprime to q (exact max) and (N, y) over a
log-spaced sample grid in [x/2, x] x [1, h] that always contains the corner
(N = x, y = h) (sampled max, so every reported row is a lower bound for the
true sup).  Defaults follow the short-interval parametrization h = ceil(x^(1-delta)),
Q = floor(x^theta); strict mode enforces the parameter window

    0 <= delta < 2/(5 n_E)   and   0 <= theta < (1/3) (2/(5 n_E) - delta)

where n_E comes from the class being scanned.  Reports carry the total E,
the normalized ratio E (log x)^D / h, and the GRH comparison scale
sqrt(x) * (log(Qx))^2.

For background, two classical unconditional parameter tables are recorded as
documentation constants only (no logic depends on them):
``TIMOFEEV_DELTA_RANGE`` — the rational-modulus short-interval range
delta < 5/12 (theta up to 1/30ish scales), and ``BALOG_ONO_DELTA_BOUNDS`` —
field-degree-dependent exponents delta(n) = 5/12 (n=1), 3/8 (n=2), 1/n (n>=3).

Determinism: one sieve pass over (x/2, x+h] feeds every cell; the pass is cut
into canonical segments aligned with all window endpoints, each segment's
per-residue class-C mass is computed independently, and partial sums merge in
ascending segment order.  Reports are therefore byte-identical for any worker
count.  Row maxima break ties by first occurrence in (a, N, y) iteration
order (a ascending, then N, then y).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .chebpsi import classified_segment, main_term
from .errors import ArgumentError, ConfigError
from .galois import GaloisContext
from .parallel import map_ordered
from .sieve import MAX_ENDPOINT, segment_bounds

__all__ = [
    "BVParams",
    "BVRow",
    "BVReport",
    "validate_params",
    "bv_error_sum",
    "dyadic_scan",
    "TIMOFEEV_DELTA_RANGE",
    "BALOG_ONO_DELTA_BOUNDS",
]

# Documentation constants (classical unconditional ranges; informational only).
TIMOFEEV_DELTA_RANGE = (0.0, 5.0 / 12.0)
BALOG_ONO_DELTA_BOUNDS = {1: 5.0 / 12.0, 2: 3.0 / 8.0, 3: 1.0 / 3.0}


@dataclass(frozen=True)
class BVParams:
    """Configuration of one averaged-error report.

    ``h`` and ``Q`` default to ceil(x^(1-delta)) and floor(x^theta) when left
    as None.  ``n_grid`` / ``y_grid`` give the sample counts of the log-spaced
    N and y grids (1 collapses a grid to the corner value).
    """

    ctx: GaloisContext
    class_id: str
    x: int
    delta: float
    theta: float
    D: float = 1.0
    h: int | None = None
    Q: int | None = None
    n_grid: int = 8
    y_grid: int = 8
    strict: bool = True

    def __post_init__(self) -> None:
        self.ctx.class_index(self.class_id)
        if self.x < 4:
            raise ArgumentError(f"bv scale x must be >= 4, got {self.x}")
        if not (0.0 <= self.delta <= 1.0):
            raise ArgumentError(f"delta must lie in [0, 1], got {self.delta}")
        if self.theta < 0.0:
            raise ArgumentError(f"theta must be >= 0, got {self.theta}")
        if self.n_grid < 1 or self.y_grid < 1:
            raise ConfigError("grid sizes must be >= 1 (the grid may not be empty)")
        if self.h is not None and self.h < 1:
            raise ConfigError(f"explicit h must be >= 1, got {self.h}")
        if self.Q is not None and self.Q < 1:
            raise ConfigError(f"explicit Q must be >= 1, got {self.Q}")

    def resolved_h(self) -> int:
        return self.h if self.h is not None else math.ceil(self.x ** (1.0 - self.delta))

    def resolved_Q(self) -> int:
        return self.Q if self.Q is not None else math.floor(self.x**self.theta)


@dataclass(frozen=True)
class BVRow:
    """Worst observed cell for one modulus."""

    q: int
    a_star: int
    N_star: int
    y_star: int
    observed: float
    main_term: float
    abs_error: float


@dataclass(frozen=True)
class BVReport:
    params: BVParams
    x: int
    h: int
    Q: int
    moduli: tuple[int, ...]
    N_values: tuple[int, ...]
    y_values: tuple[int, ...]
    rows: tuple[BVRow, ...]
    E: float
    normalized_ratio: float
    grh_comparator: float


def validate_params(n_E: int, delta: float, theta: float) -> str | None:
    """None when (delta, theta) sit inside the short-interval window for n_E;
    otherwise a human-readable violation description."""
    if n_E < 1:
        raise ArgumentError(f"n_E must be >= 1, got {n_E}")
    if delta < 0 or theta < 0:
        return f"delta and theta must be nonnegative, got ({delta}, {theta})"
    delta_max = 2.0 / (5.0 * n_E)
    if delta >= delta_max:
        return f"delta = {delta} violates delta < 2/(5 n_E) = {delta_max}"
    theta_max = (delta_max - delta) / 3.0
    if theta >= theta_max:
        return (
            f"theta = {theta} violates theta < (1/3)(2/(5 n_E) - delta) = {theta_max}"
        )
    return None


def _log_grid(lo: int, hi: int, count: int) -> tuple[int, ...]:
    """Ascending deduped integer samples, geometric between lo and hi, hi always
    included (count = 1 gives just hi)."""
    if hi < lo:
        raise ConfigError(f"empty grid range [{lo}, {hi}]")
    if count == 1:
        return (hi,)
    pts = np.geomspace(max(lo, 1), hi, count)
    vals = sorted({min(max(int(round(v)), lo), hi) for v in pts})
    if vals[-1] != hi:
        vals.append(hi)
    return tuple(vals)


def _admitted_moduli(ctx: GaloisContext, Q: int) -> tuple[int, ...]:
    return tuple(
        q
        for q in range(1, Q + 1)
        if all(q % p != 0 for p in ctx.ramified_primes)
    )


def bv_error_sum(params: BVParams, workers: int = 1) -> BVReport:
    """One report: exact-in-a, grid-sampled maxima per admitted modulus."""
    ctx, class_id, x = params.ctx, params.class_id, params.x
    if params.strict:
        info = ctx.info(class_id)
        violation = validate_params(info.n_E, params.delta, params.theta)
        if violation is not None:
            raise ConfigError(f"strict parameter check failed: {violation}")
    h = params.resolved_h()
    Q = params.resolved_Q()
    if Q >= x:
        raise ConfigError(f"modulus cutoff Q = {Q} must be smaller than x = {x}")
    if x + h > MAX_ENDPOINT:
        raise ConfigError(f"window endpoint {x + h} exceeds {MAX_ENDPOINT}")
    base = x // 2
    N_values = _log_grid(base, x, params.n_grid)
    y_values = _log_grid(1, h, params.y_grid)
    moduli = _admitted_moduli(ctx, Q)

    breakpoints = sorted(
        {n for n in N_values} | {n + y for n in N_values for y in y_values}
    )
    ci = ctx.class_index(class_id)
    bounds = segment_bounds(base, breakpoints[-1], cuts=breakpoints)

    def segment_mass(b: tuple[int, int]) -> list[np.ndarray]:
        seg, cls = classified_segment(ctx, b)
        mask = cls == ci
        ns_c = seg.ns[mask]
        ws_c = seg.ws[mask]
        return [
            np.bincount((ns_c % q).astype(np.int64), weights=ws_c, minlength=q)
            for q in moduli
        ]

    parts = map_ordered(segment_mass, bounds, workers)

    running = [np.zeros(q, dtype=np.float64) for q in moduli]
    want = set(breakpoints)
    snapshots: dict[int, list[np.ndarray]] = {}
    if base in want:
        snapshots[base] = [r.copy() for r in running]
    for (_, b_end), vecs in zip(bounds, parts):
        for acc, v in zip(running, vecs):
            acc += v
        if b_end in want:
            snapshots[b_end] = [r.copy() for r in running]

    mains = {
        (q, y): main_term(ctx, class_id, y, q) for q in moduli for y in y_values
    }
    rows: list[BVRow] = []
    for qi, q in enumerate(moduli):
        best: BVRow | None = None
        for a in range(1, q + 1):
            if math.gcd(a, q) != 1:
                continue
            bin_a = a % q
            for N in N_values:
                s_n = snapshots[N][qi][bin_a]
                for y in y_values:
                    observed = float(snapshots[N + y][qi][bin_a] - s_n)
                    main = mains[(q, y)]
                    err = abs(observed - main)
                    if best is None or err > best.abs_error:
                        best = BVRow(q, a, N, y, observed, main, err)
        assert best is not None  # moduli loop guarantees q >= 1, a = 1 exists
        rows.append(best)

    E = 0.0
    for row in rows:
        E += row.abs_error
    log_x = math.log(x)
    normalized = E * log_x**params.D / h
    grh = math.sqrt(x) * math.log(Q * x) ** 2
    return BVReport(
        params=params,
        x=x,
        h=h,
        Q=Q,
        moduli=moduli,
        N_values=N_values,
        y_values=y_values,
        rows=tuple(rows),
        E=E,
        normalized_ratio=normalized,
        grh_comparator=grh,
    )


def dyadic_scan(
    params: BVParams, x_min: int, x_max: int, workers: int = 1
) -> list[BVReport]:
    """Reports at x = x_min * 2^j <= x_max; h and Q recomputed per point.

    Explicit h/Q overrides in ``params`` are ignored here: each point derives
    them from (delta, theta) as the parametrization demands.
    """
    if x_min < 100:
        raise ArgumentError(f"dyadic scan needs x_min >= 100, got {x_min}")
    if x_max < x_min:
        raise ArgumentError(f"empty dyadic range [{x_min}, {x_max}]")
    reports = []
    x = x_min
    while x <= x_max:
        point = dataclasses.replace(params, x=x, h=None, Q=None)
        reports.append(bv_error_sum(point, workers=workers))
        x *= 2
    return reports
