"""Exact q-expansions: eta products, ternary theta series, vanishing-gap
statistics, and coefficient-cluster scans.

Everything here is exact integer arithmetic — coefficients of the shipped
models overflow 64 bits well inside desk range, so series live as Python int
lists and products go through a Kronecker-substitution multiplier (pack the
coefficient list into one big integer with fixed-width limbs, use bignum
multiplication, unpack).

Shipped models:
  * ``DELTA_FACTORS``   — the weight-12 discriminant form as eta(z)^24,
  * ``LEVEL11_FACTORS`` — (eta(z) eta(11z))^2, the weight-2 level-11 newform,
and ternary diagonal theta series theta:a,b,c.  The central-value machinery is
an explicit counting *proxy* (congruent-number style comparison of two theta
coefficients); it never evaluates an L-function.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .arith import is_fundamental_discriminant, is_squarefree
from .errors import ArgumentError, DomainError, RangeOverflowError, SpecStringError
from .sieve import _primes_upto
from .tuples import AdmissibleTuple, ClusterReport, _cluster_counts, _make_report, default_threshold

__all__ = [
    "QExpansion",
    "TernaryForm",
    "TwistRule",
    "CONGRUENT_NUMBER_RULE",
    "DELTA_FACTORS",
    "LEVEL11_FACTORS",
    "euler_factor",
    "series_mul",
    "eta_product",
    "theta_ternary",
    "theta_count",
    "gap_stats",
    "nonvanishing_clusters",
    "is_fundamental_discriminant",
    "twist_nonvanishing_proxy",
    "discriminant_clusters",
    "parse_form_spec",
    "build_form",
]


@dataclass(frozen=True)
class QExpansion:
    """Exact integer coefficients a(0), ..., a(N) with a provenance label."""

    coefficients: tuple[int, ...]
    label: str

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ArgumentError("a q-expansion needs at least the constant term")

    @property
    def N(self) -> int:
        return len(self.coefficients) - 1

    def a(self, n: int) -> int:
        if not 0 <= n <= self.N:
            raise ArgumentError(f"coefficient index {n} outside [0, {self.N}]")
        return self.coefficients[n]


# ------------------------------------------------------- exact series algebra


def _kronecker_mul_nonneg(a: list[int], b: list[int], out_len: int) -> list[int]:
    """Product of two non-negative integer coefficient lists, truncated.

    Packs each list into a single integer with limbs wide enough that no
    convolution entry can carry into its neighbour, multiplies once, unpacks.
    """
    if not a or not b or max(a) == 0 or max(b) == 0:
        return [0] * out_len
    bound = max(a) * max(b) * min(len(a), len(b)) + 1
    limb_bytes = (bound.bit_length() + 7) // 8
    pa = int.from_bytes(
        b"".join(c.to_bytes(limb_bytes, "little") for c in a), "little"
    )
    pb = int.from_bytes(
        b"".join(c.to_bytes(limb_bytes, "little") for c in b), "little"
    )
    raw = (pa * pb).to_bytes(limb_bytes * (len(a) + len(b)), "little")
    out = [
        int.from_bytes(raw[i * limb_bytes : (i + 1) * limb_bytes], "little")
        for i in range(min(out_len, len(a) + len(b) - 1))
    ]
    return out + [0] * (out_len - len(out))


def series_mul(a: list[int], b: list[int], n_max: int) -> list[int]:
    """Exact truncated product of coefficient lists (signed), length n_max+1."""
    out_len = n_max + 1
    a = a[:out_len]
    b = b[:out_len]
    if len(a) * len(b) <= 4096:  # tiny case: plain convolution wins
        out = [0] * out_len
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b[: out_len - i]):
                    out[i + j] += ai * bj
        return out
    ap = [c if c > 0 else 0 for c in a]
    an = [-c if c < 0 else 0 for c in a]
    bp = [c if c > 0 else 0 for c in b]
    bn = [-c if c < 0 else 0 for c in b]
    pos = _kronecker_mul_nonneg(ap, bp, out_len)
    pos2 = _kronecker_mul_nonneg(an, bn, out_len)
    neg = _kronecker_mul_nonneg(ap, bn, out_len)
    neg2 = _kronecker_mul_nonneg(an, bp, out_len)
    return [p + p2 - m - m2 for p, p2, m, m2 in zip(pos, pos2, neg, neg2)]


def euler_factor(d: int, n_max: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^{dn}) up to q^{n_max}.

    Pentagonal-number expansion: sum_{j in Z} (-1)^j q^{d j(3j-1)/2}.
    """
    if d < 1:
        raise ArgumentError(f"euler factor scale must be >= 1, got {d}")
    out = [0] * (n_max + 1)
    j = 0
    while True:
        hit = False
        for jj in (j, -j) if j else (0,):
            e = d * jj * (3 * jj - 1) // 2
            if e <= n_max:
                out[e] += -1 if jj % 2 else 1
                hit = True
        if not hit:
            return out
        j += 1


def _series_pow(base: list[int], r: int, n_max: int) -> list[int]:
    result = [1] + [0] * n_max
    acc = base[: n_max + 1] + [0] * max(0, n_max + 1 - len(base))
    e = r
    while e:
        if e & 1:
            result = series_mul(result, acc, n_max)
        e >>= 1
        if e:
            acc = series_mul(acc, acc, n_max)
    return result


def _series_inverse(base: list[int], n_max: int) -> list[int]:
    """1 / base for a unit series (constant term ±1), exact recurrence."""
    c0 = base[0]
    if c0 not in (1, -1):
        raise ArgumentError("can only invert a series with constant term ±1")
    support = [(m, c) for m, c in enumerate(base[1 : n_max + 1], start=1) if c]
    inv = [0] * (n_max + 1)
    inv[0] = c0
    for n in range(1, n_max + 1):
        acc = 0
        for m, c in support:
            if m > n:
                break
            acc += c * inv[n - m]
        inv[n] = -c0 * acc
    return inv


def eta_product(factors, n_max: int) -> QExpansion:
    """q^{sum(d r)/24} * prod_n prod_{m>=1} (1 - q^{d_n m})^{r_n}, exactly.

    The exponent sum must be divisible by 24 with a non-negative quotient so
    the result is an integral power series.  Negative r go through exact
    power-series inversion of the corresponding pentagonal factor.
    """
    if n_max < 0:
        raise ArgumentError(f"truncation must be >= 0, got {n_max}")
    facs = [(int(d), int(r)) for d, r in factors]
    if any(d < 1 for d, _ in facs):
        raise SpecStringError(f"eta factor scales must be >= 1, got {facs}")
    weight_sum = sum(d * r for d, r in facs)
    if weight_sum % 24 != 0:
        raise SpecStringError(
            f"eta exponent sum {weight_sum} is not divisible by 24; "
            "the product is not an integral q-series"
        )
    shift = weight_sum // 24
    if shift < 0:
        raise SpecStringError(
            f"eta exponent sum {weight_sum} gives leading power {shift} < 0"
        )
    label = "eta:" + "".join(f"({d}^{r})" for d, r in facs)
    if shift > n_max:
        return QExpansion((0,) * (n_max + 1), label)
    inner = n_max - shift
    prod = [1] + [0] * inner
    for d, r in facs:
        if r == 0:
            continue
        base = euler_factor(d, inner)
        if r < 0:
            base = _series_inverse(base, inner)
        prod = series_mul(prod, _series_pow(base, abs(r), inner), inner)
    coeffs = (0,) * shift + tuple(prod)
    return QExpansion(coeffs, label)


DELTA_FACTORS: tuple[tuple[int, int], ...] = ((1, 24),)
LEVEL11_FACTORS: tuple[tuple[int, int], ...] = ((1, 2), (11, 2))


# ----------------------------------------------------------- theta series


@dataclass(frozen=True)
class TernaryForm:
    """Diagonal form a x^2 + b y^2 + c z^2, normalized to a <= b <= c."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) < 1:
            raise ArgumentError(
                f"diagonal coefficients must be positive, got {(self.a, self.b, self.c)}"
            )
        a, b, c = sorted((self.a, self.b, self.c))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def label(self) -> str:
        return f"theta:{self.a},{self.b},{self.c}"


def _square_counts(scale: int, n_max: int) -> list[int]:
    """v[n] = #{x in Z : scale * x^2 = n}, n <= n_max."""
    v = [0] * (n_max + 1)
    v[0] = 1
    x = 1
    while scale * x * x <= n_max:
        v[scale * x * x] = 2
        x += 1
    return v


def theta_ternary(form: TernaryForm, n_max: int) -> QExpansion:
    """Representation counts a(n) = #{(x,y,z) in Z^3 : form(x,y,z) = n}."""
    if n_max < 0:
        raise ArgumentError(f"truncation must be >= 0, got {n_max}")
    vab = series_mul(
        _square_counts(form.a, n_max), _square_counts(form.b, n_max), n_max
    )
    coeffs = series_mul(vab, _square_counts(form.c, n_max), n_max)
    return QExpansion(tuple(coeffs), form.label)


def theta_count(form: TernaryForm, n: int) -> int:
    """Single representation count by direct two-variable enumeration."""
    if n < 0:
        raise ArgumentError(f"representation counts need n >= 0, got {n}")
    total = 0
    x = 0
    while form.a * x * x <= n:
        rx = n - form.a * x * x
        wx = 1 if x == 0 else 2
        y = 0
        while form.b * y * y <= rx:
            r = rx - form.b * y * y
            wy = wx * (1 if y == 0 else 2)
            if r % form.c == 0:
                z2 = r // form.c
                z = math.isqrt(z2)
                if z * z == z2:
                    total += wy * (1 if z == 0 else 2)
            y += 1
        x += 1
    return total


def _batch_theta_counts(form: TernaryForm, n_max: int) -> np.ndarray:
    """Representation counts for every n <= n_max at once (exact int64)."""
    counts = np.zeros(n_max + 1, dtype=np.int64)
    a, b, c = form.a, form.b, form.c
    zs = np.arange(math.isqrt(n_max // c) + 1, dtype=np.int64)
    zvals = c * zs * zs
    zw = np.where(zs == 0, 1, 2)
    x = 0
    while a * x * x <= n_max:
        wx = 1 if x == 0 else 2
        rx = n_max - a * x * x
        y = 0
        while b * y * y <= rx:
            base = a * x * x + b * y * y
            w = wx * (1 if y == 0 else 2)
            m = zvals <= n_max - base
            np.add.at(counts, base + zvals[m], w * zw[m])
            y += 1
        x += 1
    return counts


# ------------------------------------------------------------- gap statistic


def gap_stats(f: QExpansion, n_max: int) -> tuple[int, list[tuple[int, int]]]:
    """Longest vanishing streak statistic over 1 <= n <= n_max.

    For a(n) != 0 the local value is 0; for a(n) = 0 it is the distance to the
    last zero of the run containing n.  Returns (max value, records), where
    records lists (n, value) each time the running maximum strictly increases.
    The constant term a(0) never participates.
    """
    if n_max < 1:
        raise ArgumentError(f"need n_max >= 1, got {n_max}")
    if n_max > f.N:
        raise RangeOverflowError(
            f"n_max {n_max} exceeds the series truncation {f.N}"
        )
    coeffs = f.coefficients
    if not any(coeffs[1:]):
        raise ArgumentError("series vanishes identically; gap lengths are undefined")
    best = 0
    records: list[tuple[int, int]] = []
    n = 1
    while n <= n_max:
        if coeffs[n] != 0:
            n += 1
            continue
        end = n
        while end + 1 <= f.N and coeffs[end + 1] == 0:
            end += 1
        if end == f.N:
            raise RangeOverflowError(
                f"vanishing run starting at {n} is still open at the truncation {f.N}; "
                "increase the expansion length"
            )
        value = end - n
        if value > best:
            best = value
            records.append((n, value))
        n = end + 1
    return best, records


def nonvanishing_clusters(
    f: QExpansion,
    tup: AdmissibleTuple,
    x: int,
    h: int,
    threshold: int | None = None,
) -> ClusterReport:
    """Count nonzero coefficients among a(n + h_i) for n in (x, x+h]."""
    if x < 0 or h < 1:
        raise ArgumentError(f"need x >= 0 and h >= 1, got ({x}, {h})")
    T = default_threshold(tup.k) if threshold is None else threshold
    if T < 1:
        raise ArgumentError(f"threshold must be >= 1, got {T}")
    hi = x + h + tup.spread
    if hi > f.N:
        raise RangeOverflowError(
            f"window needs coefficients up to {hi} but the series stops at {f.N}"
        )
    flags = np.array([f.coefficients[v] != 0 for v in range(x + 1, hi + 1)])
    counts = _cluster_counts(flags, tup.offsets, h)
    return _make_report(f"{f.label} nonvanishing", tup.offsets, x, h, T, counts)


# --------------------------------------------------- central-value proxies


@dataclass(frozen=True)
class TwistRule:
    """Counting proxy for central-value nonvanishing of quadratic twists.

    Verdict at d: the two representation counts at |d| differ by other than
    the fixed multiplier (count_a != multiplier * count_b).  The built-in rule
    is the congruent-number comparison; the verdict is a statement about
    lattice counts only, never an analytic L-value.
    """

    name: str
    form_a: TernaryForm
    form_b: TernaryForm
    multiplier: int

    def in_domain(self, d: int) -> bool:
        return d > 0 and d % 2 == 1 and is_squarefree(d)

    def verdict(self, d: int) -> bool:
        if not self.in_domain(d):
            raise DomainError(
                f"{self.name} rule needs an odd squarefree positive input, got {d}"
            )
        return theta_count(self.form_a, abs(d)) != self.multiplier * theta_count(
            self.form_b, abs(d)
        )


CONGRUENT_NUMBER_RULE = TwistRule(
    "congruent-number",
    TernaryForm(1, 2, 8),
    TernaryForm(1, 2, 32),
    2,
)


def twist_nonvanishing_proxy(rule: TwistRule, d: int) -> bool:
    """Apply the rule's verdict at d (domain-checked)."""
    return rule.verdict(d)


def _membership_table(rule: TwistRule, n_max: int, coprime_to: int) -> np.ndarray:
    """mask[v] for 0 <= v <= n_max: fundamental discriminant, in the rule's
    domain, proxy-positive, and coprime to the filter."""
    v = np.arange(n_max + 1, dtype=np.int64)
    sqfree = np.ones(n_max + 1, dtype=bool)
    for p in _primes_upto(math.isqrt(n_max) if n_max >= 0 else 0).tolist():
        sqfree[p * p :: p * p] = False
    # positive fundamental discriminants: d = 1 mod 4 squarefree (d > 1), or
    # d = 4m — the rule's domain is odd, so the 4m branch never combines
    # with it and only the first branch is materialized here.
    fund = (v % 4 == 1) & sqfree & (v > 1)
    domain = (v % 2 == 1) & sqfree & (v > 0)
    ca = _batch_theta_counts(rule.form_a, n_max)
    cb = _batch_theta_counts(rule.form_b, n_max)
    proxy = ca != rule.multiplier * cb
    mask = fund & domain & proxy
    if coprime_to != 1:
        mask &= np.gcd(v, coprime_to) == 1
    return mask


def discriminant_clusters(
    rule: TwistRule,
    tup: AdmissibleTuple,
    a: int,
    q: int,
    x: int,
    h: int,
    threshold: int | None = None,
    coprime_to: int = 1,
) -> ClusterReport:
    """Scan n = a (mod q) in (x, x+h] for clusters of proxy-positive
    fundamental discriminants among n + q*h_i.

    Membership of v = n + q*h_i requires: v a fundamental discriminant, v in
    the rule's domain, the proxy verdict true, and gcd(v, coprime_to) = 1.
    Values outside the rule's domain are simply non-members.  The histogram
    ranges over the scanned progression points only (its mass is their count).
    """
    if x < 0 or h < 1:
        raise ArgumentError(f"need x >= 0 and h >= 1, got ({x}, {h})")
    if q < 1:
        raise ArgumentError(f"progression modulus must be >= 1, got {q}")
    if coprime_to < 1:
        raise ArgumentError(f"coprimality filter must be >= 1, got {coprime_to}")
    T = default_threshold(tup.k) if threshold is None else threshold
    if T < 1:
        raise ArgumentError(f"threshold must be >= 1, got {T}")
    a = a % q
    hi = x + h + q * tup.spread
    mask = _membership_table(rule, hi, coprime_to)
    first = x + 1 + (a - (x + 1)) % q
    ns = np.arange(first, x + h + 1, q, dtype=np.int64)
    counts = np.zeros(len(ns), dtype=np.int64)
    for off in tup.offsets:
        counts += mask[ns + q * off]
    k = tup.k
    hist = np.bincount(counts, minlength=k + 1)
    hits = np.nonzero(counts >= T)[0]
    matches = tuple((int(ns[i]), int(counts[i])) for i in hits.tolist())
    selector = f"disc[{rule.name}] {a} mod {q}"
    if coprime_to != 1:
        selector += f" coprime-to {coprime_to}"
    return ClusterReport(
        selector=selector,
        offsets=tup.offsets,
        x=x,
        h=h,
        threshold=T,
        matches=matches,
        histogram=tuple(int(c) for c in hist.tolist()),
    )


# --------------------------------------------------------------- form specs

_ETA_FACTOR_RE = re.compile(r"\((\d+)\^(-?\d+)\)")


def parse_form_spec(spec: str):
    """'eta:(d^r)(d^r)...' -> ('eta', factors); 'theta:a,b,c' -> ('theta', form)."""
    if spec.startswith("eta:"):
        body = spec[4:]
        facs = _ETA_FACTOR_RE.findall(body)
        if not facs or _ETA_FACTOR_RE.sub("", body):
            raise SpecStringError(
                f"malformed eta spec {spec!r}; expected eta:(d^r)(d^r)..."
            )
        return "eta", tuple((int(d), int(r)) for d, r in facs)
    if spec.startswith("theta:"):
        parts = spec[6:].split(",")
        if len(parts) != 3:
            raise SpecStringError(f"malformed theta spec {spec!r}; expected theta:a,b,c")
        try:
            nums = [int(p) for p in parts]
        except ValueError as exc:
            raise SpecStringError(f"malformed theta spec {spec!r}") from exc
        return "theta", TernaryForm(*nums)
    raise SpecStringError(f"unknown form spec {spec!r}; expected eta:... or theta:...")


def build_form(spec: str, n_max: int) -> QExpansion:
    kind, payload = parse_form_spec(spec)
    if kind == "eta":
        return eta_product(payload, n_max)
    return theta_ternary(payload, n_max)
