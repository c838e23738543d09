"""Galois conjugacy-class contexts over Q and Frobenius classification.

A context realizes a finite Galois group together with the data the lab needs
per conjugacy class: a stable class token, the class size, and the degree n_E
of the fixed field of a largest abelian subgroup meeting the class (the
quantity the short-interval parameter bounds depend on).

Supported families (spec-string grammar):

* ``trivial``                 — the one-class group; every prime is "identity".
* ``quadratic:<d>``           — d a fundamental discriminant; classes split/inert
                                 by the Kronecker symbol (d|p), including p = 2.
* ``cyclotomic:<m>``          — classes are the units mod m (m >= 3; an input
                                 m ≡ 2 (mod 4) is normalized to m/2 first).
* ``cubic-s3:<a>,<b>``        — splitting field of x^3 + a x + b with group S3;
                                 Frobenius by the root count of the cubic mod p:
                                 3 roots -> identity, 1 -> transposition,
                                 0 -> three-cycle.

Ramified primes are exactly the primes dividing ``abs_disc``; Frobenius for
those returns the ``RAMIFIED`` sentinel instead of a class token.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import euler_phi, is_prime, kronecker, prime_factors, is_fundamental_discriminant
from .errors import ArgumentError, SpecStringError


class _RamifiedType:
    """Sentinel returned by frobenius at ramified primes."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "RAMIFIED"


RAMIFIED = _RamifiedType()


@dataclass(frozen=True)
class ClassInfo:
    """One conjugacy class: token, size |C|, and field degree n_E."""

    class_id: str
    size: int
    n_E: int


@dataclass(frozen=True)
class GaloisContext:
    label: str
    kind: str  # "trivial" | "quadratic" | "cyclotomic" | "cubic"
    group_order: int
    classes: tuple[ClassInfo, ...]
    ramified_primes: frozenset[int]
    abs_disc: int
    # family parameters (unused slots stay 0)
    d: int = 0
    modulus: int = 0
    a: int = 0
    b: int = 0

    def class_ids(self) -> tuple[str, ...]:
        return tuple(c.class_id for c in self.classes)

    def class_index(self, class_id: str) -> int:
        for i, c in enumerate(self.classes):
            if c.class_id == class_id:
                return i
        raise ArgumentError(
            f"unknown class {class_id!r} for context {self.label!r}"
        )

    def info(self, class_id: str) -> ClassInfo:
        return self.classes[self.class_index(class_id)]


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise SpecStringError(f"bad {what} in context spec: {text!r}") from exc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _cubic_is_reducible(a: int, b: int) -> bool:
    # monic integer cubic: reducible over Q iff it has an integer root,
    # and any integer root divides b
    if b == 0:
        return True
    for r0 in _divisors(b):
        for r in (r0, -r0):
            if r * r * r + a * r + b == 0:
                return True
    return False


def _cyclotomic_abs_disc(m: int) -> int:
    # |disc Q(zeta_m)| = m^phi(m) / prod_{p | m} p^(phi(m)/(p-1)), exact
    phi = euler_phi(m)
    value = m**phi
    for p in prime_factors(m):
        value //= p ** (phi // (p - 1))
    return value


def make_context(spec: str) -> GaloisContext:
    """Build a GaloisContext from its spec string (see module docstring)."""
    spec = spec.strip()
    if spec == "trivial":
        return GaloisContext(
            label="trivial",
            kind="trivial",
            group_order=1,
            classes=(ClassInfo("identity", 1, 1),),
            ramified_primes=frozenset(),
            abs_disc=1,
        )
    if spec.startswith("quadratic:"):
        d = _parse_int(spec[len("quadratic:") :], "discriminant")
        if not is_fundamental_discriminant(d):
            raise SpecStringError(
                f"quadratic context needs a fundamental discriminant, got {d}"
            )
        return GaloisContext(
            label=spec,
            kind="quadratic",
            group_order=2,
            classes=(ClassInfo("split", 1, 1), ClassInfo("inert", 1, 1)),
            ramified_primes=frozenset(prime_factors(d)),
            abs_disc=abs(d),
            d=d,
        )
    if spec.startswith("cyclotomic:"):
        m = _parse_int(spec[len("cyclotomic:") :], "modulus")
        if m < 3:
            raise SpecStringError(f"cyclotomic context needs m >= 3, got {m}")
        m_norm = m // 2 if m % 4 == 2 else m
        units = tuple(r for r in range(1, m_norm + 1) if math.gcd(r, m_norm) == 1)
        return GaloisContext(
            label=spec,
            kind="cyclotomic",
            group_order=len(units),
            classes=tuple(ClassInfo(str(r), 1, 1) for r in units),
            ramified_primes=frozenset(prime_factors(m_norm)),
            abs_disc=_cyclotomic_abs_disc(m_norm),
            modulus=m_norm,
        )
    if spec.startswith("cubic-s3:"):
        body = spec[len("cubic-s3:") :]
        parts = body.split(",")
        if len(parts) != 2:
            raise SpecStringError(f"cubic-s3 context needs two integers, got {body!r}")
        a = _parse_int(parts[0], "cubic coefficient a")
        b = _parse_int(parts[1], "cubic coefficient b")
        if _cubic_is_reducible(a, b):
            raise SpecStringError(
                f"x^3 + {a}x + {b} is reducible over Q; no S3 context"
            )
        disc = -4 * a * a * a - 27 * b * b
        if disc == 0 or (disc > 0 and math.isqrt(disc) ** 2 == disc):
            raise SpecStringError(
                f"discriminant {disc} of x^3 + {a}x + {b} is a square; "
                "Galois group is A3, not S3"
            )
        return GaloisContext(
            label=spec,
            kind="cubic",
            group_order=6,
            classes=(
                ClassInfo("identity", 1, 2),
                ClassInfo("transposition", 3, 3),
                ClassInfo("three-cycle", 2, 2),
            ),
            ramified_primes=frozenset(prime_factors(disc)),
            abs_disc=abs(disc),
            a=a,
            b=b,
        )
    raise SpecStringError(f"unrecognized context spec {spec!r}")


# -------------------------------------------------- cubic root counting


def cubic_root_count(a: int, b: int, p: int) -> int:
    """# of roots of x^3 + a x + b in F_p, via deg gcd(x^p - x, f).

    O(log p) field operations; valid for any prime p.  For p not dividing the
    discriminant the count is 0, 1, or 3 (the cubic is squarefree mod p).
    """
    if p < 5:
        return sum(1 for x in range(p) if (x * x * x + a * x + b) % p == 0)
    a %= p
    b %= p
    # x^p mod (x^3 + a x + b) by square-and-multiply on (c0, c1, c2)
    c0, c1, c2 = 0, 1, 0  # the polynomial x
    for bit in bin(p)[3:]:  # skip the leading 1: start from x itself
        t12 = 2 * c1 * c2 % p
        sq2 = c2 * c2 % p
        r0 = (c0 * c0 - b * t12) % p
        r1 = (2 * c0 * c1 - a * t12 - b * sq2) % p
        r2 = (c1 * c1 + 2 * c0 * c2 - a * sq2) % p
        c0, c1, c2 = r0, r1, r2
        if bit == "1":
            c0, c1, c2 = -b * c2 % p, (c0 - a * c2) % p, c1
    # g = x^p - x
    g = [c0, (c1 - 1) % p, c2]
    while g and g[-1] == 0:
        g.pop()
    if not g:
        return 3  # f divides x^p - x: splits completely
    # gcd(f, g) over F_p, f = b + a x + 0 x^2 + x^3
    u = [b % p, a, 0, 1]
    v = g
    while v:
        inv = pow(v[-1], p - 2, p)
        dv = len(v) - 1
        while len(u) - 1 >= dv:
            coef = u[-1] * inv % p
            shift = len(u) - 1 - dv
            for i, cv in enumerate(v):
                u[shift + i] = (u[shift + i] - coef * cv) % p
            while u and u[-1] == 0:
                u.pop()
            if not u:
                break
        u, v = v, u
    return len(u) - 1


_CUBIC_CLASS_BY_ROOTS = {3: "identity", 1: "transposition", 0: "three-cycle"}


# -------------------------------------------------- public operations


def frobenius(ctx: GaloisContext, p: int):
    """Conjugacy-class token of Frobenius at p, or RAMIFIED.

    Raises ArgumentError for composite (or < 2) p.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ArgumentError(f"frobenius needs a prime, got {p}")
    if p in ctx.ramified_primes:
        return RAMIFIED
    if ctx.kind == "trivial":
        return "identity"
    if ctx.kind == "quadratic":
        sym = kronecker(ctx.d, p)
        return "split" if sym == 1 else "inert"
    if ctx.kind == "cyclotomic":
        return str(p % ctx.modulus)
    # cubic
    roots = cubic_root_count(ctx.a, ctx.b, p)
    try:
        return _CUBIC_CLASS_BY_ROOTS[roots]
    except KeyError:  # pragma: no cover - excluded by p not dividing disc
        raise ArgumentError(
            f"cubic root count {roots} at p={p}: p divides the discriminant?"
        ) from None


def class_power(ctx: GaloisContext, class_id: str, m: int) -> str:
    """Class of c^m for any c in the class (well defined on classes)."""
    if m < 1:
        raise ArgumentError(f"class_power needs m >= 1, got {m}")
    ctx.class_index(class_id)  # validates the token
    if ctx.kind == "trivial":
        return "identity"
    if ctx.kind == "quadratic":
        if class_id == "split" or m % 2 == 0:
            return "split"
        return "inert"
    if ctx.kind == "cyclotomic":
        return str(pow(int(class_id), m, ctx.modulus))
    # cubic S3
    if class_id == "identity":
        return "identity"
    if class_id == "transposition":
        return "transposition" if m % 2 == 1 else "identity"
    return "identity" if m % 3 == 0 else "three-cycle"


def class_density(ctx: GaloisContext, class_id: str) -> Fraction:
    """|C| / |G| as an exact rational."""
    info = ctx.info(class_id)
    return Fraction(info.size, ctx.group_order)


# -------------------------------------------------- batch classification


def classify_primes(ctx: GaloisContext, ps: np.ndarray) -> np.ndarray:
    """Class indices (into ctx.classes) for an array of primes; -1 = ramified.

    Primality of the inputs is the caller's responsibility (sieve output).
    """
    out = np.empty(len(ps), dtype=np.int16)
    ramified = ctx.ramified_primes
    if ctx.kind == "trivial":
        out.fill(0)
    elif ctx.kind == "cyclotomic":
        lut = np.full(ctx.modulus, -1, dtype=np.int16)
        for i, c in enumerate(ctx.classes):
            lut[int(c.class_id) % ctx.modulus] = i
        out = lut[ps % ctx.modulus]
        return out  # noncoprime residues are exactly the ramified primes
    elif ctx.kind == "quadratic":
        d = ctx.d
        for i, p in enumerate(ps.tolist()):
            out[i] = -1 if p in ramified else (0 if kronecker(d, p) == 1 else 1)
    else:
        a, b = ctx.a, ctx.b
        idx = {3: 0, 1: 1, 0: 2}
        for i, p in enumerate(ps.tolist()):
            out[i] = -1 if p in ramified else idx[cubic_root_count(a, b, p)]
    return out


def power_index(ctx: GaloisContext, class_idx: int, m: int) -> int:
    """Index version of class_power for batch prime-power events."""
    if m == 1 or ctx.kind == "trivial":
        return class_idx if ctx.kind != "trivial" else 0
    if ctx.kind == "quadratic":
        return 0 if (class_idx == 0 or m % 2 == 0) else 1
    if ctx.kind == "cyclotomic":
        r = int(ctx.classes[class_idx].class_id)
        target = str(pow(r, m, ctx.modulus))
        return ctx.class_index(target)
    if class_idx == 0:
        return 0
    if class_idx == 1:
        return 1 if m % 2 == 1 else 0
    return 0 if m % 3 == 0 else 2
