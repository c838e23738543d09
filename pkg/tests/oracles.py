"""Independent naive oracles for the test suite.

Nothing in this file imports the package under test.  Every function is a
direct, brute-force realization of the quantity it checks: trial division,
exhaustive residue/root enumeration, naive polynomial multiplication, lattice
point loops.  Slow on purpose; used only at oracle-friendly sizes.
"""

from __future__ import annotations

import math
from fractions import Fraction


# ----------------------------------------------------------------- primality


def oracle_is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def oracle_primes(lo_excl: int, hi_incl: int) -> list[int]:
    return [n for n in range(lo_excl + 1, hi_incl + 1) if oracle_is_prime(n)]


def oracle_prime_count(x: int) -> int:
    return len(oracle_primes(0, x))


def oracle_prime_power(n: int) -> tuple[int, int] | None:
    """(p, m) when n = p^m for a prime p, else None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            m = 0
            while n % p == 0:
                n //= p
                m += 1
            return (p, m) if n == 1 else None
        p += 1
    return (n, 1)


# -------------------------------------------------------------- psi and events


def oracle_lambda_events(lo_excl: int, hi_incl: int) -> list[tuple[int, int, int]]:
    """(n, p, m) for every prime power in the window, ascending."""
    out = []
    for n in range(max(2, lo_excl + 1), hi_incl + 1):
        pm = oracle_prime_power(n)
        if pm is not None:
            out.append((n, pm[0], pm[1]))
    return out


def oracle_psi(x: int) -> float:
    """Direct summation of log p over prime powers <= x (raw math.log)."""
    total = 0.0
    for _, p, _ in oracle_lambda_events(0, x):
        total += math.log(p)
    return total


# ------------------------------------------------------------ Galois classes


def oracle_quadratic_class(d: int, p: int) -> str:
    """'split' iff d is a nonzero square mod p, by exhaustive search; p odd prime
    not dividing d.  For p = 2 (d odd) uses the d mod 8 characterization."""
    if p == 2:
        return "split" if d % 8 == 1 else "inert"
    r = d % p
    for t in range(p):
        if t * t % p == r:
            return "split"
    return "inert"


def oracle_cubic_root_count(a: int, b: int, p: int) -> int:
    return sum(1 for x in range(p) if (x * x * x + a * x + b) % p == 0)


def oracle_cubic_class(a: int, b: int, p: int) -> str:
    roots = oracle_cubic_root_count(a, b, p)
    return {3: "identity", 1: "transposition", 0: "three-cycle"}[roots]


def oracle_cyclotomic_class(m: int, p: int) -> str:
    return str(p % m)


def oracle_frobenius(ctx_kind: str, params: tuple, p: int) -> str | None:
    """Class token for unramified p, None for ramified.  Naive rules only."""
    if ctx_kind == "trivial":
        return "identity"
    if ctx_kind == "quadratic":
        (d,) = params
        if d % p == 0:
            return None
        return oracle_quadratic_class(d, p)
    if ctx_kind == "cyclotomic":
        (m,) = params
        if m % p == 0:
            return None
        return oracle_cyclotomic_class(m, p)
    if ctx_kind == "cubic":
        a, b = params
        if (-4 * a * a * a - 27 * b * b) % p == 0:
            return None
        return oracle_cubic_class(a, b, p)
    raise ValueError(ctx_kind)


def oracle_class_power(ctx_kind: str, params: tuple, cls: str, m: int) -> str:
    if ctx_kind == "trivial":
        return "identity"
    if ctx_kind == "quadratic":
        if cls == "split":
            return "split"
        return "inert" if m % 2 == 1 else "split"
    if ctx_kind == "cyclotomic":
        (mod,) = params
        return str(pow(int(cls), m, mod))
    if ctx_kind == "cubic":
        if cls == "identity":
            return "identity"
        if cls == "transposition":
            return "transposition" if m % 2 == 1 else "identity"
        return "identity" if m % 3 == 0 else "three-cycle"
    raise ValueError(ctx_kind)


def oracle_psi_C(
    ctx_kind: str, params: tuple, cls: str, x: int, q: int = 1, a: int = 1
) -> float:
    """Naive twisted psi: enumerate prime powers <= x, classify, filter, sum."""
    total = 0.0
    for n, p, m in oracle_lambda_events(0, x):
        base = oracle_frobenius(ctx_kind, params, p)
        if base is None:
            continue
        if oracle_class_power(ctx_kind, params, base, m) != cls:
            continue
        if n % q != a % q:
            continue
        total += math.log(p)
    return total


# ------------------------------------------------------------------- tuples


def oracle_is_admissible(offsets: tuple[int, ...]) -> bool:
    """Brute residue-cover check over every prime up to max(offsets) + 1."""
    k = len(offsets)
    for p in oracle_primes(1, max(max(offsets) + 1, k)):
        if len({h % p for h in offsets}) == p:
            return False
    return True


def oracle_twin_pairs(x: int) -> int:
    """# of n in (0, x] with n and n+2 both prime."""
    return sum(
        1 for n in range(1, x + 1) if oracle_is_prime(n) and oracle_is_prime(n + 2)
    )


def oracle_singular_series(offsets: tuple[int, ...], cutoff: int) -> float:
    k = len(offsets)
    value = 1.0
    for p in oracle_primes(1, cutoff):
        nu = len({h % p for h in offsets})
        if nu == p:
            return 0.0
        value *= (1.0 - nu / p) / (1.0 - 1.0 / p) ** k
    return value


def oracle_cluster_matches(
    offsets: tuple[int, ...], x: int, h: int, threshold: int
) -> list[tuple[int, int]]:
    """(n, count) for n in (x, x+h] where count = #offsets with n+h_i prime."""
    out = []
    for n in range(x + 1, x + h + 1):
        cnt = sum(1 for off in offsets if oracle_is_prime(n + off))
        if cnt >= threshold:
            out.append((n, cnt))
    return out


# ---------------------------------------------------------------- mod forms


def oracle_eta_coeffs(factors: list[tuple[int, int]], n_max: int) -> list[int]:
    """Coefficients of q^(sum d*r/24) * prod (1-q^(d n))^r by naive expansion.

    Positive exponents r only.  Each factor (1-q^(d j))^r is expanded by the
    binomial theorem and multiplied in densely, one j at a time.
    """
    shift_num = sum(d * r for d, r in factors)
    if shift_num % 24 != 0:
        raise ValueError("net eta prefactor is not integral")
    shift = shift_num // 24
    series = [0] * (n_max + 1)
    series[0] = 1
    for d, r in factors:
        if r < 0:
            raise ValueError("oracle handles positive exponents only")
        j = 1
        while d * j <= n_max:
            step = d * j
            terms = []
            i = 0
            while i <= r and i * step <= n_max:
                terms.append((i * step, (-1) ** i * math.comb(r, i)))
                i += 1
            new = [0] * (n_max + 1)
            for e, c in terms:
                for idx in range(e, n_max + 1):
                    if series[idx - e]:
                        new[idx] += c * series[idx - e]
            series = new
            j += 1
    return [0] * shift + series[: n_max + 1 - shift]


def oracle_tau(n_max: int) -> list[int]:
    """Ramanujan tau via the naive eta expansion; index n holds tau(n)."""
    return oracle_eta_coeffs([(1, 24)], n_max)


def oracle_theta_count(a: int, b: int, c: int, n: int) -> int:
    """# of integer (x, y, z) with a x^2 + b y^2 + c z^2 = n, brute loops."""
    count = 0
    xb = math.isqrt(n // a)
    for x in range(-xb, xb + 1):
        rx = n - a * x * x
        if rx < 0:
            continue
        yb = math.isqrt(rx // b)
        for y in range(-yb, yb + 1):
            ry = rx - b * y * y
            if ry < 0 or ry % c != 0:
                continue
            z2 = ry // c
            z = math.isqrt(z2)
            if z * z == z2:
                count += 2 if z else 1
    return count


def oracle_fundamental_disc(d: int) -> bool:
    """d is the discriminant of Q(sqrt(d)): reconstruct and compare."""
    if d in (0, 1):
        return False
    s = 1
    m = abs(d)
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
        if m % p == 0:
            s *= p
            m //= p
        p += 1
    s *= m
    if d < 0:
        s = -s
    disc = s if s % 4 == 1 else 4 * s
    return disc == d


# ----------------------------------------------------------- elliptic curves


def oracle_ap(A: int, B: int, p: int) -> int:
    """p + 1 - #E(F_p) by brute affine point enumeration (p <= 1e3)."""
    affine = 0
    for x in range(p):
        rhs = (x * x * x + A * x + B) % p
        for y in range(p):
            if y * y % p == rhs:
                affine += 1
    return p + 1 - (affine + 1)


def oracle_density(counts: dict[str, int]) -> dict[str, Fraction]:
    total = sum(counts.values())
    return {k: Fraction(v, total) for k, v in counts.items()}
