"""Elementary integer arithmetic used throughout the lab.

Everything here is exact integer work: primality, Kronecker symbols, Euler phi,
squarefree tests, fundamental discriminants, integer roots.  No floating point.
"""

from __future__ import annotations

import math

from .errors import ArgumentError

# Deterministic Miller-Rabin witness set, valid for all n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (valid far beyond 2^64)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for all integers, including n <= 0 and n even.

    Extends the Jacobi symbol by (a|2) = 0, 1, -1 for a even, a = ±1 (mod 8),
    a = ±3 (mod 8), and (a|-1) = sign of a (with (0|-1) = 1), (a|0) = [a = ±1].
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    # factor out twos of n
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 == 1 and a % 8 in (3, 5):
            result = -result
    a %= n
    # standard Jacobi loop on odd n > 0
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def euler_phi(n: int) -> int:
    """Euler totient via trial-division factorization."""
    if n < 1:
        raise ArgumentError(f"euler_phi requires n >= 1, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


def prime_factors(n: int) -> tuple[int, ...]:
    """Ascending distinct prime factors of |n| (empty for |n| <= 1)."""
    n = abs(n)
    out: list[int] = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return tuple(out)


def squarefree_part(n: int) -> int:
    """The squarefree kernel s with n = s * (square), preserving sign. n != 0."""
    if n == 0:
        raise ArgumentError("squarefree_part undefined at 0")
    sign = -1 if n < 0 else 1
    m = abs(n)
    s = 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e % 2 == 1:
                s *= p
        p += 1 if p == 2 else 2
    return sign * s * m


def is_squarefree(n: int) -> bool:
    """True when |n| has no repeated prime factor (|n| >= 1)."""
    if n == 0:
        return False
    return abs(squarefree_part(n)) == abs(n)


def is_fundamental_discriminant(d: int) -> bool:
    """True for discriminants of quadratic fields.

    Accepts d ≡ 1 (mod 4) squarefree with d != 1, and d = 4m with m squarefree
    and m ≡ 2 or 3 (mod 4).  Works for negative d.
    """
    if d == 1 or d == 0:
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def integer_nth_root(n: int, k: int) -> int:
    """Largest r >= 0 with r**k <= n, for n >= 0, k >= 1.  Exact."""
    if n < 0 or k < 1:
        raise ArgumentError(f"integer_nth_root needs n >= 0, k >= 1, got ({n}, {k})")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    r = int(round(n ** (1.0 / k)))
    # correct float drift in either direction
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r
