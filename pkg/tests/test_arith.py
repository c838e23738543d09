import pytest
from oracles import oracle_fundamental_disc, oracle_is_prime

from cheblab.arith import (
    euler_phi,
    integer_nth_root,
    is_fundamental_discriminant,
    is_prime,
    is_squarefree,
    kronecker,
    prime_factors,
    squarefree_part,
)


def test_primality_against_trial_division():
    for n in range(-3, 2000):
        assert is_prime(n) == oracle_is_prime(n), n


def test_primality_large_values():
    assert is_prime(2**31 - 1)
    assert not is_prime(2**32 + 1)
    assert is_prime(10**12 + 39)
    # strong-pseudoprime trap for small witness sets
    assert not is_prime(3215031751)


@pytest.mark.parametrize(
    "a,n,value",
    [
        (1, 1, 1),
        (2, 7, 1),
        (3, 7, -1),
        (5, 5, 0),
        (-1, 5, 1),
        (-1, 3, -1),
        (2, 0, 0),
        (1, 0, 1),
        (-4, 9, 1),
    ],
)
def test_kronecker_fixed_values(a, n, value):
    assert kronecker(a, n) == value


def test_kronecker_matches_euler_criterion_at_odd_primes():
    for p in (3, 5, 7, 11, 13, 101):
        for a in range(-20, 21):
            want = pow(a % p, (p - 1) // 2, p)
            want = -1 if want == p - 1 else want
            assert kronecker(a, p) == want, (a, p)


def test_kronecker_multiplicative_in_top_argument():
    for n in (15, 21, 35):
        for a in range(1, 30):
            for b in range(1, 30):
                assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


def test_euler_phi_small_table():
    table = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    for n, value in enumerate(table, start=1):
        assert euler_phi(n) == value


def test_euler_phi_multiplicative_on_coprimes():
    import math

    for m in range(1, 40):
        for n in range(1, 40):
            if math.gcd(m, n) == 1:
                assert euler_phi(m * n) == euler_phi(m) * euler_phi(n)


def test_prime_factors_distinct_ascending():
    assert prime_factors(1) == ()
    assert prime_factors(12) == (2, 3)
    assert prime_factors(97) == (97,)
    assert prime_factors(2 * 3 * 3 * 25) == (2, 3, 5)


def test_squarefree_helpers():
    assert squarefree_part(1) == 1
    assert squarefree_part(12) == 3
    assert squarefree_part(-18) == -2
    assert is_squarefree(30)
    assert not is_squarefree(18)


def test_fundamental_discriminants_match_field_discriminant_oracle():
    for d in range(-10**4, 10**4 + 1):
        if d == 0:
            continue
        assert is_fundamental_discriminant(d) == oracle_fundamental_disc(d), d


@pytest.mark.parametrize("d,expected", [(5, True), (8, True), (20, False), (1, False)])
def test_fundamental_discriminant_examples(d, expected):
    assert is_fundamental_discriminant(d) == expected


def test_integer_nth_root_exact_boundaries():
    for n in (2, 3, 5):
        for x in (0, 1, 7, 63, 64, 65, 10**12):
            r = integer_nth_root(x, n)
            assert r**n <= x < (r + 1) ** n
