import math
import random
from fractions import Fraction

import pytest

from coinprimes import arith
from coinprimes.errors import NotInvertible
from coinprimes.primes import is_prime


def test_gcd_basics():
    assert arith.gcd(12, 18) == 6
    assert arith.gcd(7, 0) == 7
    assert arith.gcd(1, 1) == 1


def test_mod_inverse_roundtrip():
    rng = random.Random(11)
    for _ in range(200):
        m = rng.randrange(2, 10**6)
        x = rng.randrange(1, m)
        if math.gcd(x, m) != 1:
            continue
        inv = arith.mod_inverse(x, m)
        assert 0 <= inv < m
        assert x * inv % m == 1


def test_mod_inverse_errors():
    with pytest.raises(NotInvertible):
        arith.mod_inverse(6, 9)
    with pytest.raises(ValueError):
        arith.mod_inverse(1, 1)


def test_factor_reconstructs_and_is_prime():
    rng = random.Random(12)
    values = [1, 2, 3, 4, 60001, 2**10, 3 * 5 * 7 * 11, 999983]
    values += [rng.randrange(2, 10**9) for _ in range(50)]
    for n in values:
        f = arith.factor(n)
        assert f.n == n
        prod = 1
        last = 0
        for p, e in f.factors:
            assert p > last  # ascending
            assert e >= 1
            assert is_prime(p)
            prod *= p**e
            last = p
        assert prod == n


def test_factor_rejects_nonpositive():
    with pytest.raises(ValueError):
        arith.factor(0)


def test_euler_phi_brute():
    for n in range(1, 300):
        expected = sum(1 for v in range(1, n + 1) if math.gcd(v, n) == 1)
        assert arith.euler_phi(n) == expected


def test_omega_and_mobius_brute():
    for n in range(1, 300):
        f = arith.factor(n)
        assert arith.omega(n) == len(f.factors)
        if any(e > 1 for _, e in f.factors):
            assert arith.mobius(n) == 0
        else:
            assert arith.mobius(n) == (-1) ** len(f.factors)


def test_squarefree_divisors_structure():
    for n in (1, 2, 12, 30, 60001, 210, 1024):
        f = arith.factor(n)
        divs = arith.squarefree_divisors(f)
        # one divisor per subset of the distinct primes
        assert len(divs) == 2 ** len(f.factors)
        assert len({d for d, _ in divs}) == len(divs)
        for d, mu in divs:
            assert n % d == 0
            assert mu == arith.mobius(d)
        # sum of mobius over squarefree divisors vanishes unless n = 1
        assert sum(mu for _, mu in divs) == (1 if n == 1 else 0)


def test_coprime_count_matches_brute():
    rng = random.Random(13)
    for _ in range(100):
        a = rng.randrange(1, 500)
        t = rng.randrange(0, 2000)
        expected = sum(1 for v in range(1, t + 1) if math.gcd(v, a) == 1)
        assert arith.coprime_count_up_to(t, a) == expected


def test_coprime_count_fraction_and_float_bounds():
    # the count only depends on floor(t), and Fraction bounds floor exactly
    a = 60001
    f = arith.factor(a)
    n_int = arith.coprime_count_up_to(6000, a, factored=f)
    n_frac = arith.coprime_count_up_to(Fraction(60001, 10), a, factored=f)
    n_float = arith.coprime_count_up_to(6000.1, a, factored=f)
    assert n_int == n_frac == n_float == 5792
    assert arith.coprime_count_up_to(Fraction(1, 2), 7) == 0
    assert arith.coprime_count_up_to(0, 7) == 0


def test_coprime_sum_brute():
    for a in range(2, 200):
        expected = sum(v for v in range(1, a) if math.gcd(v, a) == 1)
        assert arith.coprime_sum(a) == expected
