"""Primality, factorization, modular power, and CRT behavior."""

import math
import random

import pytest

from wlab import (BadArgs, NonCoprimeModuli, Overflow, crt_combine, factorize,
                  is_prime, mod_pow, primes_up_to)


def test_is_prime_examples():
    assert not is_prime(1)
    assert is_prime(16843)
    assert not is_prime(10**6)
    assert is_prime(2) and is_prime(3) and is_prime(5)
    assert not is_prime(0)
    assert is_prime(2**61 - 1)
    assert not is_prime(2**62 - 1)


def test_is_prime_agrees_with_sieve_to_one_million():
    limit = 10**6
    sieve = set(primes_up_to(limit))
    mismatches = [n for n in range(limit + 1) if (n in sieve) != is_prime(n)]
    assert mismatches == []


def test_is_prime_domain_errors():
    with pytest.raises(BadArgs):
        is_prime(-1)
    with pytest.raises(Overflow):
        is_prime(1 << 63)


def test_factorize_examples():
    assert factorize(1).factors == ()
    assert factorize(12).factors == ((2, 2), (3, 1))
    assert factorize(16843**2).factors == ((16843, 2),)
    assert factorize(2**62).factors == ((2, 62),)


def test_factorize_reassembles_random_inputs():
    rng = random.Random(40940)
    for _ in range(10_000):
        n = rng.randint(1, 1 << 40)
        fact = factorize(n)
        product = 1
        previous = 0
        for p, e in fact.factors:
            assert e >= 1
            assert p > previous
            assert is_prime(p)
            product *= p**e
            previous = p
        assert product == n
        assert fact.n == n


def test_factorize_large_semiprimes():
    for n in [(2**31 - 1) * (2**31 + 11), 611953 * 611957, 10**18 + 9]:
        fact = factorize(n)
        assert math.prod(p**e for p, e in fact.factors) == n
        assert all(is_prime(p) for p in fact.distinct_primes())


def test_factorize_domain_errors():
    with pytest.raises(BadArgs):
        factorize(0)
    with pytest.raises(Overflow):
        factorize(1 << 63)


def test_mod_pow_examples():
    assert mod_pow(2, 10, 1000) == 24
    assert mod_pow(12345, 0, 7) == 1
    assert mod_pow(3, 100, 101) == 1
    assert mod_pow(0, 0, 1) == 0
    assert mod_pow(-2, 3, 100) == 92


def test_mod_pow_matches_stdlib_pow():
    rng = random.Random(40941)
    for _ in range(2000):
        base = rng.randint(-(1 << 62), 1 << 62)
        exp = rng.randint(0, 1 << 62)
        m = rng.randint(1, (1 << 63) - 1)
        assert mod_pow(base, exp, m) == pow(base, exp, m)
    # exponents beyond 64 bits still work through the big-int fallback
    assert mod_pow(3, 10**30, 101) == pow(3, 10**30, 101)


def test_mod_pow_domain_errors():
    with pytest.raises(BadArgs):
        mod_pow(2, -1, 5)
    with pytest.raises(BadArgs):
        mod_pow(2, 3, 0)
    with pytest.raises(Overflow):
        mod_pow(2, 3, 1 << 63)


def test_crt_combine_examples():
    assert crt_combine([(1, 8), (1, 27)]) == (1, 216)
    assert crt_combine([(3, 8), (10, 27)]) == (91, 216)
    assert crt_combine([(0, 5), (0, 7)]) == (0, 35)
    assert crt_combine([]) == (0, 1)
    assert crt_combine([(0, 1), (4, 9)]) == (4, 9)


def test_crt_combine_agrees_with_each_part():
    rng = random.Random(40942)
    for _ in range(500):
        moduli = rng.sample([8, 27, 125, 49, 121, 169, 17, 19, 23, 29], k=rng.randint(1, 4))
        parts = [(rng.randrange(m), m) for m in moduli]
        residue, modulus = crt_combine(parts)
        assert modulus == math.prod(moduli)
        assert 0 <= residue < modulus
        for r, m in parts:
            assert residue % m == r


def test_crt_combine_errors():
    with pytest.raises(NonCoprimeModuli):
        crt_combine([(1, 6), (1, 15)])
    with pytest.raises(BadArgs):
        crt_combine([(5, 5)])
    with pytest.raises(BadArgs):
        crt_combine([(-1, 5)])
    with pytest.raises(BadArgs):
        crt_combine([(0, 0)])
    with pytest.raises(Overflow):
        crt_combine([(1, (1 << 32) + 1), (1, (1 << 32) + 15)])


def test_primes_up_to_known_counts():
    assert primes_up_to(1) == []
    assert primes_up_to(10) == [2, 3, 5, 7]
    assert len(primes_up_to(100)) == 25
    assert len(primes_up_to(1000)) == 168
    assert len(primes_up_to(10**4)) == 1229
    assert len(primes_up_to(10**6)) == 78498
