"""Integer utilities below the number-theory layer.

Primality, factorization, modular exponentiation, and residue
combination, everything in the unsigned 63-bit working range.  The
heavy lifting happens in the selected kernel; this module owns domain
validation and the public types.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .backend import kernel
from .errors import BadArgs, NonCoprimeModuli, Overflow

U63 = 1 << 63


@dataclass(frozen=True)
class Factorization:
    """Canonical prime-power decomposition of a positive integer.

    ``factors`` lists (prime, exponent) pairs with strictly increasing
    primes and exponents >= 1; the empty list encodes n = 1.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def distinct_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2**63."""
    if n < 0:
        raise BadArgs(f"is_prime requires n >= 0, got {n}")
    if n >= U63:
        raise Overflow(f"is_prime requires n < 2**63, got {n}")
    return kernel.is_prime(n)


def factorize(n: int) -> Factorization:
    """Canonical Factorization of 1 <= n < 2**63."""
    if n < 1:
        raise BadArgs(f"factorize requires n >= 1, got {n}")
    if n >= U63:
        raise Overflow(f"factorize requires n < 2**63, got {n}")
    return Factorization(n=n, factors=tuple(kernel.factorize(n)))


def mod_pow(base: int, exp: int, m: int) -> int:
    """base**exp mod m for exp >= 0 and 1 <= m < 2**63."""
    if m < 1:
        raise BadArgs(f"mod_pow requires m >= 1, got {m}")
    if m >= U63:
        raise Overflow(f"mod_pow requires m < 2**63, got {m}")
    if exp < 0:
        raise BadArgs(f"mod_pow requires exp >= 0, got {exp}")
    if exp >= 1 << 64:
        # beyond the kernel's exponent width; stdlib bignum pow is exact
        return pow(base % m, exp, m)
    return kernel.mod_pow(base, exp, m)


def crt_combine(parts: list[tuple[int, int]]) -> tuple[int, int]:
    """Combine (residue, modulus) parts over pairwise coprime moduli.

    Returns the unique (residue, product) agreeing with every part.
    The empty list combines to (0, 1).
    """
    r, m = 0, 1
    for residue, modulus in parts:
        if modulus < 1:
            raise BadArgs(f"modulus must be >= 1, got {modulus}")
        if not 0 <= residue < modulus:
            raise BadArgs(f"residue {residue} not in [0, {modulus})")
        if modulus == 1:
            continue
        g = math.gcd(m, modulus)
        if g != 1:
            raise NonCoprimeModuli(f"moduli share factor {g}")
        if m * modulus >= U63:
            raise Overflow("product of moduli must stay below 2**63")
        t = (residue - r) % modulus * pow(m % modulus, -1, modulus) % modulus
        r += m * t
        m *= modulus
    return r, m


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit by sieve of Eratosthenes (helper for scans)."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]
