"""Pure-Python arithmetic kernel.

Reference implementation of the hot numeric operations.  When the
compiled extension ``wlab._ckernel`` is present it exposes the same
surface and is preferred by ``wlab.backend``; results must agree
bit-for-bit.  Callers (the public modules) validate domains before
dispatching here: moduli stay below 2**63 and ``p`` is prime where the
signature says so.
"""

from __future__ import annotations

import math

NAME = "pure"

# Deterministic Miller-Rabin witness set; correct for every n below
# 3_317_044_064_679_887_385_961_981, which covers the full u64 range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_WHEEL_STEPS = (4, 2, 4, 2, 4, 6, 2, 6)
_WHEEL_LIMIT = 100_000


def mod_pow(base: int, exp: int, m: int) -> int:
    """base**exp mod m for m >= 1."""
    return pow(base % m, exp, m)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 0 <= n < 2**63."""
    if n < 2:
        return False
    for a in _MR_BASES:
        if n % a == 0:
            return n == a
    d = n - 1
    s = ((d & -d).bit_length()) - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Nontrivial factor of odd composite n with no factor <= 1e5."""
    for retry in range(64):
        c = 1 + retry
        y = 2 + retry
        g = r = q = 1
        x = ys = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * (x - y if x > y else y - x) % n
                g = math.gcd(q, n)
                k += 128
            r <<= 1
        if g == n:
            # backtrack one step at a time from the last good point
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(x - ys if x > ys else ys - x, n)
        if g != n:
            return g
    raise RuntimeError(f"rho failed to split {n}")


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of 1 <= n < 2**63, ascending (prime, exp) pairs."""
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d, i = 7, 0
    while d <= _WHEEL_LIMIT and d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += _WHEEL_STEPS[i]
        i = (i + 1) & 7
    if n > 1:
        big: dict[int, int] = {}
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                big[m] = big.get(m, 0) + 1
                continue
            d = _brent_rho(m)
            stack.append(d)
            stack.append(m // d)
        out.extend(sorted(big.items()))
    return out


def digit_sum(x: int, p: int) -> int:
    """Sum of the base-p digits of x >= 0."""
    s = 0
    while x:
        s += x % p
        x //= p
    return s


def carry_count(x: int, y: int, p: int) -> int:
    """Number of carries when adding x and y in base p."""
    return (digit_sum(x, p) + digit_sum(y, p) - digit_sum(x + y, p)) // (p - 1)


def _unit_partial(x: int, p: int, q: int) -> int:
    """Product of 1 <= i <= x with p not dividing i, mod q (q = p**e)."""
    prod = 1
    nxt = p
    for i in range(2, x + 1):
        if i == nxt:
            nxt += p
        else:
            prod = prod * i % q
    return prod


def binom_mod_pp(N: int, K: int, p: int, e: int) -> int:
    """C(N, K) mod p**e for 0 <= K <= N < 2**62 and p**e < 2**63.

    The p-part is the base-p carry count of K + (N-K); the unit part is
    assembled per base-p level from partial factorial products with the
    primes stripped.  Each full block of q = p**e consecutive units
    multiplies to -1 mod q, except +1 when p = 2 and e >= 3.
    """
    R = N - K
    v = carry_count(K, R, p)
    if v >= e:
        return 0
    q = p**e
    num = den = 1
    blocks = 0
    nj, kj, rj = N, K, R
    while nj:
        blocks += nj // q + kj // q + rj // q
        num = num * _unit_partial(nj % q, p, q) % q
        den = den * _unit_partial(kj % q, p, q) % q
        den = den * _unit_partial(rj % q, p, q) % q
        nj //= p
        kj //= p
        rj //= p
    unit = num * pow(den, -1, q) % q
    if blocks & 1 and not (p == 2 and e >= 3):
        unit = q - unit
    return p**v * unit % q


def w_mod_parts(n: int, parts: list[tuple[int, int]]) -> int:
    """C(2n-1, n-1) mod the product of the given prime powers.

    ``parts`` holds pairwise-distinct primes with exponents, product
    below 2**63; the per-prime-power residues are recombined by CRT.
    """
    N, K = 2 * n - 1, n - 1
    r, m = 0, 1
    for p, e in parts:
        q = p**e
        rp = binom_mod_pp(N, K, p, e)
        if m == 1:
            r, m = rp, q
        else:
            t = (rp - r) % q * pow(m % q, -1, q) % q
            r += m * t
            m *= q
    return r
