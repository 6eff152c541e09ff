"""Exact binomial coefficients modulo prime powers and w_n residues.

w_n here always means C(2n-1, n-1), never (1/2)C(2n, n): the halved
form would need a division by 2, which does not exist modulo even M.
Residues modulo arbitrary M < 2**63 come from factorizing M, solving
each prime-power part with the generalized Wilson block technique, and
recombining.  ``w_exact_oracle`` is a deliberately independent route
(Legendre valuations plus big-integer multiplication) used by tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import factorize, primes_up_to
from .backend import kernel
from .errors import BadArgs, NotPrime, OracleBoundExceeded, Overflow

U62 = 1 << 62
U63 = 1 << 63

ORACLE_LIMIT = 5000


@dataclass(frozen=True)
class WolstenholmeResidue:
    """Residue of the exact integer w_n = C(2n-1, n-1) modulo ``modulus``."""

    n: int
    modulus: int
    residue: int


def binom_mod_prime_power(N: int, K: int, p: int, e: int) -> int:
    """C(N, K) mod p**e for 0 <= K <= N < 2**62, prime p, e >= 1.

    Splits off the p-part first: with v the carry count of K + (N-K) in
    base p, the result is 0 when v >= e and p**v times the unit part
    otherwise.  The unit part multiplies factorial segments with all
    multiples of p removed, one segment per base-p level, using the
    block rule that p**e consecutive units multiply to -1 mod p**e
    (+1 for p = 2, e >= 3).
    """
    if p < 2 or not kernel.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise BadArgs(f"exponent must be >= 1, got {e}")
    if K < 0 or K > N:
        raise BadArgs(f"need 0 <= K <= N, got K={K}, N={N}")
    if N >= U62:
        raise BadArgs(f"N must stay below 2**62, got {N}")
    if p**e >= U63:
        raise Overflow(f"p**e must stay below 2**63, got {p}**{e}")
    return kernel.binom_mod_pp(N, K, p, e)


def w_mod(n: int, M: int) -> WolstenholmeResidue:
    """Residue of w_n = C(2n-1, n-1) modulo M.

    M is factorized, each prime-power part is solved exactly, and the
    parts are recombined; the result is normalized to [0, M).
    """
    if n < 1:
        raise BadArgs(f"w_mod requires n >= 1, got {n}")
    if 2 * n >= U62:
        raise Overflow("w_mod requires 2n < 2**62")
    if M < 1:
        raise BadArgs(f"w_mod requires M >= 1, got {M}")
    if M >= U63:
        raise Overflow("w_mod requires M < 2**63")
    parts = factorize(M).factors
    residue = kernel.w_mod_parts(n, list(parts))
    return WolstenholmeResidue(n=n, modulus=M, residue=residue)


def w_exact_oracle(n: int) -> int:
    """The exact integer w_n = C(2n-1, n-1), for tests; n <= 5000.

    Independent of the modular route on purpose: the valuation of every
    prime up to 2n-1 in C(2n-1, n-1) is read off Legendre's factorial
    formula and the factorization is multiplied out in full precision.
    """
    if n < 1:
        raise BadArgs(f"w_exact_oracle requires n >= 1, got {n}")
    if n > ORACLE_LIMIT:
        raise OracleBoundExceeded(
            f"oracle is capped at n <= {ORACLE_LIMIT}, got {n}")
    N, K = 2 * n - 1, n - 1
    result = 1
    for p in primes_up_to(N):
        v = _legendre(N, p) - _legendre(K, p) - _legendre(N - K, p)
        if v:
            result *= p**v
    return result


def _legendre(x: int, p: int) -> int:
    """Exponent of p in x! (sum of floor divisions by powers of p)."""
    total = 0
    q = p
    while q <= x:
        total += x // q
        q *= p
    return total
