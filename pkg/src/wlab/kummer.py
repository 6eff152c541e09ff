"""Base-p digit expansions, carry counting, and elimination predicates.

The carry count of n + n in base p gives the exact power of p dividing
the central binomial coefficient C(2n, n) (Kummer).  For odd p that
valuation transfers to w_n = C(2n-1, n-1), so a single carry already
rules out w_n ≡ 1 (mod n) for any multiple of p.  The predicates here
decide when such a carry is guaranteed by digit inequalities alone:
``prop1_condition`` for p**a < m < p**(a+1) < 2m, and its a = 0 special
case ``corollary_condition`` (m < p < 2m).
"""

from __future__ import annotations

from dataclasses import dataclass

from .backend import kernel
from .errors import BadArgs, EvenPrime, NotPrime, Overflow

U63 = 1 << 63


@dataclass(frozen=True)
class PadicExpansion:
    """Base-p digits of a nonnegative integer, least significant first.

    Digits lie in [0, p); the top digit is nonzero; value 0 has no
    digits.  ``Σ digits[i] * p**i == value`` always holds.
    """

    value: int
    base: int
    digits: tuple[int, ...]

    @property
    def top_index(self) -> int:
        """Index of the most significant digit (-1 for value 0)."""
        return len(self.digits) - 1


@dataclass(frozen=True)
class Prop1Witness:
    """Digit-position witness for the chain p**a < m < p**(a+1) < 2m.

    ``a`` is the top-digit index of m in base p.  Whenever the chain
    holds, adding m to itself in base p carries at least once, and the
    same is true for every m * p**b since appending zero digits shifts
    the expansion without changing its coefficients.
    """

    m: int
    p: int
    a: int


def _require_prime(p: int) -> None:
    if p < 2 or p >= U63 or not kernel.is_prime(p):
        raise NotPrime(f"{p} is not a prime below 2**63")


def _require_odd_prime(p: int) -> None:
    _require_prime(p)
    if p == 2:
        raise EvenPrime("p = 2 is not admissible here: the valuation "
                        "transfer from C(2n, n) to w_n needs an odd prime")


def padic_expand(n: int, p: int) -> PadicExpansion:
    """Base-p expansion of n >= 0 for prime p."""
    _require_prime(p)
    if n < 0:
        raise BadArgs(f"padic_expand requires n >= 0, got {n}")
    digits = []
    x = n
    while x:
        digits.append(x % p)
        x //= p
    return PadicExpansion(value=n, base=p, digits=tuple(digits))


def carry_count(x: int, y: int, p: int) -> int:
    """Number of carries in the base-p schoolbook addition of x and y.

    Equals (s_p(x) + s_p(y) - s_p(x + y)) / (p - 1) with s_p the base-p
    digit sum, and therefore the exact power of p in C(x + y, x).
    """
    _require_prime(p)
    if x < 0 or y < 0:
        raise BadArgs(f"carry_count requires x, y >= 0, got ({x}, {y})")
    if x + y >= U63:
        raise Overflow("carry_count requires x + y < 2**63")
    return kernel.carry_count(x, y, p)


def binom_valuation(N: int, K: int, p: int) -> int:
    """Exponent of prime p in C(N, K), via carries of K + (N - K)."""
    if K < 0 or K > N:
        raise BadArgs(f"binom_valuation requires 0 <= K <= N, got K={K}, N={N}")
    return carry_count(K, N - K, p)


def central_carry_exists(n: int, p: int) -> bool:
    """True iff adding n to itself in base p carries at least once.

    For odd p this is equivalent to p | C(2n, n), and C(2n, n) = 2*w_n
    shares its p-valuation, so a carry proves p | w_n and with it
    w_n ≢ 1 (mod any multiple of p).
    """
    _require_odd_prime(p)
    if n < 1:
        raise BadArgs(f"central_carry_exists requires n >= 1, got {n}")
    if 2 * n >= U63:
        raise Overflow("central_carry_exists requires 2n < 2**63")
    return kernel.carry_count(n, n, p) >= 1


def prop1_condition(m: int, p: int) -> Prop1Witness | None:
    """Witness for p**a < m < p**(a+1) < 2m, or None if the chain fails.

    ``a`` is taken as the top-digit index of m base p and the chain is
    then checked with exact integer comparisons (no logarithms, so the
    boundaries at powers of p are decided correctly).  A witness implies
    central_carry_exists(m * p**b, p) for every b >= 0.
    """
    _require_odd_prime(p)
    if m < 1:
        raise BadArgs(f"prop1_condition requires m >= 1, got {m}")
    if m == 1:
        return None
    a = padic_expand(m, p).top_index
    pa = p**a
    if pa < m < pa * p < 2 * m:
        return Prop1Witness(m=m, p=p, a=a)
    return None


def corollary_condition(m: int, p: int) -> bool:
    """True iff m < p < 2m: the a = 0 case of prop1_condition."""
    _require_prime(p)
    if m < 1:
        raise BadArgs(f"corollary_condition requires m >= 1, got {m}")
    return m < p < 2 * m
