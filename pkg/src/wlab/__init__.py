"""wlab: a verification lab for the congruence w_n ≡ 1 (mod n³).

w_n = C(2n-1, n-1) satisfies the congruence for every prime n >= 5
(Wolstenholme's theorem); the converse, that no other n satisfies it,
is Jones' conjecture.  This package confirms primes directly, rules out
composites through base-p carry counting (Kummer's theorem) with an
exact residue fallback, and sweeps ranges with checkpoint/resume and
deterministic, order-independent totals.
"""

from .arith import (Factorization, crt_combine, factorize, is_prime, mod_pow,
                    primes_up_to)
from .backend import kernel
from .binom_mod import (ORACLE_LIMIT, WolstenholmeResidue,
                        binom_mod_prime_power, w_exact_oracle, w_mod)
from .errors import (BadArgs, CheckpointCorrupt, EvenPrime, NonCoprimeModuli,
                     NotPrime, OracleBoundExceeded, Overflow, RangeExceeded,
                     WlabError)
from .kummer import (PadicExpansion, Prop1Witness, binom_valuation,
                     carry_count, central_carry_exists, corollary_condition,
                     padic_expand, prop1_condition)
from .verifier import (DIRECT_LIMIT, SCAN_LIMIT, CarryElimination,
                       Classification, ConsecutivePairWitness, DirectResidue,
                       JonesVerdict, SweepReport, classify,
                       consecutive_prime_products, sweep,
                       wolstenholme_prime_scan)

__version__ = "1.0.0"

__all__ = [
    "BadArgs",
    "CarryElimination",
    "CheckpointCorrupt",
    "Classification",
    "ConsecutivePairWitness",
    "DIRECT_LIMIT",
    "DirectResidue",
    "EvenPrime",
    "Factorization",
    "JonesVerdict",
    "NonCoprimeModuli",
    "NotPrime",
    "ORACLE_LIMIT",
    "OracleBoundExceeded",
    "Overflow",
    "PadicExpansion",
    "Prop1Witness",
    "RangeExceeded",
    "SCAN_LIMIT",
    "SweepReport",
    "WlabError",
    "WolstenholmeResidue",
    "binom_mod_prime_power",
    "binom_valuation",
    "carry_count",
    "central_carry_exists",
    "classify",
    "consecutive_prime_products",
    "corollary_condition",
    "crt_combine",
    "factorize",
    "is_prime",
    "kernel",
    "mod_pow",
    "padic_expand",
    "primes_up_to",
    "prop1_condition",
    "sweep",
    "w_exact_oracle",
    "w_mod",
    "wolstenholme_prime_scan",
]
