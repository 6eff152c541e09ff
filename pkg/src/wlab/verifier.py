"""Per-n classification, the range sweeper, and the special scans.

``classify`` decides for each n >= 2 whether the congruence
w_n ≡ 1 (mod n³) behaves as predicted: it holds for primes >= 5
(Wolstenholme's theorem) and is expected to fail for everything else
(Jones' conjecture).  Composites are eliminated cheaply when some odd
prime divisor p of n produces a carry in the base-p addition n + n,
which forces p | w_n; only carry-free composites fall back to the exact
residue computation modulo n³.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from enum import Enum

from . import _checkpoint
from ._checkpoint import ROUTES
from .arith import factorize, is_prime, primes_up_to
from .backend import kernel
from .binom_mod import w_mod
from .errors import BadArgs, CheckpointCorrupt, RangeExceeded
from .kummer import Prop1Witness, corollary_condition, prop1_condition

DIRECT_LIMIT = 2_097_151  # largest n with n**3 < 2**63
SCAN_LIMIT = 55_108       # largest limit with limit**4 < 2**63
U62 = 1 << 62

_logger = _checkpoint.logger


class Classification(Enum):
    SMALL_CASE = "small_case"
    WOLSTENHOLME_CONFIRMED = "wolstenholme_confirmed"
    CONVERSE_CONFIRMED = "converse_confirmed"
    COUNTEREXAMPLE = "counterexample"


@dataclass(frozen=True)
class CarryElimination:
    """Witness that p | w_n: the base-p addition n + n carries.

    ``b`` is the exact power of p in n; ``prop1`` holds the digit-chain
    witness for the cofactor m = n / p**b when the chain applies.
    """

    p: int
    carries: int
    b: int
    prop1: Prop1Witness | None


@dataclass(frozen=True)
class DirectResidue:
    """Exact residue of w_n mod n**3; any value other than 1 eliminates n."""

    residue: int
    modulus: int


@dataclass(frozen=True)
class JonesVerdict:
    """Outcome of classify(n); residue/modulus present when computed."""

    n: int
    classification: Classification
    witness: CarryElimination | DirectResidue | None = None
    residue: int | None = None
    modulus: int | None = None

    @property
    def route(self) -> str | None:
        """Tally bucket for sweeps; counterexamples fall under none."""
        c = self.classification
        if c is Classification.SMALL_CASE:
            return "small_case"
        if c is Classification.WOLSTENHOLME_CONFIRMED:
            return "prime_confirmed"
        if c is Classification.CONVERSE_CONFIRMED:
            if isinstance(self.witness, CarryElimination):
                return "carry_eliminated"
            return "direct_eliminated"
        return None


@dataclass
class SweepReport:
    """Aggregated outcome of a range sweep."""

    lo: int
    hi: int
    counts: dict[str, int]
    counterexamples: list[JonesVerdict]
    elapsed: float
    cursor: int


@dataclass(frozen=True)
class ConsecutivePairWitness:
    """Carry elimination of n = q*p anchored at the larger prime p."""

    q: int
    p: int
    n: int
    witness: CarryElimination


def _direct_residue(n: int) -> int:
    if n > DIRECT_LIMIT:
        raise RangeExceeded(
            f"the exact residue route needs n**3 < 2**63 (n <= {DIRECT_LIMIT}), got {n}")
    return w_mod(n, n**3).residue


def classify(n: int, *, carry_route: bool = True) -> JonesVerdict:
    """Classify n >= 2 against w_n ≡ 1 (mod n³).

    Pipeline: n in {2, 3, 4} are the small cases (congruence fails);
    primes >= 5 are checked directly and must land on residue 1;
    composites are eliminated by the first odd prime factor (ascending)
    whose base-p addition n + n carries, and only carry-free composites
    pay for the exact residue mod n**3.  ``carry_route=False`` forces
    every composite down the exact route (used by consistency tests).
    """
    if n < 2:
        raise BadArgs(f"classify requires n >= 2, got {n}")
    if n <= 4:
        res = _direct_residue(n)
        return JonesVerdict(n, Classification.SMALL_CASE,
                            residue=res, modulus=n**3)
    if is_prime(n):
        res = _direct_residue(n)
        cls = (Classification.WOLSTENHOLME_CONFIRMED if res == 1
               else Classification.COUNTEREXAMPLE)
        return JonesVerdict(n, cls, residue=res, modulus=n**3)
    if carry_route:
        if 2 * n >= U62:
            raise RangeExceeded("the carry route requires 2n < 2**62")
        for p, b in factorize(n).factors:
            if p == 2:
                continue
            carries = kernel.carry_count(n, n, p)
            if carries >= 1:
                witness = CarryElimination(
                    p=p, carries=carries, b=b,
                    prop1=prop1_condition(n // p**b, p))
                return JonesVerdict(n, Classification.CONVERSE_CONFIRMED,
                                    witness=witness)
    res = _direct_residue(n)
    if res != 1:
        witness = DirectResidue(residue=res, modulus=n**3)
        return JonesVerdict(n, Classification.CONVERSE_CONFIRMED,
                            witness=witness, residue=res, modulus=n**3)
    return JonesVerdict(n, Classification.COUNTEREXAMPLE,
                        residue=res, modulus=n**3)


_ROUTE_INDEX = {name: i for i, name in enumerate(ROUTES)}


def _classify_chunk(bounds: tuple[int, int]):
    """Worker body: classify [lo, hi] and tally routes (picklable)."""
    lo, hi = bounds
    counts = [0] * len(ROUTES)
    counterexamples = []
    for n in range(lo, hi + 1):
        verdict = classify(n)
        route = verdict.route
        if route is None:
            counterexamples.append(verdict)
        else:
            counts[_ROUTE_INDEX[route]] += 1
    return counts, counterexamples


def _load_resume_state(path, lo, hi, force):
    try:
        state = _checkpoint.load(path)
    except CheckpointCorrupt:
        if not force:
            raise
        _logger.warning("%s: unusable checkpoint discarded, starting fresh", path)
        return None
    if state is None:
        return None
    problem = None
    if not lo <= state.cursor <= hi:
        problem = f"cursor {state.cursor} outside sweep range [{lo}, {hi}]"
    elif sum(state.counts.values()) != state.cursor - lo + 1:
        problem = (f"tallies sum to {sum(state.counts.values())} "
                   f"but cursor {state.cursor} implies {state.cursor - lo + 1}")
    if problem:
        if not force:
            raise CheckpointCorrupt(f"{path}: {problem}")
        _logger.warning("%s: %s; starting fresh", path, problem)
        return None
    return state


def sweep(lo: int, hi: int, *, chunk_size: int = 4096, jobs: int = 1,
          checkpoint_path: str | None = None, resume: bool = False,
          resume_force: bool = False, progress=None,
          on_counterexample=None) -> SweepReport:
    """Classify every n in [lo, hi] and aggregate route tallies.

    Totals are deterministic: chunks are merged strictly in range
    order regardless of worker scheduling, so counterexamples surface
    sorted by n and checkpoint lines only ever describe a completed
    prefix.  With ``resume`` (or ``resume_force``, which additionally
    tolerates an unusable file by starting over) the sweep continues
    after the recorded cursor without losing or double-counting any n.
    """
    if lo < 2:
        raise BadArgs(f"sweep requires lo >= 2, got {lo}")
    if lo > hi:
        raise BadArgs(f"sweep requires lo <= hi, got [{lo}, {hi}]")
    if hi > DIRECT_LIMIT:
        raise RangeExceeded(
            f"sweep requires hi <= {DIRECT_LIMIT} (n**3 below 2**63), got {hi}")
    if chunk_size < 1:
        raise BadArgs(f"chunk_size must be >= 1, got {chunk_size}")
    if jobs < 1:
        raise BadArgs(f"jobs must be >= 1, got {jobs}")

    t0 = time.perf_counter()
    counts = dict.fromkeys(ROUTES, 0)
    start = lo
    if checkpoint_path and (resume or resume_force):
        state = _load_resume_state(checkpoint_path, lo, hi, resume_force)
        if state is not None:
            counts.update(state.counts)
            start = state.cursor + 1
    cursor = start - 1
    counterexamples: list[JonesVerdict] = []
    chunks = [(a, min(a + chunk_size - 1, hi))
              for a in range(start, hi + 1, chunk_size)]
    writer = (_checkpoint.Writer(checkpoint_path, append=start > lo)
              if checkpoint_path else None)

    def merge(chunk_hi, chunk_counts, chunk_ces):
        nonlocal cursor
        for name, tally in zip(ROUTES, chunk_counts):
            counts[name] += tally
        for verdict in chunk_ces:
            counterexamples.append(verdict)
            if on_counterexample:
                on_counterexample(verdict)
        cursor = chunk_hi
        if writer:
            writer.write(cursor, counts)
        if progress:
            progress(cursor)

    try:
        if jobs == 1 or len(chunks) <= 1:
            for a, b in chunks:
                chunk_counts, chunk_ces = _classify_chunk((a, b))
                merge(b, chunk_counts, chunk_ces)
        else:
            executor = ProcessPoolExecutor(max_workers=jobs)
            try:
                futures = {executor.submit(_classify_chunk, ch): i
                           for i, ch in enumerate(chunks)}
                ready = {}
                next_chunk = 0
                for fut in as_completed(futures):
                    ready[futures[fut]] = fut.result()
                    while next_chunk in ready:
                        chunk_counts, chunk_ces = ready.pop(next_chunk)
                        merge(chunks[next_chunk][1], chunk_counts, chunk_ces)
                        next_chunk += 1
            finally:
                executor.shutdown(wait=False, cancel_futures=True)
    finally:
        if writer:
            writer.close()

    return SweepReport(lo=lo, hi=hi, counts=counts,
                       counterexamples=counterexamples,
                       elapsed=time.perf_counter() - t0, cursor=cursor)


def wolstenholme_prime_scan(limit: int) -> list[int]:
    """Primes p <= limit with the strengthened residue w_p ≡ 1 (mod p⁴)."""
    if limit > SCAN_LIMIT:
        raise RangeExceeded(
            f"scan requires limit**4 < 2**63 (limit <= {SCAN_LIMIT}), got {limit}")
    found = []
    for p in primes_up_to(limit):
        if p >= 5 and w_mod(p, p**4).residue == 1:
            found.append(p)
    return found


def consecutive_prime_products(limit: int) -> list[ConsecutivePairWitness]:
    """Eliminate n = q*p for every consecutive odd prime pair q < p <= limit.

    Bertrand's postulate puts p strictly between q and 2q, so the digit
    chain guarantees a carry at p and the product can never satisfy the
    congruence.  Each returned witness is anchored at p even when
    classify, which walks prime factors in ascending order, happened to
    eliminate at q first; classify succeeding without the exact-residue
    fallback is verified for every pair.
    """
    odd_primes = [p for p in primes_up_to(limit) if p != 2]
    out = []
    for q, p in zip(odd_primes, odd_primes[1:]):
        if not corollary_condition(q, p):
            raise RuntimeError(f"consecutive primes ({q}, {p}) broke q < p < 2q")
        n = q * p
        verdict = classify(n)
        witness = verdict.witness
        if (verdict.classification is not Classification.CONVERSE_CONFIRMED
                or not isinstance(witness, CarryElimination)):
            raise RuntimeError(f"carry elimination unexpectedly missed n = {n}")
        if witness.p != p:
            witness = CarryElimination(
                p=p, carries=kernel.carry_count(n, n, p), b=1,
                prop1=prop1_condition(q, p))
        out.append(ConsecutivePairWitness(q=q, p=p, n=n, witness=witness))
    return out
