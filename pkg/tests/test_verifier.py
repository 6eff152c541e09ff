"""Classification pipeline, sweeps, and the special scans."""

import random

import pytest

from wlab import (DIRECT_LIMIT, SCAN_LIMIT, BadArgs, CarryElimination,
                  Classification, DirectResidue, RangeExceeded, classify,
                  consecutive_prime_products, primes_up_to, sweep, w_mod,
                  wolstenholme_prime_scan)


def test_classify_prime_confirmed():
    verdict = classify(5)
    assert verdict.classification is Classification.WOLSTENHOLME_CONFIRMED
    assert verdict.residue == 1 and verdict.modulus == 125
    assert verdict.route == "prime_confirmed"
    assert classify(16843).residue == 1
    assert classify(2_097_143).classification is Classification.WOLSTENHOLME_CONFIRMED


def test_classify_carry_elimination():
    verdict = classify(15)
    assert verdict.classification is Classification.CONVERSE_CONFIRMED
    witness = verdict.witness
    assert isinstance(witness, CarryElimination)
    assert witness.p == 3 and witness.carries == 2 and witness.b == 1
    assert witness.prop1 is not None and witness.prop1.a == 1
    assert verdict.route == "carry_eliminated"
    assert verdict.residue is None


def test_classify_direct_elimination():
    verdict = classify(25)
    assert verdict.classification is Classification.CONVERSE_CONFIRMED
    witness = verdict.witness
    assert isinstance(witness, DirectResidue)
    assert witness.residue == 126 and witness.modulus == 25**3
    assert verdict.route == "direct_eliminated"
    # 127**2 is carry-free at its only odd prime, so it must go direct
    verdict = classify(16129)
    assert isinstance(verdict.witness, DirectResidue)
    assert verdict.residue == 900120941691 and verdict.residue != 1


def test_classify_small_cases():
    expectations = {2: (3, 8), 3: (10, 27), 4: (35, 64)}
    for n, (residue, modulus) in expectations.items():
        verdict = classify(n)
        assert verdict.classification is Classification.SMALL_CASE
        assert verdict.residue == residue and verdict.modulus == modulus
        assert verdict.residue != 1
        assert verdict.route == "small_case"


def test_classify_witness_cofactor_chain():
    rng = random.Random(70970)
    for _ in range(2000):
        n = rng.randint(5, 200_000)
        verdict = classify(n)
        witness = verdict.witness
        if not isinstance(witness, CarryElimination):
            continue
        assert n % witness.p == 0 and witness.p % 2 == 1
        assert witness.carries >= 1
        assert n % witness.p ** witness.b == 0
        assert (n // witness.p ** witness.b) % witness.p != 0
        if witness.prop1 is not None:
            assert witness.prop1.m == n // witness.p ** witness.b
            assert witness.prop1.p == witness.p


def test_classify_carry_soundness_to_one_hundred_thousand():
    # every carry-eliminated n must actually have p dividing w_n
    for n in range(2, 100_001):
        witness = classify(n).witness
        if isinstance(witness, CarryElimination):
            assert w_mod(n, witness.p).residue == 0, n


def test_classify_route_consistency_direct_vs_carry():
    # forcing the exact-residue route never changes the outcome
    for n in range(5, 20_001):
        fast = classify(n)
        if fast.classification not in (Classification.CONVERSE_CONFIRMED,
                                       Classification.COUNTEREXAMPLE):
            continue
        forced = classify(n, carry_route=False)
        assert forced.classification is fast.classification
        assert isinstance(forced.witness, DirectResidue)


def test_classify_odd_prime_powers_go_direct():
    for p in [pr for pr in primes_up_to(100) if pr != 2]:
        for k in range(2, 6):
            n = p**k
            if n > DIRECT_LIMIT:
                continue
            verdict = classify(n)
            assert isinstance(verdict.witness, DirectResidue), n
            assert verdict.route == "direct_eliminated"


def test_classify_domain_and_range_errors():
    with pytest.raises(BadArgs):
        classify(1)
    with pytest.raises(BadArgs):
        classify(0)
    # a carry-free composite square beyond the modulus range cannot be decided
    with pytest.raises(RangeExceeded):
        classify(16843**2)
    # powers of two have no odd factor, so they always need the cube
    with pytest.raises(RangeExceeded):
        classify(2**22)
    assert classify(DIRECT_LIMIT).n == DIRECT_LIMIT


def test_classify_beyond_direct_limit_still_eliminates_by_carry():
    # the carry route has no cube to compute, so it scales past the limit;
    # 600000 < 1000003 < 1200000 guarantees a carry at the prime 1000003
    verdict = classify(600000 * 1000003)
    assert verdict.route == "carry_eliminated"


def test_sweep_small_ranges():
    report = sweep(2, 4)
    assert report.counts == {"prime_confirmed": 0, "small_case": 3,
                             "carry_eliminated": 0, "direct_eliminated": 0}
    assert report.cursor == 4 and report.counterexamples == []

    report = sweep(2, 1000)
    assert report.counts["prime_confirmed"] == 166
    assert report.counts["small_case"] == 3
    assert sum(report.counts.values()) == 999
    assert report.counterexamples == []


def test_sweep_single_element_and_bounds():
    report = sweep(25, 25)
    assert report.counts["direct_eliminated"] == 1
    with pytest.raises(RangeExceeded):
        sweep(16843**2, 16843**2)
    with pytest.raises(RangeExceeded):
        sweep(2, DIRECT_LIMIT + 1)
    with pytest.raises(BadArgs):
        sweep(5, 2)
    with pytest.raises(BadArgs):
        sweep(1, 10)
    with pytest.raises(BadArgs):
        sweep(2, 10, chunk_size=0)
    with pytest.raises(BadArgs):
        sweep(2, 10, jobs=0)


def test_sweep_chunking_and_jobs_do_not_change_totals():
    base = sweep(2, 3000)
    for chunk_size in (1, 7, 999, 5000):
        assert sweep(2, 3000, chunk_size=chunk_size).counts == base.counts
    assert sweep(2, 3000, jobs=2, chunk_size=250).counts == base.counts


def test_sweep_counterexample_hook_and_order(monkeypatch):
    # fabricate counterexamples to check streaming order and tallying
    import wlab.verifier as verifier_module

    real_classify = verifier_module.classify

    def fake_classify(n, **kwargs):
        if n in (1500, 42, 901):
            return verifier_module.JonesVerdict(
                n, Classification.COUNTEREXAMPLE, residue=1, modulus=n**3)
        return real_classify(n, **kwargs)

    monkeypatch.setattr(verifier_module, "classify", fake_classify)
    seen = []
    report = verifier_module.sweep(2, 2000, chunk_size=128, jobs=1,
                                   on_counterexample=lambda v: seen.append(v.n))
    assert seen == [42, 901, 1500]
    assert [v.n for v in report.counterexamples] == [42, 901, 1500]
    assert sum(report.counts.values()) == 1999 - 3


def test_sweep_progress_reports_completed_prefixes():
    cursors = []
    sweep(2, 1000, chunk_size=100, progress=cursors.append)
    assert cursors == [101, 201, 301, 401, 501, 601, 701, 801, 901, 1000]


def test_wolstenholme_scan():
    assert wolstenholme_prime_scan(1000) == []
    assert wolstenholme_prime_scan(4) == []
    assert wolstenholme_prime_scan(20000) == [16843]
    with pytest.raises(RangeExceeded):
        wolstenholme_prime_scan(SCAN_LIMIT + 1)
    assert SCAN_LIMIT**4 < 1 << 63 <= (SCAN_LIMIT + 1) ** 4


def test_consecutive_prime_products_examples():
    assert consecutive_prime_products(4) == []
    records = consecutive_prime_products(7)
    assert [(r.q, r.p) for r in records] == [(3, 5), (5, 7)]
    for record in records:
        assert record.n == record.q * record.p
        witness = record.witness
        assert witness.p == record.p and witness.carries >= 1 and witness.b == 1
        assert witness.prop1 is not None and witness.prop1.a == 0


def test_consecutive_prime_products_all_carry_eliminated():
    for record in consecutive_prime_products(500):
        verdict = classify(record.n)
        assert isinstance(verdict.witness, CarryElimination)
        assert record.witness.carries >= 1
