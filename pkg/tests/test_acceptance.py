"""Acceptance criteria, one test per criterion.

Every check is exact (no floating point anywhere in the assertions) and
each criterion prints a single PASS line once its assertions hold; run
with ``pytest tests/test_acceptance.py -v -s`` to see them.
"""

import random
import time
from fractions import Fraction as F

import realset.arith as arith
import realset.lab as lab
import realset.rna as rna
from realset.automata import (
    DEFAULT_BATTERY_SIZE,
    STATS,
    TopKind,
    classify,
    product,
)
from realset.numeric import (
    decode_word,
    dual_of,
    encode_rational,
    find_power_ratio,
    parse_up_word,
    period_lengths,
    stratified_rationals,
)

BASES = (2, 3, 6, 10, 12)


def report(number: int, description: str) -> None:
    print(f"ACCEPTANCE {number}: PASS - {description}")


def test_criterion_01_encoding_exactness():
    start = time.monotonic()
    per_base = 2000  # 10,000 rationals across the five bases
    for base_index, base in enumerate(BASES):
        for x in stratified_rationals(100 + base_index, per_base):
            word = encode_rational(x, base)
            assert decode_word(word) == x
            dual = dual_of(word)
            if dual is not None:
                assert decode_word(dual) == x
    elapsed = time.monotonic() - start
    assert elapsed < 5.0, f"took {elapsed:.2f}s"
    report(1, f"10000 rationals, decode∘encode identity and dual agreement ({elapsed:.2f}s)")


def test_criterion_02_paper_example():
    low = parse_up_word("05⋆5(0)ω", 10)
    high = parse_up_word("05⋆4(9)ω", 10)
    assert decode_word(low) == F(11, 2)
    assert decode_word(high) == F(11, 2)
    assert dual_of(low) == high and dual_of(high) == low
    report(2, "both encodings of 11/2 decode exactly")


def test_criterion_03_formula_corpus_weak_and_cross_base():
    start = time.monotonic()
    corpus = lab.FORMULA_CORPUS
    assert len(corpus) >= 12
    compiled = {}
    for phi in corpus:
        for base in (2, 3, 10):
            R = arith.compile_formula(phi, base)
            assert classify(R.automaton).kind == TopKind.WEAK, (phi, base)
            compiled[(phi, base)] = R
    battery = stratified_rationals(500, 1000)
    for phi in corpus:
        for x in battery:
            values = {rna.member(compiled[(phi, base)], x) for base in (2, 3, 10)}
            assert len(values) == 1, (phi, x)
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, f"took {elapsed:.2f}s"
    report(3, f"{len(corpus)} formulas weak in bases 2,3,10 with 1000-sample agreement ({elapsed:.2f}s)")


def test_criterion_04_counterexample_set():
    start = time.monotonic()
    d6, d12 = lab.dual_set(6), lab.dual_set(12)
    for automaton in (d6, d12):
        verdict = classify(automaton.automaton)
        assert verdict.kind == TopKind.DET_COBUCHI_ONLY
        assert verdict.witness is not None
        assert set(verdict.witness.inner) <= set(verdict.witness.outer)
        comp = rna.complement_rna(automaton)
        assert classify(comp.automaton).kind == TopKind.DET_BUCHI_ONLY
    compared = lab.cross_base_compare(d6, d12, 1000, seed=1234)
    assert compared.agreements == compared.sample_count == 1000
    witness = lab.oscillation_witness(d6, 6)
    assert witness is not None and len(witness.points) >= 6
    assert witness.verify(d6)
    elapsed = time.monotonic() - start
    assert elapsed < 30.0, f"took {elapsed:.2f}s"
    report(4, f"dual sets non-weak with witnesses, 1000/1000 agreement, oscillation depth 6 ({elapsed:.2f}s)")


def test_criterion_05_base_power_round_trip():
    start = time.monotonic()
    for seed in range(20):
        R = lab.random_weak_rna(2, seed)
        up = rna.base_power_up(R, 2)
        assert up.base.value == 4
        down = rna.base_power_down(up, 2)
        equal, counterexample = rna.equivalent_rna(down, R)
        assert equal, f"seed {seed}: counterexample {counterexample}"
    elapsed = time.monotonic() - start
    assert elapsed < 30.0, f"took {elapsed:.2f}s"
    report(5, f"20 random weak RNAs survive base 2↔4 conversion ({elapsed:.2f}s)")


def _random_union(rng: random.Random, base: int):
    pieces = []
    for _ in range(rng.randint(1, 3)):
        a = F(rng.randint(-24, 24), rng.randint(1, 12))
        b = a + F(rng.randint(0, 24), rng.randint(1, 12))
        pieces.append((a, b, rng.random() < 0.5, rng.random() < 0.5))

    def oracle(x: F) -> bool:
        return any(
            (lo < x or (lo_c and x == lo)) and (x < hi or (hi_c and x == hi))
            for lo, hi, lo_c, hi_c in pieces
        )

    automaton = None
    for lo, hi, lo_c, hi_c in pieces:
        piece = rna.interval_rna(lo, hi, base, lo_c, hi_c)
        automaton = (
            piece.automaton
            if automaton is None
            else product(automaton, piece.automaton, "or")
        )
    return rna.RNA(automaton, rna.as_base(base), 1, True), oracle, pieces


def test_criterion_06_affine_clip_oracle_equivalence():
    start = time.monotonic()
    rng = random.Random(606)
    for case in range(30):
        base = (2, 3, 10)[case % 3]
        R, oracle, pieces = _random_union(rng, base)
        a = F(0)
        while a == 0:
            a = F(rng.randint(-6, 6), rng.randint(1, 4))
        b = F(rng.randint(-8, 8), rng.randint(1, 4))
        image = rna.affine(R, a, b)
        lo, hi = F(rng.randint(-6, 0)), F(rng.randint(1, 7))
        clipped = rna.clip(R, lo, hi)

        probes = set()
        for plo, phi, _, _ in pieces:
            for endpoint in (plo, phi):
                for x in (endpoint, endpoint + F(1, 97), endpoint - F(1, 97)):
                    probes.add(a * x + b)
                    probes.add(x)
        while len(probes) < 200:
            probes.add(F(rng.randint(-400, 400), rng.randint(1, 24)))
        for x in probes:
            assert rna.member(image, x) == oracle((x - b) / a), (case, x)
            assert rna.member(clipped, x) == (oracle(x) and lo <= x <= hi), (case, x)
    elapsed = time.monotonic() - start
    report(6, f"30 interval unions match exact affine and clip oracles ({elapsed:.2f}s)")


INTERVAL_CORPUS = (
    ("0 <= x & x <= 1/2", 2, {F(0), F(1, 2)}),
    ("0 <= x & x < 1/2", 3, {F(0), F(1, 2)}),
    ("x = 1/4", 2, {F(1, 4)}),
    ("(0 <= x & x <= 1/3) | (2/3 < x & x <= 1)", 3, {F(0), F(1, 3), F(2, 3), F(1)}),
    ("1/4 <= x & x < 3/4", 10, {F(1, 4), F(3, 4)}),
    ("0 - 1/2 <= x & x <= 1/4", 2, {F(-1, 2), F(1, 4)}),
)


def test_criterion_07_boundary_correctness():
    start = time.monotonic()
    for text, base, analytic in INTERVAL_CORPUS:
        R = arith.compile_formula(text, base)
        boundary = rna.boundary(R)
        extraction = rna.interval_extract(boundary)
        assert isinstance(extraction, rna.IntervalDecomposition), text
        points = set()
        for cls in extraction.classes:
            for a, b in cls.progressions:
                assert b == 0, "boundary of a bounded set must be finite"
                for piece in cls.intervals:
                    assert piece.lo == piece.hi
                    points.add(a + piece.lo)
        assert points == analytic, text
    cantor = lab.cantor_rna(3)
    assert rna.equivalent_rna(rna.boundary(cantor), cantor)[0]
    elapsed = time.monotonic() - start
    assert elapsed < 20.0, f"took {elapsed:.2f}s"
    report(7, f"analytic boundaries reproduced; Cantor set is its own boundary ({elapsed:.2f}s)")


def test_criterion_08_period_lengths():
    start = time.monotonic()
    for r, s in ((2, 3), (3, 2), (10, 6)):
        for k in range(1, 7):
            m = s**k
            v, u = period_lengths(r, s, k)
            assert r**v * (r**u - 1) % m == 0
            if m <= 10**6:
                # Minimality by brute force: no componentwise-smaller pair.
                for v2 in range(v + 1):
                    for u2 in range(1, u + 1):
                        if (v2, u2) != (v, u) and r**v2 * (r**u2 - 1) % m == 0:
                            raise AssertionError((r, s, k, v2, u2))
    previous = 0
    for k in range(1, 7):
        _, u = period_lengths(2, 3, k)
        assert u > previous
        previous = u
    elapsed = time.monotonic() - start
    assert elapsed < 10.0, f"took {elapsed:.2f}s"
    report(8, f"period lengths divide and are minimal; strict growth for (2,3) ({elapsed:.2f}s)")


def test_criterion_09_kronecker_search():
    start = time.monotonic()
    rng = random.Random(909)
    windows = []
    while len(windows) < 10:
        numerator = rng.randint(21, 77)
        lo = F(numerator, 40)
        windows.append((lo, lo + F(1, 20)))
    for lo, hi in windows:
        hit = find_power_ratio(2, 3, lo, hi, 64)
        assert hit is not None, (lo, hi)
        i, j = hit
        assert 1 <= i <= 64 and 1 <= j <= 64
        assert lo < F(2**i, 3**j) < hi
    assert find_power_ratio(2, 3, F(49, 50), F(1), 64) == (19, 12)
    elapsed = time.monotonic() - start
    report(9, f"power ratios found in 10 seeded windows plus the (19,12) witness ({elapsed:.2f}s)")


def test_criterion_10_stability_pipeline():
    start = time.monotonic()
    pipeline = rna.stability_pipeline(lab.dual_set(6), lab.dual_set(12))
    assert pipeline.q > 0 and pipeline.q2 > 0
    assert pipeline.verified_r and pipeline.verified_s
    assert rna.product_stability(pipeline.s3, F(6**pipeline.q), (F(0), F(1)))
    assert rna.product_stability(pipeline.s3_alt, F(12**pipeline.q2), (F(0), F(1)))

    clipped = rna.clip(lab.dual_set(6), F(0), F(1))
    delayed = rna.star_delay(clipped)
    assert rna.product_stability(delayed, F(6), (F(0), F(32)))
    assert rna.equivalent_rna(rna.clip(delayed, F(0), F(1)), clipped)[0]
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, f"took {elapsed:.2f}s"
    report(10, f"pipeline flags verified; star-delay stable and restricts back ({elapsed:.2f}s)")


def test_criterion_11_determinization_batteries():
    assert DEFAULT_BATTERY_SIZE >= 200
    assert STATS.calls > 0, "no determinizations observed"
    assert STATS.words_checked >= 200 * STATS.calls
    assert STATS.disagreements == 0
    assert STATS.failed_lassos == []
    report(
        11,
        f"{STATS.calls} determinizations validated on {STATS.words_checked} UP words, zero disagreements",
    )
