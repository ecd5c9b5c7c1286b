"""Number-level operations: saturation, membership, decomposition, affine
images, base conversion, boundary, intervals, stability, star-delay."""

from fractions import Fraction as F

import pytest

import realset.arith as arith
import realset.rna as rna
from realset.automata import TopKind, classify, equivalent, member_up
from realset.lab import cantor_rna, dual_set, random_weak_rna
from realset.numeric import encode_rational, parse_up_word, stratified_rationals


def test_validity_automaton_examples():
    v2 = rna.validity_automaton(2)
    a = v2.alphabet
    for word in ("1⋆(0)ω", "0⋆(0)ω"):  # both 0 and r-1 are legal sign digits
        lasso = rna.up_word_lasso(a, parse_up_word(word, 2))
        assert member_up(v2.automaton, lasso)
    # Leading digit 5 is not a sign digit in base 10; feed the raw symbols.
    v10 = rna.validity_automaton(10)
    a10 = v10.alphabet
    from realset.automata import Lasso

    lasso_bad = Lasso((a10.symbol((5,)), a10.star), (a10.symbol((0,)),))
    assert not member_up(v10.automaton, lasso_bad)


def test_validity_arity_two_synchronized():
    v = rna.validity_automaton(3, 2)
    a = v.alphabet
    from realset.automata import Lasso

    good = Lasso((a.symbol((0, 2)), a.star), (a.symbol((1, 1)),))
    assert member_up(v.automaton, good)
    # A second separator is rejected.
    bad = Lasso((a.symbol((0, 2)), a.star, a.star), (a.symbol((1, 1)),))
    assert not member_up(v.automaton, bad)


def test_saturate_adds_duals_and_padding():
    # Language with exactly the padded encodings 0^+ 5 ⋆ 5 (0)^ω.
    from realset.automata import Lasso, OmegaAutomaton, Weak, make_alphabet

    alphabet = make_alphabet(10, 1)
    # states: 0 expect 0-pad, 1 after 5, 2 after star, 3 after frac 5, tail 4, sink 5
    rows = []
    for state in range(6):
        row = []
        for sym in range(alphabet.n_symbols):
            if state == 5:
                row.append(5)
            elif sym == alphabet.star:
                row.append(2 if state == 1 else 5)
            else:
                d = alphabet.digits(sym)[0]
                if state == 0:
                    row.append(0 if d == 0 else 1 if d == 5 else 5)
                elif state == 1:
                    row.append(5)
                elif state == 2:
                    row.append(3 if d == 5 else 5)
                elif state == 3:
                    row.append(4 if d == 0 else 5)
                else:
                    row.append(4 if d == 0 else 5)
        rows.append(tuple(row))
    raw = OmegaAutomaton(alphabet, tuple(rows), 0, Weak(frozenset({4})))
    R = rna.saturate(rna.RNA(raw, rna.as_base(10), 1, False))
    assert rna.member(R, F(11, 2))
    dual = rna.up_word_lasso(alphabet, parse_up_word("05⋆4(9)ω", 10))
    padded_dual = rna.up_word_lasso(alphabet, parse_up_word("0005⋆4(9)ω", 10))
    assert member_up(R.automaton, dual)
    assert member_up(R.automaton, padded_dual)
    assert not rna.member(R, F(1, 2))


def test_saturate_idempotent():
    iv = rna.interval_rna(F(0), F(1, 3), 3)
    unsat = rna.RNA(iv.automaton, iv.base, 1, False)
    once = rna.saturate(unsat)
    assert rna.equivalent_rna(once, rna.saturate(once))[0]
    assert rna.equivalent_rna(once, iv)[0]


def test_saturate_singleton_one():
    # {1} represented only by its (0)^ω-tail encoding also gains 0^+0⋆(9)^ω.
    one_low = rna.point_rna(F(1), 10)
    lasso = rna.up_word_lasso(one_low.alphabet, parse_up_word("0⋆(9)ω", 10))
    assert member_up(one_low.automaton, lasso)


def test_member_matches_member_up_battery():
    R = dual_set(6)
    for x in stratified_rationals(3, 200):
        direct = member_up(R.automaton, rna.up_word_lasso(R.alphabet, encode_rational(x, 6)))
        assert rna.member(R, x) == direct


def test_member_unsaturated_uses_dual():
    # An automaton accepting only the high encoding 0⋆4(9)^ω of 1/2.
    from realset.automata import OmegaAutomaton, Weak, make_alphabet

    alphabet = make_alphabet(10, 1)
    rows = []
    for state in range(5):  # 0 sign, 1 after star, 2 after 4, 3 nines, 4 sink
        row = []
        for sym in range(alphabet.n_symbols):
            if state == 4:
                row.append(4)
            elif sym == alphabet.star:
                row.append(1 if state == 0 else 4)
            else:
                d = alphabet.digits(sym)[0]
                if state == 0:
                    row.append(0 if d == 0 else 4)
                elif state == 1:
                    row.append(2 if d == 4 else 4)
                else:
                    row.append(3 if d == 9 else 4)
        rows.append(tuple(row))
    raw = OmegaAutomaton(alphabet, tuple(rows), 0, Weak(frozenset({3})))
    R = rna.RNA(raw, rna.as_base(10), 1, False)
    assert rna.member(R, F(1, 2))  # canonical misses, dual hits
    assert not rna.member(rna.RNA(raw, rna.as_base(10), 1, True), F(1, 2))


def test_decompose_integers():
    dec = rna.decompose(arith.compile_formula("int(x)", 2))
    assert len(dec.classes) == 1
    cls = dec.classes[0]
    assert set(rna.extract_progressions(cls.int_part)) == {(0, 1), (-1, -1)}
    assert rna.member(cls.fractional, F(0))
    assert rna.member(cls.fractional, F(1))
    assert not rna.member(cls.fractional, F(1, 2))


def test_decompose_interval():
    dec = rna.decompose(rna.interval_rna(F(0), F(1, 2), 2))
    # Classes: integer part 0 with fraction [0, 1/2]; integer part -1 with {1}.
    assert len(dec.classes) == 2
    by_prog = {}
    for cls in dec.classes:
        by_prog[rna.extract_progressions(cls.int_part)] = cls
    assert ((0, 0),) in by_prog and ((-1, 0),) in by_prog
    frac0 = by_prog[((0, 0),)].fractional
    assert rna.member(frac0, F(1, 4)) and not rna.member(frac0, F(3, 4))


def test_decompose_empty():
    assert rna.decompose(rna.empty_rna(2)).classes == ()


def test_decompose_rebuilds_original():
    R = arith.compile_formula("E y . int(y) & y <= x & x < y + 1/2", 2)
    dec = rna.decompose(R)
    for x in stratified_rationals(5, 120, max_abs=3):
        want = rna.member(R, x)
        got = False
        for cls in dec.classes:
            n = None
            frac = x - int(x) if x >= 0 else x - (int(x) - (0 if x == int(x) else 1))
            # check both integer-part decompositions x = n + f, f in [0,1]
            import math

            for n in (math.floor(x), math.floor(x) - 1):
                f = x - n
                if 0 <= f <= 1 and cls.int_part.accepts_int(n) and rna.member(
                    cls.fractional, f
                ):
                    got = True
        assert got == want, x


def test_affine_examples():
    box = rna.interval_rna(F(0), F(1), 2)
    img = rna.affine(box, F(1, 2), F(1, 4))
    for x, want in ((F(0), False), (F(1, 4), True), (F(1, 2), True), (F(3, 4), True), (F(1), False)):
        assert rna.member(img, x) == want
    assert rna.equivalent_rna(img, rna.interval_rna(F(1, 4), F(3, 4), 2))[0]


def test_affine_composition_law():
    R = rna.interval_rna(F(0), F(1, 2), 3)
    lhs = rna.affine(rna.affine(R, F(2), F(1)), F(1, 3), F(-1))
    rhs = rna.affine(R, F(2, 3), F(-2, 3))
    assert rna.equivalent_rna(lhs, rhs)[0]


def test_affine_constant():
    R = rna.interval_rna(F(0), F(1), 2)
    assert rna.equivalent_rna(rna.affine(R, F(0), F(3, 4)), rna.point_rna(F(3, 4), 2))[0]


def test_clip_examples():
    assert rna.equivalent_rna(
        rna.clip(rna.validity_automaton(2), F(0), F(1)),
        rna.interval_rna(F(0), F(1), 2),
    )[0]
    R = rna.validity_automaton(2)
    assert rna.equivalent_rna(
        rna.clip(rna.clip(R, F(0), F(1)), F(1, 2), F(2)),
        rna.clip(R, F(1, 2), F(1)),
    )[0]
    with pytest.raises(rna.RnaError):
        rna.clip(R, F(1), F(0))


def test_base_power_round_trip():
    for l in (2, 3):
        R = rna.interval_rna(F(1, 3), F(3, 4), 2)
        there = rna.base_power_up(R, l)
        assert there.base.value == 2**l
        back = rna.base_power_down(there, l)
        assert rna.equivalent_rna(back, R)[0]


def test_base_power_preserves_membership():
    third = rna.point_rna(F(1, 3), 2)
    up = rna.base_power_up(third, 2)
    assert rna.member(third, F(1, 3)) and rna.member(up, F(1, 3))
    assert encode_rational(F(1, 3), 4).frac_period == (1,)


def test_base_power_preserves_class():
    up = rna.base_power_up(dual_set(6), 2)
    assert up.base.value == 36
    assert classify(up.automaton).kind == TopKind.DET_COBUCHI_ONLY
    with pytest.raises(rna.RnaError):
        rna.base_power_down(rna.validity_automaton(6), 2)  # 6 not a square


def test_boundary_examples():
    iv = rna.interval_rna(F(0), F(1, 2), 10)
    b = rna.boundary(iv)
    for x, want in ((F(0), True), (F(1, 4), False), (F(1, 2), True), (F(1), False)):
        assert rna.member(b, x) == want
    assert rna.boundary_values_if_finite(b) == [F(0), F(1, 2)]
    # universal and empty sets have empty boundary
    assert rna.boundary_values_if_finite(rna.boundary(rna.validity_automaton(2))) == []
    assert rna.boundary_values_if_finite(rna.boundary(rna.empty_rna(2))) == []


def test_boundary_of_cantor_is_itself():
    C = cantor_rna(3)
    assert rna.equivalent_rna(rna.boundary(C), C)[0]


def test_boundary_complement_invariant():
    for R in (rna.interval_rna(F(0), F(1, 3), 3), dual_set(6)):
        lhs = rna.boundary(R)
        rhs = rna.boundary(rna.complement_rna(R))
        assert rna.equivalent_rna(lhs, rhs)[0]


def test_interval_extract_examples():
    dec = rna.interval_extract(arith.compile_formula("0 <= x & x <= 1/2", 2))
    assert isinstance(dec, rna.IntervalDecomposition)
    flat = {
        (prog, cls.intervals) for cls in dec.classes for prog in cls.progressions
    }
    assert ((0, 0), (rna.IntervalPiece(F(0), F(1, 2), True, True),)) in flat
    assert isinstance(rna.interval_extract(rna.empty_rna(2)), rna.IntervalDecomposition)
    assert isinstance(
        rna.interval_extract(rna.clip(dual_set(6), F(0), F(1))), rna.NotIntervalFinite
    )


def test_interval_extract_round_trip():
    for text, base in (
        ("0 <= x & x <= 1/2", 2),
        ("x < 1/3 | x >= 2/3", 3),
        ("E y . int(y) & y <= x & x < y + 1/2", 2),
        ("int(x) & 0 <= x & x <= 3", 2),
    ):
        R = arith.compile_formula(text, base)
        dec = rna.interval_extract(R)
        assert isinstance(dec, rna.IntervalDecomposition)
        back = arith.compile_formula(rna.decomposition_formula_text(dec), base)
        assert rna.equivalent_rna(back, R)[0], text


def test_interval_serialization():
    dec = rna.interval_extract(arith.compile_formula("0 <= x & x < 1/2", 2))
    text = rna.dump_interval_decomposition(dec)
    assert "class 0 0 : [0,1/2)" in text


def test_product_stability_examples():
    assert rna.product_stability(rna.empty_rna(2), F(7, 2), (F(0), F(1)))
    C = cantor_rna(3)
    assert rna.product_stability(C, F(3), (F(0), F(1)))
    assert not rna.product_stability(
        rna.interval_rna(F(0), F(1, 2), 2), F(2), (F(0), F(1))
    )


def test_sum_stability_examples():
    assert rna.sum_stability(rna.validity_automaton(2), F(5, 7), (F(0), F(4)))
    periodic = arith.compile_formula("E y . int(y) & y <= x & x < y + 1/2", 2)
    assert rna.sum_stability(periodic, F(1), (F(0), F(8)))
    assert not rna.sum_stability(periodic, F(1, 2), (F(0), F(8)))


def test_star_delay_examples():
    zero = rna.point_rna(F(0), 2)
    assert rna.equivalent_rna(rna.star_delay(zero), zero)[0]
    half = rna.interval_rna(F(1, 2), F(1), 2)
    sd = rna.star_delay(half)
    assert rna.equivalent_rna(
        sd, arith.compile_formula("1/2 <= x", 2)
    )[0]  # the scaled copies telescope to [1/2, ∞)
    assert classify(sd.automaton).kind == TopKind.WEAK  # definable, so weak
    assert rna.member(sd, F(3))
    assert not rna.member(sd, F(1, 4))
    assert rna.member(sd, F(1, 2))
    with pytest.raises(rna.PreconditionFailedError):
        rna.star_delay(rna.interval_rna(F(-1), F(0), 2))


def test_star_delay_stability_for_stable_input():
    # The scaling-closure invariants assume an input that is already
    # r-product-stable in [0, 1].
    s = rna.clip(dual_set(6), F(0), F(1))
    sd = rna.star_delay(s)
    for n in (1, 4, 32):
        assert rna.product_stability(sd, F(6), (F(0), F(n)))
    assert rna.equivalent_rna(rna.clip(sd, F(0), F(1)), s)[0]


def test_normalized_star_delay_is_sum_stable():
    # After scaling by the detected integer period, the delayed set is
    # invariant under translation by 1 on initial segments.
    s = rna.clip(dual_set(6), F(0), F(1))
    delayed = rna.star_delay(s)
    periods = set()
    for cls in rna.decompose(delayed).classes:
        for _, b in rna.extract_progressions(cls.int_part):
            if b > 0:
                periods.add(b)
    n = 1
    import math

    for b in periods:
        n = math.lcm(n, b)
    normalized = rna.affine(delayed, F(1, n), F(0)) if n > 1 else delayed
    for upper in (3, 6):
        assert rna.sum_stability(normalized, F(1), (F(0), F(upper)))


def test_pipeline_on_counterexample_pair():
    report = rna.stability_pipeline(dual_set(6), dual_set(12))
    assert report.q > 0 and report.q2 > 0
    assert report.verified_r and report.verified_s
    # The lengths match an independent walk of the 0⋆0^ω run.
    assert (report.p, report.q) == rna._rho_lengths(report.s1.automaton)


def test_pipeline_rejects_finite_boundary():
    with pytest.raises(rna.PreconditionFailedError):
        rna.stability_pipeline(
            rna.interval_rna(F(0), F(1, 2), 2), rna.interval_rna(F(0), F(1, 2), 3)
        )


def test_pipeline_rejects_disagreeing_inputs():
    with pytest.raises(rna.PreconditionFailedError):
        rna.stability_pipeline(
            rna.interval_rna(F(0), F(1, 2), 2), rna.interval_rna(F(0), F(1, 3), 3)
        )


def test_representation_soundness_battery():
    for R, base in ((dual_set(6), 6), (rna.interval_rna(F(-1), F(2, 3), 3), 3)):
        for x in stratified_rationals(11, 150):
            lasso = rna.up_word_lasso(R.alphabet, encode_rational(x, base))
            assert rna.member(R, x) == member_up(R.automaton, lasso)


def test_random_weak_rna_round_trip_property():
    for seed in range(4):
        R = random_weak_rna(2, seed)
        assert classify(R.automaton).kind == TopKind.WEAK
        back = rna.base_power_down(rna.base_power_up(R, 2), 2)
        assert rna.equivalent_rna(back, R)[0]


def test_base_power_round_trip_base3():
    for seed in (31, 32, 33):
        R = random_weak_rna(3, seed)
        back = rna.base_power_down(rna.base_power_up(R, 2), 2)
        assert rna.equivalent_rna(back, R)[0]


def test_base_power_l3_on_cobuchi():
    d = dual_set(2)
    up = rna.base_power_up(d, 3)
    assert up.base.value == 8
    assert classify(up.automaton).kind == TopKind.DET_COBUCHI_ONLY
    back = rna.base_power_down(up, 3)
    assert rna.equivalent_rna(back, d)[0]


def test_affine_negative_and_fractional_scale():
    R = rna.interval_rna(F(0), F(1, 3), 10)
    mirrored = rna.affine(R, F(-1), F(1))  # [2/3, 1]
    assert rna.equivalent_rna(mirrored, rna.interval_rna(F(2, 3), F(1), 10))[0]
    skewed = rna.affine(R, F(-3, 2), F(1, 2))  # [0, 1/2]
    assert rna.equivalent_rna(skewed, rna.interval_rna(F(0), F(1, 2), 10))[0]


def test_boundary_with_isolated_point():
    # {0} ∪ [1/4, 1/2]: boundary {0, 1/4, 1/2}.
    point = rna.point_rna(F(0), 2)
    band = rna.interval_rna(F(1, 4), F(1, 2), 2)
    from realset.automata import product as raw_product

    union = rna.RNA(raw_product(point.automaton, band.automaton, "or"), rna.as_base(2), 1, True)
    assert rna.boundary_values_if_finite(rna.boundary(union)) == [F(0), F(1, 4), F(1, 2)]


def test_boundary_at_dual_admitting_endpoints():
    # Endpoints with terminating expansions in the representation base.
    R = rna.interval_rna(F(1, 2), F(3, 4), 10)
    assert rna.boundary_values_if_finite(rna.boundary(R)) == [F(1, 2), F(3, 4)]


def test_stability_with_negative_domain_and_offset():
    sym = rna.interval_rna(F(-1, 2), F(1, 2), 2)
    # x ∈ S ⟺ 2x ∈ S fails on [-1, 1] (x = 3/8 in, 3/4 out).
    assert not rna.product_stability(sym, F(2), (F(-1), F(1)))
    # The full line is trivially stable.
    assert rna.product_stability(rna.validity_automaton(2), F(2), (F(-1), F(1)))
    periodic = arith.compile_formula("E y . int(y) & y <= x & x < y + 1/2", 2)
    assert rna.sum_stability(periodic, F(-1), (F(-4), F(4)))
    assert not rna.sum_stability(periodic, F(-1, 2), (F(-4), F(4)))
