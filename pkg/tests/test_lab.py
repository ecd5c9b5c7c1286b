"""Experiments: the dual-encoding set, cross-base reports, oscillation
witnesses, and the suite."""

from fractions import Fraction as F

import pytest

import realset.rna as rna
from realset.automata import CoBuchi, OmegaAutomaton, TopKind, classify, make_alphabet
from realset.lab import (
    CrossBaseReport,
    FORMULA_CORPUS,
    cross_base_compare,
    dual_set,
    oscillation_witness,
    run_cobham_suite,
)
from realset.arith import compile_formula


def test_dual_set_membership():
    d6 = dual_set(6)
    assert rna.member(d6, F(1, 4))  # 1/4 = 9/36
    assert not rna.member(d6, F(1, 5))
    assert rna.member(d6, F(-7, 12))
    assert rna.member(d6, F(3))


def test_dual_set_classification():
    for t in (6, 10, 12):
        d = dual_set(t)
        assert classify(d.automaton).kind == TopKind.DET_COBUCHI_ONLY
        comp = rna.complement_rna(d)
        assert classify(comp.automaton).kind == TopKind.DET_BUCHI_ONLY


def test_dual_set_is_saturation_of_low_tails():
    t = 6
    alphabet = make_alphabet(t, 1)
    q0, qi, mix, zeros, sink = range(5)
    rows = []
    for state in range(5):
        row = []
        for sym in range(alphabet.n_symbols):
            if state == sink:
                row.append(sink)
            elif sym == alphabet.star:
                row.append(mix if state == qi else sink)
            else:
                d = alphabet.digits(sym)[0]
                if state == q0:
                    row.append(qi if d in (0, t - 1) else sink)
                elif state == qi:
                    row.append(qi)
                else:
                    row.append(zeros if d == 0 else mix)
        rows.append(tuple(row))
    low_tails = OmegaAutomaton(
        alphabet, tuple(rows), q0, CoBuchi(frozenset({q0, qi, mix, sink}))
    )
    saturated = rna.saturate(rna.RNA(low_tails, alphabet.base, 1, False))
    assert rna.equivalent_rna(saturated, dual_set(6))[0]


def test_cross_base_compare_dual_sets():
    report = cross_base_compare(dual_set(6), dual_set(12), 500, seed=13)
    assert report.agreements == report.sample_count
    assert report.first_disagreement is None
    assert report.classify_r == TopKind.DET_COBUCHI_ONLY
    assert report.classify_s == TopKind.DET_COBUCHI_ONLY


def test_cross_base_compare_formulas_agree():
    a = compile_formula("x <= 1/2", 2)
    b = compile_formula("x <= 1/2", 3)
    report = cross_base_compare(a, b, 300, seed=5)
    assert report.agreements == report.sample_count
    assert report.classify_r == TopKind.WEAK and report.classify_s == TopKind.WEAK


def test_cross_base_compare_detects_difference():
    a = rna.interval_rna(F(0), F(1, 2), 2)
    b = rna.interval_rna(F(0), F(1, 3), 3)
    report = cross_base_compare(a, b, 400, seed=3)
    assert report.agreements < report.sample_count
    x = report.first_disagreement
    assert x is not None and F(1, 3) < x <= F(1, 2)


def test_cross_base_compare_reflexive():
    d = dual_set(6)
    report = cross_base_compare(d, d, 200, seed=1)
    assert report.agreements == report.sample_count


def test_report_invariant_enforced():
    with pytest.raises(rna.RnaError):
        CrossBaseReport(2, 3, 10, 9, None, TopKind.WEAK, TopKind.WEAK)


def test_oscillation_on_dual_set():
    d6 = dual_set(6)
    witness = oscillation_witness(d6, 6)
    assert witness is not None
    assert len(witness.points) == 6
    assert witness.verify(d6)
    epsilons = [eps for _, eps in witness.points]
    assert all(a > b for a, b in zip(epsilons, epsilons[1:]))


def test_oscillation_none_found_cases():
    half = compile_formula("x <= 1/2", 2)
    assert oscillation_witness(half, 6) is None
    assert oscillation_witness(rna.empty_rna(2), 6) is None


def test_corpus_size():
    assert len(FORMULA_CORPUS) >= 12


def test_suite_part_a_small():
    report = run_cobham_suite(2, 3, seed=2)
    assert report.ok
    assert any("definable" in line for line in report.lines)
    assert "skipped" in report.text()  # 2 and 3 do not share prime factors
    csv = report.csv()
    assert csv.splitlines()[0] == "experiment,base_r,base_s,verdict,witness"


def test_suite_counterexample_pair():
    report = run_cobham_suite(6, 12, seed=2)
    assert report.ok
    text = report.text()
    assert "dual-set" in text and "pipeline" in text
    assert "DET_COBUCHI_ONLY" in text
