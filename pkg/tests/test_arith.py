"""Formula parsing and compilation to weak automata."""

import math
from fractions import Fraction as F

import pytest

import realset.arith as arith
import realset.rna as rna
from realset.automata import TopKind, classify, emptiness, member_up
from realset.lab import FORMULA_CORPUS
from realset.numeric import parse_up_word, stratified_rationals


def test_parse_shapes():
    phi = arith.parse_formula("E y . x = 2*y & int(y)")
    assert isinstance(phi, arith.Exists)
    assert isinstance(phi.body, arith.And)
    phi2 = arith.parse_formula("x < 1/3 | x >= 2/3")
    assert isinstance(phi2, arith.Or)
    assert arith.free_vars(phi) == ("x",)


def test_parse_error_position():
    with pytest.raises(arith.FormulaSyntaxError) as err:
        arith.parse_formula("x <")
    assert err.value.column == 4
    with pytest.raises(arith.FormulaSyntaxError):
        arith.parse_formula("x <= 1/0")
    with pytest.raises(arith.FormulaSyntaxError):
        arith.parse_formula("(x < 1")


def test_parse_precedence():
    # ! binds tighter than &, & tighter than |.
    phi = arith.parse_formula("!x = 0 & x < 1 | x > 2")
    assert isinstance(phi, arith.Or)
    assert isinstance(phi.left, arith.And)
    assert isinstance(phi.left.left, arith.Not)
    # Quantifiers extend maximally right.
    psi = arith.parse_formula("E y . y = x | y = 1")
    assert isinstance(psi, arith.Exists)
    assert isinstance(psi.body, arith.Or)


def test_validate_rejects_rebinding():
    with pytest.raises(rna.RnaError):
        arith.parse_formula("E y . (E y . y = x) & y = x")
    with pytest.raises(rna.RnaError):
        arith.compile_formula("y = 0 & E y . y = x", 2)


def test_atomic_linear_examples():
    atom = arith.atomic_linear([F(1)], "<=", F(1, 2), 2)
    assert rna.member(atom, F(1, 2))
    assert not rna.member(atom, F(3, 4))

    diag = arith.atomic_linear([F(1), F(-1)], "=", F(0), 3)
    for x in (F(0), F(1, 3), F(5)):
        assert rna.member(diag, [x, x])
    assert not rna.member(diag, [F(1, 3), F(2, 3)])

    strict = arith.atomic_linear([F(2)], "<", F(1), 10)
    assert not rna.member(strict, F(1, 2))
    # The dual encoding of 1/2 is excluded as well.
    dual = rna.up_word_lasso(strict.alphabet, parse_up_word("0⋆4(9)ω", 10))
    assert not member_up(strict.automaton, dual)


def test_atomic_linear_requires_coefficient():
    with pytest.raises(Exception):
        arith.atomic_linear([F(0)], "<", F(1), 2)


def test_integrality_examples():
    intg = arith.integrality(10)
    assert rna.member(intg, F(3))
    assert not rna.member(intg, F(7, 2))
    dual3 = rna.up_word_lasso(intg.alphabet, parse_up_word("02⋆(9)ω", 10))
    assert member_up(intg.automaton, dual3)
    intg2 = arith.integrality(2)
    quarter = rna.up_word_lasso(intg2.alphabet, parse_up_word("0⋆01(0)ω", 2))
    assert not member_up(intg2.automaton, quarter)


def test_compile_contradiction_and_periodic():
    assert emptiness(arith.compile_formula("x < x", 3).automaton) is None
    per = arith.compile_formula("E y . int(y) & y <= x & x < y + 1/2", 2)
    for x in (F(9, 4), F(0), F(-3, 4), F(9, 8)):
        assert rna.member(per, x), x
    for x in (F(7, 4), F(-1, 2), F(1, 2)):
        assert not rna.member(per, x), x


def test_compile_cross_base_interval():
    rs = [arith.compile_formula("0 <= x & x <= 1", b) for b in (2, 3, 10)]
    for R in rs:
        assert rna.equivalent_rna(
            R, rna.clip(rna.validity_automaton(R.base), F(0), F(1))
        )[0]
    for x in stratified_rationals(2, 120):
        vals = {rna.member(R, x) for R in rs}
        assert len(vals) == 1


def test_project_examples():
    diag = arith.atomic_linear([F(1), F(-1)], "=", F(0), 2)
    for track in (0, 1):
        proj = arith.project(diag, track)
        assert rna.equivalent_rna(proj, rna.validity_automaton(2))[0]
    halving = arith.atomic_linear([F(1), F(-2)], "=", F(0), 2)
    assert rna.equivalent_rna(arith.project(halving, 1), rna.validity_automaton(2))[0]
    even = arith.compile_formula("E y . int(y) & x = 2*y", 2)
    assert rna.member(even, F(4))
    assert not rna.member(even, F(3))
    assert not rna.member(even, F(1, 2))
    with pytest.raises(rna.RnaError):
        arith.project(even, 0)


def test_boolean_soundness_sampled():
    phi = arith.compile_formula("0 <= x & x <= 1/2", 2)
    psi = arith.compile_formula("1/4 <= x & x < 3/4", 2)
    conj = arith.compile_formula("(0 <= x & x <= 1/2) & (1/4 <= x & x < 3/4)", 2)
    disj = arith.compile_formula("(0 <= x & x <= 1/2) | (1/4 <= x & x < 3/4)", 2)
    neg = arith.compile_formula("!(0 <= x & x <= 1/2)", 2)
    for x in stratified_rationals(23, 500):
        a, b = rna.member(phi, x), rna.member(psi, x)
        assert rna.member(conj, x) == (a and b)
        assert rna.member(disj, x) == (a or b)
        assert rna.member(neg, x) == (not a)


def test_tautology_and_contradiction():
    taut = arith.compile_formula("(0 <= x & x <= 1/2) | !(0 <= x & x <= 1/2)", 2)
    assert rna.equivalent_rna(taut, rna.validity_automaton(2))[0]
    contra = arith.compile_formula("(0 <= x & x <= 1/2) & !(0 <= x & x <= 1/2)", 2)
    assert emptiness(contra.automaton) is None


def test_quantifier_duality():
    body = "int(y) & y <= x & x < y + 1/3"
    forall = arith.compile_formula(f"A y . !({body})", 2)
    dual = rna.complement_rna(arith.compile_formula(f"E y . {body}", 2))
    assert rna.equivalent_rna(forall, dual)[0]


def test_corpus_weak_everywhere():
    for phi in FORMULA_CORPUS:
        for base in (2, 3, 4, 10):
            R = arith.compile_formula(phi, base)
            assert classify(R.automaton).kind == TopKind.WEAK, (phi, base)


def test_corpus_analytic_oracles():
    # Independent oracles for a few corpus formulas, on a rational battery.
    oracles = {
        "x <= 1/2": lambda x: x <= F(1, 2),
        "0 <= x & x <= 1/2": lambda x: 0 <= x <= F(1, 2),
        "x < 1/3 | x >= 2/3": lambda x: x < F(1, 3) or x >= F(2, 3),
        "int(x)": lambda x: x.denominator == 1,
        "E y . int(y) & y <= x & x < y + 1/2": lambda x: x - math.floor(x) < F(1, 2),
        "E y . int(y) & x = 2*y": lambda x: x.denominator == 1 and x % 2 == 0,
        "E y . int(y) & x = y + 1/2": lambda x: (x - F(1, 2)).denominator == 1,
        "E y . y = 2*x & int(y)": lambda x: (2 * x).denominator == 1,
        "x = 0": lambda x: x == 0,
        "x + x = 1": lambda x: x == F(1, 2),
    }
    battery = stratified_rationals(31, 200)
    for text, oracle in oracles.items():
        R = arith.compile_formula(text, 2)
        for x in battery:
            assert rna.member(R, x) == oracle(x), (text, x)
