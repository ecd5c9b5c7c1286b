"""Desk-scale experiments: the dual-encoding counterexample set, cross-base
comparisons, oscillation witnesses, and the multi-base suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import compile_formula
from .automata import (
    CoBuchi,
    OmegaAutomaton,
    TopKind,
    Weak,
    classify,
    emptiness,
    intersection_witness,
    make_alphabet,
    product,
)
from .atoms import validity_automaton_raw
from .numeric import Base, as_base, same_prime_factors
from .rna import (
    RNA,
    RnaError,
    _lasso_value,
    _wrap,
    complement_rna,
    interval_rna,
    member,
    saturate,
    stability_pipeline,
)


def dual_set(t: "Base | int") -> RNA:
    """The numbers admitting dual encodings in base t (denominator a product
    of t's prime factors): tails (0)^ω or (t-1)^ω after the separator.
    Deterministic co-Büchi, saturated by construction."""
    alphabet = make_alphabet(t, 1)
    tv = alphabet.base.value
    q0, qi, mix, zeros, nines, sink = range(6)
    rows = []
    for state in range(6):
        row = []
        for sym in range(alphabet.n_symbols):
            if state == sink:
                row.append(sink)
            elif sym == alphabet.star:
                row.append(mix if state == qi else sink)
            else:
                d = alphabet.digits(sym)[0]
                if state == q0:
                    row.append(qi if d in (0, tv - 1) else sink)
                elif state == qi:
                    row.append(qi)
                elif state == mix:
                    row.append(zeros if d == 0 else nines if d == tv - 1 else mix)
                elif state == zeros:
                    row.append(zeros if d == 0 else mix)
                else:  # nines
                    row.append(nines if d == tv - 1 else mix)
        rows.append(tuple(row))
    acceptance = CoBuchi(frozenset({q0, qi, mix, sink}))
    return RNA(OmegaAutomaton(alphabet, tuple(rows), q0, acceptance), alphabet.base, 1, True)


def cantor_rna(base: "Base | int" = 3) -> RNA:
    """The middle-thirds-style set in the given base: fractional expansions
    avoiding digit 1, within [0, 1].  Saturation restores the encodings of
    members whose canonical expansion uses digit 1 (such as 1/3 = 0.1)."""
    alphabet = make_alphabet(base, 1)
    r = alphabet.base.value
    if r < 3:
        raise RnaError("the digit-avoiding set needs base >= 3")
    q0, qi, frac, sink = range(4)
    rows = []
    for state in range(4):
        row = []
        for sym in range(alphabet.n_symbols):
            if state == sink:
                row.append(sink)
            elif sym == alphabet.star:
                row.append(frac if state == qi else sink)
            else:
                d = alphabet.digits(sym)[0]
                if state == q0:
                    row.append(qi if d == 0 else sink)
                elif state == qi:
                    row.append(qi if d == 0 else sink)
                else:
                    row.append(frac if d != 1 else sink)
        rows.append(tuple(row))
    raw = OmegaAutomaton(alphabet, tuple(rows), q0, Weak(frozenset({frac})))
    return saturate(RNA(raw, alphabet.base, 1, False))


@dataclass(frozen=True)
class CrossBaseReport:
    base_r: int
    base_s: int
    sample_count: int
    agreements: int
    first_disagreement: Optional[Fraction]
    classify_r: TopKind
    classify_s: TopKind

    def __post_init__(self) -> None:
        if (self.first_disagreement is None) != (self.agreements == self.sample_count):
            raise RnaError("disagreement witness present iff some sample disagreed")


def _sample_battery(r: Base, s: Base, count: int, seed: int) -> list[Fraction]:
    """Stratified rationals: denominators over the primes of each base, of
    both, and of foreign primes, so cross-base disagreements are likely hit."""
    rng = random.Random(seed)
    shared = tuple(sorted(set(r.prime_factors) | set(s.prime_factors)))
    foreign = []
    candidate = 2
    while len(foreign) < 2:
        if all(candidate % p != 0 or candidate == p for p in (2, 3, 5, 7, 11, 13)):
            if candidate not in shared and all(candidate % d for d in range(2, candidate)):
                foreign.append(candidate)
        candidate += 1
    pools = [r.prime_factors, s.prime_factors, shared, tuple(foreign), shared + tuple(foreign)]
    out = []
    for i in range(count):
        pool = pools[i % len(pools)]
        cap = max(1, 5 // len(pool))
        den = 1
        for p in pool:
            den *= p ** rng.randint(0, cap)
        num = rng.randint(-4 * den, 4 * den)
        out.append(Fraction(num, den))
    return out


def cross_base_compare(R_r: RNA, R_s: RNA, n_samples: int, seed: int) -> CrossBaseReport:
    """Membership agreement of two RNAs (arity 1, saturated) on a seeded
    rational battery, plus both classification verdicts."""
    if R_r.arity != 1 or R_s.arity != 1:
        raise RnaError("cross-base comparison needs arity 1")
    R_r, R_s = saturate(R_r), saturate(R_s)
    samples = _sample_battery(R_r.base, R_s.base, n_samples, seed)
    agreements = 0
    witness: Optional[Fraction] = None
    for x in samples:
        if member(R_r, x) == member(R_s, x):
            agreements += 1
        elif witness is None:
            witness = x
    return CrossBaseReport(
        base_r=R_r.base.value,
        base_s=R_s.base.value,
        sample_count=len(samples),
        agreements=agreements,
        first_disagreement=witness,
        classify_r=classify(R_r.automaton).kind,
        classify_s=classify(R_s.automaton).kind,
    )


@dataclass(frozen=True)
class OscillationWitness:
    """Ever-closer points alternating in and out of the set, starting
    inside: |x_i - x_{i+1}| <= eps_i with strictly decreasing eps."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        epsilons = [eps for _, eps in self.points]
        if any(b >= a for a, b in zip(epsilons, epsilons[1:])):
            raise RnaError("epsilons must decrease strictly")
        values = [x for x, _ in self.points]
        for (x1, eps), x2 in zip(self.points, values[1:]):
            if abs(x1 - x2) > eps:
                raise RnaError("consecutive points exceed their epsilon")

    def verify(self, R: RNA) -> bool:
        """Re-check the alternation by direct membership calls."""
        for i, (x, _) in enumerate(self.points):
            if member(R, x) != (i % 2 == 0):
                return False
        return True


def oscillation_witness(
    R: RNA, depth: int, granularity: int = 2
) -> Optional[OscillationWitness]:
    """Search for a dense-oscillating chain of the given length by repeated
    emptiness checks in shrinking neighborhoods; None when the bounded
    search is exhausted (never a disproof)."""
    if R.arity != 1:
        raise RnaError("oscillation search needs arity 1")
    if depth < 1:
        return None
    R = saturate(R)
    comp = complement_rna(R)
    r = R.base.value
    first = emptiness(R.automaton)
    if first is None:
        return None
    x = _lasso_value(R.alphabet, first)
    points: list[tuple[Fraction, Fraction]] = []
    for i in range(1, depth + 1):
        eps = Fraction(2, r ** (i * granularity))
        points.append((x, eps))
        if i == depth:
            break
        target = comp if i % 2 == 1 else R
        window = interval_rna(x - eps, x + eps, R.base)
        hit = intersection_witness(target.automaton, window.automaton)
        if hit is None:
            return None
        x = _lasso_value(R.alphabet, hit)
    return OscillationWitness(tuple(points))


FORMULA_CORPUS: tuple[str, ...] = (
    "x <= 1/2",
    "0 <= x & x <= 1/2",
    "x < 1/3 | x >= 2/3",
    "1/4 <= x & x < 3/4",
    "int(x)",
    "int(x) & 0 <= x & x <= 8",
    "!int(x) & 0 < x & x < 2",
    "E y . int(y) & y <= x & x < y + 1/2",
    "E y . int(y) & x = 2*y",
    "E y . int(y) & x = y + 1/2",
    "E y . y = 2*x & int(y)",
    "x = 0",
    "x + x = 1",
    "A y . x <= y | y <= x",
    "E y . int(y) & (x = y + 1/4 | x = y + 3/4)",
    "E y . E z . int(y) & int(z) & 2*z <= x & x = y + z",
    "A y . !int(y) | (E z . int(z) & y + x = z)",
)


@dataclass(frozen=True)
class SuiteReport:
    lines: tuple[str, ...]
    csv_rows: tuple[tuple[str, str, str, str, str], ...]
    ok: bool

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"

    def csv(self) -> str:
        header = "experiment,base_r,base_s,verdict,witness"
        rows = [",".join(row) for row in self.csv_rows]
        return "\n".join([header, *rows]) + "\n"


def run_cobham_suite(r: "Base | int", s: "Base | int", seed: int = 0) -> SuiteReport:
    """Multi-base recognizability evidence at desk scale.

    (a) the formula corpus compiles weak in both bases with full rational
    agreement; (b) for bases sharing their prime factors, the dual-encoding
    set is non-weak in both bases yet agrees on rationals and yields an
    oscillation witness; (c) the stability pipeline runs on that pair with
    verified flags.
    """
    rb, sb = as_base(r), as_base(s)
    lines: list[str] = [f"suite: bases {rb.value} and {sb.value}", f"seed: {seed}"]
    rows: list[tuple[str, str, str, str, str]] = []
    ok = True

    for phi in FORMULA_CORPUS:
        compiled_r = compile_formula(phi, rb)
        compiled_s = compile_formula(phi, sb)
        report = cross_base_compare(compiled_r, compiled_s, 200, seed)
        good = (
            report.agreements == report.sample_count
            and report.classify_r == TopKind.WEAK
            and report.classify_s == TopKind.WEAK
        )
        ok = ok and good
        verdict = "pass" if good else "FAIL"
        lines.append(f"definable[{phi}]: {verdict} ({report.agreements}/{report.sample_count})")
        rows.append(("definable", str(rb.value), str(sb.value), verdict, phi))

    if same_prime_factors(rb, sb) and rb.value != sb.value:
        d_r, d_s = dual_set(rb), dual_set(sb)
        report = cross_base_compare(d_r, d_s, 200, seed)
        non_weak = (
            report.classify_r == TopKind.DET_COBUCHI_ONLY
            and report.classify_s == TopKind.DET_COBUCHI_ONLY
        )
        agree = report.agreements == report.sample_count
        witness = oscillation_witness(d_r, 6)
        found = witness is not None and witness.verify(d_r)
        good = non_weak and agree and found
        ok = ok and good
        lines.append(
            f"dual-set: classify {report.classify_r.value}/{report.classify_s.value},"
            f" agree {report.agreements}/{report.sample_count},"
            f" oscillation {'found' if found else 'missing'}"
        )
        rows.append(
            (
                "dual_set",
                str(rb.value),
                str(sb.value),
                "pass" if good else "FAIL",
                "oscillation" if found else "",
            )
        )

        pipeline = stability_pipeline(d_r, d_s)
        good = pipeline.verified_r and pipeline.verified_s
        ok = ok and good
        lines.append(
            f"pipeline: p={pipeline.p} q={pipeline.q} p'={pipeline.p2} q'={pipeline.q2}"
            f" verified_r={pipeline.verified_r} verified_s={pipeline.verified_s}"
        )
        rows.append(
            (
                "pipeline",
                str(rb.value),
                str(sb.value),
                "pass" if good else "FAIL",
                f"q={pipeline.q};q'={pipeline.q2}",
            )
        )
    else:
        lines.append("dual-set: skipped (bases do not share the same prime factors)")
        rows.append(("dual_set", str(rb.value), str(sb.value), "skipped", ""))

    lines.append(f"overall: {'pass' if ok else 'FAIL'}")
    return SuiteReport(tuple(lines), tuple(rows), ok)


def random_weak_rna(base: "Base | int", seed: int, max_states: int = 4) -> RNA:
    """A random weak saturated RNA: random structure intersected with the
    valid encodings, random per-SCC acceptance, saturated (retrying until
    the saturation stays in the weak class)."""
    from .automata import strongly_connected_components

    b = as_base(base)
    alphabet = make_alphabet(b, 1)
    attempt_seed = seed
    while True:
        rng = random.Random(attempt_seed)
        attempt_seed += 7919
        n = rng.randint(2, max_states)
        delta = tuple(
            tuple(rng.randrange(n) for _ in range(alphabet.n_symbols))
            for _ in range(n)
        )
        comps = strongly_connected_components([list(row) for row in delta])
        accepting: set[int] = set()
        for comp in comps:
            if rng.random() < 0.5:
                accepting.update(comp)
        raw = OmegaAutomaton(alphabet, delta, 0, Weak(frozenset(accepting)))
        shaped = product(raw, validity_automaton_raw(b, 1), "and")
        if emptiness(shaped) is None:
            continue
        try:
            candidate = saturate(_wrap(shaped, False))
        except RnaError:
            continue
        if classify(candidate.automaton).kind == TopKind.WEAK:
            return candidate
