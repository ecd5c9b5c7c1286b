"""Digit-serial automaton constructions over valid encodings.

Builds the weak automata for the valid-encoding language, linear
(in)equalities, and integrality, plus the track plumbing (lift, erase,
sign-digit pump) shared by the number-level operations and the formula
compiler.

Linear atoms evaluate by value, not by digit pattern: the integer phase
tracks the partial combination inside a window that escapes monotonically,
the fractional phase tracks the remaining budget in [-A⁻, A⁺].  A run that
never escapes witnesses exact equality, so dual encodings of boundary
values are classified consistently and the resulting automata are
saturated by construction.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .automata import (
    Alphabet,
    AutomatonError,
    Buchi,
    CoBuchi,
    NondetAutomaton,
    OmegaAutomaton,
    Weak,
    make_alphabet,
)
from .numeric import Base

COMPARATORS = ("<", "<=", "=", ">=", ">")


def validity_automaton_raw(base: "Base | int", arity: int = 1) -> OmegaAutomaton:
    """Weak automaton for the valid encodings: componentwise sign digit in
    {0, r-1}, then digits, one shared separator, then digits forever."""
    alphabet = make_alphabet(base, arity)
    r = alphabet.base.value
    init, mid, frac, junk = 0, 1, 2, 3
    rows = []
    for state in (init, mid, frac, junk):
        row = []
        for sym in range(alphabet.n_symbols):
            if state == junk:
                row.append(junk)
            elif sym == alphabet.star:
                row.append(frac if state == mid else junk)
            else:
                digits = alphabet.digits(sym)
                if state == init:
                    row.append(mid if all(d in (0, r - 1) for d in digits) else junk)
                elif state == mid:
                    row.append(mid)
                else:
                    row.append(frac)
        rows.append(tuple(row))
    return OmegaAutomaton(alphabet, tuple(rows), init, Weak(frozenset({frac})))


def linear_atom_automaton(
    coeffs: Sequence[Fraction],
    cmp: str,
    const: Fraction,
    base: "Base | int",
) -> OmegaAutomaton:
    """Weak automaton for { x̄ : Σ coeffs·x̄  cmp  const } over valid encodings."""
    if cmp not in COMPARATORS:
        raise AutomatonError(f"unknown comparator {cmp!r}")
    coeffs = [Fraction(v) for v in coeffs]
    if not coeffs or all(v == 0 for v in coeffs):
        raise AutomatonError("linear atom needs a nonzero coefficient")
    const = Fraction(const)
    scale = lcm(*(v.denominator for v in coeffs), const.denominator)
    a = [int(v * scale) for v in coeffs]
    c = int(const * scale)

    alphabet = make_alphabet(base, len(a))
    r = alphabet.base.value
    a_plus = sum(v for v in a if v > 0)
    a_minus = -sum(v for v in a if v < 0)
    v_hi = max(c + a_minus, a_minus)
    v_lo = min(c - a_plus, -a_plus)

    # Locked verdicts once the tracked quantity escapes its window.
    less_true = cmp in ("<", "<=")
    greater_true = cmp in (">", ">=")
    frac_accepting = cmp in ("=", "<=", ">=")

    states: dict[tuple, int] = {}
    rows: list[list[int]] = []

    def intern(key: tuple) -> int:
        if key not in states:
            states[key] = len(rows)
            rows.append([-1] * alphabet.n_symbols)
        return states[key]

    true_sink = intern(("sink", True))
    false_sink = intern(("sink", False))
    for sym in range(alphabet.n_symbols):
        rows[true_sink][sym] = true_sink
        rows[false_sink][sym] = false_sink

    def verdict_sink(is_less_side: bool) -> int:
        verdict = less_true if is_less_side else greater_true
        return true_sink if verdict else false_sink

    init = intern(("init",))
    work = [("init",)]
    while work:
        key = work.pop()
        state = states[key]
        for sym in range(alphabet.n_symbols):
            if rows[state][sym] != -1:
                continue
            if key[0] == "init":
                if sym == alphabet.star:
                    target = false_sink
                else:
                    digits = alphabet.digits(sym)
                    if all(d in (0, r - 1) for d in digits):
                        v0 = -sum(a[i] for i, d in enumerate(digits) if d == r - 1)
                        target = intern(("int", v0))
                        if rows[target].count(-1) == alphabet.n_symbols:
                            work.append(("int", v0))
                    else:
                        target = false_sink
            elif key[0] == "int":
                v = key[1]
                if sym == alphabet.star:
                    rho = c - v
                    if rho > a_plus:
                        target = verdict_sink(True)
                    elif rho < -a_minus:
                        target = verdict_sink(False)
                    else:
                        target = intern(("frac", rho))
                        if rows[target].count(-1) == alphabet.n_symbols:
                            work.append(("frac", rho))
                else:
                    digits = alphabet.digits(sym)
                    v2 = v * r + sum(a[i] * d for i, d in enumerate(digits))
                    if v2 > v_hi:
                        target = verdict_sink(False)
                    elif v2 < v_lo:
                        target = verdict_sink(True)
                    else:
                        target = intern(("int", v2))
                        if rows[target].count(-1) == alphabet.n_symbols:
                            work.append(("int", v2))
            else:  # frac
                rho = key[1]
                if sym == alphabet.star:
                    target = false_sink
                else:
                    digits = alphabet.digits(sym)
                    rho2 = rho * r - sum(a[i] * d for i, d in enumerate(digits))
                    if rho2 > a_plus:
                        target = verdict_sink(True)
                    elif rho2 < -a_minus:
                        target = verdict_sink(False)
                    else:
                        target = intern(("frac", rho2))
                        if rows[target].count(-1) == alphabet.n_symbols:
                            work.append(("frac", rho2))
            rows[state][sym] = target

    accepting = {true_sink}
    if frac_accepting:
        accepting.update(s for key, s in states.items() if key[0] == "frac")
    delta = tuple(tuple(row) for row in rows)
    value_automaton = OmegaAutomaton(alphabet, delta, init, Weak(frozenset(accepting)))
    # The verdict sinks ignore word shape; restrict to valid encodings.
    from .automata import minimize_weak, product

    return minimize_weak(
        product(value_automaton, validity_automaton_raw(base, len(a)), "and")
    )


def integrality_automaton(base: "Base | int") -> OmegaAutomaton:
    """Weak automaton for the integers: after the separator, exactly (0)^ω
    (fractional part 0) or (r-1)^ω (fractional part 1)."""
    alphabet = make_alphabet(base, 1)
    r = alphabet.base.value
    init, mid, first, zeros, nines, junk = range(6)
    rows = []
    for state in range(6):
        row = []
        for sym in range(alphabet.n_symbols):
            if state == junk:
                row.append(junk)
            elif sym == alphabet.star:
                row.append(first if state == mid else junk)
            else:
                d = alphabet.digits(sym)[0]
                if state == init:
                    row.append(mid if d in (0, r - 1) else junk)
                elif state == mid:
                    row.append(mid)
                elif state == first:
                    row.append(zeros if d == 0 else nines if d == r - 1 else junk)
                elif state == zeros:
                    row.append(zeros if d == 0 else junk)
                else:
                    row.append(nines if d == r - 1 else junk)
        rows.append(tuple(row))
    return OmegaAutomaton(alphabet, tuple(rows), init, Weak(frozenset({zeros, nines})))


def lift(aut: OmegaAutomaton, arity: int, positions: Sequence[int]) -> OmegaAutomaton:
    """Embed an automaton into a wider alphabet: track i of the original
    reads track positions[i] of the widened tuples."""
    if len(positions) != aut.alphabet.arity or len(set(positions)) != len(positions):
        raise AutomatonError("positions must be distinct, one per original track")
    if any(not 0 <= p < arity for p in positions):
        raise AutomatonError("position out of range")
    wide = Alphabet(aut.alphabet.base, arity)
    narrow = aut.alphabet
    symbol_map = []
    for sym in range(wide.n_symbols):
        if sym == wide.star:
            symbol_map.append(narrow.star)
        else:
            digits = wide.digits(sym)
            symbol_map.append(narrow.symbol(tuple(digits[p] for p in positions)))
    delta = tuple(
        tuple(aut.delta[q][symbol_map[sym]] for sym in range(wide.n_symbols))
        for q in range(aut.n_states)
    )
    return OmegaAutomaton(wide, delta, aut.initial, aut.acceptance)


def nfa_of(aut: OmegaAutomaton) -> NondetAutomaton:
    """View a deterministic weak or co-Büchi automaton as a nondeterministic
    co-Büchi automaton (the semantics coincide)."""
    acc = aut.acceptance
    if isinstance(acc, Weak):
        rejecting = frozenset(range(aut.n_states)) - acc.accepting
    elif isinstance(acc, CoBuchi):
        rejecting = acc.rejecting
    else:
        raise AutomatonError(
            "only weak and co-Büchi automata can feed nondeterministic constructions"
        )
    delta = tuple(
        tuple(frozenset({t}) for t in row) for row in aut.delta
    )
    return NondetAutomaton(aut.alphabet, delta, frozenset({aut.initial}), rejecting)


def erase_tracks(n: NondetAutomaton, drop: Sequence[int]) -> NondetAutomaton:
    """Project tracks away: the new symbols keep the remaining tracks and the
    dropped ones range over all digits."""
    old = n.alphabet
    drop_set = set(drop)
    if any(not 0 <= p < old.arity for p in drop_set):
        raise AutomatonError("dropped track out of range")
    keep = [p for p in range(old.arity) if p not in drop_set]
    if not keep:
        raise AutomatonError("cannot erase every track")
    new_alphabet = Alphabet(old.base, len(keep))

    groups: dict[int, list[int]] = {sym: [] for sym in range(new_alphabet.n_symbols)}
    for sym in range(old.n_digit_symbols):
        digits = old.digits(sym)
        groups[new_alphabet.symbol(tuple(digits[p] for p in keep))].append(sym)
    groups[new_alphabet.star] = [old.star]

    delta = tuple(
        tuple(
            frozenset(t for old_sym in groups[sym] for t in row[old_sym])
            for sym in range(new_alphabet.n_symbols)
        )
        for row in n.delta
    )
    return NondetAutomaton(new_alphabet, delta, n.initial, n.rejecting)


def product_nfa(n: NondetAutomaton, d: OmegaAutomaton) -> NondetAutomaton:
    """Intersection of a nondeterministic co-Büchi automaton with a
    deterministic weak or co-Büchi automaton."""
    if n.alphabet != d.alphabet:
        raise AutomatonError("alphabet mismatch")
    d_rejecting = nfa_of(d).rejecting
    pairs: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def intern(pair: tuple[int, int]) -> int:
        if pair not in pairs:
            pairs[pair] = len(order)
            order.append(pair)
        return pairs[pair]

    initial = frozenset(intern((q, d.initial)) for q in sorted(n.initial))
    rows: list[tuple[frozenset[int], ...]] = []
    head = 0
    while head < len(order):
        q, p = order[head]
        head += 1
        row = []
        for sym in range(n.alphabet.n_symbols):
            p2 = d.delta[p][sym]
            row.append(frozenset(intern((q2, p2)) for q2 in n.delta[q][sym]))
        rows.append(tuple(row))
        # intern() may extend `order` while iterating; the loop bound re-reads it.
    rejecting = frozenset(
        i for i, (q, p) in enumerate(order) if q in n.rejecting or p in d_rejecting
    )
    return NondetAutomaton(n.alphabet, tuple(rows), initial, rejecting)


def pump_nfa(n: NondetAutomaton) -> NondetAutomaton:
    """Close the language under repeating and stripping the leading sign
    tuple: a word is accepted iff some word with the same maximal leading
    sign-tuple run collapsed to a different positive length is.

    While the input repeats its leading tuple σ̄, a wait state either stalls
    or jumps to any state the original reaches via σ̄^m with m >= 1.
    """
    alphabet = n.alphabet
    r = alphabet.base.value
    sign_syms = [
        sym
        for sym in alphabet.digit_symbols()
        if all(d in (0, r - 1) for d in alphabet.digits(sym))
    ]
    bursts: dict[int, frozenset[int]] = {}
    for sym in sign_syms:
        targets: set[int] = set()
        frontier = {q2 for q in n.initial for q2 in n.delta[q][sym]}
        while frontier - targets:
            targets |= frontier
            frontier = {q2 for q in frontier for q2 in n.delta[q][sym]}
        bursts[sym] = frozenset(targets)

    init0 = n.n_states
    wait_index = {sym: init0 + 1 + i for i, sym in enumerate(sign_syms)}
    empty = frozenset()

    def entry_row() -> tuple[frozenset[int], ...]:
        row = [empty] * alphabet.n_symbols
        for sym in sign_syms:
            row[sym] = frozenset({wait_index[sym]}) | bursts[sym]
        return tuple(row)

    def wait_row(sym0: int) -> tuple[frozenset[int], ...]:
        row = [empty] * alphabet.n_symbols
        row[sym0] = frozenset({wait_index[sym0]}) | bursts[sym0]
        return tuple(row)

    delta = [tuple(row) for row in n.delta]
    delta.append(entry_row())
    for sym in sign_syms:
        delta.append(wait_row(sym))
    rejecting = n.rejecting | {init0} | set(wait_index.values())
    return NondetAutomaton(
        alphabet, tuple(delta), frozenset({init0}), frozenset(rejecting)
    )
