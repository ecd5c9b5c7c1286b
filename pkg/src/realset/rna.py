"""Number-level layer on top of the automaton algebra.

An :class:`RNA` wraps a deterministic omega-automaton whose language is a
set of valid encodings.  Operations here work on the represented sets of
reals: saturation (close the language over all encodings of each value),
membership of rational vectors, integer/fractional decomposition, affine
images, base-power conversion, topological closure and boundary, interval
extraction, product/sum stability, star-delay, and the product-stability
pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .atoms import (
    erase_tracks,
    lift,
    linear_atom_automaton,
    nfa_of,
    pump_nfa,
    validity_automaton_raw,
)
from .automata import (
    Alphabet,
    Buchi,
    CoBuchi,
    Lasso,
    NondetAutomaton,
    OmegaAutomaton,
    Weak,
    complement,
    determinize_checked,
    emptiness,
    equivalent,
    intersection_witness,
    live_states,
    make_alphabet,
    member_up,
    minimize_weak,
    product,
    reduce_moore,
    strongly_connected_components,
    trim_reachable,
    with_initial,
)
from .numeric import (
    Base,
    UPWord,
    as_base,
    decode_word,
    dual_of,
    encode_rational,
    format_rational,
    stratified_rationals,
    up_word,
)


class RnaError(ValueError):
    """Domain-level failure (bad arity, violated precondition, blown bound)."""


class PreconditionFailedError(RnaError):
    """An operation's stated hypothesis does not hold for the input."""


@dataclass(frozen=True)
class RNA:
    """A set of reals (or real vectors) represented by encodings.

    ``saturated`` records that the language contains every encoding of every
    represented value; most number-level operations require it and every
    constructor here establishes it.
    """

    automaton: OmegaAutomaton
    base: Base
    arity: int
    saturated: bool

    def __post_init__(self) -> None:
        alphabet = self.automaton.alphabet
        if alphabet.base != self.base or alphabet.arity != self.arity:
            raise RnaError("automaton alphabet disagrees with RNA base/arity")

    @property
    def alphabet(self) -> Alphabet:
        return self.automaton.alphabet


def _wrap(aut: OmegaAutomaton, saturated: bool) -> RNA:
    return RNA(aut, aut.alphabet.base, aut.alphabet.arity, saturated)


def validity_automaton(base: "Base | int", arity: int = 1) -> RNA:
    """The set of all reals (every valid encoding); saturated by construction."""
    return _wrap(validity_automaton_raw(base, arity), True)


def empty_rna(base: "Base | int", arity: int = 1) -> RNA:
    alphabet = make_alphabet(base, arity)
    delta = (tuple(0 for _ in range(alphabet.n_symbols)),)
    return _wrap(OmegaAutomaton(alphabet, delta, 0, Weak(frozenset())), True)


def interval_rna(
    lo: Fraction,
    hi: Fraction,
    base: "Base | int",
    lo_closed: bool = True,
    hi_closed: bool = True,
) -> RNA:
    """The rational interval between lo and hi as a weak saturated RNA."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
        return empty_rna(base)
    lower = linear_atom_automaton([Fraction(1)], ">=" if lo_closed else ">", lo, base)
    upper = linear_atom_automaton([Fraction(1)], "<=" if hi_closed else "<", hi, base)
    return _wrap(minimize_weak(product(lower, upper, "and")), True)


def point_rna(value: Fraction, base: "Base | int") -> RNA:
    return interval_rna(value, value, base)


def up_word_lasso(alphabet: Alphabet, w: UPWord) -> Lasso:
    """Symbol lasso of a scalar encoding (arity-1 alphabets only)."""
    if alphabet.arity != 1:
        raise RnaError("scalar lasso needs an arity-1 alphabet")
    prefix = [alphabet.symbol((d,)) for d in w.int_digits]
    prefix.append(alphabet.star)
    prefix.extend(alphabet.symbol((d,)) for d in w.frac_prefix)
    cycle = tuple(alphabet.symbol((d,)) for d in w.frac_period)
    return Lasso(tuple(prefix), cycle)


def vector_lasso(alphabet: Alphabet, words: Sequence[UPWord]) -> Lasso:
    """Synchronize component encodings into one tuple lasso: integer parts
    are sign-padded to a common length, prefixes are unrolled to a common
    length, periods to their lcm."""
    if len(words) != alphabet.arity:
        raise RnaError(f"expected {alphabet.arity} component words")
    int_len = max(len(w.int_digits) for w in words)
    ints = [
        (w.int_digits[0],) * (int_len - len(w.int_digits)) + w.int_digits
        for w in words
    ]
    pre_len = max(len(w.frac_prefix) for w in words)
    prefixes = []
    rotated = []
    for w in words:
        need = pre_len - len(w.frac_prefix)
        period = w.frac_period
        ext = list(w.frac_prefix) + [period[i % len(period)] for i in range(need)]
        prefixes.append(tuple(ext))
        shift = need % len(period)
        rotated.append(period[shift:] + period[:shift])
    cycle_len = math.lcm(*(len(p) for p in rotated))
    prefix = [alphabet.symbol(col) for col in zip(*ints)]
    prefix.append(alphabet.star)
    prefix.extend(alphabet.symbol(col) for col in zip(*prefixes))
    cycle = tuple(
        alphabet.symbol(tuple(p[i % len(p)] for p in rotated))
        for i in range(cycle_len)
    )
    return Lasso(tuple(prefix), cycle)


def member(R: RNA, point: Union[Fraction, Sequence[Fraction]]) -> bool:
    """Membership of a rational (vector) in the represented set.

    Saturated RNAs are probed on the canonical encoding; unsaturated ones
    also on every dual combination.
    """
    values = [Fraction(point)] if isinstance(point, (Fraction, int)) else [Fraction(v) for v in point]
    if len(values) != R.arity:
        raise RnaError(f"expected {R.arity} components, got {len(values)}")
    encodings = [encode_rational(v, R.base) for v in values]
    if member_up(R.automaton, vector_lasso(R.alphabet, encodings)):
        return True
    if R.saturated:
        return False
    options = [[w] + ([d] if (d := dual_of(w)) is not None else []) for w in encodings]
    combos = [[]]
    for opts in options:
        combos = [c + [o] for c in combos for o in opts]
    return any(
        member_up(R.automaton, vector_lasso(R.alphabet, combo))
        for combo in combos[1:]
    )


def complement_rna(R: RNA) -> RNA:
    """The complement set, as valid encodings outside the language."""
    if not R.saturated:
        R = saturate(R)
    aut = product(complement(R.automaton), validity_automaton_raw(R.base, R.arity), "and")
    return _wrap(aut, True)


def equivalent_rna(a: RNA, b: RNA) -> tuple[bool, Optional[Lasso]]:
    """Set equality (as language equality of saturated languages)."""
    return equivalent(a.automaton, b.automaton)


def _determinize(n: NondetAutomaton, require_weak: bool = False) -> OmegaAutomaton:
    return determinize_checked(n, require_weak=require_weak)


def _pump_close(aut: OmegaAutomaton) -> OmegaAutomaton:
    return _determinize(pump_nfa(nfa_of(aut)))


def _equality_relation(arity: int, base: Base) -> OmegaAutomaton:
    """Weak automaton over 2*arity tracks for componentwise value equality
    (tracks 0..arity-1 against tracks arity..2*arity-1)."""
    rel: Optional[OmegaAutomaton] = None
    for i in range(arity):
        atom = linear_atom_automaton([Fraction(1), Fraction(-1)], "=", Fraction(0), base)
        wide = lift(atom, 2 * arity, (i, arity + i))
        rel = wide if rel is None else product(rel, wide, "and")
    assert rel is not None
    return minimize_weak(rel)


def saturate(R: RNA) -> RNA:
    """Smallest language over the same value set containing every encoding
    of every represented value: close under sign-digit pumping, then relate
    through value equality and project the fresh tracks, then pump again."""
    if R.saturated:
        return R
    k = R.arity
    pumped = _determinize(pump_nfa(nfa_of(R.automaton)))
    wide = lift(pumped, 2 * k, tuple(range(k)))
    rel = _equality_relation(k, R.base)
    joint = product(wide, rel, "and")
    projected = _determinize(erase_tracks(nfa_of(joint), tuple(range(k))))
    return _wrap(_pump_close(projected), True)


def affine(R: RNA, a: Fraction, b: Fraction) -> RNA:
    """The image {a*x + b : x in S}; a = 0 collapses to the point {b}."""
    if R.arity != 1:
        raise RnaError("affine images are defined for arity 1")
    a, b = Fraction(a), Fraction(b)
    if a == 0:
        return point_rna(b, R.base)
    R = saturate(R)
    relation = linear_atom_automaton([a, Fraction(-1)], "=", -b, R.base)
    wide = lift(R.automaton, 2, (0,))
    joint = product(wide, relation, "and")
    projected = _determinize(erase_tracks(nfa_of(joint), (0,)))
    return _wrap(_pump_close(projected), True)


def clip(R: RNA, lo: Fraction, hi: Fraction) -> RNA:
    """Intersection with the closed interval [lo, hi]."""
    if R.arity != 1:
        raise RnaError("clip is defined for arity 1")
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise RnaError(f"clip needs lo <= hi, got {lo} > {hi}")
    window = interval_rna(lo, hi, R.base)
    return _wrap(product(R.automaton, window.automaton, "and"), R.saturated)


def closure_rna(R: RNA) -> RNA:
    """Topological closure of the represented set: word-metric closure of
    the language restricted to valid encodings, then saturation (limits
    approached from one side need the dual encodings re-added)."""
    R = saturate(R)
    closed = safety_closure_valid(R)
    return saturate(_wrap(closed, False))


def safety_closure_valid(R: RNA) -> OmegaAutomaton:
    from .automata import safety_closure

    closed_words = safety_closure(R.automaton)
    return product(closed_words, validity_automaton_raw(R.base, R.arity), "and")


def boundary(R: RNA) -> RNA:
    """The set of boundary points: closure(S) ∩ closure(complement of S)."""
    if R.arity != 1:
        raise RnaError("boundary is defined for arity 1")
    R = saturate(R)
    inside = closure_rna(R)
    outside = closure_rna(complement_rna(R))
    aut = minimize_weak(product(inside.automaton, outside.automaton, "and"))
    return _wrap(aut, True)


def _int_root(value: int, l: int) -> int:
    r = round(value ** (1.0 / l))
    for candidate in (r - 1, r, r + 1):
        if candidate >= 2 and candidate**l == value:
            return candidate
    raise RnaError(f"{value} is not an exact {l}-th power of a base")


def base_power_up(R: RNA, l: int) -> RNA:
    """Convert to base r^l by grouping l digits per symbol; the value set is
    unchanged.  Saturation makes the grouping alignment canonical."""
    if R.arity != 1:
        raise RnaError("base conversion is defined for arity 1")
    if l < 1:
        raise RnaError("l must be >= 1")
    if l == 1:
        return saturate(R)
    R = saturate(R)
    aut = R.automaton
    r = R.base.value
    new_alphabet = make_alphabet(Base.of(r**l), 1)
    acc = aut.acceptance
    if isinstance(acc, Weak):
        flagged: frozenset[int] = frozenset()
        track_flag = False
    elif isinstance(acc, Buchi):
        flagged, track_flag = acc.accepting, True
    elif isinstance(acc, CoBuchi):
        flagged, track_flag = acc.rejecting, True
    else:
        raise RnaError("base conversion does not support Muller acceptance")

    def expand(sym: int) -> list[int]:
        digits = []
        value = sym
        for _ in range(l):
            digits.append(value % r)
            value //= r
        return [aut.alphabet.symbol((d,)) for d in reversed(digits)]

    states: dict[tuple[int, bool], int] = {}
    rows: list[list[int]] = []
    order: list[tuple[int, bool]] = []

    def intern(key: tuple[int, bool]) -> int:
        if key not in states:
            states[key] = len(order)
            order.append(key)
            rows.append([-1] * new_alphabet.n_symbols)
        return states[key]

    start = intern((aut.initial, False))
    head = 0
    while head < len(order):
        q, _ = order[head]
        me = head
        head += 1
        for sym in range(new_alphabet.n_symbols):
            if sym == new_alphabet.star:
                q2 = aut.delta[q][aut.alphabet.star]
                hit = q2 in flagged
            else:
                q2 = q
                hit = False
                for old_sym in expand(sym):
                    q2 = aut.delta[q2][old_sym]
                    hit = hit or q2 in flagged
            rows[me][sym] = intern((q2, hit if track_flag else False))

    delta = tuple(tuple(row) for row in rows)
    if isinstance(acc, Weak):
        acceptance: object = Weak(
            frozenset(i for i, (q, _) in enumerate(order) if q in acc.accepting)
        )
    elif isinstance(acc, Buchi):
        acceptance = Buchi(frozenset(i for i, (_, hit) in enumerate(order) if hit))
    else:
        acceptance = CoBuchi(frozenset(i for i, (_, hit) in enumerate(order) if hit))
    converted = OmegaAutomaton(new_alphabet, delta, start, acceptance)
    return RNA(reduce_moore(converted), new_alphabet.base, 1, True)


def base_power_down(R: RNA, l: int) -> RNA:
    """Convert from base r^l down to base r by splitting digits; the l
    possible integer-part alignments are tracked in parallel and the
    separator position selects the consistent one."""
    if R.arity != 1:
        raise RnaError("base conversion is defined for arity 1")
    if l < 1:
        raise RnaError("l must be >= 1")
    if l == 1:
        return saturate(R)
    R = saturate(R)
    aut = R.automaton
    big = R.base.value
    r = _int_root(big, l)
    new_alphabet = make_alphabet(Base.of(r), 1)
    acc = aut.acceptance
    if isinstance(acc, Weak):
        flagged_acc: frozenset[int] = acc.accepting
    elif isinstance(acc, Buchi):
        flagged_acc = acc.accepting
    elif isinstance(acc, CoBuchi):
        flagged_acc = acc.rejecting
    else:
        raise RnaError("base conversion does not support Muller acceptance")

    def group_symbol(digits: Sequence[int]) -> int:
        value = 0
        for d in digits:
            value = value * r + d
        return aut.alphabet.symbol((value,))

    states: dict[tuple, int] = {}
    rows: list[list[int]] = []
    order: list[tuple] = []

    def intern(key: tuple) -> int:
        if key not in states:
            states[key] = len(order)
            order.append(key)
            rows.append([-1] * new_alphabet.n_symbols)
        return states[key]

    junk = intern(("junk",))
    for sym in range(new_alphabet.n_symbols):
        rows[junk][sym] = junk
    start = intern(("start",))
    head = 1
    while head < len(order):
        key = order[head]
        me = head
        head += 1
        for sym in range(new_alphabet.n_symbols):
            if rows[me][sym] != -1:
                continue
            if key[0] == "start":
                if sym == new_alphabet.star:
                    target = junk
                else:
                    d = new_alphabet.digits(sym)[0]
                    if d not in (0, r - 1):
                        target = junk
                    else:
                        sign_group = group_symbol([d] * l)
                        hyps = []
                        for a in range(l):
                            q = aut.delta[aut.initial][sign_group]
                            pending = tuple([d] * a + [d])
                            if len(pending) == l:
                                q = aut.delta[q][group_symbol(pending)]
                                pending = ()
                            hyps.append((q, pending))
                        target = intern(("pre", tuple(hyps)))
            elif key[0] == "pre":
                hyps = key[1]
                if sym == new_alphabet.star:
                    chosen = [q for q, pending in hyps if not pending]
                    q = aut.delta[chosen[0]][aut.alphabet.star]
                    target = intern(("frac", q, ()))
                else:
                    d = new_alphabet.digits(sym)[0]
                    new_hyps = []
                    for q, pending in hyps:
                        pending = pending + (d,)
                        if len(pending) == l:
                            q = aut.delta[q][group_symbol(pending)]
                            pending = ()
                        new_hyps.append((q, pending))
                    target = intern(("pre", tuple(new_hyps)))
            else:  # frac
                _, q, buffer = key
                if sym == new_alphabet.star:
                    target = junk
                else:
                    d = new_alphabet.digits(sym)[0]
                    buffer = buffer + (d,)
                    if len(buffer) == l:
                        target = intern(("frac", aut.delta[q][group_symbol(buffer)], ()))
                    else:
                        target = intern(("frac", q, buffer))
            rows[me][sym] = target

    delta = tuple(tuple(row) for row in rows)
    frac_flagged = frozenset(
        i for i, key in enumerate(order) if key[0] == "frac" and key[1] in flagged_acc
    )
    if isinstance(acc, CoBuchi):
        non_frac = frozenset(i for i, key in enumerate(order) if key[0] != "frac")
        acceptance: object = CoBuchi(frac_flagged | non_frac)
    elif isinstance(acc, Buchi):
        acceptance = Buchi(frac_flagged)
    else:
        acceptance = Weak(frac_flagged)
    converted = OmegaAutomaton(new_alphabet, delta, start, acceptance)
    return RNA(reduce_moore(converted), new_alphabet.base, 1, True)


# ---------------------------------------------------------------------------
# Integer-part finite-word automata


@dataclass(frozen=True)
class IntWordDfa:
    """DFA over the digit alphabet accepting integer-part encodings
    (sign digit first, r's complement)."""

    base: Base
    delta: tuple[tuple[int, ...], ...]
    initial: int
    accepting: frozenset[int]

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def run(self, digits: Sequence[int]) -> int:
        state = self.initial
        for d in digits:
            state = self.delta[state][d]
        return state

    def accepts_digits(self, digits: Sequence[int]) -> bool:
        return self.run(digits) in self.accepting

    def accepts_int(self, n: int) -> bool:
        return self.accepts_digits(encode_rational(Fraction(n), self.base).int_digits)


def dfa_product(a: IntWordDfa, b: IntWordDfa, mode: str) -> IntWordDfa:
    if a.base != b.base:
        raise RnaError("base mismatch")
    r = a.base.value
    pairs = {(a.initial, b.initial): 0}
    order = [(a.initial, b.initial)]
    rows = []
    head = 0
    while head < len(order):
        pa, pb = order[head]
        head += 1
        row = []
        for d in range(r):
            t = (a.delta[pa][d], b.delta[pb][d])
            if t not in pairs:
                pairs[t] = len(order)
                order.append(t)
            row.append(pairs[t])
        rows.append(tuple(row))
    good = []
    for i, (pa, pb) in enumerate(order):
        ina, inb = pa in a.accepting, pb in b.accepting
        keep = (ina and inb) if mode == "and" else (ina or inb) if mode == "or" else (ina and not inb)
        if keep:
            good.append(i)
    return IntWordDfa(a.base, tuple(rows), 0, frozenset(good))


def dfa_is_empty(d: IntWordDfa) -> bool:
    seen = {d.initial}
    stack = [d.initial]
    while stack:
        q = stack.pop()
        if q in d.accepting:
            return False
        for t in d.delta[q]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return True


def dfa_equivalent(a: IntWordDfa, b: IntWordDfa) -> bool:
    return dfa_is_empty(dfa_product(a, b, "minus")) and dfa_is_empty(
        dfa_product(b, a, "minus")
    )


def _dfa_trim_states(d: IntWordDfa) -> set[int]:
    """States both reachable and co-reachable (lying on an accepting path)."""
    reach = {d.initial}
    stack = [d.initial]
    while stack:
        q = stack.pop()
        for t in d.delta[q]:
            if t not in reach:
                reach.add(t)
                stack.append(t)
    predecessors: dict[int, set[int]] = {q: set() for q in range(d.n_states)}
    for q in range(d.n_states):
        for t in d.delta[q]:
            predecessors[t].add(q)
    co = set(d.accepting)
    stack = list(co)
    while stack:
        q = stack.pop()
        for p in predecessors[q]:
            if p not in co:
                co.add(p)
                stack.append(p)
    return reach & co


def dfa_is_finite(d: IntWordDfa) -> bool:
    """Finite language iff the trimmed graph is acyclic."""
    live = _dfa_trim_states(d)
    succ = [
        [t for t in set(d.delta[q]) if t in live] if q in live else []
        for q in range(d.n_states)
    ]
    for comp in strongly_connected_components(succ):
        if len(comp) > 1 or (comp[0] in live and comp[0] in succ[comp[0]]):
            return False
    return True


def dfa_words(d: IntWordDfa, cap: int = 100_000) -> list[tuple[int, ...]]:
    """All accepted words of a finite-language DFA."""
    live = _dfa_trim_states(d)
    out: list[tuple[int, ...]] = []
    if d.initial not in live:
        return out
    stack: list[tuple[int, tuple[int, ...]]] = [(d.initial, ())]
    while stack:
        q, word = stack.pop()
        if q in d.accepting:
            out.append(word)
            if len(out) > cap:
                raise RnaError("finite-language enumeration exceeded cap")
        for digit in range(d.base.value):
            t = d.delta[q][digit]
            if t in live:
                stack.append((t, word + (digit,)))
    return out


def canonical_int_dfa(base: "Base | int") -> IntWordDfa:
    """Minimal-length integer encodings: a sign digit not followed by a copy
    of itself."""
    b = as_base(base)
    r = b.value
    # States: 0 init, 1 after-0, 2 after-(r-1), 3 body, 4 dead.
    rows = []
    for state in range(5):
        row = []
        for d in range(r):
            if state == 0:
                row.append(1 if d == 0 else 2 if d == r - 1 else 4)
            elif state == 1:
                row.append(4 if d == 0 else 3)
            elif state == 2:
                row.append(4 if d == r - 1 else 3)
            elif state == 3:
                row.append(3)
            else:
                row.append(4)
        rows.append(tuple(row))
    return IntWordDfa(b, tuple(rows), 0, frozenset({1, 2, 3}))


def int_value_of_digits(digits: Sequence[int], base: "Base | int") -> int:
    b = as_base(base)
    r = b.value
    value = 0
    for d in digits[1:]:
        value = value * r + d
    if digits and digits[0] == r - 1:
        value -= r ** (len(digits) - 1)
    return value


def progression_dfa(a: int, b: int, base: "Base | int") -> IntWordDfa:
    """Integer encodings of {a + k*b : k in N} (b may be negative; b = 0 is
    the singleton {a}).  Tracks the value modulo |b| with an r's-complement
    Horner scheme plus a clamped comparator against a."""
    bb = as_base(base)
    r = bb.value
    mod = abs(b)
    cap = abs(a) + mod + 2

    def clamp(v: int) -> object:
        if v > cap:
            return "HI"
        if v < -cap:
            return "LO"
        return v

    def member_state(res: Optional[int], v: object) -> bool:
        if v == "HI":
            value_ok = b > 0
        elif v == "LO":
            value_ok = b < 0
        else:
            assert isinstance(v, int)
            if b == 0:
                return v == a
            value_ok = v >= a if b > 0 else v <= a
        if mod == 0:
            return False
        return value_ok and res == a % mod

    states: dict[tuple, int] = {}
    rows: list[list[int]] = []
    order: list[tuple] = []

    def intern(key: tuple) -> int:
        if key not in states:
            states[key] = len(order)
            order.append(key)
            rows.append([-1] * r)
        return states[key]

    dead = intern(("dead",))
    for d in range(r):
        rows[dead][d] = dead
    init = intern(("init",))
    head = 1
    while head < len(order):
        key = order[head]
        me = head
        head += 1
        if key[0] == "dead":
            continue
        for d in range(r):
            if key[0] == "init":
                if d == 0:
                    target = intern(("v", 0 % mod if mod else None, clamp(0)))
                elif d == r - 1:
                    target = intern(("v", (-1) % mod if mod else None, clamp(-1)))
                else:
                    target = dead
            else:
                _, res, v = key
                res2 = (res * r + d) % mod if mod else None
                if v == "HI":
                    v2: object = "HI"
                elif v == "LO":
                    v2 = "LO"
                else:
                    assert isinstance(v, int)
                    v2 = clamp(v * r + d)
                target = intern(("v", res2, v2))
            rows[me][d] = target

    accepting = frozenset(
        i
        for i, key in enumerate(order)
        if key[0] == "v"
        and (
            member_state(key[1], key[2])
            if b != 0
            else (key[2] != "HI" and key[2] != "LO" and key[2] == a)
        )
    )
    return IntWordDfa(bb, tuple(tuple(row) for row in rows), init, accepting)


def progressions_dfa(progressions: Sequence[tuple[int, int]], base: "Base | int") -> IntWordDfa:
    """Canonical encodings of a union of progressions."""
    b = as_base(base)
    acc: Optional[IntWordDfa] = None
    for (a0, b0) in progressions:
        d = progression_dfa(a0, b0, b)
        acc = d if acc is None else dfa_product(acc, d, "or")
    if acc is None:
        dead = IntWordDfa(
            b, (tuple(0 for _ in range(b.value)),), 0, frozenset()
        )
        return dead
    return dfa_product(acc, canonical_int_dfa(b), "and")


PROGRESSION_SAMPLE = 96
PROGRESSION_MAX_PERIOD = 24
PROGRESSION_MAX_THRESHOLD = 48


def extract_progressions(dfa: IntWordDfa) -> tuple[tuple[int, int], ...]:
    """The integer value set of a DFA of encodings as progressions a + k*b
    (k ranging over the naturals; b = 0 for singletons, b < 0 for sets
    descending from a).

    Finite sets are enumerated exactly; infinite ones are guessed from a
    membership window and verified exactly by DFA equivalence on canonical
    encodings.  Raises when no structure within the bounds fits.
    """
    canonical = dfa_product(dfa, canonical_int_dfa(dfa.base), "and")
    if dfa_is_finite(canonical):
        values = sorted(
            int_value_of_digits(word, dfa.base) for word in dfa_words(canonical)
        )
        return tuple((v, 0) for v in values)

    sample = {n: dfa.accepts_int(n) for n in range(-PROGRESSION_SAMPLE, PROGRESSION_SAMPLE + 1)}
    for b in range(1, PROGRESSION_MAX_PERIOD + 1):
        for t in range(0, PROGRESSION_MAX_THRESHOLD + 1):
            ok = all(
                sample[n] == sample[n + b]
                for n in range(t, PROGRESSION_SAMPLE - b + 1)
            ) and all(
                sample[n] == sample[n - b]
                for n in range(-PROGRESSION_SAMPLE + b, -t + 1)
            )
            if not ok:
                continue
            progressions: list[tuple[int, int]] = []
            for n in range(-t + 1 if t else 0, t):
                if abs(n) < t and sample.get(n):
                    progressions.append((n, 0))
            for n in range(max(t, 0), max(t, 0) + b):
                if sample[n]:
                    progressions.append((n, b))
            for n in range(-max(t, 1), -max(t, 1) - b, -1):
                if sample[n]:
                    progressions.append((n, -b))
            candidate = progressions_dfa(progressions, dfa.base)
            if dfa_equivalent(candidate, canonical):
                return tuple(progressions)
    raise RnaError("integer-part structure exceeded progression search bounds")


# ---------------------------------------------------------------------------
# Decomposition into integer and fractional parts


@dataclass(frozen=True)
class DecompositionClass:
    int_part: IntWordDfa
    fractional: RNA


@dataclass(frozen=True)
class Decomposition:
    classes: tuple[DecompositionClass, ...]


def _int_reachable_states(aut: OmegaAutomaton) -> set[int]:
    """States reachable by reading a valid integer-part encoding."""
    alphabet = aut.alphabet
    r = alphabet.base.value
    sign_syms = [
        sym
        for sym in alphabet.digit_symbols()
        if all(d in (0, r - 1) for d in alphabet.digits(sym))
    ]
    frontier = {aut.delta[aut.initial][sym] for sym in sign_syms}
    seen = set(frontier)
    while frontier:
        state = frontier.pop()
        for sym in alphabet.digit_symbols():
            t = aut.delta[state][sym]
            if t not in seen:
                seen.add(t)
                frontier.add(t)
    return seen


def _class_int_dfa(aut: OmegaAutomaton, group: set[int]) -> IntWordDfa:
    """DFA of the integer encodings whose separator successor lies in
    ``group``."""
    alphabet = aut.alphabet
    r = alphabet.base.value
    star = alphabet.star
    # Product with the sign-digit validity check: phase 0 expects the sign.
    pairs = {(0, aut.initial): 0}
    order = [(0, aut.initial)]
    rows: list[list[int]] = []
    dead = None
    head = 0
    while head < len(order):
        phase, q = order[head]
        head += 1
        row = []
        for d in range(r):
            if phase == 0 and d not in (0, r - 1):
                t = (2, q)
            elif phase == 2:
                t = (2, q)
            else:
                t = (1, aut.delta[q][alphabet.symbol((d,))])
            if t not in pairs:
                pairs[t] = len(order)
                order.append(t)
            row.append(pairs[t])
        rows.append(row)
    accepting = frozenset(
        i
        for i, (phase, q) in enumerate(order)
        if phase == 1 and aut.delta[q][star] in group
    )
    return IntWordDfa(alphabet.base, tuple(tuple(r_) for r_ in rows), 0, accepting)


def _fractional_rna(aut: OmegaAutomaton, entry: int) -> RNA:
    """The fractional set reached at a post-separator state: language
    0^+ ⋆ L_entry, saturated afterwards (which restores the missing dual
    encodings of 0 and 1)."""
    alphabet = aut.alphabet
    zero = alphabet.symbol((0,))
    star = alphabet.star
    n = aut.n_states
    f0, f1, junk = n, n + 1, n + 2
    rows = [list(row) for row in aut.delta]
    for extra in (f0, f1, junk):
        rows.append([junk] * alphabet.n_symbols)
    rows[f0][zero] = f1
    rows[f1][zero] = f1
    rows[f1][star] = entry
    acc = aut.acceptance
    if isinstance(acc, Weak):
        acceptance: object = Weak(acc.accepting)
    elif isinstance(acc, Buchi):
        acceptance = Buchi(acc.accepting)
    elif isinstance(acc, CoBuchi):
        acceptance = CoBuchi(acc.rejecting | {f1, junk})
    else:
        raise RnaError("decompose does not support Muller acceptance")
    raw = OmegaAutomaton(alphabet, tuple(tuple(r_) for r_ in rows), f0, acceptance)
    return saturate(_wrap(trim_reachable(raw), False))


def decompose(R: RNA) -> Decomposition:
    """Split into finitely many (integer set, fractional set) classes: one
    per residual language of a post-separator state, restricted to separator
    successors reachable through valid integer encodings."""
    if R.arity != 1:
        raise RnaError("decompose is defined for arity 1")
    R = saturate(R)
    aut = R.automaton
    star = aut.alphabet.star
    live = live_states(aut)
    star_states = sorted(
        {aut.delta[q][star] for q in _int_reachable_states(aut)} & live
    )
    groups: list[list[int]] = []
    for q in star_states:
        placed = False
        for group in groups:
            if equivalent(with_initial(aut, q), with_initial(aut, group[0]))[0]:
                group.append(q)
                placed = True
                break
        if not placed:
            groups.append([q])
    classes = []
    for group in groups:
        int_dfa = _class_int_dfa(aut, set(group))
        frac = _fractional_rna(aut, group[0])
        classes.append(DecompositionClass(int_dfa, frac))
    return Decomposition(tuple(classes))


# ---------------------------------------------------------------------------
# Interval extraction


class NotIntervalFinite:
    """Sentinel result: the set has infinitely many boundary points (or a
    fractional class does), so no finite interval decomposition exists."""

    def __repr__(self) -> str:  # pragma: no cover
        return "NOT_INTERVAL_FINITE"


NOT_INTERVAL_FINITE = NotIntervalFinite()


@dataclass(frozen=True)
class IntervalPiece:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self) -> None:
        if not 0 <= self.lo <= self.hi <= 1:
            raise RnaError("interval pieces live within [0, 1]")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise RnaError("degenerate pieces must be closed points")

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_rational(self.lo)},{format_rational(self.hi)}{right}"


@dataclass(frozen=True)
class IntervalClass:
    progressions: tuple[tuple[int, int], ...]
    intervals: tuple[IntervalPiece, ...]


@dataclass(frozen=True)
class IntervalDecomposition:
    classes: tuple[IntervalClass, ...]


def dump_interval_decomposition(dec: IntervalDecomposition) -> str:
    lines = []
    for cls in dec.classes:
        pieces = " ".join(str(piece) for piece in cls.intervals)
        for a, b in cls.progressions:
            lines.append(f"class {a} {b} : {pieces}")
    return "\n".join(lines) + ("\n" if lines else "")


def _rat_text(value: Fraction) -> str:
    if value < 0:
        return f"0 - {format_rational(-value)}"
    return format_rational(value)


def decomposition_formula_text(dec: IntervalDecomposition, var: str = "x") -> str:
    """A formula in the compiler grammar denoting the decomposed set;
    recompiling it is the round-trip check for interval extraction."""
    class_texts = []
    for index, cls in enumerate(dec.classes):
        iv = f"i{index}"
        kv = f"k{index}"
        prog_parts = []
        for a, b in cls.progressions:
            if b == 0:
                prog_parts.append(f"{iv} = {_rat_text(Fraction(a))}")
            elif b > 0:
                prog_parts.append(
                    f"(E {kv}{len(prog_parts)} . int({kv}{len(prog_parts)}) & 0 <= {kv}{len(prog_parts)}"
                    f" & {iv} = {_rat_text(Fraction(a))} + {b}*{kv}{len(prog_parts)})"
                )
            else:
                prog_parts.append(
                    f"(E {kv}{len(prog_parts)} . int({kv}{len(prog_parts)}) & 0 <= {kv}{len(prog_parts)}"
                    f" & {iv} = {_rat_text(Fraction(a))} - {-b}*{kv}{len(prog_parts)})"
                )
        piece_parts = []
        for piece in cls.intervals:
            if piece.lo == piece.hi:
                piece_parts.append(f"{var} - {iv} = {_rat_text(piece.lo)}")
            else:
                lo_cmp = "<=" if piece.lo_closed else "<"
                hi_cmp = "<=" if piece.hi_closed else "<"
                piece_parts.append(
                    f"({_rat_text(piece.lo)} {lo_cmp} {var} - {iv}"
                    f" & {var} - {iv} {hi_cmp} {_rat_text(piece.hi)})"
                )
        if not prog_parts or not piece_parts:
            continue
        class_texts.append(
            f"(E {iv} . int({iv}) & ({' | '.join(prog_parts)}) & ({' | '.join(piece_parts)}))"
        )
    if not class_texts:
        return f"{var} < {var}"
    return " | ".join(class_texts)


def _minimal_prefix_automaton(base: Base) -> OmegaAutomaton:
    """Words whose second symbol differs from their first (no strippable
    sign-digit repetition)."""
    alphabet = make_alphabet(base, 1)
    r = base.value
    init, after0, after9, ok, dead = range(5)
    rows = []
    for state in range(5):
        row = []
        for sym in range(alphabet.n_symbols):
            if state == dead:
                row.append(dead)
            elif state == ok:
                row.append(ok)
            elif sym == alphabet.star:
                row.append(ok if state in (after0, after9) else ok)
            else:
                d = alphabet.digits(sym)[0]
                if state == init:
                    row.append(after0 if d == 0 else after9 if d == r - 1 else ok)
                elif state == after0:
                    row.append(dead if d == 0 else ok)
                else:
                    row.append(dead if d == r - 1 else ok)
        rows.append(tuple(row))
    return OmegaAutomaton(
        alphabet, tuple(rows), init, Weak(frozenset({init, after0, after9, ok}))
    )


def _not_high_tail_automaton(base: Base) -> OmegaAutomaton:
    """Words that do not end in (r-1)^ω (deterministic Büchi)."""
    alphabet = make_alphabet(base, 1)
    r = base.value
    high, other = 0, 1
    rows = []
    for state in (high, other):
        row = []
        for sym in range(alphabet.n_symbols):
            if sym != alphabet.star and alphabet.digits(sym)[0] == r - 1:
                row.append(high)
            else:
                row.append(other)
        rows.append(tuple(row))
    return OmegaAutomaton(alphabet, tuple(rows), other, Buchi(frozenset({other})))


def _canonical_automaton(B: RNA) -> OmegaAutomaton:
    """Exactly one encoding per represented value: minimal sign prefix and
    the low (non-(r-1)^ω) fractional form."""
    c1 = product(B.automaton, _minimal_prefix_automaton(B.base), "and")
    c2 = product(c1, _not_high_tail_automaton(B.base), "and")
    return reduce_moore(c2)


def _lasso_value(alphabet: Alphabet, lasso: Lasso) -> Fraction:
    star = alphabet.star
    if star not in lasso.prefix or star in lasso.cycle:
        raise RnaError("lasso does not spell a valid encoding")
    pos = lasso.prefix.index(star)
    ints = tuple(alphabet.digits(sym)[0] for sym in lasso.prefix[:pos])
    pre = tuple(alphabet.digits(sym)[0] for sym in lasso.prefix[pos + 1:])
    per = tuple(alphabet.digits(sym)[0] for sym in lasso.cycle)
    return decode_word(up_word(alphabet.base, ints, pre, per))


def boundary_values_if_finite(B: RNA, cap: int = 10_000) -> Optional[list[Fraction]]:
    """The represented values of B when finitely many, else None.

    Works on the canonical automaton: the value set is finite iff, after
    trimming to live states, every state on a cycle has exactly one live
    transition (cycles are deterministic sinks); the values are then the
    decoded accepting lassos.
    """
    C = _canonical_automaton(B)
    live = live_states(C)
    if C.initial not in live:
        return []
    on_cycle: set[int] = set()
    succ = [
        [t for t in row if t in live] if q in live else []
        for q, row in enumerate(C.delta)
    ]
    for comp in strongly_connected_components(succ):
        if len(comp) > 1 or comp[0] in succ[comp[0]]:
            on_cycle.update(comp)

    def live_syms(q: int) -> list[int]:
        return [sym for sym in range(C.alphabet.n_symbols) if C.delta[q][sym] in live]

    for q in live:
        if q in on_cycle and len(live_syms(q)) > 1:
            return None

    values: set[Fraction] = set()
    stack: list[tuple[int, tuple[int, ...]]] = [(C.initial, ())]
    visited_budget = cap
    while stack:
        q, prefix = stack.pop()
        visited_budget -= 1
        if visited_budget < 0:
            raise RnaError("lasso enumeration exceeded cap")
        if q in on_cycle:
            cycle_syms: list[int] = []
            state = q
            while True:
                sym = live_syms(state)[0]
                cycle_syms.append(sym)
                state = C.delta[state][sym]
                if state == q:
                    break
            lasso = Lasso(prefix, tuple(cycle_syms))
            if member_up(C, lasso):
                values.add(_lasso_value(C.alphabet, lasso))
        else:
            for sym in live_syms(q):
                stack.append((C.delta[q][sym], prefix + (sym,)))
    return sorted(values)


def interval_extract(R: RNA) -> Union[IntervalDecomposition, NotIntervalFinite]:
    """Reconstruct the set as progressions plus rational interval unions,
    or report NOT_INTERVAL_FINITE when a fractional class has infinitely
    many boundary points."""
    if R.arity != 1:
        raise RnaError("interval_extract is defined for arity 1")
    R = saturate(R)
    dec = decompose(R)
    classes = []
    for cls in dec.classes:
        cuts_source = boundary_values_if_finite(boundary(cls.fractional))
        if cuts_source is None:
            return NOT_INTERVAL_FINITE
        progressions = extract_progressions(cls.int_part)
        frac = cls.fractional
        cuts = sorted({Fraction(0), Fraction(1), *cuts_source})
        items: list[tuple[str, Fraction, Fraction]] = []
        for i, cut in enumerate(cuts):
            items.append(("pt", cut, cut))
            if i + 1 < len(cuts):
                items.append(("gap", cut, cuts[i + 1]))
        pieces: list[IntervalPiece] = []
        open_lo: Optional[tuple[Fraction, bool]] = None
        for kind, lo, hi in items:
            inc = member(frac, lo if kind == "pt" else (lo + hi) / 2)
            if inc and open_lo is None:
                open_lo = (lo, kind == "pt")
            elif not inc and open_lo is not None:
                if kind == "pt":
                    pieces.append(IntervalPiece(open_lo[0], lo, open_lo[1], False))
                else:
                    pieces.append(IntervalPiece(open_lo[0], lo, open_lo[1], True))
                open_lo = None
        if open_lo is not None:
            pieces.append(IntervalPiece(open_lo[0], Fraction(1), open_lo[1], True))
        classes.append(IntervalClass(progressions, tuple(pieces)))
    return IntervalDecomposition(tuple(classes))


# ---------------------------------------------------------------------------
# Stability and star-delay


def product_stability(R: RNA, factor: Fraction, domain: tuple[Fraction, Fraction]) -> bool:
    """Is the set invariant under multiplication by ``factor`` within the
    closed interval ``domain``?"""
    if R.arity != 1:
        raise RnaError("product stability is defined for arity 1")
    factor = Fraction(factor)
    if factor <= 0:
        raise RnaError("factor must be positive")
    lo, hi = Fraction(domain[0]), Fraction(domain[1])
    window_lo = max(lo, lo / factor)
    window_hi = min(hi, hi / factor)
    if window_lo > window_hi:
        return True
    R = saturate(R)
    scaled = affine(R, 1 / factor, Fraction(0))
    return equivalent_rna(
        clip(R, window_lo, window_hi), clip(scaled, window_lo, window_hi)
    )[0]


def sum_stability(R: RNA, offset: Fraction, domain: tuple[Fraction, Fraction]) -> bool:
    """Is the set invariant under translation by ``offset`` within the
    closed interval ``domain``?"""
    if R.arity != 1:
        raise RnaError("sum stability is defined for arity 1")
    offset = Fraction(offset)
    lo, hi = Fraction(domain[0]), Fraction(domain[1])
    window_lo = max(lo, lo - offset)
    window_hi = min(hi, hi - offset)
    if window_lo > window_hi:
        return True
    R = saturate(R)
    shifted = affine(R, Fraction(1), -offset)
    return equivalent_rna(
        clip(R, window_lo, window_hi), clip(shifted, window_lo, window_hi)
    )[0]


def star_delay(R: RNA) -> RNA:
    """The set {r^k · x : x in S, k natural}, built by postponing the
    separator nondeterministically and determinizing."""
    if R.arity != 1:
        raise RnaError("star_delay is defined for arity 1")
    R = saturate(R)
    negative = intersection_witness(
        R.automaton, linear_atom_automaton([Fraction(1)], "<", Fraction(0), R.base)
    )
    if negative is not None:
        raise PreconditionFailedError("star_delay needs a set of nonnegative reals")
    aut = R.automaton
    n = aut.n_states
    star = aut.alphabet.star
    rejecting_src = nfa_of(aut).rejecting

    def sid(q: int, phase: int) -> int:
        return phase * n + q

    empty = frozenset()
    rows: list[tuple[frozenset[int], ...]] = []
    for phase in range(3):
        for q in range(n):
            row = []
            for sym in range(aut.alphabet.n_symbols):
                if sym == star:
                    if phase == 0:
                        row.append(frozenset({sid(aut.delta[q][star], 2)}))
                    elif phase == 1:
                        row.append(frozenset({sid(q, 2)}))
                    else:
                        row.append(empty)
                else:
                    if phase == 0:
                        delayed = aut.delta[aut.delta[q][star]][sym]
                        row.append(
                            frozenset({sid(aut.delta[q][sym], 0), sid(delayed, 1)})
                        )
                    elif phase == 1:
                        row.append(frozenset({sid(aut.delta[q][sym], 1)}))
                    else:
                        row.append(frozenset({sid(aut.delta[q][sym], 2)}))
            rows.append(tuple(row))
    rejecting = frozenset(range(2 * n)) | frozenset(
        sid(q, 2) for q in rejecting_src
    )
    nd = NondetAutomaton(aut.alphabet, tuple(rows), frozenset({sid(aut.initial, 0)}), rejecting)
    return _wrap(_determinize(nd), True)


# ---------------------------------------------------------------------------
# The product-stability pipeline


@dataclass(frozen=True)
class StabilityReport:
    """Outcome of the constructive stability pipeline: transient/cycle
    lengths of the all-zero runs in both bases, the intermediate sets, the
    extracted boundary anchor y with the first few boundary points
    converging to it, and the verified stability flags."""

    p: int
    q: int
    p2: int
    q2: int
    s1: RNA
    s2: RNA
    s3: RNA
    s4: RNA
    s3_alt: RNA
    anchor: Fraction
    anchor_sequence: tuple[Fraction, ...]
    verified_r: bool
    verified_s: bool

    def __post_init__(self) -> None:
        if self.q <= 0 or self.q2 <= 0 or self.p < 0 or self.p2 < 0:
            raise RnaError("pipeline lengths out of range")


def _rho_lengths(aut: OmegaAutomaton) -> tuple[int, int]:
    """Transient and cycle length of the run reading 0 ⋆ 0^ω, counted after
    the separator."""
    zero = aut.alphabet.symbol((0,))
    state = aut.delta[aut.delta[aut.initial][zero]][aut.alphabet.star]
    seen: dict[int, int] = {}
    i = 0
    while state not in seen:
        seen[state] = i
        state = aut.delta[state][zero]
        i += 1
    return seen[state], i - seen[state]


def _boundary_family(
    C: OmegaAutomaton,
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Extract u, v, t, w (symbol tuples) with 0 ⋆ u v^k t w^ω accepted for
    every k, deterministically (first branching cycle state in BFS order,
    smallest exit symbol)."""
    alphabet = C.alphabet
    zero = alphabet.symbol((0,))
    live = live_states(C)
    c0 = C.delta[C.delta[C.initial][zero]][alphabet.star]
    if c0 not in live:
        raise PreconditionFailedError("no boundary points with a 0 ⋆ prefix")
    succ = [
        [t for t in row if t in live] if q in live else []
        for q, row in enumerate(C.delta)
    ]
    on_cycle: set[int] = set()
    comp_of: dict[int, set[int]] = {}
    for comp in strongly_connected_components(succ):
        if len(comp) > 1 or comp[0] in succ[comp[0]]:
            on_cycle.update(comp)
            for q in comp:
                comp_of[q] = set(comp)

    def live_syms(q: int) -> list[int]:
        return [sym for sym in range(alphabet.n_symbols) if C.delta[q][sym] in live]

    order = [c0]
    seen = {c0}
    prefix_to: dict[int, tuple[int, ...]] = {c0: ()}
    head = 0
    branch_state = None
    while head < len(order):
        q = order[head]
        head += 1
        syms = live_syms(q)
        if q in on_cycle and len(syms) > 1:
            branch_state = q
            break
        for sym in syms:
            t = C.delta[q][sym]
            if t not in seen:
                seen.add(t)
                prefix_to[t] = prefix_to[q] + (sym,)
                order.append(t)
    if branch_state is None:
        raise PreconditionFailedError("boundary automaton has no pumpable family")

    u = prefix_to[branch_state]
    from .automata.analysis import _cycle_step  # deterministic least cycle

    v = _cycle_step(C.delta, branch_state, branch_state, comp_of[branch_state])
    exit_sym = min(sym for sym in live_syms(branch_state) if sym != v[0])
    target = C.delta[branch_state][exit_sym]
    tail = emptiness(with_initial(C, target))
    if tail is None:
        raise PreconditionFailedError("exit state has empty residual")
    t_syms = (exit_sym,) + tail.prefix
    return u, v, t_syms, tail.cycle


def _family_values(
    alphabet: Alphabet,
    u: tuple[int, ...],
    v: tuple[int, ...],
    t: tuple[int, ...],
    w: tuple[int, ...],
    count: int,
) -> tuple[Fraction, list[Fraction]]:
    def digits(syms: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(alphabet.digits(sym)[0] for sym in syms)

    anchor = decode_word(up_word(alphabet.base, (0,), digits(u), digits(v)))
    members = [
        decode_word(
            up_word(alphabet.base, (0,), digits(u) + digits(v) * k + digits(t), digits(w))
        )
        for k in range(1, count + 1)
    ]
    return anchor, members


def stability_pipeline(
    R_r: RNA, R_s: RNA, *, battery: int = 200, seed: int = 7
) -> StabilityReport:
    """Constructive product-stability pipeline on a pair of automata for the
    same subset of [0, 1] in two bases with an infinite boundary."""
    if R_r.arity != 1 or R_s.arity != 1:
        raise RnaError("pipeline inputs must have arity 1")
    S_r = clip(saturate(R_r), Fraction(0), Fraction(1))
    S_s = clip(saturate(R_s), Fraction(0), Fraction(1))
    for x in stratified_rationals(seed, battery, max_abs=1):
        x = abs(x)
        x = x - int(x) if x > 1 else x
        if member(S_r, x) != member(S_s, x):
            raise PreconditionFailedError(
                f"inputs disagree on {format_rational(x)}; not the same subset of [0,1]"
            )
    B = boundary(S_r)
    if boundary_values_if_finite(B) is not None:
        raise PreconditionFailedError("boundary is finite; pipeline hypothesis fails")
    C = _canonical_automaton(B)
    u, v, t, w = _boundary_family(C)
    sample = max(2, 2 * len(v))
    anchor, members = _family_values(C.alphabet, u, v, t, w, sample)
    positive_side = any(y_k > anchor for y_k in members)

    def shift(R: RNA) -> RNA:
        if positive_side:
            return clip(affine(R, Fraction(1), -anchor), Fraction(0), Fraction(1))
        return clip(affine(R, Fraction(-1), anchor), Fraction(0), Fraction(1))

    s1_r, s1_s = shift(S_r), shift(S_s)
    p, q_len = _rho_lengths(s1_r.automaton)
    p2, q2_len = _rho_lengths(s1_s.automaton)
    r_val, s_val = R_r.base.value, R_s.base.value

    def scale(R: RNA, factor: int) -> RNA:
        if factor == 1:
            return R
        return clip(affine(R, Fraction(factor), Fraction(0)), Fraction(0), Fraction(1))

    s2_r = scale(s1_r, r_val**p)
    s4_s = scale(s1_s, s_val**p2)
    s3_r = scale(s2_r, s_val**p2)
    s3_s = scale(s4_s, r_val**p)
    verified_r = product_stability(s3_r, Fraction(r_val**q_len), (Fraction(0), Fraction(1)))
    verified_s = product_stability(s3_s, Fraction(s_val**q2_len), (Fraction(0), Fraction(1)))
    return StabilityReport(
        p=p,
        q=q_len,
        p2=p2,
        q2=q2_len,
        s1=s1_r,
        s2=s2_r,
        s3=s3_r,
        s4=s4_s,
        s3_alt=s3_s,
        anchor=anchor,
        anchor_sequence=tuple(members[:3]),
        verified_r=verified_r,
        verified_s=verified_s,
    )
