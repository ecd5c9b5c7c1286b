"""Breakpoint determinization of nondeterministic intermediates.

The subset-with-obligation construction is exact for the co-Büchi semantics
carried by :class:`NondetAutomaton`.  When the determinized automaton turns
out to classify WEAK, its SCCs are reclassified to weak acceptance; every
call is validated against the nondeterministic input on a battery of
ultimately periodic words, and disagreements are reported loudly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .analysis import classify, minimize_weak, reduce_moore, TopKind
from .core import (
    Alphabet,
    AutomatonError,
    CoBuchi,
    Lasso,
    NondetAutomaton,
    OmegaAutomaton,
    Weak,
    member_up,
    nondet_lasso_member,
    strongly_connected_components,
)

DEFAULT_BATTERY_SIZE = 200
MAX_MACRO_STATES = 200_000


class ValidationFailedError(AutomatonError):
    """A determinized automaton disagreed with its input on a battery word."""


class BlowupError(AutomatonError):
    """Construction exceeded its configured state bound."""


@dataclass
class DeterminizeStats:
    calls: int = 0
    words_checked: int = 0
    disagreements: int = 0
    failed_lassos: list[Lasso] = field(default_factory=list)

    def reset(self) -> None:
        self.calls = 0
        self.words_checked = 0
        self.disagreements = 0
        self.failed_lassos.clear()


STATS = DeterminizeStats()


def breakpoint_determinize(
    n: NondetAutomaton, max_states: int = MAX_MACRO_STATES
) -> OmegaAutomaton:
    """Deterministic co-Büchi automaton with the same language.

    Macro states are (reachable set, obligation set); an empty obligation
    marks a breakpoint and those macro states form the rejecting set.
    """
    rejecting = n.rejecting
    n_sym = n.alphabet.n_symbols
    start = (n.initial, n.initial - rejecting)
    index: dict[tuple[frozenset[int], frozenset[int]], int] = {start: 0}
    order = [start]
    rows: list[tuple[int, ...]] = []
    head = 0
    while head < len(order):
        s, o = order[head]
        head += 1
        row = []
        for sym in range(n_sym):
            s2 = frozenset(q2 for q in s for q2 in n.delta[q][sym])
            source = o if o else s
            o2 = frozenset(q2 for q in source for q2 in n.delta[q][sym]) - rejecting
            macro = (s2, o2)
            if macro not in index:
                if len(order) >= max_states:
                    raise BlowupError(
                        f"breakpoint construction exceeded {max_states} states"
                    )
                index[macro] = len(order)
                order.append(macro)
            row.append(index[macro])
        rows.append(tuple(row))
    rejecting_macros = frozenset(i for i, (s, o) in enumerate(order) if not o)
    return OmegaAutomaton(n.alphabet, tuple(rows), 0, CoBuchi(rejecting_macros))


def weaken_cobuchi(aut: OmegaAutomaton) -> OmegaAutomaton:
    """Reclassify SCCs of a weak-classified co-Büchi automaton: a component
    is accepting iff it contains no rejecting state."""
    if not isinstance(aut.acceptance, CoBuchi):
        raise AutomatonError("weaken expects co-Büchi acceptance")
    rejecting = aut.acceptance.rejecting
    accepting: set[int] = set()
    for comp in strongly_connected_components(aut.successors()):
        if not any(q in rejecting for q in comp):
            accepting.update(comp)
    return OmegaAutomaton(aut.alphabet, aut.delta, aut.initial, Weak(frozenset(accepting)))


def up_battery(alphabet: Alphabet, size: int, seed: int = 0) -> list[Lasso]:
    """Seeded battery of valid-encoding UP lassos over ``alphabet``.

    Mixes random digits with the boundary-sensitive shapes: all-zero and
    all-(r-1) periods, repeated sign digits, both sign digits.
    """
    rng = random.Random(seed)
    r = alphabet.base.value
    star = alphabet.star
    words: list[Lasso] = []

    def tup(fill) -> int:
        return alphabet.symbol(tuple(fill() for _ in range(alphabet.arity)))

    for i in range(size):
        sign = tup(lambda: rng.choice((0, r - 1)))
        prefix = [sign] * rng.randint(1, 2)
        prefix += [tup(lambda: rng.randrange(r)) for _ in range(rng.randint(0, 2))]
        prefix.append(star)
        prefix += [tup(lambda: rng.randrange(r)) for _ in range(rng.randint(0, 3))]
        kind = i % 4
        if kind == 0:
            cycle = [tup(lambda: 0)]
        elif kind == 1:
            cycle = [tup(lambda: r - 1)]
        else:
            cycle = [tup(lambda: rng.randrange(r)) for _ in range(rng.randint(1, 3))]
        words.append(Lasso(tuple(prefix), tuple(cycle)))
    return words


def determinize_checked(
    n: NondetAutomaton,
    *,
    battery_size: int = DEFAULT_BATTERY_SIZE,
    seed: int = 0,
    require_weak: bool = False,
) -> OmegaAutomaton:
    """Breakpoint-determinize, weaken when the result is weak-classified, and
    validate against the input on a UP-word battery."""
    det = reduce_moore(breakpoint_determinize(n))
    if classify(det).kind == TopKind.WEAK:
        det = minimize_weak(weaken_cobuchi(det))
    elif require_weak:
        raise ValidationFailedError(
            "determinized automaton is not weak; precondition violated"
        )
    STATS.calls += 1
    for lasso in up_battery(n.alphabet, battery_size, seed):
        STATS.words_checked += 1
        if member_up(det, lasso) != nondet_lasso_member(n, lasso):
            STATS.disagreements += 1
            STATS.failed_lassos.append(lasso)
            raise ValidationFailedError(
                f"battery disagreement on lasso {lasso}"
            )
    return det


def determinize_to_weak(
    n: NondetAutomaton,
    *,
    battery_size: int = DEFAULT_BATTERY_SIZE,
    seed: int = 0,
) -> OmegaAutomaton:
    """Deterministic weak automaton for L(n); valid when L(n) is in the weak
    class (the caller's obligation, checked by the battery and the
    classification of the determinized result)."""
    return determinize_checked(
        n, battery_size=battery_size, seed=seed, require_weak=True
    )
