"""Core types for deterministic omega-automata over digit alphabets.

Symbols are integer indices: the digit tuples of an arity-k alphabet come
first (mixed-radix order, track 0 most significant), the separator ⋆ last.
Transition tables are total; automata are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from ..numeric import Base, as_base

Symbol = int


class AutomatonError(ValueError):
    """Raised on malformed automata or symbol/alphabet mismatches."""


@dataclass(frozen=True)
class Alphabet:
    """Digit tuples of a fixed base and arity, plus one separator symbol."""

    base: Base
    arity: int = 1

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise AutomatonError(f"arity must be >= 1, got {self.arity}")

    @property
    def n_digit_symbols(self) -> int:
        return self.base.value ** self.arity

    @property
    def n_symbols(self) -> int:
        return self.n_digit_symbols + 1

    @property
    def star(self) -> Symbol:
        return self.n_digit_symbols

    def symbol(self, digits: Sequence[int]) -> Symbol:
        r = self.base.value
        if len(digits) != self.arity:
            raise AutomatonError(f"expected {self.arity} digits, got {digits}")
        sym = 0
        for d in digits:
            if not 0 <= d < r:
                raise AutomatonError(f"digit {d} out of range for base {r}")
            sym = sym * r + d
        return sym

    def digits(self, sym: Symbol) -> tuple[int, ...]:
        if sym == self.star:
            raise AutomatonError("separator has no digits")
        r = self.base.value
        out = []
        for _ in range(self.arity):
            out.append(sym % r)
            sym //= r
        return tuple(reversed(out))

    def digit_symbols(self) -> range:
        return range(self.n_digit_symbols)

    def symbol_text(self, sym: Symbol) -> str:
        if sym == self.star:
            return "*"
        return ",".join(str(d) for d in self.digits(sym))

    def parse_symbol(self, text: str) -> Symbol:
        text = text.strip()
        if text in ("*", "⋆"):
            return self.star
        try:
            digits = tuple(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise AutomatonError(f"bad symbol {text!r}") from exc
        return self.symbol(digits)


@dataclass(frozen=True)
class Weak:
    accepting: frozenset[int]


@dataclass(frozen=True)
class Buchi:
    accepting: frozenset[int]


@dataclass(frozen=True)
class CoBuchi:
    rejecting: frozenset[int]


@dataclass(frozen=True)
class Muller:
    family: frozenset[frozenset[int]]


Acceptance = Union[Weak, Buchi, CoBuchi, Muller]


def accepts_inf_set(acceptance: Acceptance, inf: frozenset[int]) -> bool:
    """Evaluate an acceptance condition on the set of states seen infinitely often."""
    if isinstance(acceptance, (Weak, Buchi)):
        return bool(inf & acceptance.accepting)
    if isinstance(acceptance, CoBuchi):
        return not inf & acceptance.rejecting
    if isinstance(acceptance, Muller):
        return inf in acceptance.family
    raise AutomatonError(f"unknown acceptance {acceptance!r}")


def strongly_connected_components(successors: Sequence[Iterable[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative.  Components are listed in reverse
    topological order (a component only precedes its predecessors)."""
    n = len(successors)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work: list[tuple[int, Iterator[int]]] = [(root, iter(successors[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(successors[w])))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
    return components


@dataclass(frozen=True)
class OmegaAutomaton:
    """Complete deterministic automaton over ``alphabet`` with one of the
    four acceptance conditions.  Weak acceptance is checked for
    SCC-uniformity at construction time."""

    alphabet: Alphabet
    delta: tuple[tuple[int, ...], ...]
    initial: int
    acceptance: Acceptance

    def __post_init__(self) -> None:
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise AutomatonError(f"initial state {self.initial} out of range")
        for row in self.delta:
            if len(row) != self.alphabet.n_symbols:
                raise AutomatonError("transition table is not total")
            for q in row:
                if not 0 <= q < n:
                    raise AutomatonError(f"target state {q} out of range")
        if isinstance(self.acceptance, Weak):
            bad = _weak_violation(self.delta, self.acceptance.accepting)
            if bad is not None:
                raise AutomatonError(f"weak acceptance not SCC-uniform at component {bad}")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def successors(self) -> list[list[int]]:
        return [list(row) for row in self.delta]

    def step(self, state: int, symbol: Symbol) -> int:
        return self.delta[state][symbol]

    def run(self, state: int, symbols: Iterable[Symbol]) -> int:
        for sym in symbols:
            state = self.delta[state][sym]
        return state


def _weak_violation(delta: Sequence[Sequence[int]], accepting: frozenset[int]) -> Optional[int]:
    for i, comp in enumerate(strongly_connected_components([list(row) for row in delta])):
        statuses = {q in accepting for q in comp}
        if len(statuses) > 1:
            return i
    return None


@dataclass(frozen=True)
class Lasso:
    """A finite prefix plus a repeated nonempty cycle of symbols."""

    prefix: tuple[Symbol, ...]
    cycle: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        if not self.cycle:
            raise AutomatonError("lasso cycle must be nonempty")


def member_up(aut: OmegaAutomaton, lasso: Lasso) -> bool:
    """Exact membership of an ultimately periodic word.

    Runs the prefix, then iterates the cycle until the state at a cycle
    boundary repeats; acceptance is evaluated on the states visited in the
    repeating portion.
    """
    for sym in (*lasso.prefix, *lasso.cycle):
        if not 0 <= sym < aut.alphabet.n_symbols:
            raise AutomatonError(f"symbol {sym} outside alphabet")
    state = aut.run(aut.initial, lasso.prefix)
    boundary_index: dict[int, int] = {}
    visits: list[list[int]] = []
    while state not in boundary_index:
        boundary_index[state] = len(visits)
        seen = []
        for sym in lasso.cycle:
            state = aut.delta[state][sym]
            seen.append(state)
        visits.append(seen)
    inf: set[int] = set()
    for chunk in visits[boundary_index[state]:]:
        inf.update(chunk)
    return accepts_inf_set(aut.acceptance, frozenset(inf))


@dataclass(frozen=True)
class NondetAutomaton:
    """Nondeterministic intermediate (projection, star-delay).

    Acceptance is co-Büchi: a run is accepting iff it eventually avoids
    ``rejecting``.  Projections of weak automata satisfy this with
    ``rejecting`` = non-accepting states, since their runs are in bijection
    with runs of the deterministic original.
    """

    alphabet: Alphabet
    delta: tuple[tuple[frozenset[int], ...], ...]
    initial: frozenset[int]
    rejecting: frozenset[int]

    @property
    def n_states(self) -> int:
        return len(self.delta)


def nondet_lasso_member(n: NondetAutomaton, lasso: Lasso) -> bool:
    """Decide membership of a UP word in a nondeterministic co-Büchi
    automaton by lasso search on the product of the lasso and the automaton.

    The product is explored through two fixpoints: states reachable at each
    cycle phase, and states from which an infinite run avoiding rejecting
    states continues forever.  The word is accepted iff the two intersect.
    """
    current = set(n.initial)
    for sym in lasso.prefix:
        current = {q2 for q in current for q2 in n.delta[q][sym]}
    c = len(lasso.cycle)

    reach: list[set[int]] = [set() for _ in range(c)]
    reach[0] |= current
    changed = True
    while changed:
        changed = False
        for p in range(c):
            image = {q2 for q in reach[p] for q2 in n.delta[q][lasso.cycle[p]]}
            target = reach[(p + 1) % c]
            if not image <= target:
                target |= image
                changed = True

    clean_all = set(range(n.n_states)) - n.rejecting
    survive: list[set[int]] = [set(clean_all) for _ in range(c)]
    changed = True
    while changed:
        changed = False
        for p in range(c):
            nxt = survive[(p + 1) % c]
            keep = {
                q
                for q in survive[p]
                if any(q2 in nxt for q2 in n.delta[q][lasso.cycle[p]])
            }
            if keep != survive[p]:
                survive[p] = keep
                changed = True
    return any(reach[p] & survive[p] for p in range(c))


def make_alphabet(base: "Base | int", arity: int = 1) -> Alphabet:
    return Alphabet(as_base(base), arity)
