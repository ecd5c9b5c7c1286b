"""Boolean algebra, emptiness, equivalence, classification, minimization,
and word-topology closure for deterministic omega-automata.

Products keep the strongest acceptance type the operand pair admits: weak
pairs stay weak, a weak operand dissolves into the other side's condition,
and only genuinely mixed non-weak pairs fall back to explicit Muller
families (enumerated per product SCC, guarded by ``muller_family_bound``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence

from .core import (
    Acceptance,
    AutomatonError,
    Buchi,
    CoBuchi,
    Lasso,
    Muller,
    OmegaAutomaton,
    Weak,
    accepts_inf_set,
    strongly_connected_components,
)

muller_family_bound = 4096


class FamilyBlowupError(AutomatonError):
    """Muller family enumeration exceeded the configured bound."""


def reachable_order(delta: Sequence[Sequence[int]], initial: int) -> list[int]:
    """States reachable from ``initial`` in BFS order (symbols in index order)."""
    order = [initial]
    seen = {initial}
    head = 0
    while head < len(order):
        q = order[head]
        head += 1
        for t in delta[q]:
            if t not in seen:
                seen.add(t)
                order.append(t)
    return order


def _map_states(
    acc: Acceptance, mapping: dict[int, int], sink: Optional[int] = None
) -> Acceptance:
    def img(states: frozenset[int]) -> frozenset[int]:
        return frozenset(mapping[q] for q in states if q in mapping)

    if isinstance(acc, Weak):
        return Weak(img(acc.accepting))
    if isinstance(acc, Buchi):
        return Buchi(img(acc.accepting))
    if isinstance(acc, CoBuchi):
        rej = img(acc.rejecting)
        if sink is not None:
            rej |= {sink}
        return CoBuchi(rej)
    family = frozenset(
        frozenset(mapping[q] for q in member)
        for member in acc.family
        if all(q in mapping for q in member)
    )
    return Muller(family)


def trim_reachable(aut: OmegaAutomaton) -> OmegaAutomaton:
    """Drop unreachable states and renumber in BFS order."""
    order = reachable_order(aut.delta, aut.initial)
    if len(order) == aut.n_states and order == list(range(aut.n_states)):
        return aut
    mapping = {q: i for i, q in enumerate(order)}
    delta = tuple(tuple(mapping[t] for t in aut.delta[q]) for q in order)
    return OmegaAutomaton(aut.alphabet, delta, 0, _map_states(aut.acceptance, mapping))


def with_initial(aut: OmegaAutomaton, state: int) -> OmegaAutomaton:
    return OmegaAutomaton(aut.alphabet, aut.delta, state, aut.acceptance)


def shortest_path(
    delta: Sequence[Sequence[int]],
    source: int,
    targets: Iterable[int],
    allowed: Optional[set[int]] = None,
) -> Optional[tuple[tuple[int, ...], int]]:
    """BFS path (symbol sequence, end state) from source to any target."""
    target_set = set(targets)
    if source in target_set:
        return (), source
    prev: dict[int, tuple[int, int]] = {}
    queue = deque([source])
    seen = {source}
    while queue:
        q = queue.popleft()
        for sym, t in enumerate(delta[q]):
            if t in seen or (allowed is not None and t not in allowed):
                continue
            seen.add(t)
            prev[t] = (q, sym)
            if t in target_set:
                path = []
                cur = t
                while cur != source:
                    cur, sym2 = prev[cur]
                    path.append(sym2)
                return tuple(reversed(path)), t
            queue.append(t)
    return None


def _cycle_step(
    delta: Sequence[Sequence[int]], start: int, target: int, allowed: set[int]
) -> tuple[int, ...]:
    """A nonempty symbol path start -> target staying inside ``allowed``."""
    if start == target:
        # Force at least one transition for nonempty cycles.
        for sym, t in enumerate(delta[start]):
            if t in allowed:
                hit = shortest_path(delta, t, [target], allowed)
                if hit is not None:
                    return (sym, *hit[0])
        raise AutomatonError("no cycle inside allowed region")
    hit = shortest_path(delta, start, [target], allowed)
    if hit is None:
        raise AutomatonError("no path inside allowed region")
    return hit[0]


def cycle_through(
    delta: Sequence[Sequence[int]], anchor: int, visit: Sequence[int], allowed: set[int]
) -> tuple[int, ...]:
    """A nonempty cycle anchored at ``anchor`` visiting every state in
    ``visit``, staying inside ``allowed``."""
    symbols: list[int] = []
    current = anchor
    for target in [*visit, anchor]:
        if current == target:
            continue
        hit = shortest_path(delta, current, [target], allowed)
        if hit is None:
            raise AutomatonError("no path inside allowed region")
        symbols.extend(hit[0])
        current = target
    if not symbols:
        return _cycle_step(delta, anchor, anchor, allowed)
    return tuple(symbols)


def _sub_sccs(
    delta: Sequence[Sequence[int]], states: set[int]
) -> list[list[int]]:
    """SCCs of the subgraph induced on ``states`` (returned in original ids)."""
    order = sorted(states)
    idx = {q: i for i, q in enumerate(order)}
    succ = [
        [idx[t] for t in set(delta[q]) if t in states]
        for q in order
    ]
    return [[order[i] for i in comp] for comp in strongly_connected_components(succ)]


def realizable_loopsets(
    delta: Sequence[Sequence[int]], states: Iterable[int], bound: Optional[int] = None
) -> list[frozenset[int]]:
    """All subsets of the reachable part that can occur as the infinity set
    of a run: strongly connected subsets carrying at least one edge."""
    limit = muller_family_bound if bound is None else bound
    out: list[frozenset[int]] = []
    examined = 0
    for comp in _sub_sccs(delta, set(states)):
        has_edge = len(comp) > 1 or any(t == comp[0] for t in delta[comp[0]])
        if not has_edge:
            continue
        if 2 ** len(comp) > limit:
            raise FamilyBlowupError(
                f"SCC of size {len(comp)} exceeds Muller family bound {limit}"
            )
        members = sorted(comp)
        for mask in range(1, 1 << len(members)):
            examined += 1
            if examined > limit:
                raise FamilyBlowupError(f"Muller family bound {limit} exceeded")
            subset = {members[i] for i in range(len(members)) if mask >> i & 1}
            subs = _sub_sccs(delta, subset)
            if len(subs) != 1 or set(subs[0]) != subset:
                continue
            anchor = next(iter(subset))
            sub_edge = len(subset) > 1 or any(t == anchor for t in delta[anchor])
            if sub_edge:
                out.append(frozenset(subset))
    return out


def product(
    a: OmegaAutomaton, b: OmegaAutomaton, mode: str
) -> OmegaAutomaton:
    """Synchronous product computing intersection (``and``) or union (``or``)."""
    if a.alphabet != b.alphabet:
        raise AutomatonError("alphabet mismatch in product")
    if mode not in ("and", "or"):
        raise AutomatonError(f"bad product mode {mode!r}")
    n_sym = a.alphabet.n_symbols
    pairs: dict[tuple[int, int], int] = {(a.initial, b.initial): 0}
    order = [(a.initial, b.initial)]
    rows: list[tuple[int, ...]] = []
    head = 0
    while head < len(order):
        pa, pb = order[head]
        head += 1
        row = []
        for sym in range(n_sym):
            target = (a.delta[pa][sym], b.delta[pb][sym])
            if target not in pairs:
                pairs[target] = len(order)
                order.append(target)
            row.append(pairs[target])
        rows.append(tuple(row))
    delta = tuple(rows)

    both = mode == "and"

    def flags(side_good: Callable[[tuple[int, int]], bool]) -> frozenset[int]:
        return frozenset(i for i, pair in enumerate(order) if side_good(pair))

    acc_a, acc_b = a.acceptance, b.acceptance

    def good_weakish(acc: Acceptance, q: int) -> bool:
        if isinstance(acc, Weak):
            return q in acc.accepting
        if isinstance(acc, CoBuchi):
            return q not in acc.rejecting
        raise AssertionError

    if isinstance(acc_a, Weak) and isinstance(acc_b, Weak):
        acc = flags(
            lambda p: (p[0] in acc_a.accepting and p[1] in acc_b.accepting)
            if both
            else (p[0] in acc_a.accepting or p[1] in acc_b.accepting)
        )
        acceptance: Acceptance = Weak(acc)
    elif isinstance(acc_a, Weak) and isinstance(acc_b, Buchi) or (
        isinstance(acc_a, Buchi) and isinstance(acc_b, Weak)
    ):
        wa = acc_a.accepting if isinstance(acc_a, Weak) else acc_b.accepting
        ba = acc_b.accepting if isinstance(acc_b, Buchi) else acc_a.accepting
        w_first = isinstance(acc_a, Weak)

        def hit(p: tuple[int, int]) -> bool:
            wq = p[0] if w_first else p[1]
            bq = p[1] if w_first else p[0]
            return (wq in wa and bq in ba) if both else (wq in wa or bq in ba)

        acceptance = Buchi(flags(hit))
    elif (
        isinstance(acc_a, (Weak, CoBuchi))
        and isinstance(acc_b, (Weak, CoBuchi))
        and (both or isinstance(acc_a, Weak) or isinstance(acc_b, Weak))
    ):
        # Union of two plain co-Büchi conditions is not co-Büchi; that pair
        # falls through to the Muller branch.
        def bad(p: tuple[int, int]) -> bool:
            ga, gb = good_weakish(acc_a, p[0]), good_weakish(acc_b, p[1])
            return not (ga and gb) if both else not (ga or gb)

        acceptance = CoBuchi(flags(bad))
    elif isinstance(acc_a, Buchi) and isinstance(acc_b, Buchi) and not both:
        acceptance = Buchi(
            flags(lambda p: p[0] in acc_a.accepting or p[1] in acc_b.accepting)
        )
    else:
        loopsets = realizable_loopsets(delta, range(len(order)))
        family = []
        for member in loopsets:
            proj_a = frozenset(order[i][0] for i in member)
            proj_b = frozenset(order[i][1] for i in member)
            ok_a = accepts_inf_set(acc_a, proj_a)
            ok_b = accepts_inf_set(acc_b, proj_b)
            if (ok_a and ok_b) if both else (ok_a or ok_b):
                family.append(member)
        acceptance = Muller(frozenset(family))

    result = OmegaAutomaton(a.alphabet, delta, 0, acceptance)
    return result


def complement(aut: OmegaAutomaton) -> OmegaAutomaton:
    """Deterministic complement: weak flips states, Büchi and co-Büchi swap,
    Muller complements the family within realizable loop sets."""
    acc = aut.acceptance
    if isinstance(acc, Weak):
        new: Acceptance = Weak(frozenset(range(aut.n_states)) - acc.accepting)
    elif isinstance(acc, Buchi):
        new = CoBuchi(acc.accepting)
    elif isinstance(acc, CoBuchi):
        new = Buchi(acc.rejecting)
    else:
        reach = reachable_order(aut.delta, aut.initial)
        loopsets = frozenset(realizable_loopsets(aut.delta, reach))
        new = Muller(loopsets - acc.family)
    return OmegaAutomaton(aut.alphabet, aut.delta, aut.initial, new)


def _side(acc: Acceptance) -> tuple[str, frozenset[int]]:
    if isinstance(acc, (Weak, Buchi)):
        return "hit", acc.accepting
    if isinstance(acc, CoBuchi):
        return "avoid", acc.rejecting
    raise AutomatonError("muller side")


def intersection_witness(
    a: OmegaAutomaton, b: OmegaAutomaton
) -> Optional[Lasso]:
    """A lasso in L(a) ∩ L(b), or None when the intersection is empty.

    Handles weak/Büchi/co-Büchi pairs structurally (one accepting cycle
    suffices); genuine Muller operands go through the explicit product.
    """
    if isinstance(a.acceptance, Muller) or isinstance(b.acceptance, Muller):
        return emptiness(product(a, b, "and"))
    if a.alphabet != b.alphabet:
        raise AutomatonError("alphabet mismatch")
    n_sym = a.alphabet.n_symbols
    pairs: dict[tuple[int, int], int] = {(a.initial, b.initial): 0}
    order = [(a.initial, b.initial)]
    rows: list[list[int]] = []
    head = 0
    while head < len(order):
        pa, pb = order[head]
        head += 1
        row = []
        for sym in range(n_sym):
            t = (a.delta[pa][sym], b.delta[pb][sym])
            if t not in pairs:
                pairs[t] = len(order)
                order.append(t)
            row.append(pairs[t])
        rows.append(row)

    kind_a, set_a = _side(a.acceptance)
    kind_b, set_b = _side(b.acceptance)
    allowed = {
        i
        for i, (pa, pb) in enumerate(order)
        if (kind_a != "avoid" or pa not in set_a)
        and (kind_b != "avoid" or pb not in set_b)
    }
    for comp in _sub_sccs(rows, allowed):
        comp_set = set(comp)
        if not (len(comp) > 1 or comp[0] in set(rows[comp[0]])):
            continue
        must = []
        if kind_a == "hit":
            hits = [i for i in comp if order[i][0] in set_a]
            if not hits:
                continue
            must.append(hits[0])
        if kind_b == "hit":
            hits = [i for i in comp if order[i][1] in set_b]
            if not hits:
                continue
            must.append(hits[0])
        anchor = must[0] if must else comp[0]
        path = shortest_path(rows, 0, [anchor])
        assert path is not None
        cycle = cycle_through(rows, anchor, [m for m in must if m != anchor], comp_set)
        return Lasso(path[0], cycle)
    return None


def emptiness(aut: OmegaAutomaton) -> Optional[Lasso]:
    """None iff the language is empty; otherwise an accepted lasso witness."""
    reach = set(reachable_order(aut.delta, aut.initial))
    acc = aut.acceptance
    if isinstance(acc, (Weak, Buchi)):
        for comp in _sub_sccs(aut.delta, reach):
            comp_set = set(comp)
            if not (len(comp) > 1 or comp[0] in set(aut.delta[comp[0]])):
                continue
            hits = [q for q in comp if q in acc.accepting]
            if not hits:
                continue
            path = shortest_path(aut.delta, aut.initial, [hits[0]])
            assert path is not None
            return Lasso(path[0], cycle_through(aut.delta, hits[0], [], comp_set))
        return None
    if isinstance(acc, CoBuchi):
        allowed = reach - acc.rejecting
        for comp in _sub_sccs(aut.delta, allowed):
            comp_set = set(comp)
            internal = len(comp) > 1 or comp[0] in {
                t for t in aut.delta[comp[0]] if t in comp_set
            }
            if not internal:
                continue
            path = shortest_path(aut.delta, aut.initial, [comp[0]])
            assert path is not None
            return Lasso(path[0], cycle_through(aut.delta, comp[0], [], comp_set))
        return None
    for member in sorted(acc.family, key=lambda f: sorted(f)):
        if not member or not member <= reach:
            continue
        subs = _sub_sccs(aut.delta, set(member))
        if len(subs) != 1 or set(subs[0]) != set(member):
            continue
        anchor = min(member)
        has_edge = len(member) > 1 or anchor in {
            t for t in aut.delta[anchor] if t in member
        }
        if not has_edge:
            continue
        path = shortest_path(aut.delta, aut.initial, [anchor])
        assert path is not None
        cycle = cycle_through(
            aut.delta, anchor, sorted(set(member) - {anchor}), set(member)
        )
        return Lasso(path[0], cycle)
    return None


def equivalent(
    a: OmegaAutomaton, b: OmegaAutomaton
) -> tuple[bool, Optional[Lasso]]:
    """Language equivalence via emptiness of the symmetric difference.
    On inequivalence the witness lasso lies in exactly one language."""
    for x, y in ((a, complement(b)), (complement(a), b)):
        witness = intersection_witness(x, y)
        if witness is not None:
            return False, witness
    return True, None


class TopKind(Enum):
    WEAK = "WEAK"
    DET_BUCHI_ONLY = "DET_BUCHI_ONLY"
    DET_COBUCHI_ONLY = "DET_COBUCHI_ONLY"
    BEYOND = "BEYOND"


@dataclass(frozen=True)
class LoopPair:
    """Two nested loops with conflicting acceptance: the inner cycle's state
    set is contained in the outer cycle's."""

    inner: tuple[int, ...]
    outer: tuple[int, ...]
    inner_accepting: bool


@dataclass(frozen=True)
class TopClass:
    kind: TopKind
    witness: Optional[LoopPair]

    def __post_init__(self) -> None:
        if (self.kind == TopKind.WEAK) != (self.witness is None):
            raise AutomatonError("witness present iff class is not WEAK")


def _cycle_states(delta: Sequence[Sequence[int]], anchor: int, symbols: Sequence[int]) -> tuple[int, ...]:
    states = [anchor]
    q = anchor
    for sym in symbols:
        q = delta[q][sym]
        states.append(q)
    return tuple(states)


def _conflict_witness(
    aut: OmegaAutomaton, comp: list[int], special: frozenset[int], inner_accepting: bool
) -> Optional[LoopPair]:
    """Inside one SCC: a special-free inner cycle nested in an outer cycle
    through a special state, if both exist."""
    comp_set = set(comp)
    clean = comp_set - special
    for sub in _sub_sccs(aut.delta, clean):
        sub_set = set(sub)
        has_edge = len(sub) > 1 or sub[0] in {
            t for t in aut.delta[sub[0]] if t in sub_set
        }
        if not has_edge:
            continue
        marked = [q for q in comp if q in special]
        if not marked:
            continue
        inner_syms = cycle_through(aut.delta, sub[0], [], sub_set)
        outer_syms = cycle_through(
            aut.delta, sub[0], sorted(sub_set - {sub[0]}) + [marked[0]], comp_set
        )
        return LoopPair(
            _cycle_states(aut.delta, sub[0], inner_syms),
            _cycle_states(aut.delta, sub[0], outer_syms),
            inner_accepting,
        )
    return None


def classify(aut: OmegaAutomaton) -> TopClass:
    """Topological classification by nested-loop patterns on the reachable
    part: WEAK when no pair of nested loops conflicts, otherwise the side of
    the Borel hierarchy the conflicts leave open."""
    reach = set(reachable_order(aut.delta, aut.initial))
    acc = aut.acceptance
    if isinstance(acc, Weak):
        return TopClass(TopKind.WEAK, None)
    if isinstance(acc, CoBuchi):
        for comp in _sub_sccs(aut.delta, reach):
            witness = _conflict_witness(aut, comp, acc.rejecting, True)
            if witness is not None:
                return TopClass(TopKind.DET_COBUCHI_ONLY, witness)
        return TopClass(TopKind.WEAK, None)
    if isinstance(acc, Buchi):
        for comp in _sub_sccs(aut.delta, reach):
            witness = _conflict_witness(aut, comp, acc.accepting, False)
            if witness is not None:
                return TopClass(TopKind.DET_BUCHI_ONLY, witness)
        return TopClass(TopKind.WEAK, None)

    # Muller: compare the family against loop-set inclusions per SCC.
    sub_violation: Optional[LoopPair] = None
    super_violation: Optional[LoopPair] = None
    for comp in _sub_sccs(aut.delta, reach):
        loopsets = realizable_loopsets(aut.delta, set(comp))
        flagged = [(ls, ls in acc.family) for ls in loopsets]
        for inner, ok_inner in flagged:
            for outer, ok_outer in flagged:
                if not inner < outer:
                    continue
                pair = None
                if ok_outer and not ok_inner and sub_violation is None:
                    pair = "sub"
                elif ok_inner and not ok_outer and super_violation is None:
                    pair = "super"
                if pair is None:
                    continue
                anchor = min(inner)
                inner_syms = cycle_through(
                    aut.delta, anchor, sorted(inner - {anchor}), set(inner)
                )
                outer_syms = cycle_through(
                    aut.delta, anchor, sorted(outer - {anchor}), set(outer)
                )
                witness = LoopPair(
                    _cycle_states(aut.delta, anchor, inner_syms),
                    _cycle_states(aut.delta, anchor, outer_syms),
                    pair == "super",
                )
                if pair == "sub":
                    sub_violation = witness
                else:
                    super_violation = witness
    if sub_violation is None and super_violation is None:
        return TopClass(TopKind.WEAK, None)
    if super_violation is None:
        return TopClass(TopKind.DET_BUCHI_ONLY, sub_violation)
    if sub_violation is None:
        return TopClass(TopKind.DET_COBUCHI_ONLY, super_violation)
    return TopClass(TopKind.BEYOND, super_violation)


def _moore_partition(
    delta: Sequence[Sequence[int]], labels: Sequence[int]
) -> list[int]:
    """Coarsest congruence refining the label partition."""
    classes = list(labels)
    while True:
        signatures = {}
        new_classes = []
        for q in range(len(delta)):
            sig = (classes[q], tuple(classes[t] for t in delta[q]))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_classes.append(signatures[sig])
        if new_classes == classes:
            return classes
        classes = new_classes


def _quotient(
    aut: OmegaAutomaton,
    classes: Sequence[int],
    accepting_class: Callable[[int], bool],
    acceptance_factory: Callable[[frozenset[int]], Acceptance] = Weak,
) -> OmegaAutomaton:
    reps: dict[int, int] = {}
    for q in range(aut.n_states):
        reps.setdefault(classes[q], q)
    # Canonical BFS renumbering of classes from the initial class.
    start = classes[aut.initial]
    order = [start]
    seen = {start}
    head = 0
    while head < len(order):
        c = order[head]
        head += 1
        for sym in range(aut.alphabet.n_symbols):
            t = classes[aut.delta[reps[c]][sym]]
            if t not in seen:
                seen.add(t)
                order.append(t)
    number = {c: i for i, c in enumerate(order)}
    delta = tuple(
        tuple(number[classes[aut.delta[reps[c]][sym]]] for sym in range(aut.alphabet.n_symbols))
        for c in order
    )
    accepting = frozenset(number[c] for c in order if accepting_class(reps[c]))
    return OmegaAutomaton(aut.alphabet, delta, 0, acceptance_factory(accepting))


def minimize_weak(aut: OmegaAutomaton) -> OmegaAutomaton:
    """Canonical minimal weak automaton.

    Acceptance is first normalized to a maximal coloring: each SCC gets the
    smallest color at least the maximum of its successors whose parity
    matches the component's forced status (transient components simply
    inherit).  Partition refinement over the colors then behaves exactly
    like DFA minimization, and the quotient is renumbered canonically.
    """
    if not isinstance(aut.acceptance, Weak):
        raise AutomatonError("minimize_weak needs weak acceptance")
    aut = trim_reachable(aut)
    accepting = aut.acceptance.accepting
    comps = strongly_connected_components(aut.successors())
    scc_id = [0] * aut.n_states
    for i, comp in enumerate(comps):
        for q in comp:
            scc_id[q] = i
    color = [0] * len(comps)
    for i, comp in enumerate(comps):  # Tarjan order: successors first.
        external = 0
        for q in comp:
            for t in aut.delta[q]:
                if scc_id[t] != i:
                    external = max(external, color[scc_id[t]])
        comp_set = set(comp)
        has_cycle = len(comp) > 1 or comp[0] in {
            t for t in aut.delta[comp[0]] if t in comp_set
        }
        if has_cycle:
            status = comp[0] in accepting
            color[i] = external if (external % 2 == 1) == status else external + 1
        else:
            color[i] = external
    labels = [color[scc_id[q]] for q in range(aut.n_states)]
    classes = _moore_partition(aut.delta, labels)
    return _quotient(aut, classes, lambda q: labels[q] % 2 == 1)


def reduce_moore(aut: OmegaAutomaton) -> OmegaAutomaton:
    """Language-preserving state reduction: quotient by the coarsest
    congruence respecting per-state acceptance flags.  Sound for weak,
    Büchi, and co-Büchi acceptance; Muller automata are only trimmed."""
    aut = trim_reachable(aut)
    acc = aut.acceptance
    if isinstance(acc, Muller):
        return aut
    flagged = acc.rejecting if isinstance(acc, CoBuchi) else acc.accepting
    labels = [1 if q in flagged else 0 for q in range(aut.n_states)]
    classes = _moore_partition(aut.delta, labels)
    if len(set(classes)) == aut.n_states:
        return aut
    factory = type(acc)
    return _quotient(aut, classes, lambda q: labels[q] == 1, factory)


def live_states(aut: OmegaAutomaton) -> set[int]:
    """States whose residual language is nonempty."""
    reach_all = set(range(aut.n_states))
    acc = aut.acceptance
    good: set[int] = set()
    if isinstance(acc, (Weak, Buchi)):
        for comp in _sub_sccs(aut.delta, reach_all):
            comp_set = set(comp)
            has_cycle = len(comp) > 1 or comp[0] in {
                t for t in aut.delta[comp[0]] if t in comp_set
            }
            if has_cycle and any(q in acc.accepting for q in comp):
                good.update(comp)
    elif isinstance(acc, CoBuchi):
        for comp in _sub_sccs(aut.delta, reach_all - acc.rejecting):
            comp_set = set(comp)
            has_cycle = len(comp) > 1 or comp[0] in {
                t for t in aut.delta[comp[0]] if t in comp_set
            }
            if has_cycle:
                good.update(comp)
    else:
        for member in acc.family:
            if not member:
                continue
            subs = _sub_sccs(aut.delta, set(member))
            if len(subs) != 1 or set(subs[0]) != set(member):
                continue
            anchor = next(iter(member))
            has_edge = len(member) > 1 or anchor in {
                t for t in aut.delta[anchor] if t in member
            }
            if has_edge:
                good.update(member)
    # Backward closure: states that can reach a good state.
    predecessors: list[set[int]] = [set() for _ in range(aut.n_states)]
    for q in range(aut.n_states):
        for t in aut.delta[q]:
            predecessors[t].add(q)
    live = set(good)
    frontier = list(good)
    while frontier:
        q = frontier.pop()
        for p in predecessors[q]:
            if p not in live:
                live.add(p)
                frontier.append(p)
    return live


def safety_closure(aut: OmegaAutomaton) -> OmegaAutomaton:
    """Topological closure of the language in the common-prefix word metric:
    trim states with empty residual and accept every run that stays live."""
    live = live_states(aut)
    alphabet = aut.alphabet
    if aut.initial not in live:
        delta = (tuple(0 for _ in range(alphabet.n_symbols)),)
        return OmegaAutomaton(alphabet, delta, 0, Weak(frozenset()))
    order = [q for q in reachable_order(aut.delta, aut.initial) if q in live]
    mapping = {q: i for i, q in enumerate(order)}
    sink = len(order)
    rows = []
    for q in order:
        rows.append(
            tuple(mapping.get(t, sink) for t in aut.delta[q])
        )
    rows.append(tuple(sink for _ in range(alphabet.n_symbols)))
    return OmegaAutomaton(
        alphabet, tuple(rows), 0, Weak(frozenset(range(len(order))))
    )


def isomorphic(a: OmegaAutomaton, b: OmegaAutomaton) -> bool:
    """Structural isomorphism of the reachable parts (deterministic complete
    automata have a canonical BFS numbering)."""
    a, b = trim_reachable(a), trim_reachable(b)
    return a.delta == b.delta and a.initial == b.initial and a.acceptance == b.acceptance
