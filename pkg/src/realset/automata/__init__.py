"""Deterministic omega-automata over digit alphabets: types, boolean
algebra, emptiness and equivalence, classification, minimization,
breakpoint determinization, and text/DOT serialization."""

from .core import (
    Acceptance,
    Alphabet,
    AutomatonError,
    Buchi,
    CoBuchi,
    Lasso,
    Muller,
    NondetAutomaton,
    OmegaAutomaton,
    Weak,
    accepts_inf_set,
    make_alphabet,
    member_up,
    nondet_lasso_member,
    strongly_connected_components,
)
from .analysis import (
    FamilyBlowupError,
    LoopPair,
    TopClass,
    TopKind,
    classify,
    complement,
    emptiness,
    equivalent,
    intersection_witness,
    isomorphic,
    live_states,
    minimize_weak,
    muller_family_bound,
    product,
    reachable_order,
    realizable_loopsets,
    reduce_moore,
    safety_closure,
    shortest_path,
    trim_reachable,
    with_initial,
)
from .determinize import (
    BlowupError,
    DEFAULT_BATTERY_SIZE,
    STATS,
    ValidationFailedError,
    breakpoint_determinize,
    determinize_checked,
    determinize_to_weak,
    up_battery,
    weaken_cobuchi,
)
from .textio import dump_automaton, dump_dot, load_automaton

__all__ = [
    "Acceptance",
    "Alphabet",
    "AutomatonError",
    "BlowupError",
    "Buchi",
    "CoBuchi",
    "DEFAULT_BATTERY_SIZE",
    "FamilyBlowupError",
    "Lasso",
    "LoopPair",
    "Muller",
    "NondetAutomaton",
    "OmegaAutomaton",
    "STATS",
    "TopClass",
    "TopKind",
    "ValidationFailedError",
    "Weak",
    "accepts_inf_set",
    "breakpoint_determinize",
    "classify",
    "complement",
    "determinize_checked",
    "determinize_to_weak",
    "dump_automaton",
    "dump_dot",
    "emptiness",
    "equivalent",
    "intersection_witness",
    "isomorphic",
    "live_states",
    "load_automaton",
    "make_alphabet",
    "member_up",
    "minimize_weak",
    "muller_family_bound",
    "nondet_lasso_member",
    "product",
    "reachable_order",
    "realizable_loopsets",
    "reduce_moore",
    "safety_closure",
    "shortest_path",
    "strongly_connected_components",
    "trim_reachable",
    "up_battery",
    "weaken_cobuchi",
    "with_initial",
]
