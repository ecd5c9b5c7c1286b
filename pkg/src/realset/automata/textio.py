"""Automaton text format v1 and DOT export.

::

    rna v1
    base <int>
    arity <int>
    states <int>            # states are 0..n-1
    initial <int>
    acceptance weak|buchi|cobuchi|muller
    accepting <int>*        # weak/buchi: accepting; cobuchi: rejecting
    accset <int>*           # repeated, only for muller
    trans <from> <symbol> <to>   # symbol: "d", "d,d,...", or "*"

Lines starting with ``#`` and blank lines are ignored.  Missing transitions
are completed with an implicit rejecting sink on load.
"""

from __future__ import annotations

from typing import Iterable

from ..numeric import Base
from .core import (
    Alphabet,
    AutomatonError,
    Buchi,
    CoBuchi,
    Muller,
    OmegaAutomaton,
    Weak,
)


def dump_automaton(aut: OmegaAutomaton) -> str:
    acc = aut.acceptance
    if isinstance(acc, Weak):
        name, marked = "weak", sorted(acc.accepting)
    elif isinstance(acc, Buchi):
        name, marked = "buchi", sorted(acc.accepting)
    elif isinstance(acc, CoBuchi):
        name, marked = "cobuchi", sorted(acc.rejecting)
    else:
        name, marked = "muller", []
    lines = [
        "rna v1",
        f"base {aut.alphabet.base.value}",
        f"arity {aut.alphabet.arity}",
        f"states {aut.n_states}",
        f"initial {aut.initial}",
        f"acceptance {name}",
        "accepting" + "".join(f" {q}" for q in marked),
    ]
    if isinstance(acc, Muller):
        for member in sorted(acc.family, key=lambda m: sorted(m)):
            lines.append("accset" + "".join(f" {q}" for q in sorted(member)))
    for q in range(aut.n_states):
        for sym in range(aut.alphabet.n_symbols):
            lines.append(f"trans {q} {aut.alphabet.symbol_text(sym)} {aut.delta[q][sym]}")
    return "\n".join(lines) + "\n"


def load_automaton(text: str) -> OmegaAutomaton:
    header: dict[str, str] = {}
    marked: list[int] = []
    accsets: list[frozenset[int]] = []
    trans: list[tuple[int, str, int]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        if key == "rna":
            if parts[1:] != ["v1"]:
                raise AutomatonError(f"unsupported format version: {line!r}")
        elif key in ("base", "arity", "states", "initial", "acceptance"):
            if len(parts) != 2:
                raise AutomatonError(f"malformed header line: {line!r}")
            header[key] = parts[1]
        elif key == "accepting":
            marked = [int(tok) for tok in parts[1:]]
        elif key == "accset":
            accsets.append(frozenset(int(tok) for tok in parts[1:]))
        elif key == "trans":
            if len(parts) != 4:
                raise AutomatonError(f"malformed transition: {line!r}")
            trans.append((int(parts[1]), parts[2], int(parts[3])))
        else:
            raise AutomatonError(f"unknown line: {line!r}")

    for field in ("base", "arity", "states", "initial", "acceptance"):
        if field not in header:
            raise AutomatonError(f"missing header field {field!r}")
    alphabet = Alphabet(Base.of(int(header["base"])), int(header["arity"]))
    n = int(header["states"])
    table: list[list[int | None]] = [[None] * alphabet.n_symbols for _ in range(n)]
    for src, sym_text, dst in trans:
        if not (0 <= src < n and 0 <= dst < n):
            raise AutomatonError(f"transition state out of range: {src}->{dst}")
        table[src][alphabet.parse_symbol(sym_text)] = dst

    need_sink = any(cell is None for row in table for cell in row)
    sink = n
    rows = []
    for row in table:
        rows.append(tuple(sink if cell is None else cell for cell in row))
    if need_sink:
        rows.append(tuple(sink for _ in range(alphabet.n_symbols)))
        n += 1

    kind = header["acceptance"]
    if kind == "weak":
        acceptance = Weak(frozenset(marked))
    elif kind == "buchi":
        acceptance = Buchi(frozenset(marked))
    elif kind == "cobuchi":
        rejecting = frozenset(marked) | ({sink} if need_sink else frozenset())
        acceptance = CoBuchi(rejecting)
    elif kind == "muller":
        acceptance = Muller(frozenset(accsets))
    else:
        raise AutomatonError(f"unknown acceptance {kind!r}")
    return OmegaAutomaton(alphabet, tuple(rows), int(header["initial"]), acceptance)


def dump_dot(aut: OmegaAutomaton, name: str = "rna") -> str:
    """GraphViz export; accepting-flavored states are doubly circled and
    co-Büchi rejecting states are diamonds."""
    acc = aut.acceptance
    if isinstance(acc, (Weak, Buchi)):
        doubled: Iterable[int] = acc.accepting
        diamonds: Iterable[int] = ()
    elif isinstance(acc, CoBuchi):
        doubled, diamonds = (), acc.rejecting
    else:
        doubled, diamonds = (), ()
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  hidden [shape=point, label=""];']
    for q in range(aut.n_states):
        shape = "doublecircle" if q in doubled else "diamond" if q in diamonds else "circle"
        lines.append(f'  q{q} [shape={shape}, label="{q}"];')
    lines.append(f"  hidden -> q{aut.initial};")
    for q in range(aut.n_states):
        by_target: dict[int, list[str]] = {}
        for sym in range(aut.alphabet.n_symbols):
            by_target.setdefault(aut.delta[q][sym], []).append(
                aut.alphabet.symbol_text(sym)
            )
        for target, labels in sorted(by_target.items()):
            label = ",".join(labels)
            lines.append(f'  q{q} -> q{target} [label="{label}"];')
    if isinstance(acc, Muller):
        family = " ".join(
            "{" + ",".join(str(q) for q in sorted(m)) + "}"
            for m in sorted(acc.family, key=lambda m: sorted(m))
        )
        lines.append(f'  labelloc="t"; label="muller family: {family}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
