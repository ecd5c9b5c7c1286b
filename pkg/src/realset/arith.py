"""First-order ⟨ℝ,ℤ,+,<⟩ formulas and their compilation to weak RNAs.

Grammar (``!`` binds tightest, then ``&``, then ``|``; quantifiers extend
maximally to the right)::

    phi  ::= phi "|" phi | phi "&" phi | "!" phi | "(" phi ")"
           | "E" var "." phi | "A" var "." phi
           | term cmp term | "int(" var ")"
    term ::= rat | var | term "+" term | term "-" term | rat "*" var
    cmp  ::= "<" | "<=" | "=" | ">=" | ">"
    rat  ::= integer | integer "/" positive-integer
    var  ::= [a-z][a-z0-9_]*

Compilation follows the classical recipe: digit-serial automata for atoms,
products for the connectives, complement within the valid encodings for
negation, and projection followed by determinization for quantifiers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .atoms import (
    erase_tracks,
    integrality_automaton,
    lift,
    linear_atom_automaton,
    nfa_of,
)
from .numeric import Base, as_base
from .rna import (
    RNA,
    RnaError,
    _determinize,
    _pump_close,
    _wrap,
    complement_rna,
    empty_rna,
    saturate,
    validity_automaton,
)
from .automata import product


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Atom:
    """Σ coeffs[v]·v  cmp  const, with rational coefficients.

    ``mentioned`` keeps every variable that appeared syntactically, so that
    atoms whose coefficients cancel (like ``x < x``) still have the right
    free variables.
    """

    coeffs: tuple[tuple[str, Fraction], ...]
    cmp: str
    const: Fraction
    mentioned: tuple[str, ...] = ()


@dataclass(frozen=True)
class IntPred:
    var: str


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Atom, IntPred, Not, And, Or, Exists, Forall]


def free_vars(phi: Formula) -> tuple[str, ...]:
    def walk(node: Formula, bound: frozenset[str]) -> set[str]:
        if isinstance(node, Atom):
            seen = {v for v, _ in node.coeffs} | set(node.mentioned)
            return {v for v in seen if v not in bound}
        if isinstance(node, IntPred):
            return set() if node.var in bound else {node.var}
        if isinstance(node, Not):
            return walk(node.body, bound)
        if isinstance(node, (And, Or)):
            return walk(node.left, bound) | walk(node.right, bound)
        return walk(node.body, bound | {node.var})

    return tuple(sorted(walk(phi, frozenset())))


def validate_formula(phi: Formula) -> None:
    """Each variable is bound at most once and never both bound and free."""
    bound: set[str] = set()

    def walk(node: Formula) -> None:
        if isinstance(node, (Exists, Forall)):
            if node.var in bound:
                raise RnaError(f"variable {node.var!r} bound more than once")
            bound.add(node.var)
            walk(node.body)
        elif isinstance(node, Not):
            walk(node.body)
        elif isinstance(node, (And, Or)):
            walk(node.left)
            walk(node.right)

    walk(phi)
    clash = bound & set(free_vars(phi))
    if clash:
        raise RnaError(f"variables both bound and free: {sorted(clash)}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[a-z][a-z0-9_]*)|(?P<quant>[EA])"
    r"|(?P<op><=|>=|<|>|=|\||&|!|\(|\)|\.|\+|-|\*|/))"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    for line_no, line in enumerate(text.splitlines() or [""], start=1):
        pos = 0
        while pos < len(line):
            match = _TOKEN_RE.match(line, pos)
            if match is None or match.end() == pos:
                stripped = line[pos:].lstrip()
                if not stripped:
                    break
                col = len(line) - len(stripped) + 1
                raise FormulaSyntaxError(
                    f"unexpected character {stripped[0]!r}", line_no, col
                )
            kind = match.lastgroup or "op"
            tokens.append(
                _Token(kind, match.group(kind), line_no, match.start(kind) + 1)
            )
            pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def error(self, message: str) -> FormulaSyntaxError:
        if self.pos < len(self.tokens):
            tok = self.tokens[self.pos]
            return FormulaSyntaxError(message, tok.line, tok.column)
        lines = self.text.splitlines() or [""]
        return FormulaSyntaxError(message, len(lines), len(lines[-1]) + 1)

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: Optional[str] = None, text: Optional[str] = None) -> _Token:
        tok = self.peek()
        if tok is None or (kind and tok.kind != kind) or (text and tok.text != text):
            wanted = text or kind or "token"
            raise self.error(f"expected {wanted}")
        self.pos += 1
        return tok

    def parse(self) -> Formula:
        phi = self.parse_or()
        if self.peek() is not None:
            raise self.error("trailing input")
        return phi

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while (tok := self.peek()) and tok.text == "|":
            self.pos += 1
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while (tok := self.peek()) and tok.text == "&":
            self.pos += 1
            left = And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise self.error("expected formula")
        if tok.text == "!":
            self.pos += 1
            return Not(self.parse_unary())
        if tok.kind == "quant":
            self.pos += 1
            var = self.take("name").text
            self.take(text=".")
            body = self.parse_or()  # quantifiers extend maximally right
            return Exists(var, body) if tok.text == "E" else Forall(var, body)
        if tok.text == "(":
            self.pos += 1
            phi = self.parse_or()
            self.take(text=")")
            return phi
        if tok.kind == "name" and tok.text == "int":
            nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            if nxt is not None and nxt.text == "(":
                self.pos += 2
                var = self.take("name").text
                self.take(text=")")
                return IntPred(var)
        return self.parse_atom()

    def parse_atom(self) -> Formula:
        left_coeffs, left_const = self.parse_term()
        tok = self.peek()
        if tok is None or tok.text not in ("<", "<=", "=", ">=", ">"):
            raise self.error("expected comparator")
        self.pos += 1
        right_coeffs, right_const = self.parse_term()
        coeffs: dict[str, Fraction] = dict(left_coeffs)
        for var, a in right_coeffs.items():
            coeffs[var] = coeffs.get(var, Fraction(0)) - a
        mentioned = tuple(sorted(set(left_coeffs) | set(right_coeffs)))
        coeffs = {v: a for v, a in coeffs.items() if a != 0}
        return Atom(
            tuple(sorted(coeffs.items())),
            tok.text,
            right_const - left_const,
            mentioned,
        )

    def parse_term(self) -> tuple[dict[str, Fraction], Fraction]:
        coeffs, const = self.parse_factor()
        while (tok := self.peek()) and tok.text in ("+", "-"):
            self.pos += 1
            more_coeffs, more_const = self.parse_factor()
            sign = 1 if tok.text == "+" else -1
            for var, a in more_coeffs.items():
                coeffs[var] = coeffs.get(var, Fraction(0)) + sign * a
            const += sign * more_const
        return coeffs, const

    def parse_factor(self) -> tuple[dict[str, Fraction], Fraction]:
        tok = self.peek()
        if tok is None:
            raise self.error("expected term")
        if tok.kind == "name":
            self.pos += 1
            return {tok.text: Fraction(1)}, Fraction(0)
        if tok.kind == "int" or tok.text == "-":
            value = self.parse_rat()
            if (nxt := self.peek()) and nxt.text == "*":
                self.pos += 1
                var = self.take("name").text
                return {var: value}, Fraction(0)
            return {}, value
        raise self.error("expected term")

    def parse_rat(self) -> Fraction:
        sign = 1
        if (tok := self.peek()) and tok.text == "-":
            self.pos += 1
            sign = -1
        num = int(self.take("int").text)
        if (tok := self.peek()) and tok.text == "/":
            self.pos += 1
            den = int(self.take("int").text)
            if den == 0:
                raise self.error("zero denominator")
            return Fraction(sign * num, den)
        return Fraction(sign * num)


def parse_formula(text: str) -> Formula:
    phi = _Parser(text).parse()
    validate_formula(phi)
    return phi


def atomic_linear(
    coeffs: Sequence[Fraction], cmp: str, const: Fraction, base: "Base | int"
) -> RNA:
    """Weak saturated RVA for Σ coeffs·x̄ cmp const (arity = len(coeffs))."""
    return _wrap(linear_atom_automaton(coeffs, cmp, const, base), True)


def integrality(base: "Base | int") -> RNA:
    """Weak saturated RNA for the integers."""
    return _wrap(integrality_automaton(base), True)


def project(R: RNA, track: int) -> RNA:
    """Existential projection of one track; the result is determinized,
    re-closed under sign-digit padding, and saturated."""
    if R.arity < 2:
        raise RnaError("projection needs arity >= 2 (results keep arity >= 1)")
    if not 0 <= track < R.arity:
        raise RnaError(f"track {track} out of range")
    R = saturate(R)
    projected = _determinize(erase_tracks(nfa_of(R.automaton), (track,)))
    return _wrap(_pump_close(projected), True)


def compile_formula(phi: "Formula | str", base: "Base | int") -> RNA:
    """Compile to a saturated weak RVA whose tracks are the free variables
    in sorted order."""
    if isinstance(phi, str):
        phi = parse_formula(phi)
    else:
        validate_formula(phi)
    base = as_base(base)
    variables = free_vars(phi)
    if not variables:
        raise RnaError("formula has no free variables; nothing to represent")
    return _compile(phi, variables, base)


compile = compile_formula  # surface alias


def _compile(phi: Formula, variables: tuple[str, ...], base: Base) -> RNA:
    arity = len(variables)
    if isinstance(phi, Atom):
        live = [(v, a) for v, a in phi.coeffs if a != 0]
        if not live:
            truth = _constant_truth(Fraction(0), phi.cmp, phi.const)
            return validity_automaton(base, arity) if truth else empty_rna(base, arity)
        atom = linear_atom_automaton([a for _, a in live], phi.cmp, phi.const, base)
        positions = tuple(variables.index(v) for v, _ in live)
        return _wrap(lift(atom, arity, positions), True)
    if isinstance(phi, IntPred):
        aut = lift(integrality_automaton(base), arity, (variables.index(phi.var),))
        return _wrap(aut, True)
    if isinstance(phi, Not):
        return complement_rna(_compile(phi.body, variables, base))
    if isinstance(phi, (And, Or)):
        left = _compile(phi.left, variables, base)
        right = _compile(phi.right, variables, base)
        mode = "and" if isinstance(phi, And) else "or"
        return _wrap(product(left.automaton, right.automaton, mode), True)
    if isinstance(phi, Exists):
        return _project_quantifier(phi.var, phi.body, variables, base)
    if isinstance(phi, Forall):
        return complement_rna(_project_quantifier(phi.var, Not(phi.body), variables, base))
    raise RnaError(f"unknown formula node {phi!r}")


def _project_quantifier(
    var: str, body: Formula, variables: tuple[str, ...], base: Base
) -> RNA:
    if var in variables:
        raise RnaError(f"quantified variable {var!r} shadows a free variable")
    inner_vars = tuple(sorted((*variables, var)))
    inner = _compile(body, inner_vars, base)
    if len(inner_vars) == 1:
        # Quantifying the only variable away is a truth-value question.
        raise RnaError("cannot project the last remaining track")
    return project(inner, inner_vars.index(var))


def _constant_truth(lhs: Fraction, cmp: str, rhs: Fraction) -> bool:
    return {
        "<": lhs < rhs,
        "<=": lhs <= rhs,
        "=": lhs == rhs,
        ">=": lhs >= rhs,
        ">": lhs > rhs,
    }[cmp]
