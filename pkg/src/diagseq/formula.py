"""Propositional formula trees and the prefix s-expression surface syntax.

Grammar:

    formula := atom | "true" | "false"
             | "(" "not" formula ")"
             | "(" "and" formula formula+ ")"
             | "(" "or" formula formula+ ")"
             | "(" "implies" formula formula ")"
             | "(" "iff" formula formula ")"
    atom    := [A-Za-z_][A-Za-z0-9_]*
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError


class Formula:
    """Base class; concrete nodes are frozen dataclasses, so formulas are
    hashable and compare structurally."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    children: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    children: tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Iff(Formula):
    lhs: Formula
    rhs: Formula


TRUE = Const(True)
FALSE = Const(False)

_ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_KEYWORDS = frozenset({"true", "false", "not", "and", "or", "implies", "iff"})


def atoms_of(f: Formula) -> frozenset[str]:
    """All atom names occurring in the formula."""
    out: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or)):
            stack.extend(node.children)
        elif isinstance(node, (Implies, Iff)):
            stack.append(node.lhs)
            stack.append(node.rhs)
    return frozenset(out)


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self.skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def next_token(self) -> tuple[str, int]:
        """Return (token, start_offset). Tokens: '(', ')', or a word."""
        self.skip_ws()
        start = self.pos
        if start >= len(self.text):
            raise ParseError("unexpected end of input, expected formula", offset=start)
        ch = self.text[start]
        if ch in "()":
            self.pos += 1
            return ch, start
        m = _ATOM_RE.match(self.text, start)
        if not m:
            raise ParseError(f"unexpected character {ch!r}, expected atom or '('", offset=start)
        self.pos = m.end()
        return m.group(0), start


def parse_formula(text: str) -> Formula:
    """Parse one formula from ``text``; trailing non-space input is an error."""
    tok = _Tokenizer(text)
    f = _parse(tok)
    tok.skip_ws()
    if tok.pos != len(text):
        raise ParseError("trailing input after formula", offset=tok.pos)
    return f


def _parse(tok: _Tokenizer) -> Formula:
    token, start = tok.next_token()
    if token == ")":
        raise ParseError("unexpected ')', expected formula", offset=start)
    if token != "(":
        return _word(token, start)

    op, op_start = tok.next_token()
    if op in ("(", ")"):
        raise ParseError("expected operator name after '('", offset=op_start)
    if op not in ("not", "and", "or", "implies", "iff"):
        raise ParseError(f"unknown operator {op!r}", offset=op_start)

    args: list[Formula] = []
    while True:
        nxt = tok.peek()
        if nxt is None:
            raise ParseError("unexpected end of input, expected ')'", offset=tok.pos)
        if nxt == ")":
            tok.next_token()
            break
        args.append(_parse(tok))

    if op == "not":
        if len(args) != 1:
            raise ParseError(f"'not' takes exactly 1 argument, got {len(args)}", offset=op_start)
        return Not(args[0])
    if op in ("and", "or"):
        if len(args) < 2:
            raise ParseError(f"'{op}' takes at least 2 arguments, got {len(args)}", offset=op_start)
        return And(tuple(args)) if op == "and" else Or(tuple(args))
    # implies / iff
    if len(args) != 2:
        raise ParseError(f"'{op}' takes exactly 2 arguments, got {len(args)}", offset=op_start)
    return Implies(args[0], args[1]) if op == "implies" else Iff(args[0], args[1])


def _word(token: str, start: int) -> Formula:
    if token == "true":
        return TRUE
    if token == "false":
        return FALSE
    if token in _KEYWORDS:
        raise ParseError(f"operator {token!r} must appear inside parentheses", offset=start)
    return Atom(token)


def format_formula(f: Formula) -> str:
    """Serialize back to the surface syntax; inverse of parse_formula."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        return f"(not {format_formula(f.child)})"
    if isinstance(f, And):
        return "(and " + " ".join(format_formula(c) for c in f.children) + ")"
    if isinstance(f, Or):
        return "(or " + " ".join(format_formula(c) for c in f.children) + ")"
    if isinstance(f, Implies):
        return f"(implies {format_formula(f.lhs)} {format_formula(f.rhs)})"
    if isinstance(f, Iff):
        return f"(iff {format_formula(f.lhs)} {format_formula(f.rhs)})"
    raise TypeError(f"not a Formula: {f!r}")
