"""Parser for the concrete formula and guard syntax.

Formula operators, loosest binding first:

    f -> f              implication, right associative
    f | f               disjunction
    f & f               conjunction
    f U f,  f R f       until / release, right associative
    ! f, X f, F f, G f, Fp f, < r > f, [ r ] f, <p r > f

Guards use `+` (union), `;` (concatenation), `*` (iteration), `{ f }?`
(tests) and propositional formulas over `!`, `&`, `|`, `tt`, `ff` as atoms.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .formulas import (
    Alt,
    And,
    Always,
    Atom,
    Box,
    Concat,
    Diamond,
    Eventually,
    Ff,
    Formula,
    Guard,
    Implies,
    LogicId,
    NegAtom,
    Next,
    Not,
    Or,
    PromptDiamond,
    PromptEventually,
    Prop,
    Release,
    Star,
    Test,
    Tt,
    Until,
    require_logic,
)


class FormulaSyntaxError(ValueError):
    """Raised on malformed formula or guard text."""


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow>->)|"
    r"(?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)|"
    r"(?P<punct>[!&|(){}?+;*<>\[\]]))"
)

_KEYWORDS = {"tt", "ff", "X", "F", "G", "Fp", "U", "R"}


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            msg = f"unexpected character {rest[0]!r} at position {pos}"
            raise FormulaSyntaxError(msg)
        pos = match.end()
        if match.lastgroup == "arrow":
            tokens.append(_Token("->", "->", match.start()))
        elif match.lastgroup == "ident":
            word = match.group("ident")
            kind = word if word in _KEYWORDS else "ident"
            tokens.append(_Token(kind, word, match.start()))
        else:
            tokens.append(_Token(match.group("punct"), match.group("punct"), match.start()))
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _GuardResult:
    """Marks a parenthesized group that is a guard, not a proposition."""

    def __init__(self, guard: Guard):
        self.guard = guard


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def take(self, kind: str | None = None) -> _Token:
        token = self.tokens[self.index]
        if kind is not None and token.kind != kind:
            msg = f"expected {kind!r} but found {token.text or 'end of input'!r} at position {token.pos}"
            raise FormulaSyntaxError(msg)
        self.index += 1
        return token

    # Formula grammar.
    def formula(self) -> Formula:
        left = self.or_level()
        if self.peek().kind == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def or_level(self) -> Formula:
        left = self.and_level()
        while self.peek().kind == "|":
            self.take()
            left = Or(left, self.and_level())
        return left

    def and_level(self) -> Formula:
        left = self.until_level()
        while self.peek().kind == "&":
            self.take()
            left = And(left, self.until_level())
        return left

    def until_level(self) -> Formula:
        left = self.unary()
        kind = self.peek().kind
        if kind == "U":
            self.take()
            return Until(left, self.until_level())
        if kind == "R":
            self.take()
            return Release(left, self.until_level())
        return left

    def unary(self) -> Formula:
        token = self.peek()
        if token.kind == "!":
            self.take()
            arg = self.unary()
            if isinstance(arg, Atom):
                return NegAtom(arg.name)
            return Not(arg)
        if token.kind == "X":
            self.take()
            return Next(self.unary())
        if token.kind == "F":
            self.take()
            return Eventually(self.unary())
        if token.kind == "G":
            self.take()
            return Always(self.unary())
        if token.kind == "Fp":
            self.take()
            return PromptEventually(self.unary())
        if token.kind == "<":
            return self._angle_modality()
        if token.kind == "[":
            self.take()
            guard = self.guard()
            self.take("]")
            return Box(guard, self.unary())
        return self.atom()

    def _angle_modality(self) -> Formula:
        """Resolve `< ... >` between a diamond and a prompt diamond.

        `<p` opens a prompt diamond, but `p` is also a fine guard atom;
        the guard reading wins whenever the angle content parses as one,
        so `<p*> q` is a diamond and `<p tt*> q` a prompt diamond.
        """
        self.take("<")
        mark = self.index
        try:
            guard = self.guard()
            self.take(">")
            return Diamond(guard, self.unary())
        except FormulaSyntaxError as first:
            self.index = mark
            marker = self.peek()
            if marker.kind != "ident" or marker.text != "p":
                raise first from None
            self.take()
            try:
                guard = self.guard()
                self.take(">")
            except FormulaSyntaxError:
                raise first from None
            return PromptDiamond(guard, self.unary())

    def atom(self) -> Formula:
        token = self.peek()
        if token.kind == "tt":
            self.take()
            return Tt()
        if token.kind == "ff":
            self.take()
            return Ff()
        if token.kind == "ident":
            self.take()
            return Atom(token.text)
        if token.kind == "(":
            self.take()
            inner = self.formula()
            self.take(")")
            return inner
        msg = f"expected a formula but found {token.text or 'end of input'!r} at position {token.pos}"
        raise FormulaSyntaxError(msg)

    # Guard grammar.  Parenthesized groups may be full guards; the
    # propositional levels pass such groups upward untouched.
    def guard(self) -> Guard:
        left = self.guard_concat()
        while self.peek().kind == "+":
            self.take()
            left = Alt(left, self.guard_concat())
        return left

    def guard_concat(self) -> Guard:
        left = self.guard_star()
        while self.peek().kind == ";":
            self.take()
            left = Concat(left, self.guard_star())
        return left

    def guard_star(self) -> Guard:
        atom = self.guard_atom()
        while self.peek().kind == "*":
            self.take()
            atom = Star(atom)
        return atom

    def guard_atom(self) -> Guard:
        token = self.peek()
        if token.kind == "{":
            self.take()
            inner = self.formula()
            self.take("}")
            self.take("?")
            return Test(inner)
        result = self.prop_or()
        if isinstance(result, _GuardResult):
            return result.guard
        return Prop(result)

    def prop_or(self) -> Formula | _GuardResult:
        left = self.prop_and()
        if isinstance(left, _GuardResult):
            if self.peek().kind == "|":
                self._reject_guard_operand(left)
            return left
        while self.peek().kind == "|":
            self.take()
            right = self.prop_and()
            if isinstance(right, _GuardResult):
                self._reject_guard_operand(right)
            left = Or(left, right)
        return left

    def prop_and(self) -> Formula | _GuardResult:
        left = self.prop_not()
        if isinstance(left, _GuardResult):
            if self.peek().kind == "&":
                self._reject_guard_operand(left)
            return left
        while self.peek().kind == "&":
            self.take()
            right = self.prop_not()
            if isinstance(right, _GuardResult):
                self._reject_guard_operand(right)
            left = And(left, right)
        return left

    def prop_not(self) -> Formula | _GuardResult:
        if self.peek().kind == "!":
            self.take()
            arg = self.prop_not()
            if isinstance(arg, _GuardResult):
                self._reject_guard_operand(arg)
            if isinstance(arg, Atom):
                return NegAtom(arg.name)
            return Not(arg)
        return self.prop_primary()

    def prop_primary(self) -> Formula | _GuardResult:
        token = self.peek()
        if token.kind == "tt":
            self.take()
            return Tt()
        if token.kind == "ff":
            self.take()
            return Ff()
        if token.kind == "ident":
            self.take()
            return Atom(token.text)
        if token.kind == "(":
            self.take()
            inner = self.guard()
            self.take(")")
            if isinstance(inner, Prop):
                return inner.formula
            return _GuardResult(inner)
        msg = f"expected a guard but found {token.text or 'end of input'!r} at position {token.pos}"
        raise FormulaSyntaxError(msg)

    @staticmethod
    def _reject_guard_operand(result: _GuardResult) -> None:
        msg = (
            "guard expression cannot be used as a propositional operand: "
            f"{result.guard}"
        )
        raise FormulaSyntaxError(msg)


def parse(text: str, logic: LogicId | None = None) -> Formula:
    """Parse a formula; when a logic is given, enforce its surface."""
    parser = _Parser(text)
    phi = parser.formula()
    trailing = parser.peek()
    if trailing.kind != "end":
        msg = f"unexpected trailing input {trailing.text!r} at position {trailing.pos}"
        raise FormulaSyntaxError(msg)
    if logic is not None:
        require_logic(phi, logic)
    return phi


def parse_guard(text: str) -> Guard:
    """Parse a guard expression."""
    parser = _Parser(text)
    guard = parser.guard()
    trailing = parser.peek()
    if trailing.kind != "end":
        msg = f"unexpected trailing input {trailing.text!r} at position {trailing.pos}"
        raise FormulaSyntaxError(msg)
    return guard
