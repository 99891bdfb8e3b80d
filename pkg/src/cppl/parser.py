"""Concrete syntax: parser and printers for formulas, sentences, and instances.

Grammar (whitespace-insensitive)::

    formula  := addend ('+' addend)*
    addend   := NAT addend | '!' addend | IDENT | '(' formula ')'
    sentence := '~'* '(' formula CMP NAT ')'
    IDENT    := [A-Za-z][A-Za-z0-9_]*
    NAT      := [0-9]+
    CMP      := '>' | '>=' | '=' | '<' | '<='

A number juxtaposed before an addend is scaling, so ``2 !p`` is the scaling
of a negation and ``3 2 p`` nests two scalings.  ``+`` binds loosest and
associates to the left.  Instance files hold one sentence per line; ``#``
starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import (
    Add,
    ConstraintType,
    CpplError,
    Formula,
    LinearForm,
    Literal,
    Not,
    Prime,
    Scale,
    Sentence,
    StandardSentence,
    VariableTable,
)
from .normalize import normalize_formula


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets [start, end) into the parsed text."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError("span start must not exceed end")


class ParseError(CpplError):
    """Syntax error with position information, formatted as line:col: message."""

    def __init__(self, message: str, source: str, span: SourceSpan):
        self.message = message
        self.source = source
        self.span = span
        prefix = source[: span.start]
        self.line = prefix.count("\n") + 1
        self.col = span.start - (prefix.rfind("\n") + 1) + 1
        super().__init__(f"{self.line}:{self.col}: {message}")


_TOKEN_RE = re.compile(
    r"[ \t\r\n]*(?:(?P<nat>[0-9]+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>>=|<=|>|<|=|\+|!|~|\(|\)|-))"
)

_NAT, _IDENT, _OP, _END = "nat", "ident", "op", "end"


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    span: SourceSpan


def _tokenize(text: str, source: str, base: int) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            rest = text[pos:].lstrip(" \t\r\n")
            if not rest:
                break
            offset = base + len(text) - len(rest)
            raise ParseError(
                f"unexpected character {rest[0]!r}", source, SourceSpan(offset, offset + 1)
            )
        kind = match.lastgroup or _OP
        tokens.append(
            _Token(kind, match.group(kind), SourceSpan(base + match.start(kind), base + match.end(kind)))
        )
        pos = match.end()
    end = base + len(text)
    tokens.append(_Token(_END, "", SourceSpan(end, end)))
    return tokens


class _Parser:
    def __init__(self, text: str, table: VariableTable, source: str | None = None, base: int = 0):
        self.source = text if source is None else source
        self.tokens = _tokenize(text, self.source, base)
        self.pos = 0
        self.table = table

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.current
        self.pos += 1
        return token

    def fail(self, expected: str) -> ParseError:
        token = self.current
        found = "end of input" if token.kind == _END else repr(token.text)
        return ParseError(f"expected {expected}, found {found}", self.source, token.span)

    def expect_op(self, symbol: str, expected: str | None = None) -> _Token:
        token = self.current
        if token.kind != _OP or token.text != symbol:
            raise self.fail(expected or f"'{symbol}'")
        return self.advance()

    def formula(self) -> Formula:
        node = self.addend()
        while self.current.kind == _OP and self.current.text == "+":
            self.advance()
            node = Add(node, self.addend())
        return node

    def addend(self) -> Formula:
        token = self.current
        if token.kind == _NAT:
            self.advance()
            return Scale(int(token.text), self.addend())
        if token.kind == _OP and token.text == "!":
            self.advance()
            return Not(self.addend())
        if token.kind == _IDENT:
            self.advance()
            return Prime(self.table.variable(token.text))
        if token.kind == _OP and token.text == "(":
            self.advance()
            inner = self.formula()
            self.expect_op(")")
            return inner
        raise self.fail("a formula")

    def comparator(self) -> ConstraintType:
        token = self.current
        if token.kind == _OP and token.text in (">", ">=", "=", "<", "<="):
            self.advance()
            return ConstraintType.from_symbol(token.text)
        raise self.fail("a comparator (>, >=, =, <, <=)")

    def natural(self, what: str) -> int:
        token = self.current
        if token.kind != _NAT:
            raise self.fail(what)
        self.advance()
        return int(token.text)

    def integer(self, what: str) -> int:
        if self.current.kind == _OP and self.current.text == "-":
            self.advance()
            return -self.natural(what)
        return self.natural(what)

    def end(self) -> None:
        if self.current.kind != _END:
            raise self.fail("end of input")


def parse_formula(text: str, table: VariableTable | None = None) -> Formula:
    """Parse a formula; raises ParseError on bad or empty input."""
    parser = _Parser(text, table or VariableTable())
    node = parser.formula()
    parser.end()
    return node


def parse_sentence(text: str, table: VariableTable | None = None) -> Sentence:
    """Parse ``~* ( formula CMP nat )`` into a sentence."""
    parser = _Parser(text, table or VariableTable())
    return _sentence_body(parser)


def _sentence_body(parser: _Parser) -> Sentence:
    negations = 0
    while parser.current.kind == _OP and parser.current.text == "~":
        parser.advance()
        negations += 1
    parser.expect_op("(", "'(' opening a sentence")
    body = parser.formula()
    ctype = parser.comparator()
    bound = parser.natural("a natural bound")
    parser.expect_op(")")
    parser.end()
    return Sentence(body, ctype, bound, negations)


def parse_standard_sentence(text: str, table: VariableTable | None = None) -> StandardSentence:
    """Parse a standard sentence ``( formula >= int )``, allowing an empty body.

    The body is normalized, so any formula syntax is accepted; the comparator
    must be ``>=`` and the bound may be negative (standard sentences carry
    signed bounds internally).
    """
    parser = _Parser(text, table or VariableTable())
    parser.expect_op("(", "'(' opening a sentence")
    if parser.current.kind == _OP and parser.current.text == ">=":
        form = LinearForm.from_terms([])
    else:
        form = normalize_formula(parser.formula())
    parser.expect_op(">=", "'>=' (standard sentences are >= only)")
    bound = parser.integer("an integer bound")
    parser.expect_op(")")
    parser.end()
    return StandardSentence(form, bound)


def parse_literal(text: str, table: VariableTable | None = None) -> Literal:
    """Parse a bare literal: an identifier with optional leading ``!``."""
    table = table or VariableTable()
    parser = _Parser(text, table)
    positive = True
    if parser.current.kind == _OP and parser.current.text == "!":
        parser.advance()
        positive = False
    token = parser.current
    if token.kind != _IDENT:
        raise parser.fail("a variable name")
    parser.advance()
    parser.end()
    return Literal(table.variable(token.text), positive)


def parse_instance(text: str, table: VariableTable | None = None) -> list[Sentence]:
    """Parse one sentence per non-empty, non-comment line; `#` starts a comment.

    All lines share one variable table, so ordinals follow first appearance
    across the whole instance.  Errors report the position within `text`.
    """
    table = table or VariableTable()
    sentences: list[Sentence] = []
    offset = 0
    for line in text.split("\n"):
        stripped = line.split("#", 1)[0]
        if stripped.strip():
            parser = _Parser(stripped, table, source=text, base=offset)
            sentences.append(_sentence_body(parser))
        offset += len(line) + 1
    return sentences


def print_formula(formula: Formula) -> str:
    """Structure-preserving text: parse(print(f)) is f node for node."""
    if isinstance(formula, Prime):
        return formula.var.name
    if isinstance(formula, Scale):
        return f"{formula.factor} {_addend_text(formula.body)}"
    if isinstance(formula, Not):
        return "!" + _addend_text(formula.body)
    if isinstance(formula, Add):
        return f"{print_formula(formula.left)} + {_addend_text(formula.right)}"
    raise TypeError(f"not a formula: {formula!r}")


def _addend_text(formula: Formula) -> str:
    # only additions need parentheses in addend position
    if isinstance(formula, Add):
        return "(" + print_formula(formula) + ")"
    return print_formula(formula)


def print_linear_form(form: LinearForm) -> str:
    """Canonical term list, coefficients of 1 left implicit; empty form is ''."""
    parts = []
    for lit, coeff in form.items():
        parts.append(str(lit) if coeff == 1 else f"{coeff} {lit}")
    return " + ".join(parts)


def print_standard_sentence(sentence: StandardSentence) -> str:
    """Canonical form, e.g. ``(2 p1 + !p2 >= 2)``; the empty body prints ``( >= 1)``."""
    return f"({print_linear_form(sentence.form)} >= {sentence.bound})"


def print_sentence(sentence: Sentence) -> str:
    """Source form of a sentence: ``~`` wrappers, body text, comparator, bound."""
    return (
        "~" * sentence.negations
        + f"({print_formula(sentence.body)} {sentence.ctype.symbol} {sentence.bound})"
    )
