"""Concrete syntax: parser and printers.

Grammar (wire format for CLI arguments and term files):

    term        := or_expr
    or_expr     := and_expr { "||" and_expr }          left associative
    and_expr    := not_expr { "&&" not_expr }          left associative
    not_expr    := "!" not_expr | cond
    cond        := atom_or_lit [ "<|" term "|>" atom_or_lit ]
    atom_or_lit := "T" | "F" | identifier | "(" term ")"

The ternary is non-associative: nested ternaries must be parenthesized.
Connectives desugar at parse time and exist only in the printer:

    x || y  =  T <| x |> y
    x && y  =  y <| x |> F
    !x      =  F <| x |> T
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import FALSE, TRUE, AtomLeaf, Atom, BoolLeaf, Conditional, Term


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError("span start must not exceed end")


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} (at {span.start}..{span.end})")
        self.message = message
        self.span = span


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<lcond><\|)|(?P<rcond>\|>)|(?P<or>\|\|)|(?P<and>&&)"
    r"|(?P<not>!)|(?P<lpar>\()|(?P<rpar>\))"
    r"|(?P<true>T\b)|(?P<false>F\b)|(?P<ident>[a-z][a-z0-9_]*))"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m:
            rest = text[i:].lstrip()
            if not rest:
                break
            at = len(text) - len(rest)
            raise ParseError(f"unexpected character {rest[0]!r}", SourceSpan(at, at + 1))
        kind = m.lastgroup
        assert kind is not None
        tokens.append(_Token(kind, m.group(kind), SourceSpan(m.start(kind), m.end(kind))))
        i = m.end()
    tokens.append(_Token("eof", "", SourceSpan(len(text), len(text))))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}", tok.span)
        return self.take()

    def term(self) -> Term:
        return self.or_expr()

    def or_expr(self) -> Term:
        t = self.and_expr()
        while self.peek().kind == "or":
            self.take()
            t = Conditional(TRUE, t, self.and_expr())
        return t

    def and_expr(self) -> Term:
        t = self.not_expr()
        while self.peek().kind == "and":
            self.take()
            t = Conditional(self.not_expr(), t, FALSE)
        return t

    def not_expr(self) -> Term:
        if self.peek().kind == "not":
            self.take()
            return Conditional(FALSE, self.not_expr(), TRUE)
        return self.cond()

    def cond(self) -> Term:
        t = self.atom_or_lit()
        if self.peek().kind == "lcond":
            self.take()
            condition = self.term()
            self.expect("rcond", "'|>'")
            t = Conditional(t, condition, self.atom_or_lit())
        return t

    def atom_or_lit(self) -> Term:
        tok = self.peek()
        if tok.kind == "true":
            self.take()
            return TRUE
        if tok.kind == "false":
            self.take()
            return FALSE
        if tok.kind == "ident":
            self.take()
            return AtomLeaf(Atom(tok.text))
        if tok.kind == "lpar":
            self.take()
            t = self.term()
            self.expect("rpar", "')'")
            return t
        raise ParseError("expected a term", tok.span)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    tok = p.peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.span)
    return t


def parse_term_lines(text: str) -> list[Term]:
    """Parse a term file: one term per line, '#' starts a comment line."""
    out: list[Term] = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append(parse_term(stripped))
    return out


# Printer precedence levels, loosest to tightest.
_OR, _AND, _NOT, _ATOM = 0, 1, 2, 3


def print_term(t: Term, style: str = "ternary") -> str:
    """Render a term.  'ternary' prints fully parenthesized <| |> forms;
    'sugared' reintroduces &&, || and ! where the exact patterns occur."""
    if style == "ternary":
        return _print_ternary(t, top=True)
    if style == "sugared":
        return _print_sugared(t, _OR)
    raise ValueError(f"unknown print style: {style!r}")


def _print_ternary(t: Term, top: bool = False) -> str:
    if isinstance(t, BoolLeaf):
        return str(t)
    if isinstance(t, AtomLeaf):
        return t.atom.name
    assert isinstance(t, Conditional)
    s = (
        f"{_print_ternary(t.then_branch)} <| "
        f"{_print_ternary(t.condition)} |> "
        f"{_print_ternary(t.else_branch)}"
    )
    return s if top else f"({s})"


def _print_sugared(t: Term, level: int) -> str:
    if isinstance(t, BoolLeaf):
        return str(t)
    if isinstance(t, AtomLeaf):
        return t.atom.name
    assert isinstance(t, Conditional)
    if t.else_branch == FALSE:
        s = f"{_print_sugared(t.condition, _AND)} && {_print_sugared(t.then_branch, _NOT)}"
        return s if level <= _AND else f"({s})"
    if t.then_branch == TRUE:
        s = f"{_print_sugared(t.condition, _OR)} || {_print_sugared(t.else_branch, _AND)}"
        return s if level <= _OR else f"({s})"
    if t.then_branch == FALSE and t.else_branch == TRUE:
        return f"!{_print_sugared(t.condition, _NOT)}"
    s = (
        f"{_print_sugared(t.then_branch, _ATOM)} <| "
        f"{_print_sugared(t.condition, _OR)} |> "
        f"{_print_sugared(t.else_branch, _ATOM)}"
    )
    return s if level <= _NOT else f"({s})"
