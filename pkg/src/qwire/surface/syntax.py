"""Abstract syntax and parser for ``.qw`` circuit files.

Grammar::

    program := boxdef*
    boxdef  := "box" IDENT "(" pat ":" wtype ")" "->" wtype "{" stmts "}"
    stmt    := "gate" pat "=" gname "(" pat ")" ";"
             | "let" pat "=" "unbox" IDENT "(" pat ")" ";"
             | "lift" IDENT "=" pat ";"
             | "if" IDENT "{" stmts "}" "else" "{" stmts "}"
             | "output" pat ";"
    wtype   := "One" | "Bit" | "Qubit" | wtype "*" wtype | "(" wtype ")"
    pat     := "()" | IDENT | "(" pat "," pat ")"
    gname   := "H" | "X" | "Y" | "Z" | "init0" | "init1" | "new0" | "new1"
             | "meas" | "discard" | "ctrl" gname | "bit_ctrl" gname
             | "transpose" gname

A block ends with ``output`` or with an ``if`` whose arms both end that way.
``//`` starts a line comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from ..ir import (
    Apply,
    Bit,
    BitControl,
    Control,
    Gate,
    One,
    Prim,
    Qubit,
    Tensor,
    Transpose,
    Unitary,
    UnitaryBase,
    WireType,
)


class ParseError(Exception):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {message}")


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class PUnit:
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class PVar:
    name: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class PPair:
    left: "SPat"
    right: "SPat"
    line: int = field(default=0, compare=False)


SPat = Union[PUnit, PVar, PPair]


@dataclass(frozen=True)
class SGate:
    out: SPat
    gate: Gate
    arg: SPat
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SLet:
    out: SPat
    box: str
    arg: SPat
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SLift:
    name: str
    pat: SPat
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SIf:
    name: str
    then: tuple
    orelse: tuple
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SOutput:
    pat: SPat
    line: int = field(default=0, compare=False)


Stmt = Union[SGate, SLet, SLift, SIf, SOutput]


@dataclass(frozen=True)
class BoxDef:
    name: str
    param: SPat
    in_type: WireType
    out_type: WireType
    body: tuple
    line: int = field(default=0, compare=False)


@dataclass
class SourceProgram:
    boxes: dict[str, BoxDef]


# ---------------------------------------------------------------------------
# Lexer


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>//[^\n]*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<punct>->|[(){},:;=*])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "punct" or "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(line, pos - line_start + 1, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("ident", "punct"):
            toks.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(Token("eof", "", line, pos - line_start + 1))
    return toks


# ---------------------------------------------------------------------------
# Parser

_BASE_TYPES = {"One": One, "Bit": Bit, "Qubit": Qubit}
_UNITARIES = {u.value: u for u in UnitaryBase}
_PRIMS = {p.value: p for p in Prim}
_WRAPPERS = {"ctrl": Control, "bit_ctrl": BitControl, "transpose": Transpose}
KEYWORDS = {"box", "gate", "let", "unbox", "lift", "if", "else", "output"}


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(tok.line, tok.col, f"{msg}, found {found}")

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "ident" or self.tok.text in KEYWORDS:
            raise self.error(f"expected {what}")
        return self.advance()

    # -- program ------------------------------------------------------------

    def program(self) -> SourceProgram:
        boxes: dict[str, BoxDef] = {}
        while self.tok.kind != "eof":
            start = self.tok
            b = self.boxdef()
            if b.name in boxes:
                raise ParseError(start.line, start.col, f"box {b.name!r} defined twice")
            boxes[b.name] = b
        return SourceProgram(boxes)

    def boxdef(self) -> BoxDef:
        start = self.expect("box")
        name = self.ident("box name").text
        self.expect("(")
        param = self.pat()
        self.expect(":")
        in_type = self.wtype()
        self.expect(")")
        self.expect("->")
        out_type = self.wtype()
        body = self.block()
        return BoxDef(name, param, in_type, out_type, body, start.line)

    def block(self) -> tuple:
        self.expect("{")
        stmts = []
        while not self.at("}"):
            if stmts and isinstance(stmts[-1], (SOutput, SIf)):
                raise self.error("statement after the end of a block")
            if self.tok.kind == "eof":
                raise self.error("expected '}'")
            stmts.append(self.stmt())
        if not stmts or not isinstance(stmts[-1], (SOutput, SIf)):
            raise self.error("block must end with 'output' or 'if'")
        self.advance()
        return tuple(stmts)

    def stmt(self) -> Stmt:
        t = self.tok
        if self.at("gate"):
            self.advance()
            out = self.pat()
            self.expect("=")
            g = self.gname()
            self.expect("(")
            arg = self.pat()
            self.expect(")")
            self.expect(";")
            return SGate(out, g, arg, t.line)
        if self.at("let"):
            self.advance()
            out = self.pat()
            self.expect("=")
            self.expect("unbox")
            name = self.ident("box name").text
            self.expect("(")
            arg = self.pat()
            self.expect(")")
            self.expect(";")
            return SLet(out, name, arg, t.line)
        if self.at("lift"):
            self.advance()
            name = self.ident().text
            self.expect("=")
            p = self.pat()
            self.expect(";")
            return SLift(name, p, t.line)
        if self.at("if"):
            self.advance()
            name = self.ident().text
            then = self.block()
            self.expect("else")
            orelse = self.block()
            return SIf(name, then, orelse, t.line)
        if self.at("output"):
            self.advance()
            p = self.pat()
            self.expect(";")
            return SOutput(p, t.line)
        raise self.error("expected a statement")

    # -- patterns, types, gates ----------------------------------------------

    def pat(self) -> SPat:
        t = self.tok
        if self.at("("):
            self.advance()
            if self.at(")"):
                self.advance()
                return PUnit(t.line)
            left = self.pat()
            self.expect(",")
            right = self.pat()
            self.expect(")")
            return PPair(left, right, t.line)
        if self.tok.kind == "ident" and self.tok.text not in KEYWORDS:
            return PVar(self.advance().text, t.line)
        raise self.error("expected a pattern")

    def wtype(self) -> WireType:
        left = self.wtype_atom()
        if self.at("*"):
            self.advance()
            return Tensor(left, self.wtype())
        return left

    def wtype_atom(self) -> WireType:
        if self.at("("):
            self.advance()
            w = self.wtype()
            self.expect(")")
            return w
        if self.tok.kind == "ident" and self.tok.text in _BASE_TYPES:
            return _BASE_TYPES[self.advance().text]
        raise self.error("expected a wire type")

    def gname(self) -> Gate:
        t = self.tok
        if t.kind == "ident" and t.text in _PRIMS:
            self.advance()
            return _PRIMS[t.text]
        return Apply(self.unitary())

    def unitary(self) -> Unitary:
        t = self.tok
        if t.kind == "ident" and t.text in _UNITARIES:
            self.advance()
            return _UNITARIES[t.text]
        if t.kind == "ident" and t.text in _WRAPPERS:
            self.advance()
            return _WRAPPERS[t.text](self.unitary())
        raise self.error("expected a gate name")


def parse(text: str) -> SourceProgram:
    return _Parser(text).program()


def parse_wtype(text: str) -> WireType:
    p = _Parser(text)
    w = p.wtype()
    if p.tok.kind != "eof":
        raise p.error("unexpected trailing input")
    return w


def parse_gate(text: str) -> Gate:
    """Gate name in either spaced (``ctrl H``) or dotted (``ctrl.H``) form."""
    p = _Parser(text.replace(".", " "))
    g = p.gname()
    if p.tok.kind != "eof":
        raise p.error("unexpected trailing input")
    return g


def iter_stmts(stmts: tuple) -> Iterator[Stmt]:
    for s in stmts:
        yield s
        if isinstance(s, SIf):
            yield from iter_stmts(s.then)
            yield from iter_stmts(s.orelse)
