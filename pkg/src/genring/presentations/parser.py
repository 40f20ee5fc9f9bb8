"""Parser for the presentation language.

    # comment
    base F1;                      # or F_empty (the default)
    gen neg/1, add/2;
    rel add(x1, x2) = add(x2, x1);
    noncommutative;               # drop the implicit interchange laws

Variables are ``x1, x2, ...``; ``0`` is the base constant of an F1
presentation; nullary symbols may be written with or without ``()``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import InputError
from .terms import ZERO, OpSymbol, Presentation, Relation, Term

_TOKEN = re.compile(
    r"\s+|#[^\n]*|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[;,/()=])"
)
_VAR = re.compile(r"^x([1-9][0-9]*)$")


class ParseError(InputError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind:
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.base = "F_empty"
        self.gens: list[OpSymbol] = []
        self.rels: list[Relation] = []
        self.commutative = True
        self.name = ""

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text:
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def arities(self) -> dict[str, int]:
        out = {ZERO: 0} if self.base == "F1" else {}
        out.update((g.name, g.arity) for g in self.gens)
        return out

    def parse(self) -> Presentation:
        while self.peek().kind != "eof":
            tok = self.next()
            if tok.text == "base":
                b = self.next()
                if b.text in ("F_empty", "Fempty"):
                    self.base = "F_empty"
                elif b.text == "F1":
                    self.base = "F1"
                else:
                    self.error(f"unknown base {b.text!r}", b)
                if self.gens or self.rels:
                    self.error("base must come before gen and rel", tok)
            elif tok.text == "gen":
                self.parse_gens()
            elif tok.text == "rel":
                lhs = self.parse_term()
                self.expect("=")
                rhs = self.parse_term()
                self.rels.append(Relation(lhs, rhs))
            elif tok.text == "noncommutative":
                self.commutative = False
            else:
                self.error(f"expected base, gen, rel or noncommutative, found {tok.text!r}", tok)
            self.expect(";")
        return Presentation(self.base, tuple(self.gens), tuple(self.rels), self.commutative)

    def parse_gens(self):
        while True:
            name = self.next()
            if name.kind != "ident":
                self.error("expected a generator name", name)
            if _VAR.match(name.text) or name.text in ("base", "gen", "rel"):
                self.error(f"{name.text!r} cannot be a generator name", name)
            if name.text in self.arities():
                self.error(f"duplicate symbol {name.text!r}", name)
            self.expect("/")
            ar = self.next()
            if ar.kind != "num":
                self.error("expected an arity", ar)
            self.gens.append(OpSymbol(name.text, int(ar.text)))
            if self.peek().text != ",":
                return
            self.next()

    def parse_term(self) -> Term:
        tok = self.next()
        if tok.kind == "num":
            if tok.text != "0":
                self.error(f"unexpected number {tok.text}", tok)
            if self.base != "F1":
                self.error("'0' needs base F1", tok)
            return (ZERO,)
        if tok.kind != "ident":
            self.error(f"expected a term, found {tok.text or 'end of input'!r}", tok)
        m = _VAR.match(tok.text)
        if m:
            return int(m.group(1)) - 1
        arities = self.arities()
        if tok.text not in arities:
            self.error(f"unknown symbol {tok.text!r}", tok)
        args: list[Term] = []
        if self.peek().text == "(":
            self.next()
            if self.peek().text != ")":
                args.append(self.parse_term())
                while self.peek().text == ",":
                    self.next()
                    args.append(self.parse_term())
            self.expect(")")
        if len(args) != arities[tok.text]:
            self.error(
                f"{tok.text} has arity {arities[tok.text]}, applied to {len(args)} arguments", tok
            )
        return (tok.text, *args)


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).parse()


def parse_term(text: str, p: Presentation) -> Term:
    parser = _Parser(text)
    parser.base = p.base
    parser.gens = list(p.generators)
    t = parser.parse_term()
    if parser.peek().kind != "eof":
        parser.error("trailing input after term")
    return t
