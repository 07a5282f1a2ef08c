"""Text form of rational maps: a small Pratt parser and the matching printer.

Grammar, loosest first: ``o`` (composition), ``+ -``, ``* /``, unary ``-``,
``^`` with an integer exponent.  Atoms are numbers, ``z``, family names
(``T(n)``, ``Z(n)``, ``pow(n)``, ``Delta`` ...) and parenthesised expressions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import LimitExceeded, ParseError
from .families import KINDS_WITH_N, NAMED, FamilyTag, make, recognize
from .ratmap import RatMap, Z, compose, format_ratmap

DEFAULT_MAX_DEGREE = 4096

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")

# binding powers
_BP = {"o": 10, "+": 20, "-": 20, "*": 30, "/": 30, "^": 50}
_UNARY_BP = 40


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(Token("num", num, start))
        elif name is not None:
            out.append(Token("op" if name == "o" else "name", name, start))
        elif op in "+-*/^()":
            out.append(Token("op", op, start))
        else:
            raise ParseError(f"unexpected character {op!r}", start)
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, max_degree: int) -> None:
        self.tokens = tokenize(text)
        self.i = 0
        self.max_degree = max_degree

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text or tok.kind == "end":
            raise ParseError(f"expected {text!r}", tok.pos)
        return tok

    def cap(self, degree: int, pos: int) -> None:
        if degree > self.max_degree:
            raise LimitExceeded(f"degree {degree} exceeds the cap {self.max_degree} (at position {pos})")

    def parse(self) -> RatMap:
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0)
        value = self.expression(0)
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.pos)
        return value

    def expression(self, min_bp: int) -> RatMap:
        left = self.prefix()
        while True:
            tok = self.peek()
            if tok.kind != "op" or tok.text not in _BP or _BP[tok.text] <= min_bp:
                return left
            self.next()
            if tok.text == "^":
                left = self.power(left, tok)
                continue
            right = self.expression(_BP[tok.text])
            left = self.binary(tok, left, right)

    def power(self, base: RatMap, tok: Token) -> RatMap:
        sign = 1
        nxt = self.peek()
        paren = nxt.text == "("
        if paren:
            self.next()
        while self.peek().text in ("-", "+"):
            if self.next().text == "-":
                sign = -sign
        num = self.next()
        if num.kind != "num" or not num.text.isdigit():
            raise ParseError("exponent must be an integer", num.pos)
        if paren:
            self.expect(")")
        n = sign * int(num.text)
        self.cap(base.degree * abs(n), tok.pos)
        try:
            return base ** n
        except ZeroDivisionError as exc:
            raise ParseError("zero to a negative power", tok.pos) from exc

    def binary(self, tok: Token, left: RatMap, right: RatMap) -> RatMap:
        op = tok.text
        if op == "o":
            self.cap(left.degree * max(right.degree, 1), tok.pos)
            return compose(left, right)
        if op in "+-*/":
            self.cap(left.degree + right.degree, tok.pos)
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if right.num.is_zero():
            raise ParseError("division by zero", tok.pos)
        return left / right

    def prefix(self) -> RatMap:
        tok = self.next()
        if tok.kind == "num":
            return RatMap.const(Fraction(tok.text))
        if tok.text == "-":
            return -self.expression(_UNARY_BP)
        if tok.text == "+":
            return self.expression(_UNARY_BP)
        if tok.text == "(":
            inner = self.expression(0)
            self.expect(")")
            return inner
        if tok.kind == "name":
            return self.name(tok)
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)

    def name(self, tok: Token) -> RatMap:
        if tok.text == "z":
            return Z
        if tok.text in NAMED:
            return make(FamilyTag(tok.text))
        if tok.text in KINDS_WITH_N:
            self.expect("(")
            arg = self.next()
            if arg.kind != "num" or not arg.text.isdigit() or int(arg.text) < 1:
                raise ParseError("family index must be a positive integer", arg.pos)
            self.expect(")")
            n = int(arg.text)
            self.cap(2 * n if tok.text in ("Z", "theta_dihedral") else n, tok.pos)
            return make(FamilyTag(tok.text, n))
        raise ParseError(f"unknown name {tok.text!r}", tok.pos)


def parse_expression(text: str, max_degree: int = DEFAULT_MAX_DEGREE) -> RatMap:
    return _Parser(text, max_degree).parse()


def print_expression(f: RatMap) -> str:
    """Family name when f is literally a family member, else the reduced fraction."""
    tag = recognize(f)
    return str(tag) if tag is not None else format_ratmap(f)
