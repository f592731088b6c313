"""Recursive-descent parser for rational functions in y.

Grammar (see docs/grammar.md)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | "y" | "zeta" "(" INT ")" | "(" expr ")"

The whole expression is evaluated in Q(zeta_N)(y) with N the lcm of every
zeta order that appears (and of ``order`` if given).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import ParseError
from .exactnum import root_of_unity, lift_to_order
from .ratfunc import RatFunc

__all__ = ["parse_ratfunc", "format_ratfunc", "tokenize"]

_TOKEN = re.compile(r"\s*(?:(\d+)|(zeta|y)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:  # only trailing whitespace left
            break
        if match.group(1):
            tokens.append(Token("int", match.group(1), match.start(1)))
        elif match.group(2):
            tokens.append(Token("name", match.group(2), match.start(2)))
        elif match.group(3):
            ch = match.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", match.start(3))
            tokens.append(Token("op", ch, match.start(3)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# AST nodes are tuples: ("int", n) ("y",) ("zeta", N) ("neg", x) ("pow", x, e)
# and (op, left, right) for op in "+-*/".


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.zeta_orders: set[int] = set()

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self, kind: str, text: str | None = None) -> Token:
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            want = repr(text) if text else kind
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise ParseError(f"expected {want}, found {found}", tok.pos)
        self.i += 1
        return tok

    def at(self, *texts: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in texts

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self):
        node = self.term()
        while self.at("+", "-"):
            op = self.take("op").text
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.at("*", "/"):
            op = self.take("op")
            node = (op.text, node, self.unary(), op.pos)
        return node

    def unary(self):
        if self.at("-"):
            self.take("op")
            return ("neg", self.unary())
        if self.at("+"):
            self.take("op")
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.at("^"):
            caret = self.take("op").pos
            sign = 1
            if self.at("-"):
                self.take("op")
                sign = -1
            node = ("pow", node, sign * int(self.take("int").text), caret)
        return node

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return ("int", int(tok.text))
        if tok.kind == "name" and tok.text == "y":
            self.i += 1
            return ("y",)
        if tok.kind == "name" and tok.text == "zeta":
            self.i += 1
            self.take("op", "(")
            n_tok = self.take("int")
            n = int(n_tok.text)
            if n < 1:
                raise ParseError("zeta order must be positive", n_tok.pos)
            self.take("op", ")")
            self.zeta_orders.add(n)
            return ("zeta", n)
        if self.at("("):
            self.take("op")
            node = self.expr()
            self.take("op", ")")
            return node
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"expected a number, y, zeta(N) or '(', found {found}", tok.pos)


def _evaluate(node, order: int) -> RatFunc:
    kind = node[0]
    if kind == "int":
        return RatFunc.constant(order, node[1])
    if kind == "y":
        return RatFunc.y(order)
    if kind == "zeta":
        return RatFunc.constant(order, lift_to_order(root_of_unity(node[1], 1), order))
    if kind == "neg":
        return -_evaluate(node[1], order)
    if kind == "pow":
        base = _evaluate(node[1], order)
        if node[2] < 0 and base.is_zero():
            raise ParseError("division by zero", node[3])
        return base ** node[2]
    left, right = _evaluate(node[1], order), _evaluate(node[2], order)
    if kind == "+":
        return left + right
    if kind == "-":
        return left - right
    if kind == "*":
        return left * right
    if right.is_zero():
        raise ParseError("division by zero", node[3])
    return left / right


def parse_ratfunc(text: str, order: int = 1) -> RatFunc:
    """Parse ``text`` into a reduced rational function.

    Raises ParseError for syntax errors and for division by zero, with the
    position of the offending token.
    """
    parser = _Parser(text)
    node = parser.parse()
    return _evaluate(node, math.lcm(order, *parser.zeta_orders))


def format_ratfunc(f: RatFunc) -> str:
    """Canonical text form; ``parse_ratfunc(format_ratfunc(f), f.order) == f``."""
    return str(f)
