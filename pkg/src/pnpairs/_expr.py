"""Tiny arithmetic-expression parser shared by the element and polynomial text formats.

Grammar: integers, named symbols, + - * / ^ and parentheses, with implicit
multiplication between a number and a symbol ("4x" == "4*x").  Expressions are
evaluated in a caller-supplied ring: a dict of symbols plus callables.
"""

from __future__ import annotations

import re
from typing import Any, Callable, Optional

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z]\w*|\^|\*\*|[-+*/()^])")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad token in {text!r} at position {pos}")
        tok = m.group(1)
        if tok == "**":
            tok = "^"
        # implicit product: digit-run immediately followed by a symbol
        if tokens and tokens[-1].isdigit() and (tok.isidentifier() or tok == "("):
            tokens.append("*")
        tokens.append(tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            node = (op, node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            node = (op, node, rhs)
        return node

    def unary(self):
        if self.peek() == "-":
            self.take()
            return ("neg", self.unary())
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if not exp.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            return ("pow", base, int(exp))
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            node = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parenthesis")
            return node
        if tok.isdigit():
            return ("int", int(tok))
        if tok.isidentifier():
            return ("sym", tok)
        raise ValueError(f"unexpected token {tok!r}")


def parse(text: str):
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    if parser.peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return node


def evaluate(
    text: str,
    symbols: dict[str, Any],
    add: Callable,
    mul: Callable,
    neg: Callable,
    from_int: Callable,
    div: Optional[Callable] = None,
):
    """Parse and evaluate in the ring given by the callables."""

    def walk(node):
        kind = node[0]
        if kind == "int":
            return from_int(node[1])
        if kind == "sym":
            try:
                return symbols[node[1]]
            except KeyError:
                raise ValueError(f"unknown symbol {node[1]!r}") from None
        if kind == "neg":
            return neg(walk(node[1]))
        if kind == "pow":
            base = walk(node[1])
            out = from_int(1)
            for _ in range(node[2]):
                out = mul(out, base)
            return out
        a, b = walk(node[1]), walk(node[2])
        if kind == "+":
            return add(a, b)
        if kind == "-":
            return add(a, neg(b))
        if kind == "*":
            return mul(a, b)
        if kind == "/":
            if div is None:
                raise ValueError("division not supported in this context")
            return div(a, b)
        raise AssertionError(kind)

    return walk(parse(text))
