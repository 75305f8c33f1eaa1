"""Parser for the textual element syntax used by the CLI and spec files.

Grammar (whitespace is ignored)::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := "-" factor | power
    power  := atom ("^" exponent)?
    atom   := number | word | name | "(" expr ")"
    word   := id ("." id)*

``.`` concatenates basis ids into a tensor word, ``*`` multiplies (scalars
scale, tensors concatenate), ``/`` divides by a unit scalar, and ``^`` takes
integer powers of scalars, e.g. ``(q - q^-1) * e14.e23 + q^(-1) * e13.e24``.
Names resolve to basis ids first, then declared variables, then sign names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .core import TensorPoly, TLieSpec
from .errors import ExpressionSyntaxError, NotAUnit, UnknownId
from .scalar import LaurentScalar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass(frozen=True)
class Namespace:
    ids: frozenset
    variables: tuple
    signs: Mapping[str, int]

    @classmethod
    def of(cls, spec: TLieSpec) -> "Namespace":
        return cls(frozenset(spec.ids), tuple(spec.variables), dict(spec.signs))


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            out.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str, ns: Namespace):
        self.src = src
        self.ns = ns
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ExpressionSyntaxError(msg, tok[2], self.src)

    def expect(self, op: str):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self) -> TensorPoly:
        if self.peek()[0] == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self) -> TensorPoly:
        value = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> TensorPoly:
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op_tok = self.take()
            rhs = self.factor()
            if op_tok[1] == "*":
                value = value * rhs
            else:
                c = _as_scalar_value(rhs)
                if c is None:
                    self.error("can only divide by a scalar", op_tok)
                try:
                    value = value.scale(c.invert_unit())
                except NotAUnit:
                    self.error(f"cannot divide by non-unit {c}", op_tok)
        return value

    def factor(self) -> TensorPoly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.factor()
        if tok[0] == "op" and tok[1] == "+":
            self.take()
            return self.factor()
        return self.power()

    def exponent(self) -> int:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            k = self.exponent()
            self.expect(")")
            return k
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        tok = self.take()
        if tok[0] != "num":
            self.error("expected an integer exponent", tok)
        return sign * int(tok[1])

    def power(self) -> TensorPoly:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            k = self.exponent()
            c = _as_scalar_value(base)
            if c is None:
                self.error("only scalars can be raised to a power", tok)
            try:
                return TensorPoly.scalar(c ** k)
            except NotAUnit:
                self.error(f"negative power of non-unit {c}", tok)
        return base

    def atom(self) -> TensorPoly:
        tok = self.take()
        kind, text, _ = tok
        if kind == "num":
            return TensorPoly.scalar(int(text))
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if kind == "name":
            return self.name(tok)
        if kind == "end":
            self.error("unexpected end of expression", tok)
        self.error(f"unexpected {text!r}", tok)

    def name(self, tok) -> TensorPoly:
        text = tok[1]
        if text in self.ns.ids:
            word = [text]
            while self.peek()[0] == "op" and self.peek()[1] == ".":
                self.take()
                nxt = self.take()
                if nxt[0] != "name":
                    self.error("expected a basis id after '.'", nxt)
                if nxt[1] not in self.ns.ids:
                    raise UnknownId(f"unknown basis id {nxt[1]!r} at position {nxt[2]}")
                word.append(nxt[1])
            return TensorPoly.word(*word)
        if self.peek()[0] == "op" and self.peek()[1] == ".":
            raise UnknownId(f"unknown basis id {text!r} at position {tok[2]}")
        if text in self.ns.variables:
            return TensorPoly.scalar(LaurentScalar.var(text))
        if text in self.ns.signs:
            return TensorPoly.scalar(self.ns.signs[text])
        raise UnknownId(f"unknown basis id or variable {text!r} at position {tok[2]}")


def _as_scalar_value(t: TensorPoly) -> LaurentScalar | None:
    if not t:
        return LaurentScalar.const(0)
    if set(t.words()) == {()}:
        return t.coeff(())
    return None


def parse_expression(src: str, spec: TLieSpec | Namespace) -> TensorPoly:
    """Parse ``src`` against the ids, variables and signs of ``spec``."""
    ns = spec if isinstance(spec, Namespace) else Namespace.of(spec)
    return _Parser(src, ns).parse()


def parse_scalar(src: str, variables: Iterable[str] = (), signs: Mapping[str, int] | None = None) -> LaurentScalar:
    ns = Namespace(frozenset(), tuple(variables), dict(signs or {}))
    t = _Parser(src, ns).parse()
    c = _as_scalar_value(t)
    if c is None:
        raise ExpressionSyntaxError("expected a scalar expression", 0, src)
    return c


def parse_assignment(items: Iterable[str]) -> dict[str, Fraction]:
    """Parse ``q=1``, ``p=2/3`` style assignments."""
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ExpressionSyntaxError(f"expected name=value, got {item!r}", 0, item)
        try:
            out[name] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ExpressionSyntaxError(f"bad rational value {value!r}", len(name) + 1, item) from None
    return out
