"""A small language for lattices: ``U^3 + E8(-1)^2 + <-4>``.

Grammar (whitespace is ignored)::

    expr := term ("+" term)*
    term := atom ("^" nat)?
    atom := NAME ("(" int ")")? | "<" int ">" | "gram[" row ("," row)* "]"
    row  := "[" int ("," int)* "]"
"""
import re
from dataclasses import dataclass
from typing import Optional

from .catalog import rank_one, simple_lattice
from .errors import ParseError
from .lattice import Lattice, direct_sum

NAMES = frozenset(
    ["U", "E6", "E7", "E8", "E6v"]
    + [f"A{k}" for k in range(1, 25)]
    + [f"D{k}" for k in range(4, 25)]
)


@dataclass(frozen=True)
class Named:
    name: str
    scale: Optional[int] = None


@dataclass(frozen=True)
class RankOne:
    value: int


@dataclass(frozen=True)
class GramLiteral:
    rows: tuple


@dataclass(frozen=True)
class Term:
    atom: object
    exponent: int = 1


@dataclass(frozen=True)
class LatticeExpr:
    terms: tuple

    def __str__(self):
        return format_expr(self)


_INT = re.compile(r"-?\d+")
_NAT = re.compile(r"\d+")
_NAME = re.compile(r"[A-Za-z][A-Za-z0-9]*")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s):
        self.skip()
        return self.text.startswith(s, self.pos)

    def fail(self, *expected):
        self.skip()
        raise ParseError(self.pos, expected, self.text)

    def expect(self, s):
        if not self.peek(s):
            self.fail(repr(s))
        self.pos += len(s)

    def regex(self, pattern, what):
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            self.fail(what)
        self.pos = m.end()
        return m.group()

    def expr(self):
        terms = [self.term()]
        while self.peek("+"):
            self.pos += 1
            terms.append(self.term())
        self.skip()
        if self.pos != len(self.text):
            self.fail("'+'", "'^'", "end of input")
        return LatticeExpr(tuple(terms))

    def term(self):
        atom = self.atom()
        exp = 1
        if self.peek("^"):
            self.pos += 1
            start = self.pos
            exp = int(self.regex(_NAT, "natural number"))
            if exp < 1:
                raise ParseError(start, ("positive exponent",), self.text)
        return Term(atom, exp)

    def atom(self):
        if self.peek("<"):
            self.pos += 1
            value = int(self.regex(_INT, "integer"))
            self.expect(">")
            return RankOne(value)
        if self.peek("gram["):
            start = self.pos
            self.pos += len("gram[")
            rows = [self.row()]
            while self.peek(","):
                self.pos += 1
                rows.append(self.row())
            self.expect("]")
            n = len(rows)
            if any(len(r) != n for r in rows) or any(
                rows[i][j] != rows[j][i] for i in range(n) for j in range(n)
            ):
                raise ParseError(start, ("symmetric square matrix",), self.text)
            return GramLiteral(tuple(rows))
        self.skip()
        start = self.pos
        m = _NAME.match(self.text, self.pos)
        if not m or m.group() not in NAMES:
            raise ParseError(start, ("'<'", "'gram['", "NAME"), self.text)
        self.pos = m.end()
        scale = None
        if self.peek("("):
            self.pos += 1
            scale = int(self.regex(_INT, "integer"))
            self.expect(")")
        return Named(m.group(), scale)

    def row(self):
        self.expect("[")
        vals = [int(self.regex(_INT, "integer"))]
        while self.peek(","):
            self.pos += 1
            vals.append(int(self.regex(_INT, "integer")))
        self.expect("]")
        return tuple(vals)


def parse_lattice_expr(text):
    """Parse ``text``; ParseError offsets count UTF-8 bytes."""
    try:
        return _Parser(text).expr()
    except ParseError as err:
        byte = len(text[: err.offset].encode())
        raise ParseError(byte, err.expected, text) from None


def _format_atom(a):
    if isinstance(a, RankOne):
        return f"<{a.value}>"
    if isinstance(a, GramLiteral):
        return "gram[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in a.rows) + "]"
    return a.name if a.scale is None else f"{a.name}({a.scale})"


def format_expr(e):
    parts = []
    for t in e.terms:
        s = _format_atom(t.atom)
        parts.append(s if t.exponent == 1 else f"{s}^{t.exponent}")
    return " + ".join(parts)


def _eval_atom(a):
    if isinstance(a, RankOne):
        return rank_one(a.value)
    if isinstance(a, GramLiteral):
        return Lattice(a.rows)
    return simple_lattice(a.name, a.scale)


def evaluate(e):
    pieces = []
    for t in e.terms:
        L = _eval_atom(t.atom)
        pieces.extend([L] * t.exponent)
    return direct_sum(*pieces)


def lattice_from_expr(text):
    return evaluate(parse_lattice_expr(text))
