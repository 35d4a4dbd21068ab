"""Reader and writer for ideal-definition files.

    # twisted example
    char: 32003
    vars: x y z
    gens:
      x^2 - 3*x*y
      y^2

Generators are separated by newlines or commas. Products need an explicit
``*``. Coefficients are integers, reduced mod the characteristic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .arith import DEFAULT_MODULUS, PolyRing, Polynomial, PrimeField, is_prime
from .errors import ParseError
from .groebner import Ideal

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


@dataclass(frozen=True)
class IdealFile:
    characteristic: int
    variables: tuple[str, ...]
    generators: tuple[str, ...]


class _Expr:
    """Recursive-descent parser over one generator string."""

    def __init__(self, text: str, line: int, col: int, ring: PolyRing):
        self.ring = ring
        self.tokens = []  # (kind, value, line, col)
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            start = m.start(m.lastindex) if m.lastindex else m.end()
            if m.group(1) is not None:
                self.tokens.append(("int", int(m.group(1)), line, col + start))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), line, col + start))
            elif m.group(3) is not None and not m.group(3).isspace():
                self.tokens.append(("op", m.group(3), line, col + start))
            pos = m.end()
        self.i = 0
        self.end = (line, col + len(text.rstrip()))

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def fail(self, msg, tok=None):
        tok = tok if tok is not None else self.peek()
        if tok is None:
            raise ParseError(msg + " (at end of expression)", *self.end)
        raise ParseError(msg, tok[2], tok[3])

    def take_op(self, ops):
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] in ops:
            self.i += 1
            return tok[1]
        return None

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.fail("empty expression")
        value = self.expr()
        if self.peek() is not None:
            tok = self.peek()
            if tok[0] in ("int", "name") or tok[1] == "(":
                self.fail("expected an operator (products need an explicit '*')")
            self.fail(f"unexpected {tok[1]!r}")
        return value

    def expr(self) -> Polynomial:
        sign = self.take_op("+-")
        value = self.term()
        if sign == "-":
            value = -value
        while True:
            op = self.take_op("+-")
            if op is None:
                return value
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs

    def term(self) -> Polynomial:
        value = self.factor()
        while self.take_op("*"):
            value = value * self.factor()
        return value

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.take_op("^"):
            tok = self.peek()
            if tok is None or tok[0] != "int":
                self.fail("expected a nonnegative integer exponent")
            self.i += 1
            base = base ** tok[1]
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok is None:
            self.fail("expected a number, variable or '('")
        kind, value = tok[0], tok[1]
        if kind == "int":
            self.i += 1
            return self.ring.constant(value)
        if kind == "name":
            if value not in self.ring.names:
                self.fail(f"unknown variable {value!r}")
            self.i += 1
            return self.ring.var(value)
        if value == "(":
            self.i += 1
            inner = self.expr()
            if not self.take_op(")"):
                self.fail("expected ')'")
            return inner
        self.fail(f"unexpected {value!r}")


def _split_generators(body: list[tuple[int, int, str]]):
    """Yield (line, col, text) for each comma/newline separated generator."""
    for line_no, col0, text in body:
        depth, start = 0, 0
        cuts = []
        for k, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth <= 0:
                cuts.append((start, k))
                start = k + 1
        cuts.append((start, len(text)))
        for a, b in cuts:
            piece = text[a:b]
            if piece.strip():
                lead = len(piece) - len(piece.lstrip())
                yield line_no, col0 + a + lead, piece.strip()


def parse_ideal_file(text: str, char_override: int | None = None) -> tuple[Ideal, IdealFile]:
    char = None
    char_line = None
    names = None
    gens_body: list[tuple[int, int, str]] | None = None
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if gens_body is not None:
            if line.strip():
                gens_body.append((line_no, 1, line))
            continue
        if not line.strip():
            continue
        header, sep, rest = line.partition(":")
        key = header.strip().lower()
        col = len(header) + 2 + (len(rest) - len(rest.lstrip()))
        if not sep:
            raise ParseError("expected a 'char:', 'vars:' or 'gens:' header", line_no, 1)
        if key == "char":
            if not rest.strip().isdigit():
                raise ParseError("characteristic must be a positive integer", line_no, col)
            char, char_line = int(rest.strip()), (line_no, col)
        elif key == "vars":
            names = tuple(n for n in re.split(r"[\s,]+", rest.strip()) if n)
            if not names:
                raise ParseError("no variables declared", line_no, col)
            for n in names:
                if not _NAME.match(n):
                    raise ParseError(f"invalid variable name {n!r}", line_no, col + rest.strip().find(n))
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", line_no, col)
        elif key == "gens":
            gens_body = []
            if rest.strip():
                gens_body.append((line_no, len(header) + 2, rest))
        else:
            raise ParseError(f"unknown header {header.strip()!r}", line_no, 1)
    if char_override is not None:
        char = char_override
        char_line = None
    if char is None:
        char = DEFAULT_MODULUS
    if not is_prime(char) or char >= 2**31:
        raise ParseError(f"characteristic {char} is not a prime below 2^31", *(char_line or (None, None)))
    if names is None:
        raise ParseError("missing 'vars:' header", 1, 1)
    if gens_body is None:
        raise ParseError("missing 'gens:' header", 1, 1)
    ring = PolyRing(names, PrimeField(char))
    gens, sources = [], []
    for line_no, col, piece in _split_generators(gens_body):
        f = _Expr(piece, line_no, col, ring).parse()
        if not f.is_homogeneous():
            raise ParseError(f"generator {piece!r} is not homogeneous", line_no, col)
        gens.append(f)
        sources.append(piece)
    return Ideal(gens, ring), IdealFile(char, names, tuple(sources))


def parse_ideal(text: str, char_override: int | None = None) -> Ideal:
    return parse_ideal_file(text, char_override)[0]


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    return _Expr(text, 1, 1, ring).parse()


def format_ideal(I: Ideal) -> str:
    lines = [f"char: {I.ring.modulus}", "vars: " + " ".join(I.ring.names), "gens:"]
    lines += [f"  {g}" for g in I.gens]
    return "\n".join(lines) + "\n"
