"""
Expression grammar - Recursive descent parser shared by polynomials and operators

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (('*'|'/') power)*
    power  := atom ['^' ['-'] integer]
    atom   := integer | name | '(' expr ')'

The parser is generic over the value algebra; polyalg plugs in rational
functions, ore plugs in operators.
"""
import re
from dataclasses import dataclass
from typing import Any, Callable, List

from app.core.errors import ParseError

TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # int | name | op | end
    text: str
    pos: int


@dataclass
class Algebra:
    """Callbacks turning parsed pieces into values"""
    const: Callable[[int], Any]
    name: Callable[[str, int], Any]
    add: Callable[[Any, Any], Any]
    sub: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    mul: Callable[[Any, Any], Any]
    div: Callable[[Any, Any, int], Any]
    pow: Callable[[Any, int, int], Any]


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(Token("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class Parser:
    def __init__(self, text: str, algebra: Algebra):
        self.text = text
        self.algebra = algebra
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.tok.pos, self.text)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def parse(self):
        if self.tok.kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return value

    def expr(self):
        alg = self.algebra
        if self.accept("-"):
            value = alg.neg(self.term())
        else:
            self.accept("+")
            value = self.term()
        while True:
            if self.accept("+"):
                value = alg.add(value, self.term())
            elif self.accept("-"):
                value = alg.sub(value, self.term())
            else:
                return value

    def term(self):
        value = self.power()
        while True:
            if self.accept("*"):
                value = self.algebra.mul(value, self.power())
            elif self.tok.kind == "op" and self.tok.text == "/":
                pos = self.tok.pos
                self.i += 1
                value = self.algebra.div(value, self.power(), pos)
            else:
                return value

    def power(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            pos = self.tok.pos
            self.i += 1
            sign = -1 if self.accept("-") else 1
            if self.tok.kind != "int":
                raise self.error("expected integer exponent")
            exponent = sign * int(self.tok.text)
            self.i += 1
            return self.algebra.pow(base, exponent, pos)
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return self.algebra.const(int(tok.text))
        if tok.kind == "name":
            self.i += 1
            return self.algebra.name(tok.text, tok.pos)
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return value
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")


def parse_with(text: str, algebra: Algebra):
    return Parser(text, algebra).parse()
