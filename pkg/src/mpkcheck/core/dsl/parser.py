"""
Expression language for tensor elements.

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ([" * "] factor)*
    factor := primary ("*")*            postfix "*" is the adjoint
    primary:= rational | atom | "(" expr ")" | "adj(" expr ")"
    atom   := "1" | "t@"INT | "u^"SINT"@"INT | "e("INT","INT")@"INT
            | "P("INT")@"INT | "Pp("INT")@"INT

A ``*`` written directly after its operand (``t@0*``) is the postfix
adjoint; a ``*`` preceded by whitespace is the product, and two factors
written next to each other multiply, so ``t@0*t@0`` is t*t while
``t@0 * t@0*`` is tt*. A spaced ``*`` with nothing to multiply is read as
the adjoint. ``@k`` addresses global slot k of the signature the text is
evaluated in. Parsing evaluates as it goes, so the result is already
canonical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import TensorElement, embed_generator
from mpkcheck.core.algebra.toeplitz import proj_P, proj_Pperp
from mpkcheck.utils.error import IncompatibleSlot, ParseError

_TOKEN_SPEC = [
    ("WS", r"[ \t\r]+"),
    ("NEWLINE", r"\n"),
    ("RATIONAL", r"\d+(?:\s*/\s*\d+)?"),
    ("T", r"t@(\d+)"),
    ("U", r"u\^(-?\d+)@(\d+)"),
    ("E", r"e\(\s*(\d+)\s*,\s*(\d+)\s*\)@(\d+)"),
    ("PP", r"Pp\(\s*(\d+)\s*\)@(\d+)"),
    ("P", r"P\(\s*(\d+)\s*\)@(\d+)"),
    ("ADJ", r"adj\("),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("PLUS", r"\+"),
    ("MINUS", r"-"),
    ("STAR", r"\*"),
]
_MASTER = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))
_GROUPS = {name: re.compile(pattern) for name, pattern in _TOKEN_SPEC}

FACTOR_START = {"RATIONAL", "T", "U", "E", "P", "PP", "ADJ", "LPAREN"}
DESCRIBE = {
    "RATIONAL": "rational", "T": "t@k", "U": "u^m@k", "E": "e(i,j)@k", "P": "P(k)@j",
    "PP": "Pp(k)@j", "ADJ": "adj(", "LPAREN": "(", "RPAREN": ")", "PLUS": "+",
    "MINUS": "-", "STAR": "*", "EOF": "end of input",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int
    glued: bool = False

    def groups(self) -> List[int]:
        match = _GROUPS[self.kind].fullmatch(self.text)
        return [int(g) for g in match.groups()] if match else []


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, pos, prev_end = 1, 0, 0, -1
    while pos < len(text):
        match = _MASTER.match(text, pos)
        if match is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1,
                {DESCRIBE[k] for k in FACTOR_START},
            )
        kind = match.lastgroup
        if kind == "NEWLINE":
            line, line_start = line + 1, match.end()
        elif kind != "WS":
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1, glued=pos == prev_end))
            prev_end = match.end()
        pos = match.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class Parser:
    """Recursive descent over a token list, evaluating in ``signature``."""

    def __init__(self, text: str, signature: Signature):
        self.tokens = tokenize(text)
        self.index = 0
        self.sig = signature

    # ───────── token stream ─────────
    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.peek()
        self.index += 1
        return token

    def eat(self, kind: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            self.fail(token, {kind})
        return self.advance()

    def fail(self, token: Token, expected: set) -> None:
        found = DESCRIBE.get(token.kind, token.kind) if token.kind == "EOF" else repr(token.text)
        raise ParseError(
            f"unexpected {found}", token.line, token.column, {DESCRIBE.get(k, k) for k in expected}
        )

    # ───────── grammar ─────────
    def parse(self) -> TensorElement:
        value = self.expr()
        token = self.peek()
        if token.kind != "EOF":
            self.fail(token, {"PLUS", "MINUS", "STAR", "EOF"})
        return value

    def expr(self) -> TensorElement:
        negate = False
        if self.peek().kind == "MINUS":
            self.advance()
            negate = True
        value = self.term()
        if negate:
            value = -value
        while self.peek().kind in ("PLUS", "MINUS"):
            op = self.advance()
            rhs = self.term()
            value = value + rhs if op.kind == "PLUS" else value - rhs
        return value

    def _is_product_star(self) -> bool:
        token = self.peek()
        return token.kind == "STAR" and not token.glued and self.peek(1).kind in FACTOR_START

    def term(self) -> TensorElement:
        value = self.factor()
        while True:
            if self._is_product_star():
                self.advance()
            elif self.peek().kind not in FACTOR_START:
                break
            value = value * self.factor()
        return value

    def factor(self) -> TensorElement:
        value = self.primary()
        while self.peek().kind == "STAR" and not self._is_product_star():
            self.advance()
            value = value.adjoint()
        return value

    def primary(self) -> TensorElement:
        token = self.peek()
        kind = token.kind
        if kind == "RATIONAL":
            self.advance()
            return TensorElement.scalar(self.sig, Fraction(token.text.replace(" ", "")))
        if kind == "LPAREN":
            self.advance()
            value = self.expr()
            self.eat("RPAREN")
            return value
        if kind == "ADJ":
            self.advance()
            value = self.expr()
            self.eat("RPAREN")
            return value.adjoint()
        if kind in ("T", "U", "E", "P", "PP"):
            self.advance()
            return self.atom(token)
        self.fail(token, FACTOR_START)
        raise AssertionError("unreachable")

    def atom(self, token: Token) -> TensorElement:
        values = token.groups()
        try:
            if token.kind == "T":
                return embed_generator(self.sig, "shift", values[0])
            if token.kind == "U":
                return embed_generator(self.sig, "circle", values[1], values[0])
            if token.kind == "E":
                return embed_generator(self.sig, "unit", values[2], values[0], values[1])
            k, slot = values
            if self.sig.is_circle(slot):
                raise IncompatibleSlot(
                    f"projection placed in circle slot {slot}",
                    details={"slot": slot, "signature": self.sig.label},
                )
            proj = proj_P(k) if token.kind == "P" else proj_Pperp(k)
            return TensorElement.from_toeplitz(self.sig, slot, proj)
        except IncompatibleSlot as e:
            e.details.setdefault("line", token.line)
            e.details.setdefault("column", token.column)
            raise


def parse_expr(text: str, signature: Union[Signature, str]) -> TensorElement:
    """
    Parse ``text`` into a canonical element of ``signature``.

    Raises:
        ParseError: text does not match the grammar
        IncompatibleSlot: an atom addresses a slot of the wrong kind
    """
    sig = Signature.parse(signature) if isinstance(signature, str) else signature
    return Parser(text, sig).parse()

