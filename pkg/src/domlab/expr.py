"""Parser for group expressions.

    expr := sum | free | "1"
    sum  := term ("+" term)*
    term := "Z" ("_" INT)? ("^" INT)?
    free := "F" "_" INT

``Z`` is the infinite cyclic group and ``Z_m`` the cyclic group of order
``m >= 2``.  ``Z_0`` and ``Z_1`` are refused because different authors
read them as ``Z`` or as the trivial group; write ``Z`` or ``1`` instead.
Whitespace is ignored everywhere.
"""

from __future__ import annotations

import re
from typing import Union

from .abelian import MAX_MODULUS, AbelianGroup, canonicalize
from .errors import ExpressionSyntaxError, InputError
from .free import MAX_RANK, FreeGroup

Group = Union[AbelianGroup, FreeGroup]

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append((m.group(2), m.group(2), m.start(2)))
        pos = m.end()
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][2]

    def expect(self, kind: str) -> str:
        tok = self.tokens[self.i]
        if tok[0] != kind:
            found = "end of input" if tok[0] == "END" else repr(tok[1])
            want = "an integer" if kind == "INT" else repr(kind)
            raise ExpressionSyntaxError(f"expected {want}, found {found}", tok[2])
        self.i += 1
        return tok[1]

    def parse(self) -> Group:
        kind = self.peek()
        if kind == "F":
            group = self.free()
        elif kind == "INT" and self.tokens[self.i][1] == "1":
            self.i += 1
            group = AbelianGroup.trivial()
        elif kind == "Z":
            group = self.sum()
        else:
            raise ExpressionSyntaxError("expected 'Z', 'F' or '1'", self.pos())
        if self.peek() != "END":
            if self.peek() == "+" and isinstance(group, FreeGroup):
                raise ExpressionSyntaxError("free groups cannot appear in sums", self.pos())
            raise ExpressionSyntaxError(f"unexpected {self.tokens[self.i][1]!r}", self.pos())
        return group

    def free(self) -> FreeGroup:
        self.expect("F")
        self.expect("_")
        at = self.pos()
        rank = int(self.expect("INT"))
        if rank > MAX_RANK:
            raise InputError(f"free rank {rank} at position {at} exceeds {MAX_RANK}")
        return FreeGroup(rank)

    def sum(self) -> AbelianGroup:
        raw = [self.term()]
        while self.peek() == "+":
            self.i += 1
            if self.peek() == "F":
                raise ExpressionSyntaxError("free groups cannot appear in sums", self.pos())
            raw.append(self.term())
        return canonicalize(raw)

    def term(self) -> tuple[int, int]:
        self.expect("Z")
        modulus = 0
        if self.peek() == "_":
            self.i += 1
            at = self.pos()
            modulus = int(self.expect("INT"))
            if modulus in (0, 1):
                raise InputError(
                    f"Z_{modulus} at position {at} is ambiguous: "
                    "write 'Z' for the infinite cyclic group or '1' for the trivial group"
                )
            if modulus > MAX_MODULUS:
                raise InputError(f"modulus at position {at} exceeds 2^63 - 1")
        mult = 1
        if self.peek() == "^":
            self.i += 1
            at = self.pos()
            mult = int(self.expect("INT"))
            if mult == 0:
                raise InputError(f"multiplicity at position {at} must be >= 1")
        return modulus, mult


def parse_expression(text: str) -> Group:
    return _Parser(text).parse()


def render(group: Group) -> str:
    return group.render()
