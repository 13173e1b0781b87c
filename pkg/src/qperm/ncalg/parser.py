"""Text form of :class:`NCPolynomial`.

Grammar (whitespace ignored)::

    expr      := ["+"|"-"] term (("+"|"-") term)*
    term      := factorseq ("#" factorseq)*
    factorseq := factor ("*" factor)*
    factor    := "a(" int "," int ")" ["'"] | number | "1"
    number    := decimal or "p/q", optionally suffixed with "i"; a bare "i"

Numbers inside any leg multiply the term's coefficient, so ``2*a(1,1)``,
``a(1,1)*2`` and ``2 # a(1,1)`` are all valid. A term consisting of a single
number is a scalar multiple of the unit on every leg.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from qperm.errors import StructuralError
from qperm.ncalg.coeff import QQi
from qperm.ncalg.poly import NCPolynomial

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<gen>a\s*\(\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\))
  | (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?i?|i(?![\w(]))
  | (?P<op>[-+*#'])
""", re.VERBOSE)


class ParseError(ValueError):
    def __init__(self, message: str, src: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.message = message
        self.src = src
        self.pos = pos

    def caret(self) -> str:
        return f"{self.src}\n{' ' * self.pos}^ {self.message}"


def _tokenize(src: str) -> list[tuple[str, object, int]]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            if src[pos] == "a":
                raise ParseError("malformed generator, expected a(i,j)", src, pos)
            raise ParseError(f"unexpected character {src[pos]!r}", src, pos)
        if m.group("gen"):
            out.append(("gen", (int(m.group("i")), int(m.group("j"))), pos))
        elif m.group("num"):
            out.append(("num", m.group("num"), pos))
        elif m.group("op"):
            out.append((m.group("op"), None, pos))
        pos = m.end()
    out.append(("end", None, len(src)))
    return out


def _number(text: str, src: str, pos: int) -> QQi:
    imag = text.endswith("i")
    body = text[:-1] if imag else text
    if body == "":
        value = Fraction(1)
    else:
        try:
            if "/" in body:
                num, den = body.split("/")
                value = Fraction(num) / Fraction(den)
            else:
                value = Fraction(body)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad number {text!r}", src, pos) from None
    return QQi(0, value) if imag else QQi(value)


class _Parser:
    def __init__(self, src: str, n: int):
        self.src = src
        self.n = n
        self.toks = _tokenize(src)
        self.k = 0

    def peek(self) -> str:
        return self.toks[self.k][0]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.src, self.toks[self.k][2])

    def expr(self) -> list[tuple[Optional[tuple], QQi]]:
        terms = []
        sign = QQi(1)
        if self.peek() in "+-":
            sign = QQi(-1) if self.take()[0] == "-" else QQi(1)
        while True:
            word, c = self.term()
            terms.append((word, sign * c))
            if self.peek() in ("+", "-"):
                sign = QQi(-1) if self.take()[0] == "-" else QQi(1)
                continue
            if self.peek() != "end":
                raise self.error("expected '+', '-' or end of input")
            return terms

    def term(self):
        coeff = QQi(1)
        legs = []
        only_scalar = True
        while True:
            leg, c, scalar = self.factorseq()
            coeff = coeff * c
            legs.append(leg)
            only_scalar = only_scalar and scalar
            if self.peek() == "#":
                self.take()
                continue
            break
        if only_scalar and len(legs) == 1:
            return None, coeff
        return tuple(legs), coeff

    def factorseq(self):
        gens = []
        coeff = QQi(1)
        scalar = True
        while True:
            kind, val, pos = self.take()
            if kind == "gen":
                i, j = val
                if not (1 <= i <= self.n and 1 <= j <= self.n):
                    raise ParseError(f"index a({i},{j}) outside 1..{self.n}", self.src, pos)
                gens.append((i, j))
                scalar = False
                if self.peek() == "'":
                    self.take()  # generators are self-adjoint
            elif kind == "num":
                coeff = coeff * _number(val, self.src, pos)
            else:
                self.k -= 1
                raise self.error("expected a(i,j) or a number")
            if self.peek() == "*":
                self.take()
                continue
            return tuple(gens), coeff, scalar


def parse_expression(src: str, n: int, legs: Optional[int] = None) -> NCPolynomial:
    """Parse ``src`` into a polynomial in the generators of ``A_n``.

    ``legs`` fixes the number of tensor legs; by default it is taken from
    the terms (1 when every term is a scalar).
    """
    if n < 1:
        raise StructuralError("n must be positive")
    terms = _Parser(src, n).expr()
    counts = {len(w) for w, _ in terms if w is not None}
    if legs is None:
        if len(counts) > 1:
            raise ParseError(f"terms have differing leg counts {sorted(counts)}", src, 0)
        legs = counts.pop() if counts else 1
    elif counts - {legs}:
        raise ParseError(f"expected {legs} legs, found {sorted(counts)}", src, 0)
    return NCPolynomial(n, legs, [
        (((),) * legs if w is None else w, c) for w, c in terms])


def _format_leg(leg) -> str:
    return "*".join(f"a({i},{j})" for i, j in leg) if leg else "1"


def _format_real(x: Fraction, word: str, imag: bool, first: bool) -> str:
    sign = "-" if x < 0 else "+"
    mag = abs(x)
    suffix = "i" if imag else ""
    if mag == 1 and not imag:
        body = word
    elif word == "1" and not imag:
        body = f"{mag}"
    else:
        body = f"{mag}{suffix}*{word}"
    if first:
        return f"-{body}" if sign == "-" else body
    return f" {sign} {body}"


def format_polynomial(p: NCPolynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for word, c in p.items():
        w = " # ".join(_format_leg(leg) for leg in word)
        if c.re:
            parts.append(_format_real(c.re, w, False, not parts))
        if c.im:
            parts.append(_format_real(c.im, w, True, not parts))
    return "".join(parts)
