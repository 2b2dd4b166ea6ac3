"""The text grammar shared by every command and file format.

Scalars and polynomials
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'z' | 'v' INT | '(' expr ')'

    ``z`` is the primitive root of unity zeta_m of the session field and
    ``vK`` the K-th variable (1-based).  Division is only by nonzero
    constants.  Example: ``3*v1^2*v2 - z*v3``, ``1/2*z^2 - 1``.

Bar chains (one elementary tensor; factors expand multilinearly)
    ``a0 | a1 | ... | a_{p+1}``  e.g. ``1|v1*v2|v2^3|1``

Koszul chains (one elementary tensor)
    ``left | right | wedge(v1,v3)``; ``wedge()`` is the empty wedge.

Tagged forms (cochains), summands joined by ``+``
    ``[label] (expr) ^ dv1 ^ dv3``.  The coefficient may be omitted
    (meaning 1) or be a bare symbol name such as ``f``, which is carried
    through symbolically (every map here is linear in the coefficient).
    Labels are ``1`` (identity), ``gK`` (element index K) or a group's
    named elements.

Homology chains
    ``[label] f0 | f1 | ... | fp``

Argument lists
    comma-separated polynomials: ``v1,v2``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .polynomial import Polynomial
from .scalars import zeta_power

__all__ = [
    "ParseError",
    "parse_polynomial",
    "parse_scalar",
    "parse_args",
    "split_top",
    "parse_form_summands",
    "parse_koszul_tensor",
    "SYMBOL_RE",
    "parse_homology_chain",
]

SYMBOL_RE = re.compile(r"^(?!v\d+$)(?!z$)[A-Za-z_][A-Za-z_0-9]*$")


class ParseError(ValueError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.col = line, col
        super().__init__(f"{message} at line {line}, column {col}")


_TOKEN = re.compile(r"\s*(?:(\d+)|(v\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text, offset=0):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex) + offset
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("var", int(m.group(2)[1:]), start))
        elif m.group(3):
            tokens.append(("name", m.group(3), start))
        else:
            tokens.append(("op", m.group(4), start))
        pos = m.end()
    tokens.append(("end", None, len(text) + offset))
    return tokens


class _Parser:
    def __init__(self, text, nvars, order, source=None, offset=0):
        self.text = text
        self.source = source if source is not None else text
        self.tokens = _tokenize(text, offset)
        self.i = 0
        self.n = nvars
        self.order = order

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.source, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op, tok = self.take()[1], self.peek()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    self.error("division by a non-constant or zero", tok)
                c = rhs.constant_term()
                value = value.scale(1 / c if not isinstance(c, int) else Fraction(1, c))
        return value

    def unary(self):
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+", self.peek()[2]):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.error("expected a non-negative integer exponent", tok)
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return Polynomial.constant(self.n, val)
        if kind == "var":
            if not 1 <= val <= self.n:
                self.error(f"variable v{val} out of range 1..{self.n}", tok)
            return Polynomial.variable(self.n, val - 1)
        if kind == "name":
            if val == "z":
                if self.order is None:
                    self.error("'z' used but no cyclotomic order is set", tok)
                return Polynomial.constant(self.n, zeta_power(self.order, 1))
            self.error(f"unknown name {val!r}", tok)
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.take()[1] != ")":
                self.error("expected ')'", self.tokens[self.i - 1])
            return inner
        self.error("unexpected end of input" if kind == "end" else f"unexpected {val!r}", tok)


def parse_polynomial(text, nvars, order=None, *, source=None, offset=0):
    """Parse a polynomial in v1..v_nvars with coefficients in Q(zeta_order)."""
    return _Parser(text, nvars, order, source, offset).parse()


def parse_scalar(text, order=None):
    p = parse_polynomial(text, 0, order)
    return p.constant_term()


def split_top(text, sep):
    """Split on ``sep`` outside parentheses; yields (piece, offset)."""
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def parse_args(text, nvars, order=None):
    if not text.strip():
        return []
    return [parse_polynomial(piece, nvars, order, source=text, offset=off)
            for piece, off in split_top(text, ",")]


_FORM_HEAD = re.compile(r"\s*\[\s*([^\]\s]+)\s*\]\s*")
_DV = re.compile(r"\s*\^\s*dv(\d+)\s*")


def parse_form_summands(text, nvars, order=None):
    """Yield (label, coefficient polynomial, symbol or None, wedge indices 0-based).

    Label resolution is left to the caller (it needs the group).
    """
    results = []
    for piece, off in split_top(text, "+"):
        if not piece.strip():
            raise ParseError("empty summand", text, off)
        m = _FORM_HEAD.match(piece)
        if not m:
            raise ParseError("expected '[label]'", text, off + len(piece) - len(piece.lstrip()))
        label = m.group(1)
        pos = m.end()
        coeff = Polynomial.constant(nvars, 1)
        symbol = None
        if pos < len(piece) and piece[pos] == "(":
            depth = 0
            for k in range(pos, len(piece)):
                if piece[k] == "(":
                    depth += 1
                elif piece[k] == ")":
                    depth -= 1
                    if depth == 0:
                        break
            else:
                raise ParseError("unbalanced '('", text, off + pos)
            inner = piece[pos + 1:k]
            if SYMBOL_RE.match(inner.strip()):
                symbol = inner.strip()
            else:
                coeff = parse_polynomial(inner, nvars, order, source=text, offset=off + pos + 1)
            pos = k + 1
        wedge = []
        while pos < len(piece):
            m = _DV.match(piece, pos)
            if not m:
                if piece[pos:].strip() == "":
                    break
                raise ParseError("expected '^ dvK'", text, off + pos)
            k = int(m.group(1))
            if not 1 <= k <= nvars:
                raise ParseError(f"dv{k} out of range 1..{nvars}", text, off + pos)
            wedge.append(k - 1)
            pos = m.end()
        results.append((label, coeff, symbol, wedge))
    return results


_WEDGE = re.compile(r"^\s*wedge\s*\((.*)\)\s*$")


def parse_koszul_tensor(text, nvars, order=None):
    """``left | right | wedge(v1,...)`` -> (left poly, right poly, wedge indices 0-based)."""
    pieces = split_top(text, "|")
    if len(pieces) != 3:
        raise ParseError("a Koszul tensor has the form 'left | right | wedge(...)'", text, 0)
    left = parse_polynomial(pieces[0][0], nvars, order, source=text, offset=pieces[0][1])
    right = parse_polynomial(pieces[1][0], nvars, order, source=text, offset=pieces[1][1])
    m = _WEDGE.match(pieces[2][0])
    if not m:
        raise ParseError("expected wedge(...)", text, pieces[2][1])
    inner = m.group(1).strip()
    wedge = []
    if inner:
        for name in inner.split(","):
            name = name.strip()
            if not re.fullmatch(r"v\d+", name) or not 1 <= int(name[1:]) <= nvars:
                raise ParseError(f"bad wedge factor {name!r}", text, pieces[2][1])
            wedge.append(int(name[1:]) - 1)
    return left, right, wedge


_CHAIN_HEAD = re.compile(r"^\s*\[\s*([^\]\s]+)\s*\]")


def parse_homology_chain(text, nvars, order=None):
    """``[label] f0 | f1 | ... | fp`` -> (label, [f0, ..., fp]); label defaults to 1."""
    m = _CHAIN_HEAD.match(text)
    label, start = ("1", 0) if m is None else (m.group(1), m.end())
    polys = []
    for piece, off in split_top(text[start:], "|"):
        polys.append(parse_polynomial(piece, nvars, order, source=text, offset=start + off))
    return label, polys
