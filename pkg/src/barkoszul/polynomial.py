"""Sparse polynomials in S(V), the linear action of GL(V) on them, and
elements of the skew group algebra S(V)#G.

A polynomial in n variables v1..vn is a dict from exponent tuples to
nonzero exact scalars.  Which basis of V the variables stand for is up to
the caller; conversions between bases are done with :func:`act_on_polynomial`.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import _normalize
from .scalars import CycScalar, format_scalar

__all__ = [
    "Polynomial",
    "act_on_polynomial",
    "to_basis",
    "from_basis",
    "SkewElement",
    "skew_multiply",
    "right_twisted_multiply",
    "format_monomial",
]


def _add_into(terms, key, c):
    if not c:
        return
    old = terms.get(key)
    if old is None:
        terms[key] = c
    else:
        s = old + c
        if s:
            terms[key] = s
        else:
            del terms[key]


def _exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Element of S(V) = k[v1, ..., vn] as a sparse exponent -> coefficient map."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                if c:
                    clean[tuple(e)] = _normalize(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        # terms already clean
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, exp, c=1):
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def variable(cls, n, i):
        """The degree-one monomial v_{i+1} (0-based index i)."""
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): 1})

    @classmethod
    def linear_form(cls, vector):
        n = len(vector)
        terms = {}
        for i, c in enumerate(vector):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = _normalize(c)
        return cls._raw(n, terms)

    # -- inspection -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def items(self):
        """Terms in lexicographic order, v1 > v2 > ... ."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), 0)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError(f"polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            _add_into(terms, e, c)
        return Polynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(
            self.nvars, {e: v for e, x in self.terms.items() if (v := _normalize(x * c))}
        )

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction, CycScalar)):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _add_into(terms, _exp_add(e1, e2), c1 * c2)
        return Polynomial._raw(self.nvars, {e: _normalize(c) for e, c in terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, CycScalar)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    __hash__ = None

    # -- calculus ---------------------------------------------------------

    def partial(self, i):
        """Ordinary partial derivative with respect to v_{i+1}."""
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = list(e)
                e2[i] = k - 1
                _add_into(terms, tuple(e2), c * k)
        return Polynomial._raw(self.nvars, terms)

    def scale_variables(self, factors):
        """Diagonal substitution v_i -> factors[i] * v_i."""
        terms = {}
        for e, c in self.terms.items():
            x = c
            for f, k in zip(factors, e):
                if k and f != 1:
                    x = x * f**k
            if x:
                terms[e] = _normalize(x)
        return Polynomial._raw(self.nvars, terms)

    def map_coefficients(self, fn):
        return Polynomial(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    # -- rendering --------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {str(self)!r})"


def format_monomial(exp, name="v"):
    parts = []
    for i, k in enumerate(exp):
        if k == 1:
            parts.append(f"{name}{i + 1}")
        elif k:
            parts.append(f"{name}{i + 1}^{k}")
    return "*".join(parts)


def _signed_coefficient(c):
    """(sign, body) for a coefficient; body '' means magnitude one."""
    text = format_scalar(c)
    if isinstance(c, CycScalar) and not c.is_rational():
        # single-term cyclotomic coefficients print without parentheses
        inner = text[1:] if text.startswith("-") else text
        if " + " in inner or " - " in inner:
            return "+", f"({text})"
        sign = "-" if text.startswith("-") else "+"
        return sign, inner
    q = Fraction(text)
    sign = "-" if q < 0 else "+"
    mag = abs(q)
    return sign, "" if mag == 1 else str(mag)


def format_polynomial(f, name="v"):
    if not f.terms:
        return "0"
    out = []
    for e, c in f.items():
        sign, body = _signed_coefficient(c)
        mono = format_monomial(e, name)
        if mono and body:
            piece = f"{body}*{mono}"
        elif mono:
            piece = mono
        else:
            piece = body or "1"
        if not out:
            out.append(("-" if sign == "-" else "") + piece)
        else:
            out.append(f" {sign} {piece}")
    return "".join(out)


# -- the linear action ----------------------------------------------------

def act_on_polynomial(h, f):
    """Image of f under the algebra automorphism extending v_j -> sum_i h[i][j] v_i."""
    if h.n != f.nvars:
        raise ValueError(f"{h.n}x{h.n} map cannot act on polynomials in {f.nvars} variables")
    if h.is_identity():
        return f
    n = f.nvars
    images = [Polynomial.linear_form(h.column(j)) for j in range(n)]
    powers = {}

    def power(j, k):
        key = (j, k)
        if key not in powers:
            powers[key] = images[j] ** k
        return powers[key]

    out = Polynomial.zero(n)
    for e, c in f.terms.items():
        term = Polynomial.constant(n, c)
        for j, k in enumerate(e):
            if k:
                term = term * power(j, k)
        out = out + term
    return out


def to_basis(f, basis):
    """Rewrite f (in standard variables) in the coordinates of basis B.

    ``basis`` has the new basis vectors as columns.  The result's variable
    v_i stands for the i-th column of ``basis``.
    """
    if basis.is_identity():
        return f
    return act_on_polynomial(basis.inverse(), f)


def from_basis(f, basis):
    if basis.is_identity():
        return f
    return act_on_polynomial(basis, f)


# -- skew group algebra ---------------------------------------------------

class SkewElement:
    """sum_g f_g * gbar in S(V)#G; components keyed by group element index."""

    __slots__ = ("group", "components")

    def __init__(self, group, components=None):
        self.group = group
        self.components = {g: f for g, f in (components or {}).items() if f}

    @classmethod
    def zero(cls, group):
        return cls(group, {})

    @classmethod
    def single(cls, group, f, g):
        return cls(group, {g: f})

    @property
    def nvars(self):
        return self.group.dim

    def component(self, g):
        return self.components.get(g, Polynomial.zero(self.group.dim))

    def __bool__(self):
        return bool(self.components)

    def _check(self, other):
        if other.group is not self.group:
            raise ValueError("skew group elements over different groups")

    def __add__(self, other):
        self._check(other)
        comps = dict(self.components)
        for g, f in other.components.items():
            comps[g] = comps[g] + f if g in comps else f
        return SkewElement(self.group, comps)

    def __neg__(self):
        return SkewElement(self.group, {g: -f for g, f in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SkewElement(self.group, {g: f.scale(c) for g, f in self.components.items()})

    def __mul__(self, other):
        if isinstance(other, SkewElement):
            return skew_multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def left_multiply(self, f):
        """f * x for f in S(V) (untwisted)."""
        return SkewElement(self.group, {g: f * h for g, h in self.components.items()})

    def __eq__(self, other):
        if not isinstance(other, SkewElement):
            return NotImplemented
        return self.group is other.group and self.components == other.components

    __hash__ = None

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for g in sorted(self.components):
            f = self.components[g]
            label = self.group.label(g)
            text = str(f)
            if text == "1":
                parts.append(f"[{label}]")
            elif text == "-1":
                parts.append(f"-[{label}]")
            elif len(f.terms) == 1:
                parts.append(f"{text}*[{label}]")
            else:
                parts.append(f"({text})*[{label}]")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"SkewElement({str(self)!r})"


def skew_multiply(x, y):
    """(a gbar)(b hbar) = a (g.b) (gh)bar, extended bilinearly."""
    x._check(y)
    G = x.group
    comps = {}
    for g, a in x.components.items():
        mat = G.elements[g]
        for h, b in y.components.items():
            prod = a * act_on_polynomial(mat, b)
            k = G.mul(g, h)
            comps[k] = comps[k] + prod if k in comps else prod
    return SkewElement(G, comps)


def right_twisted_multiply(x, v):
    """x * (v 1bar) = sum_g f_g (g.v) gbar."""
    G = x.group
    return SkewElement(
        G, {g: f * act_on_polynomial(G.elements[g], v) for g, f in x.components.items()}
    )
