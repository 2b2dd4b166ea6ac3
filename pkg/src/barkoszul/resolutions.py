"""Bar and Koszul resolutions of S(V) and the inclusion Phi between them.

A bar chain of degree p is a linear combination of tensors
a_0 (x) a_1 (x) ... (x) a_{p+1} of monomials; a Koszul chain of degree p is a
linear combination of x (x) y (x) v_{i1} ^ ... ^ v_{ip} with x, y monomials
and i1 < ... < ip (stored 0-based).
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from .linalg import _normalize, perm_sign
from .polynomial import Polynomial, _add_into, _exp_add, act_on_polynomial, format_monomial
from .scalars import format_scalar

__all__ = [
    "BarChain",
    "KoszulChain",
    "bar_differential",
    "multiplication",
    "koszul_differential",
    "phi",
    "bar_tensor",
    "koszul_tensor",
    "koszul_basis",
    "act_on_bar_chain",
    "act_on_koszul_chain",
    "bar_to_basis",
    "koszul_from_basis",
    "koszul_to_basis",
    "DEFAULT_DEGREE_CAP",
]

DEFAULT_DEGREE_CAP = 6


class _Chain:
    __slots__ = ("degree", "nvars", "terms")

    def __init__(self, degree, nvars, terms=None):
        self.degree = degree
        self.nvars = nvars
        clean = {}
        for k, c in (terms or {}).items():
            _add_into(clean, k, c)
        self.terms = clean

    @classmethod
    def _raw(cls, degree, nvars, terms):
        obj = cls.__new__(cls)
        obj.degree, obj.nvars, obj.terms = degree, nvars, terms
        return obj

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if type(other) is not type(self) or other.degree != self.degree or other.nvars != self.nvars:
            raise ValueError("incompatible chains")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(terms, k, c)
        return self._raw(self.degree, self.nvars, terms)

    def __neg__(self):
        return self._raw(self.degree, self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return self._raw(self.degree, self.nvars, {})
        return self._raw(self.degree, self.nvars, {k: _normalize(x * c) for k, x in self.terms.items()})

    __rmul__ = scale

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.degree, self.nvars) == (other.degree, other.nvars) and self.terms == other.terms

    __hash__ = None

    def items(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for key, c in self.items():
            body = self._render_key(key)
            text = format_scalar(c)
            if text == "1":
                piece, sign = body, "+"
            elif text == "-1":
                piece, sign = body, "-"
            elif text.startswith("-") and " " not in text:
                piece, sign = f"{text[1:]}*{body}", "-"
            elif " " in text:
                piece, sign = f"({text})*{body}", "+"
            else:
                piece, sign = f"{text}*{body}", "+"
            if not out:
                out.append(("-" if sign == "-" else "") + piece)
            else:
                out.append(f" {sign} {piece}")
        return "".join(out)

    def __repr__(self):
        return f"{type(self).__name__}({self.degree}, {str(self)!r})"


def _mono(e):
    return format_monomial(e) or "1"


class BarChain(_Chain):
    """Element of S(V)^{(x)(p+2)}; keys are (p+2)-tuples of exponent tuples."""

    __slots__ = ()

    def __init__(self, degree, nvars, terms=None):
        for k in terms or {}:
            if len(k) != degree + 2:
                raise ValueError(f"bar chain of degree {degree} needs {degree + 2} tensor factors")
        super().__init__(degree, nvars, terms)

    def _render_key(self, key):
        return "(" + " | ".join(_mono(e) for e in key) + ")"


class KoszulChain(_Chain):
    """Element of S(V)^e (x) Lambda^p V; keys are (left, right, wedge)."""

    __slots__ = ()

    def __init__(self, degree, nvars, terms=None):
        for (_, _, w) in terms or {}:
            if len(w) != degree or any(a >= b for a, b in zip(w, w[1:])):
                raise ValueError(f"wedge {w} is not strictly increasing of length {degree}")
        super().__init__(degree, nvars, terms)

    def _render_key(self, key):
        left, right, w = key
        wedge = ",".join(f"v{i + 1}" for i in w)
        return f"({_mono(left)} | {_mono(right)} | wedge({wedge}))"


def bar_tensor(polys, coeff=1):
    """a_0 (x) ... (x) a_{p+1} for polynomials a_i, expanded into monomials."""
    polys = list(polys)
    if len(polys) < 2:
        raise ValueError("a bar tensor needs at least two factors")
    n = polys[0].nvars
    terms = {}
    for combo in product(*(p.terms.items() for p in polys)):
        c = coeff
        for _, x in combo:
            c = c * x
        _add_into(terms, tuple(e for e, _ in combo), c)
    return BarChain._raw(len(polys) - 2, n, terms)


def koszul_tensor(left, right, wedge, coeff=1):
    """left (x) right (x) v_w1 ^ ... with arbitrary index order (sign-sorted)."""
    n = left.nvars
    wedge = list(wedge)
    if len(set(wedge)) < len(wedge):
        return KoszulChain._raw(len(wedge), n, {})
    sign = perm_sign(wedge)
    w = tuple(sorted(wedge))
    terms = {}
    for (a, x), (b, y) in product(left.terms.items(), right.terms.items()):
        _add_into(terms, (a, b, w), sign * coeff * x * y)
    return KoszulChain._raw(len(w), n, terms)


def koszul_basis(n, p):
    """The chains 1 (x) 1 (x) v_I over increasing I of length p."""
    zero = (0,) * n
    return [KoszulChain._raw(p, n, {(zero, zero, I): 1}) for I in combinations(range(n), p)]


def _unit(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


def bar_differential(c):
    """delta_p(a_0 (x) ... (x) a_{p+1}) = sum_j (-1)^j ... (x) a_j a_{j+1} (x) ..."""
    p = c.degree
    if p < 1:
        raise ValueError("bar differential is defined from degree 1 on (delta_0 is multiplication)")
    terms = {}
    for key, coeff in c.terms.items():
        for j in range(p + 1):
            new = key[:j] + (_exp_add(key[j], key[j + 1]),) + key[j + 2:]
            _add_into(terms, new, coeff if j % 2 == 0 else -coeff)
    return BarChain._raw(p - 1, c.nvars, terms)


def multiplication(c):
    """delta_0 = m : S(V)^e -> S(V)."""
    if c.degree != 0:
        raise ValueError("multiplication map needs a degree-0 bar chain")
    terms = {}
    for (a, b), x in c.terms.items():
        _add_into(terms, _exp_add(a, b), x)
    return Polynomial._raw(c.nvars, terms)


def koszul_differential(c):
    """d_p(x (x) y (x) v_J) = sum_i (-1)^(i+1) (x v_ji (x) y - x (x) v_ji y) (x) v_{J minus ji}."""
    p = c.degree
    if p < 1:
        raise ValueError("Koszul differential is defined from degree 1 on")
    n = c.nvars
    terms = {}
    for (left, right, w), coeff in c.terms.items():
        for i, j in enumerate(w):
            sign = coeff if i % 2 == 0 else -coeff
            rest = w[:i] + w[i + 1:]
            u = _unit(n, j)
            _add_into(terms, (_exp_add(left, u), right, rest), sign)
            _add_into(terms, (left, _exp_add(right, u), rest), -sign)
    return KoszulChain._raw(p - 1, n, terms)


def phi(c):
    """Inclusion Phi_p(x (x) y (x) v_J) = sum_pi sgn(pi) x (x) v_{J pi(1)} (x) ... (x) y."""
    p = c.degree
    n = c.nvars
    terms = {}
    for (left, right, w), coeff in c.terms.items():
        for perm in permutations(range(p)):
            s = perm_sign(perm)
            key = (left,) + tuple(_unit(n, w[k]) for k in perm) + (right,)
            _add_into(terms, key, coeff if s > 0 else -coeff)
    return BarChain._raw(p, n, terms)


# -- linear maps acting on chains ------------------------------------------

def _poly_images(h, keys_exps):
    cache = {}
    for e in keys_exps:
        if e not in cache:
            cache[e] = act_on_polynomial(h, Polynomial._raw(h.n, {e: 1}))
    return cache


def act_on_bar_chain(h, c):
    """Diagonal action h.(a_0 (x) ... ) = h.a_0 (x) ... (x) h.a_{p+1}."""
    if h.is_identity():
        return c
    images = _poly_images(h, {e for key in c.terms for e in key})
    out = BarChain._raw(c.degree, c.nvars, {})
    for key, coeff in c.terms.items():
        out = out + bar_tensor([images[e] for e in key], coeff)
    return out


def act_on_koszul_chain(h, c):
    """h.(x (x) y (x) v_J) = h.x (x) h.y (x) h.v_J, using minors for Lambda^p h."""
    if h.is_identity():
        return c
    images = _poly_images(h, {e for (a, b, _) in c.terms for e in (a, b)})
    p = c.degree
    subsets = list(combinations(range(c.nvars), p))
    minors = {}
    out = KoszulChain._raw(p, c.nvars, {})
    for (a, b, w), coeff in c.terms.items():
        for K in subsets:
            key = (K, w)
            if key not in minors:
                minors[key] = h.minor(K, w)
            m = minors[key]
            if m:
                out = out + koszul_tensor(images[a], images[b], K, coeff * m)
    return out


def bar_to_basis(c, basis):
    """Rewrite a standard-coordinate bar chain in the coordinates of ``basis``."""
    if basis.is_identity():
        return c
    return act_on_bar_chain(basis.inverse(), c)


def koszul_from_basis(c, basis):
    """Rewrite a Koszul chain given in ``basis`` coordinates in standard coordinates."""
    if basis.is_identity():
        return c
    return act_on_koszul_chain(basis, c)


def koszul_to_basis(c, basis):
    if basis.is_identity():
        return c
    return act_on_koszul_chain(basis.inverse(), c)
