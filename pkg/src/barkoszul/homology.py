"""Chain-level maps on Hochschild homology induced by Psi_B.

A homology chain f_0 gbar (x) f_1 (x) ... (x) f_p lives in S(V)gbar (x) S(V)^{(x)p};
its image is a differential form chain in S(V)gbar (x) Lambda^p V.  Both are
written in the coordinates of a basis of V: the given ``basis`` for the
untwisted maps, and the eigenbasis B_g of each component for the twisted ones.

Two code paths are kept:

* closed formulas (ordinary partials for g = 1, twisted quantum partials
  otherwise), and
* :func:`tensor_functor_image`, which applies M (x)_{S(V)^e} (-) with
  M = S(V)gbar to the Koszul chain Psi(1 (x) f_1 (x) ... (x) f_p (x) 1).

The bimodule S(V)gbar has x.(f gbar).y = x f (g.y) gbar.  With the pairing
x (x) y (x) w -> x f_0 (g.y) gbar (x) w the functor image equals

    sum_{i_1 < ... < i_p} f_0 prod_k s_1 ... s_{i_k - 1}(d_{i_k} f_k) gbar (x) v_{i_1} ^ ... ^ v_{i_p}

i.e. the same twist as the cochain converter.  The pairing with the factors
swapped, y f_0 (g.x), gives the twist s_{i_k + 1} ... s_n on
the plain (unscaled) quantum partials; :func:`psi_star_twisted` accepts
``side="swapped"`` for that convention.
"""

from __future__ import annotations

from .linalg import _normalize
from .polynomial import Polynomial, _add_into, _exp_add, act_on_polynomial, format_monomial
from .psi import PsiContext, psi
from .resolutions import bar_tensor
from .cochains import quantum_partial, twist_prefix
from .scalars import format_scalar
from itertools import combinations

__all__ = [
    "HochschildHomologyChain",
    "DifferentialFormChain",
    "homology_chain",
    "psi_star_untwisted",
    "psi_star_twisted",
    "tensor_functor_image",
]


class _Tagged:
    __slots__ = ("degree", "nvars", "terms")

    def __init__(self, degree, nvars, terms=None):
        self.degree, self.nvars = degree, nvars
        clean = {}
        for k, c in (terms or {}).items():
            self._validate(k)
            _add_into(clean, k, c)
        self.terms = clean

    @classmethod
    def _raw(cls, degree, nvars, terms):
        obj = cls.__new__(cls)
        obj.degree, obj.nvars, obj.terms = degree, nvars, terms
        return obj

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if type(other) is not type(self) or (other.degree, other.nvars) != (self.degree, self.nvars):
            raise ValueError("incompatible chains")
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

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.degree, self.nvars, self.terms) == (other.degree, other.nvars, other.terms)

    __hash__ = None

    def restrict(self, g):
        return self._raw(self.degree, self.nvars, {k: c for k, c in self.terms.items() if k[0] == g})

    def components(self):
        return sorted({k[0] for k in self.terms})

    def render(self, G=None):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items(), key=lambda t: (t[0][0], t[0][1:]), reverse=False):
            g = key[0]
            label = G.label(g) if G is not None else f"g{g}"
            text = format_scalar(c)
            coeff = "" if text == "1" else "-" if text == "-1" else f"({text})*" if " " in text else f"{text}*"
            parts.append(f"{coeff}[{label}] {self._body(key)}")
        out = parts[0]
        for piece in parts[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"{type(self).__name__}({self.degree}, {self.render()!r})"


def _m(e):
    return format_monomial(e) or "1"


class HochschildHomologyChain(_Tagged):
    """Keys (g, exponent of f_0, (exponents of f_1, ..., f_p))."""

    __slots__ = ()

    def _validate(self, key):
        g, e0, tail = key
        if len(tail) != self.degree or any(len(e) != self.nvars for e in (e0,) + tuple(tail)):
            raise ValueError("malformed homology chain key")

    def _body(self, key):
        _, e0, tail = key
        return " | ".join(_m(e) for e in (e0,) + tuple(tail))


class DifferentialFormChain(_Tagged):
    """Keys (g, exponent, increasing wedge tuple in V)."""

    __slots__ = ()

    def _validate(self, key):
        g, e, w = key
        if len(w) != self.degree or any(a >= b for a, b in zip(w, w[1:])):
            raise ValueError(f"wedge {w} is not strictly increasing of length {self.degree}")

    def _body(self, key):
        _, e, w = key
        wedge = "".join(f" ^ v{i + 1}" for i in w)
        return f"({_m(e)}){wedge}"


def homology_chain(g, polys, coeff=1):
    """f_0 gbar (x) f_1 (x) ... (x) f_p, expanded multilinearly."""
    polys = list(polys)
    n = polys[0].nvars
    p = len(polys) - 1
    terms = {}
    stack = [((), coeff)]
    for f in polys:
        stack = [(keys + (e,), c * x) for keys, c in stack for e, x in f.terms.items()]
    for keys, c in stack:
        _add_into(terms, (g, keys[0], tuple(keys[1:])), c)
    return HochschildHomologyChain._raw(p, n, terms)


def _add_poly(terms, g, f, w, c=1):
    for e, x in f.terms.items():
        _add_into(terms, (g, e, w), _normalize(x * c))


def psi_star_untwisted(c, basis=None):
    """sum_{i_1<...<i_p} f_0 (df_1/dv_{i_1}) ... (df_p/dv_{i_p}) (x) v_{i_1} ^ ... ^ v_{i_p}.

    The chain is read in the coordinates of ``basis`` (ignored beyond that: the
    formula only sees coordinates).  Only the identity component is allowed.
    """
    n, p = c.nvars, c.degree
    terms = {}
    for (g, e0, tail), x in c.terms.items():
        if g != 0:
            raise ValueError("psi_star_untwisted takes chains in the identity component")
        monos = [Polynomial._raw(n, {e: 1}) for e in tail]
        for idx in combinations(range(n), p):
            value = Polynomial._raw(n, {e0: x})
            for f, i in zip(monos, idx):
                value = value * f.partial(i)
                if not value:
                    break
            _add_poly(terms, 0, value, idx)
    return DifferentialFormChain._raw(p, n, terms)


def _eigen(G, g, bases):
    if bases and g in bases:
        return bases[g]
    return G.eigen(g)


def psi_star_twisted(c, G, bases=None, side="left"):
    """Closed formula with twisted quantum partials, per component in its eigenbasis.

    side="left": factor k carries s_1 ... s_{i_k - 1}.
    side="swapped": factor k carries s_{i_k + 1} ... s_n (the other bimodule pairing).
    """
    if side not in ("left", "swapped"):
        raise ValueError(f"unknown side {side!r}")
    n, p = c.nvars, c.degree
    terms = {}
    for (g, e0, tail), x in c.terms.items():
        eps = _eigen(G, g, bases).eigenvalues
        monos = [Polynomial._raw(n, {e: 1}) for e in tail]
        for idx in combinations(range(n), p):
            value = Polynomial._raw(n, {e0: x})
            for f, i in zip(monos, idx):
                d = quantum_partial(f, i, eps[i])
                if side == "left":
                    d = twist_prefix(d, eps, i)
                else:
                    d = d.scale_variables([eps[j] if j > i else 1 for j in range(n)])
                value = value * d
                if not value:
                    break
            _add_poly(terms, g, value, idx)
    return DifferentialFormChain._raw(p, n, terms)


def tensor_functor_image(c, G, bases=None, side="left"):
    """Apply S(V)gbar (x)_{S(V)^e} (-) to Psi(1 (x) f_1 (x) ... (x) f_p (x) 1).

    x (x) y (x) w with f_0 gbar pairs to x f_0 (g.y) gbar (x) w (side="left")
    or y f_0 (g.x) gbar (x) w (side="swapped").  The action of g is the
    standard matrix conjugated into B_g coordinates, not the eigenvalues.
    """
    if side not in ("left", "swapped"):
        raise ValueError(f"unknown side {side!r}")
    n, p = c.nvars, c.degree
    one = Polynomial.constant(n, 1)
    terms = {}
    gact = {}
    for (g, e0, tail), x in c.terms.items():
        eig = _eigen(G, g, bases)
        if g not in gact:
            # matrix of g in B_g coordinates: B^-1 g B
            gact[g] = eig.basis.inverse() @ G.elements[g] @ eig.basis
        local_g = gact[g]
        chain = psi(PsiContext(eig.basis, max(p, 1)), bar_tensor([one] + [Polynomial._raw(n, {e: 1}) for e in tail] + [one]))
        for (left, right, w), y in chain.terms.items():
            fixed, moved = (left, right) if side == "left" else (right, left)
            value = act_on_polynomial(local_g, Polynomial._raw(n, {moved: 1}))
            for e, z in value.terms.items():
                _add_into(terms, (g, _exp_add(_exp_add(fixed, e0), e), w), _normalize(x * y * z))
    return DifferentialFormChain._raw(p, n, terms)
