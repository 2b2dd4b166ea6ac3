"""Cochains with coefficients in S(V)#G.

Koszul-side cochains are tagged forms: sums of f * gbar (x) v*_J with
f in S(V), g in G and J an increasing index tuple.  Each g-component is
written in an eigenbasis B_g of g (by default the group's canonical one,
``G.eigen(g)``): the coefficient is a polynomial in the vectors of B_g
and v*_J refers to the dual basis of B_g.

Bar-side cochains are functions of p polynomials returning a
:class:`~barkoszul.polynomial.SkewElement` (standard coordinates).

The converter Upsilon turns a tagged form into a twisted quantum
differential operator; on monomials v^l in B_g,

    Upsilon(f gbar (x) v*_J)(f_1, ..., f_p)
        = prod_k  s_1 ... s_{j_k - 1} . (d_{j_k} f_k)  *  f * gbar

where d_j is the eps_j-quantum partial derivative along v_j and s_i scales
v_i by eps_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable

from .linalg import _normalize, perm_sign
from .polynomial import (
    Polynomial,
    SkewElement,
    _add_into,
    act_on_polynomial,
    format_polynomial,
    right_twisted_multiply,
)
from .psi import PsiContext, psi
from .resolutions import bar_tensor, koszul_differential, koszul_tensor
from .scalars import quantum_integer

__all__ = [
    "TaggedForm",
    "BarCochain",
    "quantum_partial",
    "twist_prefix",
    "upsilon",
    "upsilon_evaluate",
    "psi_star",
    "psi_star_evaluate",
    "evaluate_on_koszul",
    "phi_star",
    "koszul_cochain_differential",
    "naive_koszul_cochain_differential",
    "bar_cochain_differential",
    "group_act_on_form",
    "reynolds",
    "change_frame",
    "form_basis",
]


# -- quantum calculus --------------------------------------------------------

def _as_matrix(basis):
    if basis is None:
        return None
    return basis.basis if hasattr(basis, "basis") else basis


def quantum_partial(f, v_index, eps=None, basis=None):
    """eps-quantum partial derivative along the v_index-th basis vector.

    On monomials, lowers the exponent k of that variable by one and
    multiplies by [k]_eps; eps = 1 gives the ordinary partial derivative.
    Without ``basis`` f is already in basis coordinates.  With ``basis``
    (an EigenData or a LinearMap of column vectors) f is given in standard
    coordinates and the result is returned in standard coordinates.
    """
    if eps is None:
        if basis is None or not hasattr(basis, "eigenvalues"):
            raise ValueError("eps is required unless an EigenData basis is given")
        eps = basis.eigenvalues[v_index]
    mat = _as_matrix(basis)
    if mat is not None and not mat.is_identity():
        f = act_on_polynomial(mat.inverse(), f)
    terms = {}
    qints = {}
    for e, c in f.terms.items():
        k = e[v_index]
        if not k:
            continue
        if k not in qints:
            qints[k] = quantum_integer(k, eps)
        q = qints[k]
        if not q:
            continue
        e2 = list(e)
        e2[v_index] = k - 1
        _add_into(terms, tuple(e2), _normalize(c * q))
    out = Polynomial._raw(f.nvars, terms)
    if mat is not None and not mat.is_identity():
        out = act_on_polynomial(mat, out)
    return out


def twist_prefix(f, eigenvalues, upto):
    """Apply s_1 s_2 ... s_{upto}: scale v_i by eps_i for the first ``upto`` variables."""
    factors = [eigenvalues[i] if i < upto else 1 for i in range(f.nvars)]
    return f.scale_variables(factors)


# -- tagged forms -----------------------------------------------------------

class TaggedForm:
    """Element of C^p = sum_g S(V) gbar (x) Lambda^p V*; keys (g, exponent, wedge)."""

    __slots__ = ("degree", "nvars", "terms")

    def __init__(self, degree, nvars, terms=None):
        self.degree = degree
        self.nvars = nvars
        clean = {}
        for (g, e, w), c in (terms or {}).items():
            w = tuple(w)
            if len(w) != degree or any(a >= b for a, b in zip(w, w[1:])):
                raise ValueError(f"wedge {w} is not strictly increasing of length {degree}")
            if len(e) != nvars:
                raise ValueError("exponent of wrong length")
            _add_into(clean, (g, tuple(e), w), c)
        self.terms = clean

    @classmethod
    def _raw(cls, degree, nvars, terms):
        obj = cls.__new__(cls)
        obj.degree, obj.nvars, obj.terms = degree, nvars, terms
        return obj

    @classmethod
    def zero(cls, degree, nvars):
        return cls._raw(degree, nvars, {})

    @classmethod
    def single(cls, g, coefficient, wedge, coeff=1):
        """coefficient * gbar (x) v*_wedge; wedge in any order (sign-sorted)."""
        wedge = list(wedge)
        n = coefficient.nvars
        if len(set(wedge)) < len(wedge):
            return cls.zero(len(wedge), n)
        sign = perm_sign(wedge)
        w = tuple(sorted(wedge))
        terms = {}
        for e, c in coefficient.terms.items():
            _add_into(terms, (g, e, w), _normalize(sign * coeff * c))
        return cls._raw(len(w), n, terms)

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if not isinstance(other, TaggedForm) or (other.degree, other.nvars) != (self.degree, self.nvars):
            raise ValueError("incompatible tagged forms")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(terms, k, c)
        return TaggedForm._raw(self.degree, self.nvars, terms)

    def __neg__(self):
        return TaggedForm._raw(self.degree, self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return TaggedForm.zero(self.degree, self.nvars)
        return TaggedForm._raw(
            self.degree, self.nvars, {k: _normalize(x * c) for k, x in self.terms.items()}
        )

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, TaggedForm):
            return NotImplemented
        return (self.degree, self.nvars) == (other.degree, other.nvars) and self.terms == other.terms

    __hash__ = None

    def components(self):
        return sorted({g for g, _, _ in self.terms})

    def pieces(self):
        """{(g, wedge): coefficient polynomial}."""
        out = {}
        for (g, e, w), c in self.terms.items():
            out.setdefault((g, w), {})[e] = c
        return {k: Polynomial._raw(self.nvars, v) for k, v in out.items()}

    def restrict(self, g):
        return TaggedForm._raw(
            self.degree, self.nvars, {k: c for k, c in self.terms.items() if k[0] == g}
        )

    def internal_degrees(self):
        return {sum(e) - self.degree for _, e, _ in self.terms}

    def render(self, G=None):
        if not self.terms:
            return "0"
        parts = []
        for (g, w), f in sorted(self.pieces().items(), key=lambda t: (t[0][0], t[0][1])):
            label = G.label(g) if G is not None else f"g{g}"
            wedge = "".join(f" ^ dv{i + 1}" for i in w)
            parts.append(f"[{label}] ({format_polynomial(f)}){wedge}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"TaggedForm({self.degree}, {self.render()!r})"


def form_basis(n, p, d, g):
    """Basis forms v^e gbar (x) v*_J with |e| = d."""
    return [
        TaggedForm._raw(p, n, {(g, e, J): 1})
        for e in _monomials(n, d)
        for J in combinations(range(n), p)
    ]


def _monomials(n, d):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for k in range(d, -1, -1):
        for rest in _monomials(n - 1, d - k):
            yield (k,) + rest


# -- bar cochains -----------------------------------------------------------

@dataclass
class BarCochain:
    """A p-cochain on the bar complex, given as an evaluator f_1..f_p -> S(V)#G."""

    degree: int
    evaluator: Callable
    group: object
    tag: str = "custom"
    _cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, *args):
        if len(args) != self.degree:
            raise ValueError(f"{self.tag} takes {self.degree} arguments, got {len(args)}")
        return self.evaluator(*args)


def _component_basis(G, g, bases):
    if bases and g in bases:
        return bases[g]
    return G.eigen(g)


def upsilon_evaluate(alpha, args, G, bases=None):
    """Upsilon(alpha)(f_1 (x) ... (x) f_p), args and result in standard coordinates."""
    p = alpha.degree
    if len(args) != p:
        raise ValueError(f"Upsilon of a {p}-form takes {p} arguments")
    out = {}
    converted = {}
    for (g, J), coeff in alpha.pieces().items():
        eig = _component_basis(G, g, bases)
        if eig is None:
            raise ValueError(f"no eigenbasis for component {g}")
        mat = eig.basis
        eps = eig.eigenvalues
        key = id(eig)
        if key not in converted:
            converted[key] = [eig.to_basis(f) for f in args]
        local = converted[key]
        value = coeff
        for k, j in enumerate(J):
            dk = quantum_partial(local[k], j, eps[j])
            if not dk:
                value = None
                break
            value = value * twist_prefix(dk, eps, j)
        if value is None or not value:
            continue
        value = eig.from_basis(value) if not mat.is_identity() else value
        out[g] = out[g] + value if g in out else value
    return SkewElement(G, out)


def upsilon(alpha, G, bases=None):
    return BarCochain(alpha.degree, lambda *a: upsilon_evaluate(alpha, a, G, bases), G, "upsilon")


def evaluate_on_koszul(alpha, chain, g, G, basis):
    """alpha's g-component applied to a Koszul chain written in ``basis`` coordinates.

    x (x) y (x) v_J  |->  x * alpha(v_J) * y, where the right action on
    S(V) gbar is twisted: (f gbar) y = f (g.y) gbar.  The g-action is done
    with the standard matrix of g, not with eigenvalues.  Returns the
    g-coefficient as a standard-coordinate polynomial.
    """
    mat = basis.basis if hasattr(basis, "basis") else basis
    pieces = {J: f for (h, J), f in alpha.pieces().items() if h == g}
    n = alpha.nvars
    total = Polynomial.zero(n)
    gmat = G.elements[g]
    std = {}

    def to_std(e):
        if e not in std:
            std[e] = act_on_polynomial(mat, Polynomial._raw(n, {e: 1}))
        return std[e]

    coeff_std = {J: act_on_polynomial(mat, f) for J, f in pieces.items()}
    for (x, y, w), c in chain.terms.items():
        if w not in pieces:
            continue
        y_twisted = act_on_polynomial(gmat, to_std(y))
        total = total + (to_std(x) * coeff_std[w] * y_twisted).scale(c)
    return total


def psi_star_evaluate(alpha, args, G, bases=None):
    """(Psi_B)^*(alpha)(f_1, ..., f_p) = alpha(Psi_B(1 (x) f_1 (x) ... (x) f_p (x) 1)).

    Psi is taken in the basis B_g of each component.  Independent of the
    quantum-derivative formula; used to check it.
    """
    p = alpha.degree
    n = alpha.nvars
    out = {}
    one = Polynomial.constant(n, 1)
    for g in alpha.components():
        eig = _component_basis(G, g, bases)
        local = [eig.to_basis(f) for f in args]
        chain = psi(PsiContext(eig.basis, max(p, 1)), bar_tensor([one] + local + [one]))
        value = evaluate_on_koszul(alpha, chain, g, G, eig)
        if value:
            out[g] = value
    return SkewElement(G, out)


def psi_star(alpha, G, bases=None):
    return BarCochain(alpha.degree, lambda *a: psi_star_evaluate(alpha, a, G, bases), G, "psi*")


def phi_star(F, p, G, bases=None):
    """(Phi^* F)(v_J) = sum_{pi} sgn(pi) F(v_{J pi(1)}, ..., v_{J pi(p)}), per component frame."""
    n = G.dim
    terms = {}
    evaluated = {}
    for g in range(G.order):
        eig = _component_basis(G, g, bases)
        cols = [Polynomial.linear_form(col) for col in eig.basis.columns()]
        frame_key = eig.basis.key(G.field_order)
        for J in combinations(range(n), p):
            total = Polynomial.zero(n)
            for perm in permutations(range(p)):
                key = (frame_key, tuple(J[k] for k in perm))
                if key not in evaluated:
                    evaluated[key] = F(*[cols[J[k]] for k in perm])
                val = evaluated[key].component(g)
                if val:
                    total = total + val if perm_sign(perm) > 0 else total - val
            if total:
                local = eig.to_basis(total)
                for e, c in local.terms.items():
                    _add_into(terms, (g, e, J), c)
    return TaggedForm._raw(p, n, terms)


# -- differentials -------------------------------------------------------------

def koszul_cochain_differential(alpha, G, bases=None):
    """d^* on C^p, computed in each component's eigenbasis.

    (d^* alpha)(v_K) = sum_k (-1)^(k+1) [v_{K_k} alpha(v_{K minus k}) - alpha(...) v_{K_k}]
    and v f gbar - f gbar v = (1 - eps) v f gbar for an eigenvector v.
    """
    n = alpha.nvars
    terms = {}
    for (g, e, J), c in alpha.terms.items():
        eps = _component_basis(G, g, bases).eigenvalues
        for i in range(n):
            if i in J or eps[i] == 1:
                continue
            K = tuple(sorted(J + (i,)))
            pos = K.index(i)
            e2 = list(e)
            e2[i] += 1
            factor = _normalize((1 - eps[i]) * c)
            _add_into(terms, (g, tuple(e2), K), factor if pos % 2 == 0 else -factor)
    return TaggedForm._raw(alpha.degree + 1, n, terms)


def naive_koszul_cochain_differential(alpha, G, bases=None):
    """d^* by evaluating alpha on d(1 (x) 1 (x) v_K) for every K (slow reference)."""
    n = alpha.nvars
    p = alpha.degree
    one = Polynomial.constant(n, 1)
    terms = {}
    for g in alpha.components():
        eig = _component_basis(G, g, bases)
        for K in combinations(range(n), p + 1):
            chain = koszul_differential(koszul_tensor(one, one, K))
            value = evaluate_on_koszul(alpha, chain, g, G, eig)
            for e, c in eig.to_basis(value).terms.items():
                _add_into(terms, (g, e, K), c)
    return TaggedForm._raw(p + 1, n, terms)


def bar_cochain_differential(F, G):
    """(delta^* F)(f_1..f_{p+1}) = f_1 F(f_2..) + sum_i (-1)^i F(.., f_i f_{i+1}, ..)
    + (-1)^(p+1) F(f_1..f_p) f_{p+1}, with the right action twisted by g."""
    p = F.degree

    def ev(*args):
        out = F(*args[1:]).left_multiply(args[0])
        for i in range(p):
            merged = args[:i] + (args[i] * args[i + 1],) + args[i + 2:]
            term = F(*merged)
            out = out - term if i % 2 == 0 else out + term
        last = right_twisted_multiply(F(*args[:p]), args[p])
        return out + last if (p + 1) % 2 == 0 else out - last

    return BarCochain(p + 1, ev, G, f"delta*({F.tag})")


# -- group action -------------------------------------------------------------

def change_frame(alpha_terms, nvars, p, old_basis, new_basis):
    """Rewrite a single component given in ``old_basis`` coordinates in ``new_basis``.

    alpha_terms: {(exponent, wedge): coeff}.  Returns the same shape.
    """
    if old_basis == new_basis:
        return dict(alpha_terms)
    T = old_basis.inverse() @ new_basis          # new vectors in old coordinates
    sub = new_basis.inverse() @ old_basis        # old vectors in new coordinates
    subsets = list(combinations(range(nvars), p))
    minors = {}
    pieces = {}
    for (e, J), c in alpha_terms.items():
        pieces.setdefault(J, {})[e] = c
    out = {}
    for J, coeffs in pieces.items():
        f_new = act_on_polynomial(sub, Polynomial._raw(nvars, coeffs))
        for K in subsets:
            if (J, K) not in minors:
                minors[(J, K)] = T.minor(J, K)
            m = minors[(J, K)]
            if not m:
                continue
            for e, c in f_new.terms.items():
                _add_into(out, (e, K), _normalize(c * m))
    return out


def group_act_on_form(h, alpha, G, bases=None):
    """h . alpha: the g-component f gbar (x) w goes to (h.f) (hgh^-1)bar (x) h.w.

    In the frame h.B_g the coordinates are unchanged; they are then rewritten
    in the frame of the target component.
    """
    if h == G.identity_index:
        return alpha
    n, p = alpha.nvars, alpha.degree
    hmat = G.elements[h]
    by_g = {}
    for (g, e, J), c in alpha.terms.items():
        by_g.setdefault(g, {})[(e, J)] = c
    terms = {}
    for g, comp in by_g.items():
        target = G.conj(h, g)
        moved = hmat @ _component_basis(G, g, bases).basis
        new = change_frame(comp, n, p, moved, _component_basis(G, target, bases).basis)
        for (e, J), c in new.items():
            _add_into(terms, (target, e, J), c)
    return TaggedForm._raw(p, n, terms)


def reynolds(alpha, G, subgroup=None, bases=None):
    """|H|^-1 sum_{h in H} h . alpha, with H = G unless ``subgroup`` is given."""
    H = list(range(G.order)) if subgroup is None else list(subgroup)
    total = TaggedForm.zero(alpha.degree, alpha.nvars)
    for h in H:
        total = total + group_act_on_form(h, alpha, G, bases)
    return total.scale(Fraction(1, len(H)))


def render_skew_with_symbol(value, symbol):
    """Render Upsilon output computed with coefficient 1 as if multiplied by ``symbol``."""
    if not value.components:
        return "0"
    parts = []
    for g in sorted(value.components):
        f = value.components[g]
        label = value.group.label(g)
        text = format_polynomial(f)
        if text == "1":
            piece = f"{symbol}*[{label}]"
        elif text == "-1":
            piece = f"-{symbol}*[{label}]"
        elif len(f.terms) == 1 and " " not in text:
            piece = f"{text}*{symbol}*[{label}]"
        else:
            piece = f"({text})*{symbol}*[{label}]"
        parts.append(piece)
    out = parts[0]
    for piece in parts[1:]:
        out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return out

