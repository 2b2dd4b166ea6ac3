"""Finite matrix groups acting on V = k^n.

:func:`generate_group` closes a set of generators under multiplication and
records the multiplication table, inverses, exponent, conjugacy classes and
centralizers.  :func:`eigen_decompose` gives each element a canonical
eigenbasis with root-of-unity eigenvalues.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import LinearMap, _normalize, rref
from .polynomial import from_basis, to_basis
from .scalars import lcm, zeta_power
from .syntax import ParseError, parse_scalar, split_top

__all__ = [
    "GroupData",
    "EigenData",
    "GroupTooLarge",
    "generate_group",
    "eigen_decompose",
    "builtin_group",
    "load_group",
    "parse_group_spec",
    "BUILTIN_NAMES",
]

BUILTIN_NAMES = ("klein4-3d", "cyclic-r-2d", "sym3-perm")


class GroupTooLarge(ValueError):
    pass


@dataclass
class EigenData:
    """An eigenbasis of one group element.

    ``basis`` has the eigenvectors as columns; ``eigenvalue_exponents[i]`` is
    k_i with eps_i = zeta_m^{k_i}, m the field order of the group.
    """

    element_index: int
    basis: LinearMap
    eigenvalue_exponents: tuple
    order: int

    @property
    def eigenvalues(self):
        return tuple(_normalize(zeta_power(self.order, k)) for k in self.eigenvalue_exponents)

    @property
    def n(self):
        return self.basis.n

    def to_basis(self, f):
        return to_basis(f, self.basis)

    def from_basis(self, f):
        return from_basis(f, self.basis)

    def transported(self, a_matrix, new_index):
        """The eigenbasis a.B of a g a^-1, with the same eigenvalues."""
        return EigenData(new_index, a_matrix @ self.basis, self.eigenvalue_exponents, self.order)


@dataclass
class GroupData:
    elements: list
    mult_table: list
    inverse: list
    identity_index: int
    exponent: int
    field_order: int
    element_orders: list
    conjugacy_classes: list
    centralizers: list
    names: dict = field(default_factory=dict)
    source: str = "custom"
    _eigen: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self):
        return self.elements[0].n

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def mul(self, a, b):
        return self.mult_table[a][b]

    def conj(self, a, g):
        """a g a^-1."""
        return self.mult_table[self.mult_table[a][g]][self.inverse[a]]

    @property
    def class_representatives(self):
        return [cls[0] for cls in self.conjugacy_classes]

    def class_of(self, g):
        for cls in self.conjugacy_classes:
            if g in cls:
                return cls
        raise KeyError(g)

    def label(self, g):
        if g in self.names:
            return self.names[g]
        return "1" if g == self.identity_index else f"g{g}"

    def resolve(self, label):
        label = label.strip()
        if label == "1":
            return self.identity_index
        for g, name in self.names.items():
            if name == label:
                return g
        m = re.fullmatch(r"g(\d+)", label)
        if m and int(m.group(1)) < len(self.elements):
            return int(m.group(1))
        raise KeyError(f"unknown group element label {label!r}")

    def eigen(self, g):
        """Canonical eigenbasis of element g (cached)."""
        if g not in self._eigen:
            self._eigen[g] = eigen_decompose(self, g)
        return self._eigen[g]

    def fingerprint(self):
        h = hashlib.sha256()
        for mat in self.elements:
            h.update(repr(mat.key(self.field_order)).encode())
        return h.hexdigest()[:16]


def _element_order(mat, limit):
    ident = LinearMap.identity(mat.n)
    cur = mat
    for k in range(1, limit + 1):
        if cur == ident:
            return k
        cur = cur @ mat
    raise GroupTooLarge("element order exceeds the group size limit")


def generate_group(generators, max_size=512, n=None, names=None, source="custom"):
    """Close ``generators`` under multiplication.

    Elements are ordered breadth-first from the identity (index 0), applying
    generators in the given order.  Raises :class:`GroupTooLarge` if more than
    ``max_size`` elements appear.
    """
    generators = list(generators)
    if n is None:
        if not generators:
            raise ValueError("dimension needed for the trivial group")
        n = generators[0].n
    for gen in generators:
        if gen.n != n:
            raise ValueError("generators of different dimensions")
        if not gen.det():
            raise ValueError(f"generator {gen!r} is not invertible")
    order = 1
    for gen in generators:
        order = lcm(order, gen.field_order())

    ident = LinearMap.identity(n)
    elements = [ident]
    index = {ident.key(order): 0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for gen in generators:
                prod = elements[i] @ gen
                k = prod.key(order)
                if k not in index:
                    if len(elements) >= max_size:
                        raise GroupTooLarge(f"closure exceeds {max_size} elements")
                    index[k] = len(elements)
                    elements.append(prod)
                    nxt.append(index[k])
        frontier = nxt

    size = len(elements)
    table = [[index[(a @ b).key(order)] for b in elements] for a in elements]
    inverse = [row.index(0) for row in table]
    orders = [_element_order(mat, size) for mat in elements]
    exponent = 1
    for o in orders:
        exponent = lcm(exponent, o)

    classes = []
    seen = set()
    for g in range(size):
        if g in seen:
            continue
        cls = sorted({table[table[a][g]][inverse[a]] for a in range(size)})
        seen.update(cls)
        classes.append(cls)
    centralizers = [[h for h in range(size) if table[h][g] == table[g][h]] for g in range(size)]

    return GroupData(
        elements=elements,
        mult_table=table,
        inverse=inverse,
        identity_index=0,
        exponent=exponent,
        field_order=lcm(exponent, order),
        element_orders=orders,
        conjugacy_classes=classes,
        centralizers=centralizers,
        names=dict(names or {}),
        source=source,
    )


def eigen_decompose(G, g_index):
    """Eigenbasis of element g from its character projectors.

    Pi_k = (1/r) sum_j zeta_r^{-kj} g^j projects onto the zeta_r^k eigenspace.
    Each image is column-reduced (RREF of the transposed projector); the
    vectors are ordered by pivot position, then by eigenvalue exponent, so a
    diagonal element gets the standard basis in standard order.
    """
    mat = G.elements[g_index]
    n = mat.n
    r = G.element_orders[g_index]
    m = G.field_order
    if m % r:
        raise ValueError(f"element order {r} does not divide field order {m}")
    powers = [LinearMap.identity(n)]
    for _ in range(r - 1):
        powers.append(powers[-1] @ mat)

    found = []
    for k in range(r):
        proj = [[0] * n for _ in range(n)]
        for j, P in enumerate(powers):
            w = zeta_power(m, (-k * j * (m // r)) % m)
            for a in range(n):
                for b in range(n):
                    if P[a, b]:
                        proj[a][b] = proj[a][b] + w * P[a, b]
        proj_t = [[_normalize(proj[a][b] * Fraction(1, r)) for a in range(n)] for b in range(n)]
        rows, pivots = rref(proj_t)
        for vec, piv in zip(rows, pivots):
            found.append((piv, k, tuple(vec)))
    if len(found) != n:
        raise ArithmeticError(f"eigenspace dimensions sum to {len(found)}, expected {n}")
    found.sort(key=lambda t: (t[0], t[1]))
    basis = LinearMap.from_columns([vec for _, _, vec in found])
    exps = tuple(k * (m // r) for _, k, _ in found)
    data = EigenData(g_index, basis, exps, m)
    # exact check g b_i = eps_i b_i
    for i, (col, eps) in enumerate(zip(basis.columns(), data.eigenvalues)):
        image = mat @ col
        if any(_normalize(x - eps * y) for x, y in zip(image, col)):
            raise ArithmeticError(f"eigenvector {i} of element {g_index} failed verification")
    if not basis.det():
        raise ArithmeticError("eigenbasis is singular")
    return data


# -- builtins and files ---------------------------------------------------

def _klein4_3d():
    g = LinearMap.diag([-1, 1, -1])
    h = LinearMap.diag([-1, -1, 1])
    G = generate_group([g, h], source="klein4-3d")
    names = {}
    for idx, mat in enumerate(G.elements):
        if mat == g:
            names[idx] = "g"
        elif mat == h:
            names[idx] = "h"
        elif mat == g @ h:
            names[idx] = "gh"
    G.names = names
    return G


def _cyclic_2d(r):
    z = zeta_power(r, 1)
    gen = LinearMap.diag([z, z.inverse()]) if r > 1 else LinearMap.identity(2)
    return generate_group([gen] if r > 1 else [], n=2, source=f"cyclic-{r}-2d")


def _sym3_perm():
    s = LinearMap([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    c = LinearMap([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    return generate_group([s, c], source="sym3-perm")


def builtin_group(name):
    if name == "klein4-3d":
        return _klein4_3d()
    if name == "sym3-perm":
        return _sym3_perm()
    m = re.fullmatch(r"cyclic-(\d+)-2d", name)
    if m and int(m.group(1)) >= 1:
        return _cyclic_2d(int(m.group(1)))
    raise KeyError(f"unknown builtin group {name!r} (known: klein4-3d, cyclic-<r>-2d, sym3-perm)")


_HEADER = re.compile(r"^\s*dim\s+(\d+)\s*;\s*order_hint\s+(\d+)\s*;?\s*$")


def parse_group_spec(text, max_size=512):
    """Group spec file::

        dim 2; order_hint 4;
        # one generator per block; blocks separated by blank lines
        z, 0
        0, -z

    Entries are scalar expressions in ``z = zeta_{order_hint}``, comma separated.
    """
    lines = text.splitlines()
    body = []
    header = None
    offsets = []
    pos = 0
    for line in lines:
        stripped = line.split("#", 1)[0]
        if header is None and stripped.strip():
            header = _HEADER.match(stripped)
            if header is None:
                raise ParseError("expected header 'dim n; order_hint m;'", text, pos)
        elif header is not None:
            body.append(stripped)
            offsets.append(pos)
        pos += len(line) + 1
    if header is None:
        raise ParseError("empty group spec", text, 0)
    n, m = int(header.group(1)), int(header.group(2))
    if n < 1 or m < 1:
        raise ParseError("dim and order_hint must be positive", text, 0)
    blocks, cur = [], []
    for line, off in zip(body, offsets):
        if line.strip():
            cur.append((line, off))
        elif cur:
            blocks.append(cur)
            cur = []
    if cur:
        blocks.append(cur)
    gens = []
    for block in blocks:
        if len(block) != n:
            raise ParseError(f"generator block has {len(block)} rows, expected {n}", text, block[0][1])
        rows = []
        for line, off in block:
            pieces = split_top(line, ",")
            if len(pieces) != n:
                raise ParseError(f"row has {len(pieces)} entries, expected {n}", text, off)
            row = []
            for piece, poff in pieces:
                try:
                    row.append(parse_scalar(piece, m))
                except ParseError as exc:
                    raise ParseError(str(exc).split(" at line")[0], text, off + poff) from None
            rows.append(row)
        gens.append(LinearMap(rows))
    return generate_group(gens, max_size=max_size, n=n, source="file")


def load_group(source, max_size=512):
    """A builtin name or a path to a group spec file."""
    try:
        return builtin_group(source)
    except KeyError:
        pass
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as exc:
        raise KeyError(f"unknown group {source!r}: not a builtin and not readable ({exc.strerror})")
    return parse_group_spec(text, max_size=max_size)

