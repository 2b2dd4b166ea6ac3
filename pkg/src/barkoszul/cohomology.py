"""Graded dimensions of the cohomology of (C^*, d^*).

d^* raises both the form degree p and the coefficient degree by one, so
it preserves D = deg(coefficient) - p and every (p, D) block is finite.
Blocks are assembled from the fast eigenbasis formula for d^* and ranked
by exact row reduction.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .cochains import (
    TaggedForm,
    _monomials,
    group_act_on_form,
    koszul_cochain_differential,
)
from .linalg import rank, rref

__all__ = [
    "BlockTooLarge",
    "block_keys",
    "dstar_matrix",
    "cohomology_dimensions",
    "invariant_dimensions",
    "centralizer_dimensions",
    "DEFAULT_MAX_BLOCK",
]

DEFAULT_MAX_BLOCK = 4000


class BlockTooLarge(ValueError):
    pass


def block_keys(n, p, d, components):
    """Basis keys (g, exponent, wedge) of C^p with coefficient degree d."""
    if p < 0 or p > n or d < 0:
        return []
    return [
        (g, e, J)
        for g in components
        for e in _monomials(n, d)
        for J in combinations(range(n), p)
    ]


def _vector(form, index):
    vec = [0] * len(index)
    for k, c in form.terms.items():
        vec[index[k]] = c
    return vec


def _check_size(size, limit):
    if size > limit:
        raise BlockTooLarge(f"block of dimension {size} exceeds the limit {limit}")


def dstar_matrix(G, p, d, components, max_block=DEFAULT_MAX_BLOCK):
    """Rows = images of the basis of C^p_d (coefficient degree d) in C^{p+1}_{d+1}."""
    n = G.dim
    src = block_keys(n, p, d, components)
    tgt = block_keys(n, p + 1, d + 1, components)
    _check_size(max(len(src), len(tgt)), max_block)
    index = {k: i for i, k in enumerate(tgt)}
    rows = []
    for key in src:
        image = koszul_cochain_differential(TaggedForm._raw(p, n, {key: 1}), G)
        rows.append(_vector(image, index))
    return rows, src, tgt


def _restricted_rank(G, p, d, components, basis_rows, src_keys, max_block):
    """Rank of d^* on the subspace spanned by basis_rows (vectors over src_keys)."""
    if not basis_rows:
        return 0
    n = G.dim
    tgt = block_keys(n, p + 1, d + 1, components)
    if not tgt:
        return 0
    index = {k: i for i, k in enumerate(tgt)}
    images = []
    for row in basis_rows:
        form = TaggedForm._raw(p, n, {k: c for k, c in zip(src_keys, row) if c})
        images.append(_vector(koszul_cochain_differential(form, G), index))
    return rank(images)


def _invariant_basis(G, p, d, components, subgroup, max_block):
    """Basis (row vectors over block_keys) of the subgroup-invariant part of C^p_d."""
    n = G.dim
    keys = block_keys(n, p, d, components)
    _check_size(len(keys), max_block)
    if not keys:
        return [], keys
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for key in keys:
        form = TaggedForm._raw(p, n, {key: 1})
        total = TaggedForm.zero(p, n)
        for h in subgroup:
            total = total + group_act_on_form(h, form, G)
        rows.append(_vector(total, index))
    basis, _ = rref(rows)
    return basis, keys


def _dims(G, components, p_range, D_range, subgroup, max_block):
    n = G.dim
    table = {}
    for p in p_range:
        for D in D_range:
            d = D + p
            if d < 0 or p < 0 or p > n:
                table[(p, D)] = 0
                continue
            if subgroup is None:
                size = len(block_keys(n, p, d, components))
                _check_size(size, max_block)
                rows, _, _ = dstar_matrix(G, p, d, components, max_block)
                out_rank = rank(rows) if rows and rows[0] else 0
                if p >= 1 and d >= 1:
                    prev, _, _ = dstar_matrix(G, p - 1, d - 1, components, max_block)
                    in_rank = rank(prev) if prev and prev[0] else 0
                else:
                    in_rank = 0
            else:
                basis, keys = _invariant_basis(G, p, d, components, subgroup, max_block)
                size = len(basis)
                out_rank = _restricted_rank(G, p, d, components, basis, keys, max_block)
                if p >= 1 and d >= 1:
                    prev, prev_keys = _invariant_basis(G, p - 1, d - 1, components, subgroup, max_block)
                    in_rank = _restricted_rank(G, p - 1, d - 1, components, prev, prev_keys, max_block)
                else:
                    in_rank = 0
            table[(p, D)] = size - out_rank - in_rank
    return table


def cohomology_dimensions(G, g, p_range, D_range, invariant=False, max_block=DEFAULT_MAX_BLOCK):
    """{(p, D): dim H^{p} of the g-component in internal degree D}.

    With ``invariant`` the complex is first restricted to its Z(g)-invariants.
    """
    subgroup = G.centralizers[g] if invariant else None
    return _dims(G, [g], list(p_range), list(D_range), subgroup, max_block)


def centralizer_dimensions(G, p_range, D_range, max_block=DEFAULT_MAX_BLOCK):
    """Sum over conjugacy class representatives g of the Z(g)-invariant dimensions."""
    total = {}
    for g in G.class_representatives:
        for k, v in cohomology_dimensions(G, g, p_range, D_range, True, max_block).items():
            total[k] = total.get(k, 0) + v
    return total


def invariant_dimensions(G, p_range, D_range, max_block=DEFAULT_MAX_BLOCK):
    """Dimensions of the G-invariant cohomology of the full complex (all components)."""
    return _dims(G, list(range(G.order)), list(p_range), list(D_range), list(range(G.order)), max_block)


def trivial_block_dimension(n, p, D):
    """dim C^p for g = 1 in internal degree D: binom(n+d-1, d) binom(n, p), d = D + p."""
    d = D + p
    if d < 0 or p < 0 or p > n:
        return 0
    return comb(n + d - 1, d) * comb(n, p)
