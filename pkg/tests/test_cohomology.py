from fractions import Fraction
from math import comb

import pytest

from barkoszul.cochains import TaggedForm, naive_koszul_cochain_differential
from barkoszul.cohomology import (
    BlockTooLarge,
    block_keys,
    centralizer_dimensions,
    cohomology_dimensions,
    dstar_matrix,
    invariant_dimensions,
    trivial_block_dimension,
)

from conftest import group


def naive_rank(rows):
    """Plain Gaussian elimination over Fractions, written independently of the package."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def naive_matrix(G, g, p, d):
    """Matrix of d^* : C^p_d -> C^{p+1}_{d+1} from the slow evaluation of d^*."""
    n = G.dim
    src = block_keys(n, p, d, [g])
    tgt = block_keys(n, p + 1, d + 1, [g])
    index = {k: i for i, k in enumerate(tgt)}
    rows = []
    for key in src:
        img = naive_koszul_cochain_differential(TaggedForm(p, n, {key: 1}), G)
        row = [0] * len(tgt)
        for k, c in img.terms.items():
            row[index[k]] = c
        rows.append(row)
    return rows


def test_trivial_component_is_all_cocycles():
    G = group("klein4-3d")
    dims = cohomology_dimensions(G, 0, range(0, 4), range(-3, 3))
    for (p, D), dim in dims.items():
        assert dim == trivial_block_dimension(3, p, D)
    C = group("cyclic-4-2d")
    assert cohomology_dimensions(C, 0, [1], [0])[(1, 0)] == 4 == comb(2, 1) * comb(2, 1)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_klein_block_ranks_against_naive_oracle(g):
    G = group("klein4-3d")
    for p in range(0, 3):
        for d in range(0, 4):
            rows, src, tgt = dstar_matrix(G, p, d, [g])
            if len(src) * len(tgt) == 0 or max(len(src), len(tgt)) > 200:
                continue
            from barkoszul.linalg import rank

            assert rank(rows) == naive_rank(naive_matrix(G, g, p, d))


def test_klein_reflection_free_components():
    # diag(-1, 1, -1): cohomology is concentrated in p = 2, 3 with one class per D
    G = group("klein4-3d")
    dims = cohomology_dimensions(G, G.resolve("g"), range(0, 4), range(-3, 3))
    assert {k for k, v in dims.items() if v} == {(2, D) for D in range(-2, 3)} | {(3, D) for D in range(-3, 3)}
    assert all(v in (0, 1) for v in dims.values())


@pytest.mark.parametrize("name", ["klein4-3d", "cyclic-4-2d"])
def test_invariant_assembly(name):
    G = group(name)
    ps, Ds = range(0, G.dim + 1), range(-2, 2)
    assert centralizer_dimensions(G, ps, Ds) == invariant_dimensions(G, ps, Ds)


def test_empty_ranges_and_limits():
    G = group("klein4-3d")
    assert cohomology_dimensions(G, 0, [], []) == {}
    assert cohomology_dimensions(G, 0, [5], [0]) == {(5, 0): 0}
    with pytest.raises(BlockTooLarge):
        cohomology_dimensions(G, 1, [1], [8], max_block=10)
