"""The basis-dependent chain map Psi_B from the bar to the Koszul resolution.

For monomials v^{l^1}, ..., v^{l^p} written in a basis B = {v_1, ..., v_n},

    Psi_p(1 (x) v^{l^1} (x) ... (x) v^{l^p} (x) 1)
        = sum_{i_1 < ... < i_p} sum_{0 <= a_j < l^j_{i_j}}
              v^Q (x) v^Qhat (x) v_{i_1} ^ ... ^ v_{i_p}

where Q records, coordinate by coordinate, how much of the product
v^{l^1} ... v^{l^p} has been "passed" on the left, and Qhat is the
complementary exponent with v^Q v^Qhat v_{i_1} ... v_{i_p} = v^{l^1} ... v^{l^p}.
General bar tensors a_0 (x) ... (x) a_{p+1} are handled S(V)^e-linearly:
a_0 multiplies the left slot and a_{p+1} the right slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .linalg import LinearMap
from .polynomial import _add_into, _exp_add
from .resolutions import (
    DEFAULT_DEGREE_CAP,
    KoszulChain,
    bar_to_basis,
    koszul_from_basis,
)

__all__ = [
    "PsiContext",
    "q_exponent",
    "qhat_exponent",
    "psi",
    "psi_standard",
    "psi_monomial_terms",
    "psi_closed_form_1",
    "psi_closed_form_2",
    "DegreeCapExceeded",
]


class DegreeCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class PsiContext:
    """Basis B (columns, in standard coordinates) and a homological degree cap."""

    basis: LinearMap
    degree_cap: int = DEFAULT_DEGREE_CAP

    @classmethod
    def standard(cls, n, degree_cap=DEFAULT_DEGREE_CAP):
        return cls(LinearMap.identity(n), degree_cap)

    def __post_init__(self):
        if not self.basis.det():
            raise ValueError("Psi needs an invertible basis")


def _prefix_sums(ells, n):
    # sums[j][i] = l^1_i + ... + l^j_i
    sums = [(0,) * n]
    for ell in ells:
        sums.append(_exp_add(sums[-1], ell))
    return sums


def _check_range(ells, indices, a):
    if len(ells) != len(indices) or len(a) != len(indices):
        raise ValueError("ells, indices and a must have the same length p")
    if any(x >= y for x, y in zip(indices, indices[1:])):
        raise ValueError(f"indices {indices} are not strictly increasing")
    for j, (i, aj) in enumerate(zip(indices, a)):
        if not 0 <= aj < ells[j][i]:
            raise ValueError(f"a_{j + 1} = {aj} outside 0..{ells[j][i] - 1}")


def q_exponent(ells, indices, a):
    """Exponent vector Q(l^1, ..., l^p; i_1, ..., i_p) for choices a (all 0-based indices).

    Q_i = a_j + l^1_i + ... + l^{j-1}_i      if i = i_j
    Q_i = l^1_i + ... + l^j_i                if i_j < i < i_{j+1}
    """
    ells = [tuple(e) for e in ells]
    indices, a = tuple(indices), tuple(a)
    _check_range(ells, indices, a)
    n = len(ells[0]) if ells else 0
    return _q(_prefix_sums(ells, n), indices, a, n)


def _q(sums, indices, a, n):
    q = []
    t = 0
    p = len(indices)
    for i in range(n):
        if t < p and i == indices[t]:
            q.append(a[t] + sums[t][i])
            t += 1
        else:
            q.append(sums[t][i])
    return tuple(q)


def qhat_exponent(ells, indices, a):
    """The complementary exponent: Qhat_i = sum_k l^k_i - Q_i - [i in indices]."""
    ells = [tuple(e) for e in ells]
    q = q_exponent(ells, indices, a)
    n = len(q)
    total = _prefix_sums(ells, n)[-1]
    out = tuple(total[i] - q[i] - (1 if i in indices else 0) for i in range(n))
    if any(x < 0 for x in out):
        raise ValueError(f"negative complementary exponent {out}")
    return out


def psi_monomial_terms(ells, n):
    """Yield (Q, Qhat, indices) for Psi(1 (x) v^{l^1} (x) ... (x) v^{l^p} (x) 1).

    Index tuples run lexicographically, choices a in mixed-radix order.
    """
    p = len(ells)
    sums = _prefix_sums(ells, n)
    total = sums[-1]
    for indices in combinations(range(n), p):
        ranges = [range(ells[j][i]) for j, i in enumerate(indices)]
        if any(len(r) == 0 for r in ranges):
            continue
        for a in product(*ranges):
            q = _q(sums, indices, a, n)
            qhat = list(total[i] - q[i] for i in range(n))
            for i in indices:
                qhat[i] -= 1
            yield q, tuple(qhat), indices


def psi(ctx, c):
    """Psi_B on a bar chain written in B-coordinates; returns B-coordinate Koszul chain."""
    p = c.degree
    if p > ctx.degree_cap:
        raise DegreeCapExceeded(f"degree {p} exceeds the cap {ctx.degree_cap}")
    n = c.nvars
    if n != ctx.basis.n:
        raise ValueError("chain and basis dimensions differ")
    terms = {}
    if p == 0:
        for (a0, a1), x in c.terms.items():
            _add_into(terms, (a0, a1, ()), x)
        return KoszulChain._raw(0, n, terms)
    cache = {}
    for key, x in c.terms.items():
        a0, ells, a_last = key[0], key[1:-1], key[-1]
        if ells not in cache:
            cache[ells] = list(psi_monomial_terms(ells, n))
        for q, qhat, indices in cache[ells]:
            _add_into(terms, (_exp_add(a0, q), _exp_add(qhat, a_last), indices), x)
    return KoszulChain._raw(p, n, terms)


def psi_standard(ctx, c):
    """Psi_B on a standard-coordinate bar chain, result in standard coordinates."""
    return koszul_from_basis(psi(ctx, bar_to_basis(c, ctx.basis)), ctx.basis)


def _mono(n, pieces):
    e = [0] * n
    for i, k in pieces:
        e[i] += k
    return tuple(e)


def psi_closed_form_1(c):
    """Psi_1(1 (x) v^l (x) 1) = sum_i sum_{t=1}^{l_i}
    v_i^{l_i - t} v_{i+1}^{l_{i+1}} ... v_n^{l_n} (x) v_1^{l_1} ... v_{i-1}^{l_{i-1}} v_i^{t-1} (x) v_i."""
    if c.degree != 1:
        raise ValueError("psi_closed_form_1 needs a degree-1 bar chain")
    n = c.nvars
    terms = {}
    for (a0, ell, a2), x in c.terms.items():
        for i in range(n):
            for t in range(1, ell[i] + 1):
                left = _mono(n, [(i, ell[i] - t)] + [(k, ell[k]) for k in range(i + 1, n)])
                right = _mono(n, [(k, ell[k]) for k in range(i)] + [(i, t - 1)])
                _add_into(terms, (_exp_add(a0, left), _exp_add(right, a2), (i,)), x)
    return KoszulChain._raw(1, n, terms)


def psi_closed_form_2(c):
    """The two-factor display: for i < j, 1 <= r <= m_j, 1 <= t <= l_i,

    left  = v_i^{l_i-t} v_{i+1}^{l_{i+1}} ... v_{j-1}^{l_{j-1}} v_j^{l_j+m_j-r}
            v_{j+1}^{l_{j+1}+m_{j+1}} ... v_n^{l_n+m_n}
    right = v_1^{l_1+m_1} ... v_{i-1}^{l_{i-1}+m_{i-1}} v_i^{m_i+t-1}
            v_{i+1}^{m_{i+1}} ... v_{j-1}^{m_{j-1}} v_j^{r-1}
    """
    if c.degree != 2:
        raise ValueError("psi_closed_form_2 needs a degree-2 bar chain")
    n = c.nvars
    terms = {}
    for (a0, ell, em, a3), x in c.terms.items():
        for i in range(n):
            for j in range(i + 1, n):
                for r in range(1, em[j] + 1):
                    for t in range(1, ell[i] + 1):
                        left = _mono(
                            n,
                            [(i, ell[i] - t)]
                            + [(k, ell[k]) for k in range(i + 1, j)]
                            + [(j, ell[j] + em[j] - r)]
                            + [(k, ell[k] + em[k]) for k in range(j + 1, n)],
                        )
                        right = _mono(
                            n,
                            [(k, ell[k] + em[k]) for k in range(i)]
                            + [(i, em[i] + t - 1)]
                            + [(k, em[k]) for k in range(i + 1, j)]
                            + [(j, r - 1)],
                        )
                        _add_into(terms, (_exp_add(a0, left), _exp_add(right, a3), (i, j)), x)
    return KoszulChain._raw(2, n, terms)
