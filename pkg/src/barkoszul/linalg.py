"""Small exact linear algebra over Q(zeta_m): matrices, row reduction, rank.

Entries are any exact scalars (int, Fraction, CycScalar).  Sizes here are
desk scale (tens to a few hundred), so plain Gaussian elimination is fine.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

from .scalars import CycScalar, format_scalar, lcm

__all__ = ["LinearMap", "rref", "rank", "nullspace", "solve", "perm_sign"]


def perm_sign(perm):
    """Sign of a permutation given as a sequence of distinct comparable items."""
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _normalize(c):
    # collapse rational CycScalars so that keys and printing stay small
    if isinstance(c, CycScalar) and c.is_rational():
        c = c.coeffs[0]
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _scalar_key(c, order):
    # rational entries are already collapsed by _normalize
    if isinstance(c, CycScalar):
        return c.embed(lcm(order, c.order)).coeffs
    return (Fraction(c),)


class LinearMap:
    """An n x n matrix; column j is the image of basis vector j.

    Stored row-major as ``rows[i][j]``.  Immutable.
    """

    __slots__ = ("rows", "n", "_inv")

    def __init__(self, rows):
        rows = tuple(tuple(_normalize(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("LinearMap needs a square matrix")
        self.rows = rows
        self.n = n
        self._inv = None

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols):
        n = len(cols)
        return cls([[cols[j][i] for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(self.rows[i][j] for i in range(self.n))

    def columns(self):
        return [self.column(j) for j in range(self.n)]

    def __matmul__(self, other):
        if isinstance(other, LinearMap):
            if other.n != self.n:
                raise ValueError("dimension mismatch")
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    s = 0
                    for a, b in zip(r, c):
                        if a and b:
                            s = s + a * b
                    row.append(s)
                out.append(row)
            return LinearMap(out)
        # vector
        vec = tuple(other)
        if len(vec) != self.n:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.rows:
            s = 0
            for a, b in zip(r, vec):
                if a and b:
                    s = s + a * b
            out.append(_normalize(s))
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.n == other.n and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(self.key(self.field_order()))

    def field_order(self):
        m = 1
        for r in self.rows:
            for x in r:
                if isinstance(x, CycScalar):
                    m = lcm(m, x.order)
        return m

    def key(self, order):
        """Hashable canonical form with every entry embedded in Q(zeta_order)."""
        return tuple(_scalar_key(x, order) for r in self.rows for x in r)

    def is_identity(self):
        return all(
            (x == 1) if i == j else (not x)
            for i, r in enumerate(self.rows)
            for j, x in enumerate(r)
        )

    def det(self):
        _, _, d = _eliminate([list(r) for r in self.rows], want_det=True)
        return d

    def inverse(self):
        if self._inv is None:
            n = self.n
            aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
            red, pivots, _ = _eliminate(aug, ncols=n)
            if len(pivots) < n:
                raise ValueError("matrix is not invertible")
            self._inv = LinearMap([row[n:] for row in red[:n]])
        return self._inv

    def minor(self, rows, cols):
        sub = [[self.rows[i][j] for j in cols] for i in rows]
        if not sub:
            return 1
        _, _, d = _eliminate(sub, want_det=True)
        return d

    def exterior_power(self, p):
        """Matrix of Lambda^p of this map on increasing index tuples (0-based)."""
        subsets = list(combinations(range(self.n), p))
        return subsets, {(I, J): self.minor(I, J) for I in subsets for J in subsets}

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = LinearMap.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def __repr__(self):
        return f"LinearMap({[[format_scalar(x) for x in r] for r in self.rows]})"


def _eliminate(mat, ncols=None, want_det=False):
    """Reduced row echelon form in place; returns (rows, pivot columns, det)."""
    if not mat:
        return mat, [], 1
    nrows = len(mat)
    width = len(mat[0])
    ncols = width if ncols is None else ncols
    pivots = []
    det = 1
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            det = 0
            continue
        if pr != r:
            mat[r], mat[pr] = mat[pr], mat[r]
            det = -det
        piv = mat[r][c]
        det = det * piv
        inv = 1 / piv if not isinstance(piv, int) else Fraction(1, piv)
        mat[r] = [_normalize(x * inv) if x else 0 for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [_normalize(a - f * b) if b else a for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    if want_det and len(pivots) < nrows:
        det = 0
    return mat, pivots, _normalize(det) if det else 0


def rref(mat):
    """Reduced row echelon form of a list-of-rows matrix: (nonzero rows, pivots)."""
    red, pivots, _ = _eliminate([list(r) for r in mat])
    return red[: len(pivots)], pivots


def rank(mat):
    if not mat or not mat[0]:
        return 0
    return len(rref(mat)[1])


def nullspace(mat, ncols):
    """Basis of {x : mat x = 0} as a list of vectors."""
    if not mat:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(red, pivots):
            if row[f]:
                x[pc] = _normalize(-row[f])
        basis.append(x)
    return basis


def solve(mat, rhs):
    """Some x with mat x = rhs, or None if inconsistent."""
    ncols = len(mat[0]) if mat else 0
    aug = [list(r) + [b] for r, b in zip(mat, rhs)]
    red, pivots, _ = _eliminate(aug, ncols=ncols)
    for row in red:
        if row[-1] and not any(row[:ncols]):
            return None
    x = [0] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return x


def all_permutations(items):
    for perm in permutations(range(len(items))):
        yield perm_sign(perm), tuple(items[k] for k in perm)
