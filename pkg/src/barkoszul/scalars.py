"""Exact scalars: rationals and elements of the cyclotomic field Q(zeta_m).

Rationals are plain :class:`fractions.Fraction` (or ``int``).  A
:class:`CycScalar` is a residue modulo the m-th cyclotomic polynomial,
stored as its reduced coefficient vector.  Everything in the package that
holds a coefficient accepts any of ``int``, ``Fraction`` or ``CycScalar``;
mixed arithmetic promotes to ``CycScalar``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

__all__ = [
    "CycScalar",
    "cyclotomic_polynomial",
    "euler_phi",
    "zeta_power",
    "quantum_integer",
    "is_zero",
    "as_cyc",
    "lcm",
]


def lcm(a, b):
    return a * b // gcd(a, b)


def _divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def _poly_divexact(num, den):
    # integer polynomials, low degree first; den monic
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    assert not any(num), "inexact cyclotomic division"
    return q


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Phi_m as a tuple of integer coefficients, constant term first."""
    if m < 1:
        raise ValueError(f"cyclotomic order must be positive, got {m}")
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    den = [1]
    for d in _divisors(m)[:-1]:
        den = _poly_mul_int(den, cyclotomic_polynomial(d))
    return tuple(_poly_divexact(num, den))


@lru_cache(maxsize=None)
def euler_phi(m):
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _power_residue(m, k):
    """x^k mod Phi_m as a tuple of ints of length phi(m)."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    k %= m
    if k < deg:
        out = [0] * deg
        out[k] = 1
        return tuple(out)
    prev = _power_residue(m, k - 1)
    # multiply by x, then eliminate x^deg using Phi_m monic
    top = prev[-1]
    out = [0] + list(prev[:-1])
    if top:
        for i in range(deg):
            out[i] -= top * phi[i]
    return tuple(out)


def _reduce(m, coeffs):
    deg = euler_phi(m)
    out = [Fraction(0)] * deg
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k < deg:
            out[k] += c
        else:
            for i, r in enumerate(_power_residue(m, k)):
                if r:
                    out[i] += c * r
    return tuple(out)


class CycScalar:
    """An element of Q(zeta_m) in canonical reduced form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) == euler_phi(order):
            self.coeffs = tuple(coeffs)
        else:
            self.coeffs = _reduce(order, coeffs)

    @classmethod
    def rational(cls, q, order=1):
        return cls(order, [Fraction(q)] + [0] * (euler_phi(order) - 1))

    # -- structure -------------------------------------------------------

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def embed(self, order):
        """The same element viewed in Q(zeta_order); order must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        step = order // self.order
        raw = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, c in enumerate(self.coeffs):
            raw[k * step] = c
        return CycScalar(order, _reduce(order, raw))

    def _coerce(self, other):
        if isinstance(other, CycScalar):
            if other.order == self.order:
                return self, other
            m = lcm(self.order, other.order)
            return self.embed(m), other.embed(m)
        if isinstance(other, (int, Rational)):
            return self, CycScalar.rational(other, self.order)
        return None

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycScalar(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.order, tuple(-x for x in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycScalar(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            return CycScalar(self.order, tuple(x * q for x in self.coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        raw = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        raw[i + j] += x * y
        return CycScalar(a.order, _reduce(a.order, raw))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return CycScalar.rational(1 / self.coeffs[0], self.order)
        # extended Euclid in Q[x]: find u with u*a = 1 mod Phi_m
        m = self.order
        r0, r1 = [Fraction(c) for c in cyclotomic_polynomial(m)], _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] == 0:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # r1 is a nonzero constant
        c = r1[0]
        return CycScalar(m, _reduce(m, [x / c for x in s1]))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            q = Fraction(other)
            return CycScalar(self.order, tuple(x / q for x in self.coeffs))
        if isinstance(other, CycScalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycScalar.rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ------------------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __hash__(self):
        # equal values may live at different orders; only rationals hash finely
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash("CycScalar")

    def to_complex(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"CycScalar({self.order}, {str(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _pdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and not (len(a) == 1 and a[0] == 0):
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        a.pop()
        _trim(a)
        if not a:
            a = [Fraction(0)]
    return _trim(q), _trim(a) if a else [Fraction(0)]


def zeta_power(m, k):
    """zeta_m^k in Q(zeta_m)."""
    if m < 1:
        raise ValueError("order must be positive")
    return CycScalar(m, _power_residue(m, k % m))


def quantum_integer(k, eps):
    """[k]_eps = 1 + eps + ... + eps^(k-1)."""
    if k < 0:
        raise ValueError("quantum integer needs k >= 0")
    total = 0
    term = 1
    for _ in range(k):
        total = total + term
        term = term * eps
    return total


def is_zero(c):
    return not c


def as_cyc(c, order):
    if isinstance(c, CycScalar):
        return c.embed(lcm(order, c.order)) if c.order != order else c
    return CycScalar.rational(c, order)


def _format_rational_coeff(c, power, first):
    # returns the signed text of c * z^power
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    if power == 0:
        body = str(mag)
    else:
        zpart = "z" if power == 1 else f"z^{power}"
        body = zpart if mag == 1 else f"{mag}*{zpart}"
    if first:
        return ("-" if sign == "-" else "") + body
    return f" {sign} {body}"


def format_scalar(c):
    """Render a scalar as a polynomial in z with rational coefficients."""
    if isinstance(c, CycScalar):
        coeffs = c.coeffs
    else:
        coeffs = (Fraction(c),)
    parts = []
    for power in range(len(coeffs) - 1, -1, -1):
        x = coeffs[power]
        if x:
            parts.append(_format_rational_coeff(x, power, not parts))
    return "".join(parts) if parts else "0"
