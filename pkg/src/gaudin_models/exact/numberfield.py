"""Exact arithmetic in simple algebraic extensions Q(g) of the rationals.

Used for root systems whose Gram matrices involve 2cos(pi/m) with
m not in {2, 3, 4, 6}.  Signs are decided through a fixed real embedding.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC

from .poly import Poly, poly_xgcd


def _squarefree_part(n: int) -> tuple[int, int]:
    """Return (k, d) with n = k*k*d and d squarefree."""
    k, d = 1, 1
    p = 2
    m = abs(n)
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        if m % p == 0:
            m //= p
            d *= p
        p += 1
    d *= m
    return k, d if n >= 0 else -d


class NumberField:
    """Q[x]/(minpoly) with a chosen real root ``approx`` for the generator."""

    def __init__(self, minpoly, approx: float, sqrt_of: int | None = None):
        self.minpoly = Poly(minpoly).monic()
        if self.minpoly.degree < 1:
            raise ValueError("minimal polynomial must have positive degree")
        self.approx = float(approx)
        self.sqrt_of = sqrt_of

    @classmethod
    def quadratic(cls, d: int) -> "NumberField":
        k, sf = _squarefree_part(d)
        if sf == 1 or sf <= 0:
            raise ValueError(f"Q(sqrt({d})) is not a real quadratic field")
        return cls([-sf, 0, 1], math.sqrt(sf), sqrt_of=sf)

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def gen(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self, [0, 1])

    def __call__(self, coeffs) -> "AlgebraicNumber":
        return AlgebraicNumber(self, coeffs)

    def sqrt(self, d: int) -> "AlgebraicNumber":
        if self.sqrt_of is None:
            raise ValueError("sqrt is only available in quadratic fields")
        k, sf = _squarefree_part(d)
        if sf != self.sqrt_of:
            raise ValueError(f"sqrt({d}) not in Q(sqrt({self.sqrt_of}))")
        return AlgebraicNumber(self, [0, k])

    def _key(self):
        return (self.minpoly.coeffs, round(self.approx, 9))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def describe(self):
        """JSON-friendly description: d for sqrt(d) fields, else the minimal polynomial."""
        if self.sqrt_of is not None:
            return self.sqrt_of
        return {"minpoly": [str(c) for c in self.minpoly.coeffs], "root": self.approx}

    def __repr__(self):
        if self.sqrt_of is not None:
            return f"NumberField(sqrt({self.sqrt_of}))"
        return f"NumberField({self.minpoly.to_str('g')} = 0, g~{self.approx:.6f})"


class AlgebraicNumber:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        p = Poly(coeffs)
        if p.degree >= field.degree:
            p = p.divmod(field.minpoly)[1]
        cs = list(p.coeffs) + [Fraction(0)] * (field.degree - len(p.coeffs))
        self.coeffs = tuple(cs)

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field is not self.field and other.field != self.field:
                raise TypeError("mixing elements of different number fields")
            return other
        if isinstance(other, (int, _RationalABC)):
            return AlgebraicNumber(self.field, [other])
        return None

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self.coeffs[0])

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, [-a for a in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = Poly(self.coeffs) * Poly(o.coeffs)
        return AlgebraicNumber(self.field, prod.coeffs)

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        if self == 0:
            raise ZeroDivisionError("inverse of zero algebraic number")
        g, s, _ = poly_xgcd(Poly(self.coeffs), self.field.minpoly)
        if g.degree != 0:
            raise ArithmeticError("minimal polynomial is reducible")
        return AlgebraicNumber(self.field, s.coeffs)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        out = AlgebraicNumber(self.field, [1])
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, AlgebraicNumber) else other
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __float__(self):
        x = self.field.approx
        return float(sum(float(c) * x ** k for k, c in enumerate(self.coeffs)))

    def sign(self) -> int:
        if self == 0:
            return 0
        v = float(self)
        if abs(v) < 1e-12:
            raise ArithmeticError(f"sign of {self} not resolved in double precision")
        return 1 if v > 0 else -1

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __repr__(self):
        return f"AlgebraicNumber({self})"

    def __str__(self):
        sym = f"sqrt({self.field.sqrt_of})" if self.field.sqrt_of is not None else "g"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = sym if k == 1 else f"{sym}^{k}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out


def _cyclotomic(n: int) -> list[int]:
    """Integer coefficients (low first) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _int_poly_div(num, _cyclotomic(d))
    return num


def _int_poly_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        q[k] = c
        for j, bj in enumerate(b):
            a[k + j] -= c * bj
    if any(a):
        raise ArithmeticError("inexact cyclotomic division")
    return q


def two_cos_minpoly(n: int) -> list[int]:
    """Minimal polynomial of 2cos(2pi/n) for n >= 3, via y^k + y^-k = V_k(y + 1/y)."""
    phi = _cyclotomic(n)
    h = (len(phi) - 1) // 2
    V = [[2], [0, 1]]
    for k in range(2, h + 1):
        nxt = [0] + V[k - 1]
        prev = V[k - 2] + [0] * (len(nxt) - len(V[k - 2]))
        V.append([x - y for x, y in zip(nxt, prev)])
    out = [0] * (h + 1)
    out[0] += phi[h]
    for k in range(1, h + 1):
        for i, c in enumerate(V[k]):
            out[i] += phi[h + k] * c
    return out


def dihedral_cos(m: int):
    """Return 2cos(pi/m) as an exact scalar (int, or AlgebraicNumber in its field)."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if m == 2:
        return Fraction(0)
    if m == 3:
        return Fraction(1)
    mp = two_cos_minpoly(2 * m)
    value = 2 * math.cos(math.pi / m)
    if len(mp) == 3:
        # x^2 + p x + q: x = (-p + k*sqrt(d))/2 picks the larger root, which is 2cos(pi/m)
        q, p = mp[0], mp[1]
        k, d = _squarefree_part(p * p - 4 * q)
        field = NumberField.quadratic(d)
        return AlgebraicNumber(field, [Fraction(-p, 2), Fraction(k, 2)])
    return AlgebraicNumber(NumberField(mp, value), [0, 1])
