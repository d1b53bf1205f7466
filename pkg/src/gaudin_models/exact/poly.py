"""Dense univariate polynomials and rational functions over an exact field.

Coefficients may be ``Fraction`` or ``AlgebraicNumber``; the only
requirements are field arithmetic and comparison with ``0``.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

MAX_DEGREE = 256


def _scalar(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class Poly:
    """Polynomial in one variable, coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) - 1 > MAX_DEGREE:
            raise OverflowError(f"polynomial degree {len(cs) - 1} exceeds cap {MAX_DEGREE}")
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1]

    def valuation(self) -> int:
        """Order of vanishing at 0."""
        if not self.coeffs:
            raise ValueError("valuation of the zero polynomial")
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        raise AssertionError("unreachable")

    def low(self):
        """Lowest-order nonzero coefficient."""
        return self.coeffs[self.valuation()]

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, _RationalABC)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return Poly([other]) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.lead
        for k in range(len(rem) - len(other.coeffs), -1, -1):
            c = rem[k + other.degree] / lead
            q[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(q), Poly(rem)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return Poly([c * inv for c in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by x**k; negative k drops low terms that must be zero."""
        if k >= 0:
            return Poly([0] * k + list(self.coeffs))
        if any(c != 0 for c in self.coeffs[:-k]):
            raise ValueError("cannot divide: low-order terms are nonzero")
        return Poly(self.coeffs[-k:])

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def to_str(self, var: str = "eps") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = str(c)
            if k == 0:
                terms.append(cs)
                continue
            mono = var if k == 1 else f"{var}^{k}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                if not _is_atomic(cs):
                    cs = f"({cs})"
                terms.append(f"{cs}*{mono}")
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out


def _is_atomic(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return "+" not in body and "-" not in body and "/" not in body


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (the zero polynomial only if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lead
    return r0 * inv, s0 * inv, t0 * inv


class Infinite:
    """Marker for a pole at the evaluation point."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = Infinite()


class RationalFunction:
    """Quotient of polynomials in eps, kept reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly([num])
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.lead
        if lead != 1:
            inv = 1 / lead
            num, den = num * inv, den * inv
        self.num, self.den = num, den

    @classmethod
    def eps(cls) -> "RationalFunction":
        return cls(Poly([0, 1]))

    @staticmethod
    def _coerce(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Poly):
            return RationalFunction(x)
        if isinstance(x, (int, _RationalABC)) or hasattr(x, "field"):
            return RationalFunction(Poly([x]))
        return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def valuation(self) -> int:
        return self.num.valuation() - self.den.valuation()

    def constant(self):
        """The value as a scalar when this function is constant, else None."""
        if self.den.degree == 0 and self.num.degree <= 0:
            return self.num.coeffs[0] if self.num.coeffs else Fraction(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (1 / self) ** (-k)
        out = RationalFunction(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        c = self.constant()
        if c is not None:
            return hash(c)
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return self.num(x) / d

    def scale_eps(self, c) -> "RationalFunction":
        """Substitute eps -> c*eps."""
        def sub(p: Poly) -> Poly:
            return Poly([a * (c ** k) for k, a in enumerate(p.coeffs)])
        return RationalFunction(sub(self.num), sub(self.den))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        n = self.num.to_str()
        if self.den == Poly([1]):
            return n
        d = self.den.to_str()
        if len(self.num.coeffs) > 1 or not _is_atomic(n):
            n = f"({n})"
        if len(self.den.coeffs) > 1 or not _is_atomic(d):
            d = f"({d})"
        return f"{n}/{d}"


EPS = RationalFunction.eps()


def limit_at_zero(f):
    """Value of ``f`` at eps = 0, or ``INFINITE`` if a pole remains."""
    if not isinstance(f, RationalFunction):
        return _scalar(f)
    if f.is_zero():
        return Fraction(0)
    v = f.valuation()
    if v > 0:
        return Fraction(0)
    if v < 0:
        return INFINITE
    return f.num.low() / f.den.low()


def leading_value(f, order: int):
    """Coefficient of eps**order in the Laurent expansion, given val(f) >= order."""
    if not isinstance(f, RationalFunction):
        f = RationalFunction(f)
    if f.is_zero():
        return Fraction(0)
    v = f.valuation()
    if v < order:
        raise ValueError("valuation below requested order")
    if v > order:
        return Fraction(0)
    return f.num.low() / f.den.low()


def valuation(f) -> int | None:
    """eps-adic valuation; None for zero."""
    if isinstance(f, RationalFunction):
        return None if f.is_zero() else f.valuation()
    return None if f == 0 else 0
