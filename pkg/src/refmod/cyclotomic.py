"""Exact roots of unity and cyclotomic numbers.

A ``RootOfUnity`` is e(x) = exp(2*pi*i*x) for an exact rational x mod 1.
A ``Cyclo`` is a rational linear combination of n-th roots of unity kept in a
canonical basis, so equality and zero tests are exact dictionary
comparisons.  Square roots of positive integers are available as explicit
quadratic Gauss sums, which keeps every computation inside one cyclotomic
ring (no radicals, no floats).
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import cache
from math import gcd

from .intmath import factorize, inverse_mod, lcm, squarefree_part

__all__ = ["RootOfUnity", "Cyclo", "sqrt_cyclotomic"]


class RootOfUnity:
    """e(exponent) with the exponent an exact rational taken mod 1."""

    __slots__ = ("exponent",)

    def __init__(self, exponent: Fraction | int):
        self.exponent = Fraction(exponent) % 1

    @staticmethod
    def one() -> "RootOfUnity":
        return RootOfUnity(0)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.exponent + other.exponent)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.exponent * k)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity(-self.exponent)

    def __eq__(self, other) -> bool:
        if isinstance(other, RootOfUnity):
            return self.exponent == other.exponent
        if other == 1:
            return self.exponent == 0
        if other == -1:
            return self.exponent == Fraction(1, 2)
        return NotImplemented

    def __hash__(self):
        return hash(("RootOfUnity", self.exponent))

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def is_real(self) -> bool:
        return self.exponent.denominator in (1, 2)

    def real_value(self) -> int:
        """+-1 for the two real roots of unity."""
        if self.exponent == 0:
            return 1
        if self.exponent == Fraction(1, 2):
            return -1
        raise ValueError("not a real root of unity")

    def as_cyclo(self) -> "Cyclo":
        return Cyclo.root(self.exponent)

    def as_complex(self) -> complex:
        return cmath.exp(2j * cmath.pi * float(self.exponent))

    def __repr__(self):
        return f"e({self.exponent})"


@cache
def _reduction_data(n: int):
    """Per prime-power rewrite data for order n.

    For each maximal prime power p^a | n the basis keeps exponents whose
    top base-p digit (at position a-1) is < p-1; the relation
    sum_j e((k + j*p^(a-1)*u)/n) = 0 rewrites a forbidden digit, where
    u = 1 mod p^a and 0 mod n/p^a.
    """
    data = []
    for p, a in factorize(n):
        q = p**a
        m = n // q
        u = (m * inverse_mod(m, q)) % n if m > 1 else 1
        step = (u * p ** (a - 1)) % n
        data.append((p, q, p ** (a - 1), step))
    return tuple(data)


def _reduce(n: int, coeffs: dict[int, Fraction]) -> dict[int, Fraction]:
    """Rewrite an exponent dict into the canonical transversal, dropping zeros."""
    work = {k % n: v for k, v in coeffs.items() if v}
    for p, q, pa1, step in _reduction_data(n):
        out: dict[int, Fraction] = {}
        for k, v in work.items():
            digit = (k % q) // pa1
            if digit == p - 1:
                for j in range(p - 1):
                    k2 = (k + (j - (p - 1)) * step) % n
                    out[k2] = out.get(k2, 0) - v
            else:
                out[k] = out.get(k, 0) + v
        work = {k: v for k, v in out.items() if v}
    return work


class Cyclo:
    """An element of Q(zeta_n), stored as a canonical exponent -> rational map."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: dict[int, Fraction], *, reduce: bool = True):
        self.n = n
        if reduce:
            coeffs = _reduce(n, {k: Fraction(v) for k, v in coeffs.items()})
        self.coeffs = coeffs

    # --- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Cyclo":
        return Cyclo(1, {}, reduce=False)

    @staticmethod
    def from_rational(x) -> "Cyclo":
        x = Fraction(x)
        return Cyclo(1, {0: x} if x else {}, reduce=False)

    @staticmethod
    def root(exponent: Fraction | int) -> "Cyclo":
        """e(exponent) for a rational exponent."""
        x = Fraction(exponent) % 1
        return Cyclo(x.denominator, {x.numerator: Fraction(1)})

    @staticmethod
    def coerce(x) -> "Cyclo":
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, RootOfUnity):
            return x.as_cyclo()
        return Cyclo.from_rational(x)

    # --- ring structure -----------------------------------------------

    def promote(self, m: int) -> "Cyclo":
        """The same number inside Q(zeta_m); n must divide m."""
        if m == self.n:
            return self
        s = m // self.n
        if s * self.n != m:
            raise ValueError("can only promote to a multiple order")
        return Cyclo(m, {k * s: v for k, v in self.coeffs.items()})

    def _pair(self, other) -> tuple["Cyclo", "Cyclo"]:
        other = Cyclo.coerce(other)
        m = lcm(self.n, other.n)
        return self.promote(m), other.promote(m)

    def __add__(self, other):
        a, b = self._pair(other)
        out = dict(a.coeffs)
        for k, v in b.coeffs.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return Cyclo(a.n, out, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, {k: -v for k, v in self.coeffs.items()}, reduce=False)

    def __sub__(self, other):
        return self + (-Cyclo.coerce(other))

    def __rsub__(self, other):
        return Cyclo.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Cyclo.zero()
            return Cyclo(self.n, {k: v * other for k, v in self.coeffs.items()}, reduce=False)
        a, b = self._pair(other)
        out: dict[int, Fraction] = {}
        n = a.n
        for k1, v1 in a.coeffs.items():
            for k2, v2 in b.coeffs.items():
                k = k1 + k2
                if k >= n:
                    k -= n
                out[k] = out.get(k, 0) + v1 * v2
        return Cyclo(n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return (self**(-k)).inverse()
        result = Cyclo.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Cyclo":
        return Cyclo(self.n, {(-k) % self.n: v for k, v in self.coeffs.items()})

    def galois(self, t: int) -> "Cyclo":
        """The automorphism e(k/n) -> e(tk/n); t must be coprime to n."""
        if gcd(t, self.n) != 1:
            raise ValueError("galois index must be coprime to the order")
        return Cyclo(self.n, {(k * t) % self.n: v for k, v in self.coeffs.items()})

    def inverse(self) -> "Cyclo":
        """Multiplicative inverse via the product of Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        conj = Cyclo.from_rational(1)
        for t in range(2, self.n + 1):
            if gcd(t, self.n) == 1:
                conj = conj * self.galois(t)
        norm = (self * conj).rational_value()
        return conj * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * Cyclo.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Cyclo.coerce(other) * self.inverse()

    # --- predicates and extractors -------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {0}

    def rational_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.coeffs[0]

    def as_root_of_unity(self) -> RootOfUnity:
        """Inverse of RootOfUnity.as_cyclo for actual roots of unity."""
        for k in range(self.n):
            if self == Cyclo.root(Fraction(k, self.n)):
                return RootOfUnity(Fraction(k, self.n))
        raise ValueError("not a root of unity")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, RootOfUnity, Cyclo)):
            a, b = self._pair(other)
            return a.coeffs == b.coeffs
        return NotImplemented

    def __bool__(self):
        return not self.is_zero()

    def as_complex(self) -> complex:
        """Float embedding, for diagnostics only."""
        return sum(
            float(v) * cmath.exp(2j * cmath.pi * k / self.n) for k, v in self.coeffs.items()
        ) + 0j

    def __repr__(self):
        if self.is_zero():
            return "Cyclo(0)"
        parts = [f"{v}*e({k}/{self.n})" for k, v in sorted(self.coeffs.items())]
        return "Cyclo(" + " + ".join(parts) + ")"


@cache
def sqrt_cyclotomic(n: int) -> Cyclo:
    """The positive square root of a positive integer as an exact cyclotomic.

    Uses e(1/8) + e(-1/8) for sqrt(2) and quadratic Gauss sums
    sum_x e(x^2/p) for the odd primes, so sqrt(n) lives in Q(zeta_{4n}).
    """
    if n <= 0:
        raise ValueError("need a positive integer")
    m = squarefree_part(n)
    f2 = n // m
    # n = (f^2) * m with f = sqrt(f2)
    f = 1
    for p, e in factorize(f2):
        f *= p ** (e // 2)
    out = Cyclo.from_rational(f)
    if m % 2 == 0:
        out = out * (Cyclo.root(Fraction(1, 8)) + Cyclo.root(Fraction(-1, 8)))
        m //= 2
    for p, _ in factorize(m):
        g = Cyclo.zero()
        for x in range(p):
            g = g + Cyclo.root(Fraction(x * x, p))
        if p % 4 == 3:
            g = g * Cyclo.root(Fraction(-1, 4))
        out = out * g
    return out
