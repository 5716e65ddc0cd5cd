"""Geometry of Gamma_0(N) and its metaplectic double cover.

Elements of the double cover carry a matrix and a sign relative to the
principal branch of sqrt(c*tau + d); multiplication evaluates the branch
cocycle exactly through sign tests on Gaussian integers, so no floating
point enters.  The rest of the module holds index, elliptic point and cusp
data, canonical cusp representatives, the parabolic generator attached to
each cusp and the theta lift of Gamma_1(4)-type matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import gcd

from .intmath import divisors, factorize, inverse_mod, kronecker

__all__ = [
    "MetaplecticElement",
    "CuspClass",
    "Gamma0Data",
    "gamma0_data",
    "cusp_representatives",
    "cusp_class_of",
    "cusp_width",
    "parabolic_generator",
    "mp_lift",
    "word_to_element",
    "matrix_word",
    "element_from_word",
    "random_gamma0_element",
    "cusp_invariants",
    "scaling_matrix",
]


def _arg_class(re, im) -> str:
    """Which part of (-pi, pi] the argument of re + im*i lies in."""
    if im > 0:
        return "pos"          # (0, pi)
    if im < 0:
        return "neg"          # (-pi, 0)
    if re > 0:
        return "zero"
    if re < 0:
        return "pi"
    raise ZeroDivisionError("argument of zero")


def _sqrt_defect(x_re, x_im, y_re, y_im, u_re, u_im) -> int:
    """Sign s with sqrt(x)*sqrt(y) = s*sqrt(x*y), where u = x*y (up to a
    positive real factor).  Principal branches throughout."""
    cx = _arg_class(x_re, x_im)
    cy = _arg_class(y_re, y_im)
    if cx == "zero" or cy == "zero":
        return 1
    if cx == "pi" and cy == "pi":
        return -1
    if cx == "pi":
        return -1 if cy == "pos" else 1
    if cy == "pi":
        return -1 if cx == "pos" else 1
    if cx != cy:
        return 1
    cu = _arg_class(u_re, u_im)
    if cx == "pos":
        # arg x + arg y in (0, 2pi); defect iff the sum exceeds pi
        return -1 if cu == "neg" else 1
    # both negative: sum in (-2pi, 0); defect iff the sum is <= -pi
    return -1 if cu in ("pos", "pi") else 1


@dataclass(frozen=True)
class MetaplecticElement:
    """(matrix, branch * sqrt(c*tau + d)) in the metaplectic double cover."""

    a: int
    b: int
    c: int
    d: int
    branch: int = 1

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix must have determinant 1")
        if self.branch not in (1, -1):
            raise ValueError("branch must be +-1")

    # --- distinguished elements -------------------------------------------

    @staticmethod
    def identity() -> "MetaplecticElement":
        return MetaplecticElement(1, 0, 0, 1, 1)

    @staticmethod
    def T(n: int = 1) -> "MetaplecticElement":
        return MetaplecticElement(1, n, 0, 1, 1)

    @staticmethod
    def S() -> "MetaplecticElement":
        return MetaplecticElement(0, -1, 1, 0, 1)

    @staticmethod
    def Z() -> "MetaplecticElement":
        # sqrt(-1) = i is principal, so the branch is +1
        return MetaplecticElement(-1, 0, 0, -1, 1)

    # --- group structure ---------------------------------------------------

    @property
    def matrix(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "MetaplecticElement") -> "MetaplecticElement":
        a1, b1, c1, d1 = self.matrix
        a2, b2, c2, d2 = other.matrix
        a = a1 * a2 + b1 * c2
        b = a1 * b2 + b1 * d2
        c = c1 * a2 + d1 * c2
        d = c1 * b2 + d1 * d2
        # branch: sqrt(j_self(other tau)) * sqrt(j_other(tau)) vs sqrt(j_prod(tau))
        # with j_self(other tau) = j_prod/j_other; evaluate arg tests at tau = i
        u_re, u_im = d, c              # j_prod(i)  = d + c i
        v_re, v_im = d2, c2            # j_other(i) = d2 + c2 i
        # x = u / v has the argument of u * conj(v)
        x_re = u_re * v_re + u_im * v_im
        x_im = u_im * v_re - u_re * v_im
        s = _sqrt_defect(x_re, x_im, v_re, v_im, u_re, u_im)
        return MetaplecticElement(a, b, c, d, self.branch * other.branch * s)

    def inverse(self) -> "MetaplecticElement":
        cand = MetaplecticElement(self.d, -self.b, -self.c, self.a, 1)
        if (self * cand) == MetaplecticElement.identity():
            return cand
        return MetaplecticElement(self.d, -self.b, -self.c, self.a, -1)

    def __pow__(self, n: int) -> "MetaplecticElement":
        if n < 0:
            return self.inverse() ** (-n)
        out = MetaplecticElement.identity()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sqrt_factor_at(self, tau: complex) -> complex:
        """branch * sqrt(c tau + d) with the principal square root (diagnostic)."""
        import cmath

        return self.branch * cmath.sqrt(self.c * tau + self.d)

    def apply(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def __repr__(self):
        sign = "+" if self.branch == 1 else "-"
        return f"[{self.a},{self.b};{self.c},{self.d}|{sign}]"


def word_to_element(word: str, T_power: int = 1) -> MetaplecticElement:
    """Product of the letters of ``word`` over {S, T, t} (t means T^-1)."""
    out = MetaplecticElement.identity()
    for ch in word:
        if ch == "S":
            out = out * MetaplecticElement.S()
        elif ch == "T":
            out = out * MetaplecticElement.T(T_power)
        elif ch == "t":
            out = out * MetaplecticElement.T(-T_power)
        else:
            raise ValueError(f"unknown letter {ch!r}")
    return out


def matrix_word(a: int, b: int, c: int, d: int) -> list[tuple[str, int]]:
    """Express the matrix as a word [("T", n), ("S", 1), ...] in S and T.

    The metaplectic product of the lifted letters has the given matrix; its
    branch is whatever the cocycle produces.
    """
    if a * d - b * c != 1:
        raise ValueError("determinant must be 1")
    word: list[tuple[str, int]] = []
    # peel Euclid steps: left-multiplying by T^-q subtracts q * (row 2) from row 1
    while c != 0:
        q = a // c  # floor division keeps |a mod c| < |c|
        if q:
            word.append(("T", q))
            a, b = a - q * c, b - q * d
        word.append(("S", 1))
        # S^-1 * M: S^-1 = (0,1;-1,0): new rows (c, d), (-a, -b)
        a, b, c, d = c, d, -a, -b
    # now c == 0, a == d == +-1
    if a == 1:
        if b:
            word.append(("T", b))
    else:
        # -I = S^2 up to the center; fold via two S letters and T's
        word.append(("T", -b))
        word.append(("S", 1))
        word.append(("S", 1))
    return word


def element_from_word(word: list[tuple[str, int]]) -> MetaplecticElement:
    out = MetaplecticElement.identity()
    for letter, n in word:
        if letter == "T":
            out = out * MetaplecticElement.T(n)
        elif letter == "S":
            out = out * (MetaplecticElement.S() ** n)
        else:
            raise ValueError(letter)
    return out


# --- cusps and group data -----------------------------------------------------


def cusp_width(N: int, c: int) -> int:
    return N // gcd(c * c, N)


def cusp_invariants(N: int, a: int, c: int) -> tuple[int, int]:
    """The pair (gcd(c,N), a*(c/g)^(-1) mod gcd(g, N/g)) classifying the cusp."""
    if c == 0:
        a, c = 1, N  # i-infinity behaves like 1/N
    g = gcd(c, N)
    m = gcd(g, N // g)
    if m == 1:
        return g, 0
    u = inverse_mod((c // g) % m, m)
    return g, (a * u) % m


@dataclass(frozen=True)
class CuspClass:
    N: int
    a: int
    c: int
    width: int
    invariants: tuple[int, int]

    def __repr__(self):
        return f"Cusp({self.label()} of Gamma0({self.N}), width {self.width})"

    def label(self) -> str:
        if self.c == 0 or self.c == self.N:
            return "oo"
        return f"{self.a}/{self.c}"


def cusp_class_of(N: int, a: int, c: int) -> tuple[int, int]:
    if gcd(a, c) != 1:
        raise ValueError("cusp must be given in lowest terms")
    return cusp_invariants(N, a, c)


@cache
def cusp_representatives(N: int) -> tuple[CuspClass, ...]:
    """One representative a/c per cusp class: c | N and a mod gcd(c, N/c),
    with a lifted so that gcd(a, c) = 1."""
    out = []
    for c in divisors(N):
        m = gcd(c, N // c)
        seen = set()
        for a0 in range(1, m + 1):
            if gcd(a0, m) != 1:
                continue
            # smallest positive a = a0 mod m with gcd(a, c) = 1
            a = a0
            while gcd(a, c) != 1:
                a += m
            inv = cusp_invariants(N, a, c)
            if inv in seen:
                continue
            seen.add(inv)
            out.append(CuspClass(N, a, c, cusp_width(N, c), inv))
    return tuple(out)


@dataclass(frozen=True)
class Gamma0Data:
    N: int
    index: int
    nu2: int
    nu3: int
    cusps: tuple[CuspClass, ...]
    genus: int

    @property
    def nu_inf(self) -> int:
        return len(self.cusps)


@cache
def gamma0_data(N: int) -> Gamma0Data:
    if N < 1:
        raise ValueError("level must be positive")
    index = N
    for p, _ in factorize(N):
        index = index // p * (p + 1)
    if N % 4 == 0:
        nu2 = 0
    else:
        nu2 = 1
        for p, _ in factorize(N):
            if p != 2:
                nu2 *= 1 + kronecker(-1, p)
    if N % 9 == 0:
        nu3 = 0
    else:
        nu3 = 1
        for p, _ in factorize(N):
            nu3 *= 1 + kronecker(-3, p)
    cusps = cusp_representatives(N)
    genus_frac = 1 + Fraction(index, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(len(cusps), 2)
    assert genus_frac.denominator == 1
    return Gamma0Data(N, index, nu2, nu3, cusps, int(genus_frac))


def parabolic_generator(N: int, a: int, c: int) -> MetaplecticElement:
    """The primitive parabolic element fixing the cusp a/c, with its exact
    branch: ((1+act, -a^2 t; c^2 t, 1-act), +sqrt) where t = N/(c^2, N)."""
    if gcd(a, c) != 1:
        raise ValueError("cusp must be in lowest terms")
    t = N // gcd(c * c, N)
    return MetaplecticElement(1 + a * c * t, -a * a * t, c * c * t, 1 - a * c * t, 1)


def mp_lift(a: int, b: int, c: int, d: int, N: int) -> MetaplecticElement:
    """Lift of a Gamma_1(4) cap Gamma_0(N) matrix: branch kronecker(c, d)."""
    if N % 4:
        raise ValueError("the lift needs 4 | N")
    if c % N or a % 4 != 1 or d % 4 != 1:
        raise ValueError("matrix must lie in Gamma_1(4) cap Gamma_0(N)")
    return MetaplecticElement(a, b, c, d, kronecker(c, d))


def random_gamma0_element(N: int, rng, size: int = 8) -> MetaplecticElement:
    """A pseudorandom element of the double cover of Gamma_0(N)."""
    out = MetaplecticElement.identity()
    for _ in range(size):
        choice = rng.randrange(3)
        if choice == 0:
            out = out * MetaplecticElement.T(rng.randrange(-3, 4))
        elif choice == 1:
            out = out * MetaplecticElement(1, 0, N * rng.randrange(-2, 3), 1, 1)
        else:
            out = out * MetaplecticElement.Z()
    return out


def scaling_matrix(a: int, c: int) -> tuple[int, int, int, int]:
    """Some integer matrix (a, b; c, d) of determinant 1 sending oo to a/c."""
    if gcd(a, c) != 1:
        raise ValueError("need gcd(a, c) = 1")
    if c == 0:
        return (1, 0, 0, 1) if a == 1 else (-1, 0, 0, -1)
    d = inverse_mod(a, abs(c)) if c else 0
    # solve a d - b c = 1
    d = d if c > 0 else d
    b = (a * d - 1) // c
    assert a * d - b * c == 1
    return (a, b, c, d)
