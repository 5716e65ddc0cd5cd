"""Quadratic and metaplectic characters of Gamma_0(N).

``CharacterSpec`` packages the characters that occur for discriminant forms
and eta quotients: a power of the theta multiplier chi_theta times a
quadratic symbol chi_m(gamma) = (d|m).  Evaluation is closed-form on any
group element; values at the parabolic generator of each cusp and at
elliptic points also have direct closed forms which the test-suite checks
against one another.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import gcd

from .cyclotomic import RootOfUnity
from .gamma0 import MetaplecticElement, parabolic_generator
from .intmath import factorize, kronecker, squarefree_part, valuation

__all__ = [
    "CharacterSpec",
    "chi_theta",
    "chi_eta",
    "char_eval",
    "char_at_cusp",
    "char_at_cusp_direct",
    "char_at_elliptic",
    "spec_equal",
]


def chi_theta(g: MetaplecticElement) -> RootOfUnity:
    """The multiplier of theta(tau) = sum q^(n^2) on the double cover of Gamma_0(4)."""
    a, b, c, d = g.matrix
    if c % 4:
        raise ValueError("chi_theta lives on Gamma_0(4)")
    k = kronecker(c, d)
    if d % 4 == 1:
        val = RootOfUnity(0 if k == 1 else Fraction(1, 2))
    else:
        # -i times the symbol
        val = RootOfUnity(Fraction(3, 4) if k == 1 else Fraction(1, 4))
    if g.branch == -1:
        val = val * RootOfUnity(Fraction(1, 2))
    return val


def chi_eta(g: MetaplecticElement) -> RootOfUnity:
    """The eta multiplier: a character of the full metaplectic group with
    chi_eta(T) = e(1/24), chi_eta(S) = e(-1/8) and chi_eta(Z) = -i.

    The rows with c > 0 (and the c = 0, d > 0 translations) are evaluated
    by the classical transformation formula; everything else reduces
    through the center, chi_eta(g) = chi_eta(Z) chi_eta(Z^-1 g).
    """
    a, b, c, d = g.matrix
    if c < 0 or (c == 0 and d < 0):
        # chi_eta(Z) = -i = e(3/4), pinned by chi_eta(S)^2 = chi_eta(Z)
        z = MetaplecticElement.Z()
        return RootOfUnity(Fraction(3, 4)) * chi_eta(z.inverse() * g)
    if c % 2:
        sym = kronecker(d, c)
        x = Fraction(-3 * c + b * d * (1 - c * c) + c * (a + d), 24)
    else:
        sym = kronecker(c, d)
        x = Fraction(3 * d - 3 + a * c * (1 - d * d) + d * (b - c), 24)
    val = RootOfUnity(x)
    if sym == -1:
        val = val * RootOfUnity(Fraction(1, 2))
    if g.branch == -1:
        val = val * RootOfUnity(Fraction(1, 2))
    return val


@dataclass(frozen=True)
class CharacterSpec:
    """chi_theta^theta_exp * chi_m at level N on the double cover of Gamma_0(N)."""

    N: int
    theta_exp: int = 0
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "theta_exp", self.theta_exp % 4)
        if self.m <= 0:
            raise ValueError("the quadratic modulus must be positive")
        if self.theta_exp % 4 and self.N % 4:
            raise ValueError("chi_theta powers need 4 | N")
        for p, e in factorize(self.m):
            if e % 2 == 0:
                continue
            if p == 2:
                if self.N % 8:
                    raise ValueError("chi_2 needs 8 | N")
            elif self.N % p:
                raise ValueError(f"odd prime {p} of the quadratic modulus must divide N")

    @staticmethod
    def trivial(N: int = 1) -> "CharacterSpec":
        return CharacterSpec(N, 0, 1)

    def is_trivial_values(self) -> bool:
        """True when the character is identically 1 on the double cover."""
        return self.theta_exp == 0 and _m_is_trivial(self.m, self.N)

    def at_level(self, N: int) -> "CharacterSpec":
        """The same character viewed at a larger level (N multiple of self.N)."""
        if N % self.N:
            raise ValueError("new level must be a multiple")
        return CharacterSpec(N, self.theta_exp, self.m)

    def conjugate(self) -> "CharacterSpec":
        return CharacterSpec(self.N, -self.theta_exp % 4, self.m)

    def __mul__(self, other: "CharacterSpec") -> "CharacterSpec":
        if other.N != self.N:
            raise ValueError("levels differ")
        return CharacterSpec(self.N, self.theta_exp + other.theta_exp, self.m * other.m)

    def value_at_Z(self) -> RootOfUnity:
        v = RootOfUnity(Fraction(-self.theta_exp, 4))
        if kronecker(-1, self.m) == -1:
            v = v * RootOfUnity(Fraction(1, 2))
        return v

    def weight_consistent(self, k: Fraction) -> bool:
        """Whether a weight-k form can carry this character (Z-action match)."""
        return self.value_at_Z() == RootOfUnity(Fraction(-k, 2) % 1)

    def __repr__(self):
        parts = []
        if self.theta_exp:
            parts.append(f"chi_theta^{self.theta_exp}")
        if self.m != 1:
            parts.append(f"chi_{self.m}")
        return "*".join(parts) if parts else "1"


def _m_is_trivial(m: int, N: int) -> bool:
    sf = squarefree_part(Fraction(m))
    return sf == 1


def char_eval(spec: CharacterSpec, g: MetaplecticElement) -> RootOfUnity:
    """chi_theta^e(g) * kronecker(d, m) for g in the double cover of Gamma_0(N)."""
    a, b, c, d = g.matrix
    if c % spec.N:
        raise ValueError(f"matrix is not in Gamma_0({spec.N})")
    val = RootOfUnity(0)
    e = spec.theta_exp % 4
    if e:
        val = chi_theta(g) ** e
    # chi_m sees only the matrix; the branch enters through chi_theta alone
    sym = kronecker(d, spec.m)
    if sym == 0:
        raise ValueError("character value is not a unit (gcd(d, m) > 1)")
    if sym == -1:
        val = val * RootOfUnity(Fraction(1, 2))
    return val


def char_at_cusp_direct(spec: CharacterSpec, a: int, c: int) -> RootOfUnity:
    """Evaluation at the parabolic generator of the cusp a/c, elementwise."""
    return char_eval(spec, parabolic_generator(spec.N, a, c))


def char_at_cusp(spec: CharacterSpec, a: int, c: int) -> RootOfUnity:
    """Closed-form value of the character at the cusp's parabolic generator.

    chi_p is 1 at every cusp for odd p | N; chi_2 is -1 exactly when
    2||c with 8||N, or 4||c with 8||N or 16||N; chi_theta depends on the
    2-adic shape of c and N as below.
    """
    N = spec.N
    if gcd(a, c) != 1:
        raise ValueError("cusp must be in lowest terms")
    t = N // gcd(c * c, N)
    val = RootOfUnity(0)
    v2m = valuation(spec.m, 2) if spec.m > 1 else 0
    if v2m % 2:
        c2 = valuation(c, 2) if c else 64
        n2 = valuation(N, 2)
        if (c2 == 1 and n2 == 3) or (c2 == 2 and n2 in (3, 4)):
            val = val * RootOfUnity(Fraction(1, 2))
    e = spec.theta_exp % 4
    if e:
        c2 = valuation(c, 2) if c else 64
        n2 = valuation(N, 2)
        if c2 == 1 and n2 == 2:
            th = RootOfUnity(Fraction(1, 2)) * RootOfUnity(Fraction(t, 4))  # -i^t
        elif c2 == 1 and n2 == 3:
            th = RootOfUnity(Fraction(1, 2))
        else:
            th = RootOfUnity(0)
        val = val * th**e
    return val


def char_at_elliptic(spec: CharacterSpec, order: int) -> RootOfUnity:
    """Value at a primitive elliptic element of order 2 or 3.

    Requires the theta and chi_2 parts to be trivial (they force 4 | N,
    which excludes elliptic points).  For each odd prime p with odd
    multiplicity in m the factor is (-1)^((p-1)/4) at order 2 and
    (-1)^((p-1)/2) at order 3.
    """
    if order not in (2, 3):
        raise ValueError("elliptic points have order 2 or 3")
    if spec.theta_exp % 4:
        raise ValueError("no elliptic points when chi_theta is present (4 | N)")
    sign = 1
    for p, e in factorize(spec.m):
        if e % 2 == 0:
            continue
        if p == 2:
            raise ValueError("no elliptic points when chi_2 is present (8 | N)")
        if order == 2:
            if (p - 1) % 4:
                raise ValueError("order-2 points need p = 1 mod 4 for p | N")
            sign *= (-1) ** (((p - 1) // 4) % 2)
        else:
            sign *= (-1) ** (((p - 1) // 2) % 2)
    return RootOfUnity(0 if sign == 1 else Fraction(1, 2))


@cache
def _unit_transversal(modulus: int) -> tuple[int, ...]:
    return tuple(u for u in range(1, modulus + 1) if gcd(u, modulus) == 1)


def spec_equal(s1: CharacterSpec, s2: CharacterSpec) -> bool:
    """Same character of the double cover of Gamma_0(N)?

    theta exponents must agree mod 4; the quadratic parts agree iff
    (d | m1 m2) = 1 for every d prime to 8 N m1 m2.
    """
    if s1.N != s2.N:
        return False
    if s1.theta_exp % 4 != s2.theta_exp % 4:
        return False
    m = s1.m * s2.m
    mod = 8 * s1.N * m
    return all(kronecker(d, m) == 1 for d in _unit_transversal(mod))
