"""Bernoulli numbers and Dirichlet characters, exactly.

Characters are stored by their values on explicit generators of the unit
group; values are roots of unity, so products, conductors and the
generalized Bernoulli number B_{1,chi} all stay exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import comb, gcd

from .cyclotomic import Cyclo, RootOfUnity
from .intmath import divisors, kronecker, unit_group_generators

__all__ = [
    "kronecker",
    "bernoulli",
    "bernoulli_list",
    "DirichletCharacter",
    "dirichlet_characters",
    "generalized_bernoulli_b1",
]


def bernoulli_list(n: int) -> list[Fraction]:
    """B_0 .. B_n with B_1 = -1/2, via sum_{j<=m} C(m+1, j) B_j = 0."""
    out = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(Fraction(comb(m + 1, j)) * out[j] for j in range(m))
        out.append(-s / (m + 1))
    return out


def bernoulli(k: int) -> Fraction:
    """The Bernoulli number B_k for even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError("Bernoulli numbers are requested for even k >= 2 only")
    return bernoulli_list(k)[k]


class DirichletCharacter:
    """A character of (Z/modulus)*, zero off the units."""

    __slots__ = ("modulus", "_gens", "_orders", "_exps", "_table")

    def __init__(self, modulus: int, gen_exponents: tuple[int, ...]):
        self.modulus = modulus
        gens = unit_group_generators(modulus)
        self._gens = tuple(g for g, _ in gens)
        self._orders = tuple(o for _, o in gens)
        if len(gen_exponents) != len(gens):
            raise ValueError("one exponent per unit-group generator expected")
        self._exps = tuple(e % o for e, (_, o) in zip(gen_exponents, gens))
        self._table = self._build_table()

    def _build_table(self) -> dict[int, RootOfUnity]:
        table = {1 % self.modulus: RootOfUnity(0)}
        # breadth-first product over the generator powers
        items = [(1 % self.modulus, Fraction(0))]
        for g, order, e in zip(self._gens, self._orders, self._exps):
            step = Fraction(e, order)
            new = []
            for a, x in items:
                b, y = a, x
                for _ in range(order):
                    new.append((b, y % 1))
                    b = (b * g) % self.modulus
                    y += step
            items = new
        return {a: RootOfUnity(x) for a, x in items}

    # --- basic data ----------------------------------------------------

    def __call__(self, n: int) -> RootOfUnity | int:
        """chi(n): a RootOfUnity on units, the integer 0 otherwise."""
        n %= self.modulus
        if self.modulus == 1:
            return RootOfUnity(0)
        if gcd(n, self.modulus) != 1:
            return 0
        return self._table[n]

    def value_number(self, n: int):
        """chi(n) as a Fraction (real characters) or Cyclo, 0 off units."""
        v = self(n)
        if v == 0:
            return Fraction(0)
        if v.is_real():
            return Fraction(v.real_value())
        return v.as_cyclo()

    def is_principal(self) -> bool:
        return all(e == 0 for e in self._exps)

    def is_even(self) -> bool:
        v = self(-1)
        return v != 0 and v.exponent == 0

    def is_odd(self) -> bool:
        v = self(-1)
        return v != 0 and v.exponent == Fraction(1, 2)

    def is_real(self) -> bool:
        return all(v.is_real() for v in self._table.values())

    def order(self) -> int:
        out = 1
        for e, o in zip(self._exps, self._orders):
            d = o // gcd(e, o)
            out = out * d // gcd(out, d)
        return out

    @property
    def conductor(self) -> int:
        """Smallest f | modulus with chi trivial on units = 1 mod f."""
        for f in divisors(self.modulus):
            if all(
                self(a).exponent == 0
                for a in range(1, self.modulus + 1)
                if a % f == 1 % f and gcd(a, self.modulus) == 1
            ):
                return f
        raise AssertionError("unreachable")

    def primitive(self) -> "DirichletCharacter":
        """The primitive character inducing this one."""
        f = self.conductor
        for psi in dirichlet_characters(f):
            if all(
                psi(a) == self(a)
                for a in range(1, self.modulus + 1)
                if gcd(a, self.modulus) == 1
            ):
                return psi
        raise AssertionError("unreachable")

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if self.modulus != other.modulus:
            raise ValueError("characters must share a modulus")
        return DirichletCharacter(
            self.modulus, tuple(a + b for a, b in zip(self._exps, other._exps))
        )

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(-e for e in self._exps))

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.modulus == other.modulus and self._exps == other._exps

    def __hash__(self):
        return hash((self.modulus, self._exps))

    def __repr__(self):
        return f"DirichletCharacter(mod {self.modulus}, exps {self._exps})"


@cache
def dirichlet_characters(modulus: int) -> tuple[DirichletCharacter, ...]:
    """All characters modulo ``modulus`` (phi(modulus) of them)."""
    gens = unit_group_generators(modulus)
    chars = []

    def rec(prefix: tuple[int, ...]):
        if len(prefix) == len(gens):
            chars.append(DirichletCharacter(modulus, prefix))
            return
        for e in range(gens[len(prefix)][1]):
            rec(prefix + (e,))

    rec(())
    return tuple(chars)


def quadratic_character(m: int, modulus: int) -> DirichletCharacter:
    """The character n -> kronecker(n, m) viewed modulo ``modulus``."""
    for chi in dirichlet_characters(modulus):
        if all(
            chi.value_number(a) == kronecker(a, m)
            for a in range(1, modulus + 1)
            if gcd(a, modulus) == 1
        ):
            return chi
    raise ValueError(f"kronecker(., {m}) is not a character mod {modulus}")


def generalized_bernoulli_b1(chi: DirichletCharacter):
    """B_{1,chi} = sum_{0<n<N} chi(n) n / N for odd non-principal chi.

    Returns a Fraction for real characters, a Cyclo otherwise.
    """
    if chi.is_principal():
        raise ValueError("B_{1,chi} is requested for non-principal characters")
    if not chi.is_odd():
        raise ValueError("B_{1,chi} is requested for odd characters")
    N = chi.modulus
    if chi.is_real():
        tot = Fraction(0)
        for n in range(1, N):
            v = chi.value_number(n)
            if v:
                tot += v * Fraction(n, N)
        return tot
    tot = Cyclo.zero()
    for n in range(1, N):
        v = chi(n)
        if v != 0:
            tot = tot + v.as_cyclo() * Fraction(n, N)
    return tot
