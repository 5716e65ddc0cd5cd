from fractions import Fraction
from math import comb, gcd

import pytest

from refmod.exactnum import (
    bernoulli,
    bernoulli_list,
    dirichlet_characters,
    generalized_bernoulli_b1,
)
from refmod.exactnum import quadratic_character


def test_bernoulli_values():
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)
    with pytest.raises(ValueError):
        bernoulli(3)
    with pytest.raises(ValueError):
        bernoulli(0)


def test_bernoulli_recurrence():
    B = bernoulli_list(20)
    for n in range(1, 20):
        assert sum(Fraction(comb(n + 1, j)) * B[j] for j in range(n + 1)) == 0


def test_character_counts():
    assert len(dirichlet_characters(1)) == 1
    chars3 = dirichlet_characters(3)
    assert len(chars3) == 2
    principal = [c for c in chars3 if c.is_principal()]
    assert len(principal) == 1 and principal[0].is_even()
    quad = [c for c in chars3 if not c.is_principal()][0]
    assert quad.is_odd()
    chars8 = dirichlet_characters(8)
    assert len(chars8) == 4
    assert all(c.is_real() for c in chars8)


@pytest.mark.parametrize("modulus", [1, 3, 4, 5, 8, 12, 16, 15, 21])
def test_characters_multiplicative(modulus):
    for chi in dirichlet_characters(modulus):
        for a in range(1, modulus + 1):
            for b in range(1, modulus + 1):
                va, vb, vab = chi(a), chi(b), chi(a * b)
                if va == 0 or vb == 0:
                    assert vab == 0 or modulus == 1
                else:
                    assert vab == va * vb


@pytest.mark.parametrize("modulus", [3, 4, 5, 8, 9, 12, 15, 16, 24])
def test_conductor_and_primitive(modulus):
    for chi in dirichlet_characters(modulus):
        f = chi.conductor
        assert modulus % f == 0
        prim = chi.primitive()
        assert prim.modulus == f
        for a in range(1, modulus + 1):
            if gcd(a, modulus) == 1:
                assert prim(a) == chi(a)


def test_generalized_b1():
    chi3 = quadratic_character(-3, 3)
    assert chi3.is_odd()
    assert generalized_bernoulli_b1(chi3) == Fraction(-1, 3)
    chi4 = [c for c in dirichlet_characters(4) if not c.is_principal()][0]
    assert chi4.is_odd()
    assert generalized_bernoulli_b1(chi4) == Fraction(-1, 2)
    even = [c for c in dirichlet_characters(5) if c.is_even() and not c.is_principal()][0]
    with pytest.raises(ValueError):
        generalized_bernoulli_b1(even)
    principal = [c for c in dirichlet_characters(5) if c.is_principal()][0]
    with pytest.raises(ValueError):
        generalized_bernoulli_b1(principal)


def test_character_order_and_conjugate():
    for chi in dirichlet_characters(5):
        conj = chi.conjugate()
        for a in range(1, 5):
            assert conj(a) == chi(a).conjugate()
        assert (chi * chi.conjugate()).is_principal()
