import itertools
import random
from fractions import Fraction

import pytest

from refmod.exactnum import quadratic_character
from refmod.qseries import (
    GramMatrix,
    QSeries,
    delta_series,
    eisenstein_chi,
    eisenstein_level1,
    eisenstein_weight1,
    eta_series,
    lattice_theta,
)

A2 = [[2, 1], [1, 2]]
D4 = [[2, 0, -1, 0], [0, 2, -1, 0], [-1, -1, 2, -1], [0, 0, -1, 2]]


def rand_series(rng, den=2, prec=8):
    terms = {rng.randrange(-3, prec * den): Fraction(rng.randrange(-5, 6)) for _ in range(6)}
    return QSeries(den, terms, Fraction(prec))


def test_ring_axioms_random():
    rng = random.Random(4)
    for _ in range(25):
        a, b, c = (rand_series(rng) for _ in range(3))
        assert ((a + b) + c) == (a + (b + c))
        lhs = a * (b + c)
        rhs = a * b + a * c
        assert lhs.agrees_with(rhs, min(lhs.prec, rhs.prec))
        assert (a * b).agrees_with(b * a)


def test_precision_is_conservative():
    # raising the construction precision never changes an already-claimed term
    e1 = eta_series(1, 6)
    e2 = eta_series(1, 12)
    assert e2.agrees_with(e1, 6)
    t1 = lattice_theta(A2, 5)
    t2 = lattice_theta(A2, 9)
    assert t2.agrees_with(t1, 5)


def test_eta_pentagonal_oracle():
    # independent oracle: Euler's pentagonal number theorem
    prec = 40
    eta = eta_series(1, prec)
    pent = {}
    k = 0
    while True:
        for kk in (k, -k):
            e = Fraction(kk * (3 * kk - 1), 2) + Fraction(1, 24)
            if e < prec:
                pent[e] = Fraction(-1) ** kk
            if kk == 0:
                break
        if Fraction(k * (3 * k - 1), 2) > prec:
            break
        k += 1
    assert dict((Fraction(k, eta.den), v) for k, v in eta.terms.items()) == pent


def test_eta_power_is_delta():
    d = delta_series(9)
    assert [d.coefficient(n) for n in range(1, 9)] == [1, -24, 252, -1472, 4830, -6048, -16744, 84480]


def test_delta_inverse():
    inv = delta_series(10).inverse()
    assert inv.leading_exponent() == -1
    assert inv.coefficient(-1) == 1
    assert inv.coefficient(0) == 24
    assert inv.coefficient(1) == 324
    prod = delta_series(10) * inv
    assert prod.agrees_with(QSeries.one(6), 6)


def test_invert_errors():
    with pytest.raises(ZeroDivisionError):
        QSeries.zero(5).inverse()


def theta_bruteforce(gram, prec):
    # independent oracle: direct box enumeration with a crude radius bound
    n = len(gram)
    bound = 2 * prec
    radius = int((bound / min(gram[i][i] for i in range(n))) ** 0.5) + 2
    counts = {}
    for vec in itertools.product(range(-radius, radius + 1), repeat=n):
        q = sum(vec[i] * gram[i][j] * vec[j] for i in range(n) for j in range(n))
        if q <= bound:
            counts[q] = counts.get(q, 0) + 1
    return counts


@pytest.mark.parametrize("gram", [[[2]], A2, D4, [[4, 1], [1, 4]]])
def test_theta_against_bruteforce(gram):
    prec = 6
    series = lattice_theta(gram, prec)
    brute = theta_bruteforce(gram, prec)
    for q2, count in brute.items():
        if Fraction(q2, 2) < prec:
            assert series.coefficient(Fraction(q2, 2)) == count
    total = sum(v for k, v in series.terms.items())
    assert total == sum(c for q2, c in brute.items() if Fraction(q2, 2) < prec)


def test_theta_examples():
    a1 = lattice_theta([[2]], 10)
    assert [a1.coefficient(n) for n in range(10)] == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]
    a2 = lattice_theta(A2, 8)
    assert [a2.coefficient(n) for n in range(8)] == [1, 6, 0, 6, 6, 0, 0, 12]
    d4 = lattice_theta(D4, 3)
    assert [d4.coefficient(n) for n in range(3)] == [1, 24, 24]


def test_theta_coefficients_even():
    series = lattice_theta(A2, 12)
    assert all(v % 2 == 0 for k, v in series.terms.items() if k > 0)
    assert series.coefficient(0) == 1


def test_gram_validation():
    with pytest.raises(ValueError):
        GramMatrix([[1]])  # odd diagonal
    with pytest.raises(ValueError):
        GramMatrix([[2, 0], [1, 2]])  # not symmetric
    with pytest.raises(ValueError):
        GramMatrix([[-2]])  # not positive definite
    with pytest.raises(ValueError):
        GramMatrix([[2, 3], [3, 2]])


def test_eisenstein_level1():
    e4 = eisenstein_level1(4, 4)
    assert [e4.coefficient(n) for n in range(4)] == [1, 240, 2160, 6720]
    e6 = eisenstein_level1(6, 3)
    assert [e6.coefficient(n) for n in range(3)] == [1, -504, -16632]
    with pytest.raises(ValueError):
        eisenstein_level1(3)


def test_eisenstein_combination_is_theta_d4():
    e2 = eisenstein_level1(2, 12)
    comb = -e2 + e2.scale_exponents(2) * 2
    assert comb.agrees_with(lattice_theta(D4, 12), 12)


def test_eisenstein_chi_identities():
    chi3 = quadratic_character(-3, 3)
    e3 = eisenstein_chi(3, chi3, 26)
    etaq = eta_series(1, 30) ** (-3) * eta_series(3, 30) ** 9
    assert e3.agrees_with(etaq, 26)
    assert [e3.coefficient(n) for n in range(1, 6)] == [1, 3, 9, 13, 24]
    with pytest.raises(ValueError):
        eisenstein_chi(2, chi3, 5)  # parity mismatch
    chi5even = quadratic_character(5, 5)
    assert eisenstein_chi(2, chi5even, 3).coefficient(1) == 1


def test_eisenstein_weight1():
    chi3 = quadratic_character(-3, 3)
    e1 = eisenstein_weight1(chi3, 26)
    assert [e1.coefficient(n) for n in range(7)] == [1, 6, 0, 6, 6, 0, 0]
    assert e1.agrees_with(lattice_theta(A2, 26), 26)
    chi5even = quadratic_character(5, 5)
    with pytest.raises(ValueError):
        eisenstein_weight1(chi5even)


def test_scale_and_serialize():
    e = eta_series(2, 5)
    assert e.leading_exponent() == Fraction(2, 24)
    blob = e.to_json()
    back = QSeries.from_json(blob)
    assert back == e
    s = QSeries(1, {1: Fraction(3)}, 5).scale_exponents(Fraction(1, 3))
    assert s.coefficient(Fraction(1, 3)) == 3


def test_pow_zero_and_negative():
    e = eta_series(1, 6)
    assert (e**0).coefficient(0) == 1
    em3 = e**-3
    assert em3.leading_exponent() == Fraction(-3, 24)
    prod = em3 * e**3
    assert prod.agrees_with(QSeries.one(3), 3)
