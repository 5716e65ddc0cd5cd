import cmath
import random
from fractions import Fraction
import pytest

from refmod.characters import (
    CharacterSpec,
    char_at_cusp,
    char_at_cusp_direct,
    char_at_elliptic,
    char_eval,
    chi_eta,
    chi_theta,
    spec_equal,
)
from refmod.cyclotomic import RootOfUnity
from refmod.gamma0 import (
    MetaplecticElement,
    gamma0_data,
    random_gamma0_element,
)
from refmod.intmath import factorize, kronecker


def admissible_specs(N):
    thetas = range(4) if N % 4 == 0 else [0]
    odd = [p for p, _ in factorize(N) if p != 2]
    ms = [1]
    for p in odd:
        ms = ms + [m * p for m in ms]
    if N % 8 == 0:
        ms = ms + [2 * m for m in ms]
    return [CharacterSpec(N, e, m) for e in thetas for m in ms]


def test_chi_theta_values():
    assert chi_theta(MetaplecticElement.Z()) == RootOfUnity(Fraction(3, 4))  # -i
    assert chi_theta(MetaplecticElement.T()).exponent == 0
    with pytest.raises(ValueError):
        chi_theta(MetaplecticElement(1, 0, 1, 1))


def test_chi_eta_values():
    assert chi_eta(MetaplecticElement.T()) == RootOfUnity(Fraction(1, 24))
    assert chi_eta(MetaplecticElement.S()) == RootOfUnity(Fraction(-3, 24))
    assert chi_eta(MetaplecticElement.Z()) == RootOfUnity(Fraction(3, 4))


def test_chi_eta_homomorphism():
    rng = random.Random(3)
    for _ in range(600):
        g, h = random_gamma0_element(1, rng, 6), random_gamma0_element(1, rng, 6)
        assert chi_eta(g * h) == chi_eta(g) * chi_eta(h)


def test_chi_theta_homomorphism():
    rng = random.Random(4)
    for _ in range(400):
        g, h = random_gamma0_element(4, rng, 6), random_gamma0_element(4, rng, 6)
        assert chi_theta(g * h) == chi_theta(g) * chi_theta(h)


def _eta_num(tau, terms=200):
    out = cmath.exp(2j * cmath.pi * tau / 24)
    for n in range(1, terms):
        out *= 1 - cmath.exp(2j * cmath.pi * tau * n)
    return out


def _theta_num(tau, terms=250):
    return sum(cmath.exp(2j * cmath.pi * tau * n * n) for n in range(-terms, terms + 1))


def test_functional_equations_numeric():
    # diagnostic float check of the multiplier formulas, ratio within 1e-9
    rng = random.Random(5)
    for _ in range(25):
        g = random_gamma0_element(1, rng, 4)
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.5))
        ratio = _eta_num(g.apply(tau)) / (
            chi_eta(g).as_complex() * g.sqrt_factor_at(tau) * _eta_num(tau)
        )
        assert abs(ratio - 1) < 1e-9
    for _ in range(25):
        g = random_gamma0_element(4, rng, 4)
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.5))
        ratio = _theta_num(g.apply(tau)) / (
            chi_theta(g).as_complex() * g.sqrt_factor_at(tau) * _theta_num(tau)
        )
        assert abs(ratio - 1) < 1e-9


def test_char_eval_examples():
    spec = CharacterSpec(3, 0, 3)
    assert char_eval(spec, MetaplecticElement(1, 0, 3, 1)).exponent == 0
    assert char_eval(spec, MetaplecticElement(2, 1, 3, 2)) == RootOfUnity(Fraction(1, 2))
    # chi_9 is trivial on units
    spec9 = CharacterSpec(3, 0, 9)
    assert spec9.is_trivial_values()
    rng = random.Random(1)
    for _ in range(50):
        g = random_gamma0_element(3, rng, 5)
        assert char_eval(spec9, g).exponent == 0


def test_char_eval_multiplicative():
    rng = random.Random(8)
    for N in (3, 4, 8, 12, 60):
        for spec in admissible_specs(N)[:6]:
            for _ in range(25):
                g, h = random_gamma0_element(N, rng, 5), random_gamma0_element(N, rng, 5)
                assert char_eval(spec, g * h) == char_eval(spec, g) * char_eval(spec, h)


def test_admissibility_errors():
    with pytest.raises(ValueError):
        CharacterSpec(3, 1, 1)  # chi_theta needs 4 | N
    with pytest.raises(ValueError):
        CharacterSpec(3, 0, 5)  # odd prime not dividing N
    with pytest.raises(ValueError):
        CharacterSpec(4, 0, 2)  # chi_2 needs 8 | N
    CharacterSpec(3, 0, 9)  # even multiplicity is fine


def test_cusp_closed_forms_match_direct():
    for N in range(1, 61):
        for cusp in gamma0_data(N).cusps:
            for spec in admissible_specs(N):
                assert char_at_cusp(spec, cusp.a, cusp.c) == char_at_cusp_direct(
                    spec, cusp.a, cusp.c
                ), (N, cusp, spec)


def test_cusp_values_from_tables():
    # recorded character values at cusp generators
    assert char_at_cusp(CharacterSpec(4, 1, 1), 1, 2) == RootOfUnity(Fraction(3, 4))  # -i
    assert char_at_cusp(CharacterSpec(12, 1, 1), 1, 2) == RootOfUnity(Fraction(1, 4))  # i
    assert char_at_cusp(CharacterSpec(12, 1, 1), 1, 6) == RootOfUnity(Fraction(3, 4))
    assert char_at_cusp(CharacterSpec(8, 1, 1), 1, 2).real_value() == -1
    assert char_at_cusp(CharacterSpec(8, 0, 2), 1, 2).real_value() == -1
    assert char_at_cusp(CharacterSpec(8, 0, 2), 1, 4).real_value() == -1
    assert char_at_cusp(CharacterSpec(16, 0, 2), 1, 4).real_value() == -1
    assert char_at_cusp(CharacterSpec(16, 1, 1), 1, 4).exponent == 0
    assert char_at_cusp(CharacterSpec(20, 1, 1), 1, 2) == RootOfUnity(Fraction(3, 4))
    assert char_at_cusp(CharacterSpec(20, 1, 1), 1, 10) == RootOfUnity(Fraction(3, 4))


def find_elliptic(N, order):
    trace = 0 if order == 2 else 1  # R^order = Z, so matrix^order = -I
    for c in range(N, 60 * N + 1, N):
        for a in range(-8 * N, 8 * N + 1):
            d = trace - a
            if c and (a * d - 1) % c == 0:
                return (a, (a * d - 1) // c, c, d)
    return None


def test_elliptic_closed_forms():
    for N in range(1, 61):
        dat = gamma0_data(N)
        for order, count in ((2, dat.nu2), (3, dat.nu3)):
            if not count:
                continue
            mat = find_elliptic(N, order)
            assert mat is not None
            for spec in admissible_specs(N):
                if spec.theta_exp or spec.m % 2 == 0:
                    continue
                closed = char_at_elliptic(spec, order)
                want = 1 if closed.exponent == 0 else -1
                assert kronecker(mat[3], spec.m) == want, (N, order, spec)
    with pytest.raises(ValueError):
        char_at_elliptic(CharacterSpec(4, 1, 1), 2)


def test_spec_equal():
    assert spec_equal(CharacterSpec(4, 1, 4), CharacterSpec(4, 1, 1))
    assert spec_equal(CharacterSpec(3, 0, 9), CharacterSpec(3, 0, 1))
    assert not spec_equal(CharacterSpec(8, 0, 2), CharacterSpec(8, 0, 1))
    assert not spec_equal(CharacterSpec(12, 0, 3), CharacterSpec(12, 2, 3))
    # (d|12) = (d|3) for the units that matter at level 12
    assert spec_equal(CharacterSpec(12, 0, 12), CharacterSpec(12, 0, 3))


def test_eta_quotient_character_against_multiplier_product():
    # the quotient's CharacterSpec agrees with the product of eta multipliers
    from refmod.etaq import EtaQuotient

    rng = random.Random(17)
    cases = [
        EtaQuotient(23, {1: 1, 23: 1}),
        EtaQuotient(4, {1: -2, 2: 5, 4: -2}),
        EtaQuotient(6, {1: 2, 2: 2, 3: 2, 6: 2}),
        EtaQuotient(8, {2: -2, 4: 5, 8: -2}),
        EtaQuotient(9, {1: 3, 3: -1}),
    ]
    for q in cases:
        spec = q.character()
        N = q.N
        k2 = int(2 * q.weight)
        for _ in range(40):
            g = random_gamma0_element(N, rng, 5)
            if g.branch == -1:
                g = g * MetaplecticElement.Z() * MetaplecticElement.Z()
            a, b, c, d = g.matrix
            mult = RootOfUnity(0)
            for delta, r in q.exponents.items():
                conj = MetaplecticElement(a, b * delta, c // delta, d)
                mult = mult * chi_eta(conj) ** r
            expected = char_eval(spec, g)
            assert mult == expected, (q, g)
