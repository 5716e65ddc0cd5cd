"""Dimensions of modular and cusp form spaces for quadratic characters.

For weight above 2 the count is the exact rational trace-formula value
(main term (k-1) index/12, elliptic delta terms, one 1/2 - beta per cusp),
which must land on a nonnegative integer.  Weight 2 uses the same value
(validated against every ring table in the test-suite); cusp forms at
weight 2 with trivial character lose one Eisenstein dimension.  Weight 1/2
is the explicit theta-series basis, weight 3/2 follows by the duality
dim M_k - dim S_{2-k}(conjugate) = trace value, and weight 1 is an
explicit lookup table plus the fact that no level below 23 carries a
weight-1 cusp form.  Queries the machinery cannot decide return None.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .characters import (
    CharacterSpec,
    char_at_cusp,
    char_at_elliptic,
    spec_equal,
)
from .cyclotomic import RootOfUnity
from .exactnum import DirichletCharacter, dirichlet_characters
from .gamma0 import gamma0_data
from .intmath import divisors, kronecker, squarefree_part
from .qseries import QSeries

__all__ = [
    "trace_value",
    "dim_modforms",
    "dim_cuspforms",
    "dim_any_weight",
    "cusp_any_weight",
    "obstruction_dim",
    "serre_stark_basis",
    "delta_term",
]

# weight-1 dimensions that the ring tables pin down; everything else at
# weight 1 is reported as undecided
_M1_TABLE: list[tuple[int, int, int, int]] = [
    # (N, theta_exp, m, dim)
    (3, 0, 3, 1),
    (6, 0, 3, 2),
    (7, 0, 7, 1),
    (9, 0, 3, 2),
    (11, 0, 11, 1),
    (12, 0, 3, 3),
    (12, 2, 1, 2),
    (13, 0, 13, 0),
    (14, 0, 7, 2),
    (15, 0, 3, 2),
    (16, 2, 1, 3),
    (16, 2, 2, 2),
    (18, 0, 3, 4),
    (23, 0, 23, 2),
]

_S1_TABLE: list[tuple[int, int, int, int]] = [
    (23, 0, 23, 1),
]


def delta_term(eigen_exponent: Fraction, order: int | None) -> Fraction:
    """delta for a 1-dimensional space: the operator has eigenvalue
    e(-beta) with beta = (-eigen_exponent) mod 1; delta_inf = 1/2 - beta and
    the finite-order variant subtracts 1/(2 order)."""
    beta = (-eigen_exponent) % 1
    out = Fraction(1, 2) - beta
    if order is not None:
        out -= Fraction(1, 2 * order)
    return out


def trace_value(N: int, k: Fraction, spec: CharacterSpec) -> Fraction:
    """The exact trace-formula expression for weight k and the character.

    Meaningful whenever the center acts compatibly; equals dim M_k for
    k >= 2 and in general computes dim M_k - dim S_{2-k}(conjugate)."""
    k = Fraction(k)
    data = gamma0_data(N)
    total = (k - 1) * Fraction(data.index, 12)
    for order, count in ((2, data.nu2), (3, data.nu3)):
        if count:
            chi_r = char_at_elliptic(spec, order)
            lam = RootOfUnity(Fraction(k, 2 * order)) * chi_r
            total += count * delta_term(lam.exponent, order)
    for cusp in data.cusps:
        val = char_at_cusp(spec, cusp.a, cusp.c)
        total += delta_term(val.exponent, None)
    return total


def _eisenstein_count(N: int, k: Fraction, spec: CharacterSpec) -> int:
    count = sum(
        1
        for cusp in gamma0_data(N).cusps
        if char_at_cusp(spec, cusp.a, cusp.c).exponent == 0
    )
    if k == 2 and spec.is_trivial_values():
        count -= 1  # the residue relation kills one weight-2 Eisenstein series
    return count


def dim_modforms(N: int, k: Fraction, spec: CharacterSpec) -> int:
    """dim M_k(Gamma_0(N), spec) for k >= 2 via the trace formula."""
    k = Fraction(k)
    if k < 2:
        raise ValueError("the closed formula needs weight at least 2")
    if not spec.weight_consistent(k):
        return 0
    val = trace_value(N, k, spec)
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(
            f"trace formula returned {val} for N={N}, k={k}, {spec}: inconsistent input"
        )
    return int(val)


def dim_cuspforms(N: int, k: Fraction, spec: CharacterSpec) -> int:
    """dim S_k for k >= 2: modular forms minus Eisenstein series."""
    k = Fraction(k)
    m = dim_modforms(N, k, spec)
    if m == 0:
        return 0
    return m - _eisenstein_count(N, k, spec)


# --- weight 1/2: the theta-series basis ---------------------------------------


def _spec_dirichlet_values(spec: CharacterSpec):
    """The Dirichlet part of chi_theta^e chi_m for odd e, as a callable:
    n -> (-1)^((e-1)/2 (n-1)/2) kronecker(n, m) on integers prime to 4 m."""
    e = spec.theta_exp % 4
    if e % 2 == 0:
        raise ValueError("weight-1/2 characters have odd theta exponent")
    eps_power = (e - 1) // 2 % 2

    def chi(n: int) -> int:
        v = kronecker(n, spec.m)
        if eps_power and n % 4 == 3:
            v = -v
        return v

    return chi


def _field_discriminant(t: int) -> int:
    """Discriminant of Q(sqrt(t)) for positive t."""
    m = squarefree_part(Fraction(t))
    return m if m % 4 == 1 else 4 * m


def serre_stark_basis(
    N: int, spec: CharacterSpec
) -> list[tuple[DirichletCharacter, int, QSeries]]:
    """The basis of weight-1/2 forms: theta series sum psi(n) q^(t n^2).

    psi runs over primitive even characters and t over positive integers
    with 4 conductor(psi)^2 t | N such that psi(n) (D_t|n) matches the
    Dirichlet part of the character; returns (psi, t, q-expansion).
    """
    if N % 4:
        return []
    if not spec.weight_consistent(Fraction(1, 2)):
        return []
    chi_d = _spec_dirichlet_values(spec)
    out = []
    for t in divisors(N // 4):
        if (4 * t) and N % (4 * t):
            continue
        D = _field_discriminant(t)
        # candidate psi on units mod N
        def psi_val(n: int) -> int:
            return chi_d(n) * kronecker(D, n)

        match = None
        for cand in dirichlet_characters(N):
            ok = True
            for n in range(1, N + 1):
                if gcd(n, N) != 1:
                    continue
                if cand.value_number(n) != psi_val(n):
                    ok = False
                    break
            if ok:
                match = cand
                break
        if match is None:
            continue
        prim = match.primitive()
        r = prim.modulus
        if not prim.is_even() or N % (4 * r * r * t):
            continue
        out.append((prim, t, _theta_psi_series(prim, t)))
    return out


def _theta_psi_series(psi: DirichletCharacter, t: int, prec: int = 40) -> QSeries:
    terms: dict[int, Fraction] = {}
    if psi.modulus == 1:
        terms[0] = Fraction(1)
    n = 1
    while t * n * n < prec:
        v = psi.value_number(n)
        if v:
            terms[t * n * n] = 2 * Fraction(v)
        n += 1
    return QSeries(1, terms, Fraction(prec))


# --- dispatch over all weights ---------------------------------------------------


def _table_lookup(table, N: int, spec: CharacterSpec) -> int | None:
    for tn, te, tm, dim in table:
        if tn == N and spec_equal(spec, CharacterSpec(N, te, tm)):
            return dim
    return None


def dim_any_weight(N: int, k: Fraction, spec: CharacterSpec) -> int | None:
    """dim M_k, or None when the weight-1 table has no entry."""
    k = Fraction(k)
    if not spec.weight_consistent(k):
        return 0
    if k < 0:
        return 0
    if k == 0:
        return 1 if spec.is_trivial_values() else 0
    if k >= 2:
        return dim_modforms(N, k, spec)
    if k == Fraction(1, 2):
        return len(serre_stark_basis(N, spec))
    if k == Fraction(3, 2):
        s_half = cusp_any_weight(N, Fraction(1, 2), spec.conjugate())
        assert s_half is not None
        val = trace_value(N, k, spec) + s_half
        if val.denominator != 1 or val < 0:
            raise ArithmeticError(f"non-integral weight-3/2 dimension {val}")
        return int(val)
    if k == 1:
        return _table_lookup(_M1_TABLE, N, spec)
    return None


def cusp_any_weight(N: int, k: Fraction, spec: CharacterSpec) -> int | None:
    """dim S_k, or None when undecidable (weight-1 gaps)."""
    k = Fraction(k)
    if not spec.weight_consistent(k):
        return 0
    if k <= 0:
        return 0
    if k >= 2:
        return dim_cuspforms(N, k, spec)
    if k == Fraction(1, 2):
        return sum(1 for psi, _, _ in serre_stark_basis(N, spec) if psi.modulus > 1)
    if k == Fraction(3, 2):
        conj = spec.conjugate()
        m_half = dim_any_weight(N, Fraction(1, 2), conj)
        assert m_half is not None
        val = m_half - trace_value(N, Fraction(1, 2), conj)
        if val.denominator != 1 or val < 0:
            raise ArithmeticError(f"non-integral weight-3/2 cusp dimension {val}")
        return int(val)
    if k == 1:
        hit = _table_lookup(_S1_TABLE, N, spec)
        if hit is not None:
            return hit
        if N < 23:
            return 0  # no weight-1 cusp forms below level 23
        return None
    return None


def obstruction_dim(N: int, target_weight: Fraction, spec: CharacterSpec) -> int | None:
    """Dimension of the obstruction space to prescribing singularities of a
    weight-``target_weight`` form: cusp forms of weight 2 - k with the
    conjugate character."""
    return cusp_any_weight(N, 2 - Fraction(target_weight), spec.conjugate())
