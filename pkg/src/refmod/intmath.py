"""Elementary integer arithmetic: factorization, unit groups, residue symbols.

Everything here is exact and deterministic; these helpers back the
cyclotomic layer, the character tables and the genus-symbol machinery.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import gcd, isqrt

__all__ = [
    "factorize",
    "divisors",
    "is_square",
    "squarefree_part",
    "valuation",
    "kronecker",
    "crt",
    "primitive_root",
    "unit_group_generators",
    "inverse_mod",
    "lcm",
]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@cache
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as a tuple of (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    # trial division by 6k+-1
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    out.sort()
    return tuple(out)


@cache
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, sorted."""
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return tuple(sorted(ds))


def valuation(n: int, p: int) -> int:
    """Largest e with p^e | n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def squarefree_part(q: Fraction | int) -> int:
    """Squarefree part of a positive rational: the unique squarefree m with q/m square."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("expected a positive rational")
    m = 1
    for p, e in factorize(q.numerator):
        if e % 2:
            m *= p
    for p, e in factorize(q.denominator):
        if e % 2:
            m *= p
    return m


def kronecker(c: int, d: int) -> int:
    """Extended quadratic residue symbol (c|d).

    Multiplicative in both arguments; Legendre symbol for odd prime d;
    (c|2) is 1 for c = +-1 mod 8 and -1 for c = +-3 mod 8; (c|-1) is the
    sign of c; (0|+-1) = (+-1|0) = 1.  Non-coprime pairs give 0.
    """
    if d == 0:
        return 1 if c in (1, -1) else 0
    result = 1
    if d < 0:
        d = -d
        if c < 0:
            result = -result
    while d % 2 == 0:
        d //= 2
        if c % 2 == 0:
            return 0
        if c % 8 in (3, 5):
            result = -result
    # now d odd and positive: iterated quadratic reciprocity
    c %= d
    while c != 0:
        while c % 2 == 0:
            c //= 2
            if d % 8 in (3, 5):
                result = -result
        c, d = d, c
        if c % 4 == 3 and d % 4 == 3:
            result = -result
        c %= d
    return result if d == 1 else 0


def inverse_mod(a: int, n: int) -> int:
    """Inverse of a modulo n (n >= 1)."""
    if n == 1:
        return 0
    r = pow(a % n, -1, n)
    return r


def crt(residues: list[int], moduli: list[int]) -> int:
    """Solve x = r_i mod m_i for pairwise coprime moduli; result in [0, prod)."""
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        g = gcd(m, mi)
        if g != 1:
            raise ValueError("moduli must be coprime")
        # x' = x mod m, x' = r mod mi
        t = ((r - x) * inverse_mod(m, mi)) % mi
        x += m * t
        m *= mi
    return x % m


@cache
def primitive_root(q: int) -> int:
    """A generator of (Z/q)* for q an odd prime power (or q in {2, 4})."""
    if q == 2:
        return 1
    if q == 4:
        return 3
    fac = factorize(q)
    if len(fac) != 1 or fac[0][0] == 2:
        raise ValueError("need an odd prime power")
    p, e = fac[0]
    phi = p - 1
    qs = [r for r, _ in factorize(phi)]
    g = None
    for cand in range(2, p):
        if all(pow(cand, phi // r, p) != 1 for r in qs):
            g = cand
            break
    assert g is not None
    if e == 1:
        return g
    # lift to a generator mod p^e
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g % q


@cache
def unit_group_generators(n: int) -> tuple[tuple[int, int], ...]:
    """Generators of (Z/n)* as (generator, order) pairs.

    The 2-power part uses {-1, 5}; odd prime powers use a primitive root.
    Each generator is lifted by CRT to be 1 modulo the other prime powers,
    so (Z/n)* is the direct product of the cyclic groups they generate.
    """
    if n == 1:
        return ()
    fac = factorize(n)
    gens: list[tuple[int, int]] = []
    moduli = [p**e for p, e in fac]
    for idx, (p, e) in enumerate(fac):
        q = p**e
        local: list[tuple[int, int]] = []
        if p == 2:
            if e == 2:
                local = [(3, 2)]
            elif e >= 3:
                local = [(q - 1, 2), (5, 2 ** (e - 2))]
        else:
            local = [(primitive_root(q), (p - 1) * p ** (e - 1))]
        for g, order in local:
            residues = [1] * len(moduli)
            residues[idx] = g % q
            gens.append((crt(residues, moduli), order))
    return tuple(gens)
