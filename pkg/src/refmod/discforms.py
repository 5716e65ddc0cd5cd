"""Discriminant forms: genus symbols, explicit realizations, Gauss sums.

A genus symbol is a product of p-adic Jordan components q^(+-n) (odd q, or
even 2-adic) and q^(+-n)_t (odd 2-adic).  Symbols compose, carry a level,
order and mod-8 signature, and can be realized as an explicit finite
group with a Q/2Z-valued quadratic form on which everything downstream
(Milgram sums, Weil representations, reflective-order checks) operates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import gcd

from . import _kernels
from .cyclotomic import Cyclo, sqrt_cyclotomic
from .intmath import factorize, kronecker, lcm

__all__ = [
    "JordanComponent",
    "GenusSymbol",
    "DiscriminantGroup",
    "parse_genus_symbol",
    "symbol_signature",
    "realize_group",
    "milgram_signature",
    "enumerate_symbols",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class JordanComponent:
    """q^(+-n) or q^(+-n)_t for a prime power q = p^k."""

    p: int
    q: int
    n: int
    sign: int
    t: int | None = None  # oddity; present exactly for odd 2-adic components

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +-1")
        if self.n < 1:
            raise ValueError("rank must be positive")
        fac = factorize(self.q)
        if len(fac) != 1 or fac[0][0] != self.p or self.q < 2:
            raise ValueError("q must be a power of p greater than 1")
        if self.p == 2:
            if self.t is None:
                if self.n % 2:
                    raise ValueError("even 2-adic components have even rank")
            else:
                t, n, sign = self.t % 8, self.n, self.sign
                if t % 2 != n % 2:
                    raise ValueError("oddity must match the rank mod 2")
                if not _oddity_ok(n, sign, t):
                    raise ValueError(f"impossible oddity {t} for rank {n} sign {sign:+d}")
        elif self.t is not None:
            raise ValueError("only 2-adic components carry an oddity")

    @property
    def is_even_2adic(self) -> bool:
        return self.p == 2 and self.t is None

    def order(self) -> int:
        return self.q**self.n

    def level(self) -> int:
        if self.p == 2 and self.t is not None:
            return 2 * self.q
        return self.q

    def signature(self) -> int:
        anti = 1 if (self.sign == -1 and not _is_square(self.q)) else 0
        if self.p != 2:
            s = -self.n * (self.q - 1) + 4 * anti
        elif self.t is not None:
            s = self.t + 4 * anti
        else:
            s = 4 * anti
        return s % 8

    def __str__(self):
        s = f"{self.q}^{{{'+' if self.sign == 1 else '-'}{self.n}}}"
        if self.t is not None:
            s += f"_{self.t % 8}"
        return s


def _is_square(q: int) -> bool:
    from math import isqrt

    return isqrt(q) ** 2 == q


def _oddity_ok(n: int, sign: int, t: int) -> bool:
    """Realizability of (rank, sign, oddity mod 8) for odd 2-adic components."""
    t %= 8
    if t % 2 != n % 2:
        return False
    if n == 1:
        return t in ((1, 7) if sign == 1 else (3, 5))
    if n == 2:
        return t in ((0, 2, 6) if sign == 1 else (4, 2, 6))
    return True


_ODD_RANK1 = {1: 1, 7: 1, 3: -1, 5: -1}  # oddity -> sign of an indecomposable block


def _oddity_blocks(n: int, sign: int, t: int) -> list[int]:
    """Split q^(+-n)_t into n rank-1 oddities t_i with the right product sign."""
    t %= 8
    for combo in iproduct((1, 7, 3, 5), repeat=n):
        if sum(combo) % 8 == t and _prod(_ODD_RANK1[x] for x in combo) == sign:
            return list(combo)
    raise ValueError(f"no decomposition for rank {n} sign {sign} oddity {t}")


def _prod(it) -> int:
    out = 1
    for x in it:
        out *= x
    return out


class GenusSymbol:
    """A multiset of Jordan components, at most one per prime power."""

    __slots__ = ("components",)

    def __init__(self, components=()):
        merged: dict[int, JordanComponent] = {}
        for comp in components:
            if comp.q in merged:
                merged[comp.q] = _merge(merged[comp.q], comp)
            else:
                merged[comp.q] = comp
        self.components = tuple(sorted(merged.values(), key=lambda c: (c.p, c.q)))

    def order(self) -> int:
        return _prod(c.order() for c in self.components) if self.components else 1

    def level(self) -> int:
        out = 1
        for c in self.components:
            out = lcm(out, c.level())
        return out

    def signature(self) -> int:
        return sum(c.signature() for c in self.components) % 8

    def compose(self, other: "GenusSymbol") -> "GenusSymbol":
        return GenusSymbol(self.components + other.components)

    def __eq__(self, other):
        return isinstance(other, GenusSymbol) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return " ".join(str(c) for c in self.components) if self.components else "1"

    def __repr__(self):
        return f"GenusSymbol({self})"


def _merge(c1: JordanComponent, c2: JordanComponent) -> JordanComponent:
    """Sum of two components at the same prime power: add ranks, multiply
    signs, and add whatever oddities are present (the sum is odd-type as
    soon as one summand is)."""
    assert c1.q == c2.q
    if c1.t is None and c2.t is None:
        t = None
    else:
        t = ((c1.t or 0) + (c2.t or 0)) % 8
    return JordanComponent(c1.p, c1.q, c1.n + c2.n, c1.sign * c2.sign, t)


_COMP_RE = re.compile(r"^(\d+)\^\{?([+-])(\d+)\}?(?:_(\d+))?$")


def parse_genus_symbol(text: str) -> GenusSymbol:
    """Parse e.g. "2^{+2}_6 3^{-1}" (braces optional: 2^+2_6 3^-1)."""
    text = text.strip()
    if text in ("", "1"):
        return GenusSymbol()
    comps = []
    for token in text.split():
        m = _COMP_RE.match(token)
        if not m:
            raise ValueError(f"cannot parse Jordan component {token!r}")
        q, sgn, n, t = int(m.group(1)), m.group(2), int(m.group(3)), m.group(4)
        p = factorize(q)[0][0]
        comps.append(
            JordanComponent(p, q, n, 1 if sgn == "+" else -1, int(t) % 8 if t is not None else None)
        )
    return GenusSymbol(comps)


def symbol_signature(sym: GenusSymbol) -> int:
    return sym.signature()


# --- explicit realization ---------------------------------------------------


class DiscriminantGroup:
    """prod Z/orders[i] with gamma^2 in Q/2Z and (gamma, delta) in Q/Z.

    gen_norms[i] is the norm e_i^2 mod 2; gen_pairs[i][j] the pairing mod 1
    (the diagonal holds e_i^2 mod 1).  Elements are coordinate tuples.
    """

    __slots__ = ("orders", "gen_norms", "gen_pairs", "_elements")

    def __init__(self, orders, gen_norms, gen_pairs):
        self.orders = tuple(int(d) for d in orders)
        self.gen_norms = tuple(Fraction(x) % 2 for x in gen_norms)
        self.gen_pairs = tuple(tuple(Fraction(x) % 1 for x in row) for row in gen_pairs)
        self._elements = None

    @property
    def order(self) -> int:
        return _prod(self.orders) if self.orders else 1

    @property
    def rank(self) -> int:
        return len(self.orders)

    def level(self) -> int:
        """Smallest N with N * gamma^2/2 integral for all gamma."""
        out = 1
        for i, d in enumerate(self.orders):
            out = lcm(out, (self.gen_norms[i] / 2).denominator)
            for j in range(i + 1, len(self.orders)):
                out = lcm(out, self.gen_pairs[i][j].denominator)
        # pairing denominators divide the exponent, norms can halve beyond it
        return out

    def elements(self) -> list[tuple[int, ...]]:
        if self._elements is None:
            self._elements = [tuple(c) for c in _kernels.mixed_radix_coords(list(self.orders))]
        return self._elements

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x) -> tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def smul(self, n: int, x) -> tuple[int, ...]:
        return tuple((n * a) % d for a, d in zip(x, self.orders))

    def element_order(self, x) -> int:
        out = 1
        for a, d in zip(x, self.orders):
            out = lcm(out, d // gcd(a, d))
        return out

    def norm(self, x) -> Fraction:
        """gamma^2 mod 2."""
        tot = Fraction(0)
        r = self.rank
        for i in range(r):
            if x[i]:
                tot += x[i] * x[i] * self.gen_norms[i]
                for j in range(i + 1, r):
                    if x[j]:
                        tot += 2 * x[i] * x[j] * self.gen_pairs[i][j]
        return tot % 2

    def pairing(self, x, y) -> Fraction:
        """(gamma, delta) mod 1."""
        tot = Fraction(0)
        r = self.rank
        for i in range(r):
            if x[i]:
                for j in range(r):
                    if y[j]:
                        p = self.gen_pairs[i][j] if i != j else self.gen_norms[i]
                        tot += x[i] * y[j] * p
        return tot % 1

    # --- torsion, powers and the twisted coset --------------------------

    def torsion_subgroup(self, n: int) -> list[tuple[int, ...]]:
        """A_n: elements with n*gamma = 0."""
        gens = []
        for i, d in enumerate(self.orders):
            step = d // gcd(d, n)
            gens.append([(step * k) % d for k in range(gcd(d, n))])
        return [tuple(c) for c in iproduct(*gens)]

    def power_subgroup(self, n: int) -> set[tuple[int, ...]]:
        """A^n = n-th multiples."""
        out = set()
        # direct product description: n * (Z/d) = (d/gcd(d,n)) * Z/d
        gens = []
        for d in self.orders:
            g = gcd(d, n)
            gens.append([(n * k) % d for k in range(d // g)])
        for c in iproduct(*gens):
            out.add(tuple(c))
        return out

    def twisted_coset(self, n: int) -> list[tuple[int, ...]]:
        """A^{n*}: all delta with (gamma, delta) = n gamma^2/2 mod 1 on A_n."""
        tor_gens = []
        for i, d in enumerate(self.orders):
            step = d // gcd(d, n)
            if step != d:
                g = [0] * self.rank
                g[i] = step
                tor_gens.append(tuple(g))
        out = []
        for delta in self.elements():
            ok = True
            for g in tor_gens:
                if (self.pairing(g, delta) - n * self.norm(g) / 2) % 1:
                    ok = False
                    break
            if ok:
                out.append(delta)
        return out

    def gauss_sum(self, n: int, delta) -> Cyclo:
        """sum_gamma e((gamma, delta) - n gamma^2 / 2), exactly."""
        M = self._root_order()
        counts: dict[int, int] = {}
        for gamma in self.elements():
            x = (self.pairing(gamma, delta) - Fraction(n) * self.norm(gamma) / 2) % 1
            k = int(x * M)
            counts[k] = counts.get(k, 0) + 1
        return Cyclo(M, {k: Fraction(v) for k, v in counts.items()})

    def _root_order(self) -> int:
        M = 1
        for i in range(self.rank):
            M = lcm(M, (self.gen_norms[i] / 2).denominator)
            for j in range(self.rank):
                if i != j:
                    M = lcm(M, self.gen_pairs[i][j].denominator)
        return M

    def milgram_sum(self) -> Cyclo:
        """sum_gamma e(gamma^2/2)."""
        M = self._root_order()
        gnorm = [int((x / 2 % 1) * M) for x in self.gen_norms]
        gpair = [[int(x * M) for x in row] for row in self.gen_pairs]
        exps = _kernels.norm_half_exponents(list(self.orders), gnorm, gpair, M)
        counts: dict[int, int] = {}
        for e in exps:
            counts[e] = counts.get(e, 0) + 1
        return Cyclo(M, {k: Fraction(v) for k, v in counts.items()})

    def norm_profile(self) -> tuple:
        """Sorted multiset of norms; used to deduplicate 2-adic symbols."""
        vals = sorted((self.norm(x) for x in self.elements()))
        return tuple(vals)

    def orthogonal_sum(self, other: "DiscriminantGroup") -> "DiscriminantGroup":
        r1, r2 = self.rank, other.rank
        pairs = [[Fraction(0)] * (r1 + r2) for _ in range(r1 + r2)]
        for i in range(r1):
            for j in range(r1):
                pairs[i][j] = self.gen_pairs[i][j]
        for i in range(r2):
            for j in range(r2):
                pairs[r1 + i][r1 + j] = other.gen_pairs[i][j]
        return DiscriminantGroup(
            self.orders + other.orders, self.gen_norms + other.gen_norms, pairs
        )

    def __repr__(self):
        return f"DiscriminantGroup(orders={self.orders})"


def milgram_signature(G: DiscriminantGroup, budget: int = DEFAULT_BUDGET) -> int:
    """The s mod 8 with sum e(gamma^2/2) = sqrt|A| e(s/8); error if none fits."""
    if G.order > budget:
        raise ValueError(f"group order {G.order} exceeds the enumeration budget {budget}")
    total = G.milgram_sum()
    target = sqrt_cyclotomic(G.order)
    for s in range(8):
        if total * Cyclo.root(Fraction(-s, 8)) == target:
            return s
    raise ValueError("quadratic form is degenerate: Milgram sum has wrong magnitude")


# --- realization of symbols -----------------------------------------------------


def _realize_component(comp: JordanComponent) -> DiscriminantGroup:
    q, n, sign = comp.q, comp.n, comp.sign
    if comp.p != 2:
        # rank-1 blocks q^(e) with generator norm a/q mod 2, a even, (a|p) = e
        signs = [1] * (n - 1) + [sign]
        orders, norms = [], []
        for e in signs:
            a = 2
            while kronecker(a, comp.p) != e:
                a += 2
            orders.append(q)
            norms.append(Fraction(a, q))
        pairs = [[Fraction(0)] * n for _ in range(n)]
        return DiscriminantGroup(orders, norms, pairs)
    if comp.t is not None:
        blocks = _oddity_blocks(n, sign, comp.t)
        orders = [q] * n
        norms = [Fraction(t, q) for t in blocks]
        pairs = [[Fraction(0)] * n for _ in range(n)]
        return DiscriminantGroup(orders, norms, pairs)
    # even 2-adic: rank-2 blocks; q^(+2) hyperbolic, q^(-2) with norms 2/q
    halves = n // 2
    block_signs = [1] * (halves - 1) + [sign]
    out: DiscriminantGroup | None = None
    for e in block_signs:
        d = Fraction(0) if e == 1 else Fraction(2, q)
        blk = DiscriminantGroup([q, q], [d, d], [[d % 1, Fraction(1, q)], [Fraction(1, q), d % 1]])
        out = blk if out is None else out.orthogonal_sum(blk)
    assert out is not None
    return out


def realize_group(sym: GenusSymbol) -> DiscriminantGroup:
    """An explicit group with the symbol's order, level and signature.

    The mod-8 signature of the result is checked against the symbol's
    closed-form signature; a mismatch raises, which would flag a broken
    sign convention.
    """
    out = DiscriminantGroup((), (), ())
    for comp in sym.components:
        out = out.orthogonal_sum(_realize_component(comp))
    if out.order != sym.order():
        raise AssertionError("realization has the wrong order")
    if out.order <= 4096 and milgram_signature(out) != sym.signature():
        raise AssertionError(f"realization of {sym} has the wrong signature")
    return out


# --- enumeration ------------------------------------------------------------------


def _components_for_prime_power(q: int, p: int, max_order: int, level_cap: int | None):
    """All Jordan components at exponent q subject to order/level caps."""
    out = []
    if level_cap is not None and (q > level_cap if p != 2 else False):
        return out
    max_rank = 0
    qq = q
    while qq <= max_order:
        max_rank += 1
        qq *= q
    if p != 2:
        if level_cap is not None and level_cap % q:
            return out
        for n in range(1, max_rank + 1):
            out.append(JordanComponent(p, q, n, 1))
            out.append(JordanComponent(p, q, n, -1))
        return out
    # p = 2: odd components need level 2q | cap, even components level q | cap
    if level_cap is None or level_cap % (2 * q) == 0:
        for n in range(1, max_rank + 1):
            for sign in (1, -1):
                for t in range(8):
                    if t % 2 == n % 2 and _oddity_ok(n, sign, t):
                        out.append(JordanComponent(p, q, n, sign, t))
    if level_cap is None or level_cap % q == 0:
        for n in range(2, max_rank + 1, 2):
            out.append(JordanComponent(p, q, n, 1))
            out.append(JordanComponent(p, q, n, -1))
    return out


def _prime_blocks(p: int, max_order: int, level_cap: int | None):
    """All component tuples supported on powers of p with order <= max_order."""
    qs = []
    q = p
    while q <= max_order:
        qs.append(q)
        q *= p
    blocks: list[tuple[tuple[JordanComponent, ...], int]] = [((), 1)]
    for q in qs:
        comps = _components_for_prime_power(q, p, max_order, level_cap)
        extended = list(blocks)
        for prefix, order in blocks:
            for comp in comps:
                o = order * comp.order()
                if o <= max_order:
                    extended.append((prefix + (comp,), o))
        blocks = extended
    return blocks


def enumerate_symbols(
    level_divides: int | None,
    max_order: int,
    signature: int | None = None,
) -> list[GenusSymbol]:
    """All genus symbols with level | N and order <= max_order.

    2-adic symbols are enumerated per the composition normal form; distinct
    symbols may still describe isomorphic forms (the search layer
    deduplicates by realized invariants).  ``signature`` filters mod 8.
    """
    if max_order < 1:
        return []
    if level_divides is None:
        primes = [p for p, _ in factorize_range(max_order)]
    else:
        primes = [p for p, _ in factorize(level_divides)]
    partial: list[tuple[tuple[JordanComponent, ...], int]] = [((), 1)]
    for p in primes:
        blocks = _prime_blocks(p, max_order, level_divides)
        if len(blocks) == 1:
            continue
        new = []
        for comps, order in partial:
            for bcomps, border in blocks:
                o = order * border
                if o <= max_order:
                    new.append((comps + bcomps, o))
        partial = new
    out = []
    for comps, _ in partial:
        sym = GenusSymbol(comps)
        if level_divides is not None and level_divides % sym.level():
            continue
        if signature is not None and sym.signature() != signature % 8:
            continue
        out.append(sym)
    out.sort(key=lambda s: (s.order(), s.level(), str(s)))
    return out


def factorize_range(n: int):
    """(p, 1) for every prime p <= n."""
    sieve = [True] * (n + 1)
    out = []
    for p in range(2, n + 1):
        if sieve[p]:
            out.append((p, 1))
            for k in range(p * p, n + 1, p):
                sieve[k] = False
    return out
