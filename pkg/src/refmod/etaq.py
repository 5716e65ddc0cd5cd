"""Eta quotients on Gamma_0(N): weights, characters, cusp orders, expansions.

An eta quotient prod eta(d tau)^(r_d) over divisors d | N is admissible
when sum r_d d and N sum r_d / d are both 0 mod 24.  Its weight is
sum r_d / 2 and its character is a CharacterSpec determined by the
square class of prod d^(r_d); the vanishing order at a cusp a/c is
width * sum_d r_d (d,c)^2 / (24 d) in the local parameter.

Expansions are available at i-infinity and, through the exact inversion
eta(-1/tau) = sqrt(-i tau) eta(tau), at the cusp 0, with the prefactor
(power of tau and cyclotomic constant) carried exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import gcd

from .characters import CharacterSpec
from .cyclotomic import Cyclo, sqrt_cyclotomic
from .gamma0 import cusp_representatives, cusp_width
from .intmath import divisors, squarefree_part
from .qseries import DEFAULT_TERMS, QSeries, eta_series

__all__ = [
    "EtaQuotient",
    "TransformedSeries",
    "classify_bounded",
    "parse_exponents",
]


def parse_exponents(text: str) -> dict[int, int]:
    """Parse "1:-2,2:5,4:-2" into {1: -2, 2: 5, 4: -2}."""
    out: dict[int, int] = {}
    for part in text.split(","):
        if not part.strip():
            continue
        d, r = part.split(":")
        r = int(r)
        if r:
            out[int(d)] = r
    return out


@dataclass(frozen=True)
class TransformedSeries:
    """tau_power, constant and series of an expansion f(-1/tau) = C tau^k g(tau)."""

    tau_power: Fraction
    constant: Cyclo
    series: QSeries

    def __mul__(self, other: "TransformedSeries") -> "TransformedSeries":
        return TransformedSeries(
            self.tau_power + other.tau_power,
            self.constant * other.constant,
            self.series * other.series,
        )

    def __truediv__(self, other: "TransformedSeries") -> "TransformedSeries":
        return TransformedSeries(
            self.tau_power - other.tau_power,
            self.constant * other.constant.inverse(),
            self.series / other.series,
        )

    def __pow__(self, k: int) -> "TransformedSeries":
        return TransformedSeries(self.tau_power * k, self.constant**k, self.series**k)

    def scalar_mul(self, c) -> "TransformedSeries":
        return TransformedSeries(self.tau_power, self.constant * c, self.series)

    def __add__(self, other: "TransformedSeries") -> "TransformedSeries":
        """Addition after aligning the constants into the series coefficients;
        requires equal tau powers."""
        if self.tau_power != other.tau_power:
            raise ValueError("tau powers differ")
        a = self.series.scalar_mul(self.constant)
        b = other.series.scalar_mul(other.constant)
        return TransformedSeries(self.tau_power, Cyclo.from_rational(1), a + b)


class EtaQuotient:
    """prod_{d | N} eta(d tau)^(r_d) as a modular object for Gamma_0(N)."""

    __slots__ = ("N", "exponents")

    def __init__(self, N: int, exponents: dict[int, int]):
        self.N = N
        self.exponents = {int(d): int(r) for d, r in sorted(exponents.items()) if r}
        for d in self.exponents:
            if N % d:
                raise ValueError(f"{d} does not divide the level {N}")

    # --- admissibility, weight, character ---------------------------------

    def admissible(self) -> bool:
        s1 = sum(r * d for d, r in self.exponents.items())
        s2 = sum(Fraction(self.N * r, d) for d, r in self.exponents.items())
        return s1 % 24 == 0 and s2 % 24 == 0

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(self.exponents.values()), 2)

    def divisor_product(self) -> Fraction:
        out = Fraction(1)
        for d, r in self.exponents.items():
            out *= Fraction(d) ** r
        return out

    def character(self, declared_order: int | None = None) -> CharacterSpec:
        """The CharacterSpec of the quotient at level N.

        declared_order plays the role of |A|: it must make
        |A| / prod d^(r_d) a rational square, and defaults to the
        squarefree part of the divisor product.
        """
        if not self.admissible():
            raise ValueError("quotient is not admissible at this level")
        prod = self.divisor_product()
        if declared_order is None:
            declared_order = squarefree_part(prod)
        if squarefree_part(declared_order / prod) != 1:
            raise ValueError("declared order must match the divisor product up to squares")
        k2 = int(2 * self.weight)
        if self.N % 4:
            return CharacterSpec(self.N, 0, declared_order)
        from .intmath import kronecker

        e = (k2 + kronecker(-1, declared_order) - 1) % 4
        return CharacterSpec(self.N, e, declared_order * 2 ** (k2 % 8))

    # --- orders at cusps ------------------------------------------------------

    def order_at_cusp(self, c: int, *, width_normalized: bool = True) -> Fraction:
        """Vanishing order at any cusp a/c (depends only on gcd(c, N)).

        Width-normalized means in the local parameter q_h; the raw value
        sum r_d (d,c)^2/(24 d) is the order in q."""
        if c == 0:
            c = self.N
        raw = sum(
            Fraction(r * gcd(d, c) ** 2, 24 * d) for d, r in self.exponents.items()
        )
        if not width_normalized:
            return raw
        return raw * cusp_width(self.N, c)

    def orders(self) -> dict[str, Fraction]:
        return {
            cusp.label(): self.order_at_cusp(cusp.c)
            for cusp in cusp_representatives(self.N)
        }

    def valence_sum(self) -> Fraction:
        """Sum of local orders over cusp classes; equals weight * index / 12."""
        return sum(self.order_at_cusp(cusp.c) for cusp in cusp_representatives(self.N))

    # --- expansions -----------------------------------------------------------

    def expand(self, prec: Fraction | int | None = None) -> QSeries:
        """q-expansion at i-infinity, exact to the requested precision."""
        lead = sum(Fraction(r * d, 24) for d, r in self.exponents.items())
        if prec is None:
            prec = lead + DEFAULT_TERMS
        prec = Fraction(prec)
        # inverting a factor with leading exponent a costs 2a of precision
        margin = 2 + 2 * max(Fraction(0), -lead)
        out = QSeries.one(Fraction(10**9))
        for d, r in self.exponents.items():
            out = out * eta_series(d, prec + margin) ** r
        return out.truncate(prec) if out.prec > prec else out

    def expand_at_zero(self, prec: Fraction | int | None = None) -> TransformedSeries:
        """f(-1/tau) = C tau^k series(tau), exactly.

        eta(d(-1/tau)) = sqrt(-i tau / d) eta(tau / d), so
        C = (-i)^k prod d^(-r_d/2) and the series is prod eta(tau/d)^(r_d),
        a series in q^(1/(24 N)).
        """
        k = self.weight
        # (-i)^k = e(-k/4) with the principal branch
        const = Cyclo.root(Fraction(-k, 4) % 1)
        scale = Fraction(1)
        for d, r in self.exponents.items():
            scale *= Fraction(d) ** r
        # prod d^(-r/2) = 1/sqrt(scale): exact via gauss sums
        num, den = scale.numerator, scale.denominator
        # sqrt(num/den) = sqrt(num*den)/den
        root = sqrt_cyclotomic(num * den) * Fraction(1, den)
        const = const * root.inverse()
        lead = sum(Fraction(r, 24 * d) for d, r in self.exponents.items())
        if prec is None:
            prec = lead + DEFAULT_TERMS
        prec = Fraction(prec)
        margin = 2 + 2 * max(Fraction(0), -lead)
        series = QSeries.one(Fraction(10**9))
        for d, r in self.exponents.items():
            series = series * eta_series(Fraction(1, d), prec + margin) ** r
        if series.prec > prec:
            series = series.truncate(prec)
        return TransformedSeries(k, const, series)

    def __repr__(self):
        body = " ".join(f"{d}^{{{r}}}" for d, r in self.exponents.items())
        return f"EtaQuotient(N={self.N}, {body})"

    def exponent_key(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.exponents.items()))


# --- the bounded-zero classifier -------------------------------------------------


def _order_matrix(N: int) -> tuple[list[int], list[list[Fraction]]]:
    """Rows: divisor cusps c | N; columns: divisors d; entry = local order
    coefficient width(c) (d,c)^2 / (24 d)."""
    ds = list(divisors(N))
    rows = []
    for c in ds:
        w = cusp_width(N, c)
        rows.append([Fraction(w * gcd(d, c) ** 2, 24 * d) for d in ds])
    return ds, rows


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rows)
    m = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for i in range(n):
        piv = None
        for j in range(i, n):
            if m[j][i]:
                piv = j
                break
        if piv is None:
            raise ValueError("order matrix is singular")
        m[i], m[piv] = m[piv], m[i]
        inv = 1 / m[i][i]
        m[i] = [x * inv for x in m[i]]
        for j in range(n):
            if j != i and m[j][i]:
                f = m[j][i]
                m[j] = [a - f * b for a, b in zip(m[j], m[i])]
    return [m[i][n] for i in range(n)]


def classify_bounded(
    N: int, max_order: Fraction | int = 1, *, require_holomorphic: bool = True
) -> list[EtaQuotient]:
    """All non-constant admissible eta quotients with every cusp order in
    [0, max_order] (or in [-max_order, max_order] when
    require_holomorphic=False).

    The order map is an invertible divisor-indexed linear system, so the
    exponent vectors live in a bounded box which is scanned exactly.
    """
    max_order = Fraction(max_order)
    ds, rows = _order_matrix(N)
    k = len(ds)
    lo_val = -max_order if not require_holomorphic else Fraction(0)
    # bounds on each r_d from the inverse image of the order box
    cols = []
    for j in range(k):
        rhs = [Fraction(int(i == j)) for i in range(k)]
        cols.append(_solve_exact(rows, rhs))  # column j of the inverse
    bounds = []
    for d_idx in range(k):
        lo = hi = Fraction(0)
        for c_idx in range(k):
            coeff = cols[c_idx][d_idx]
            a, b = coeff * lo_val, coeff * max_order
            lo += min(a, b)
            hi += max(a, b)
        bounds.append((int(lo) - 1, int(hi) + 1))
    # branch and bound: assign r in divisor order, pruning each cusp row by
    # the extreme contributions still available from the remaining slots
    suffix_lo = [[Fraction(0)] * (k + 1) for _ in range(k)]
    suffix_hi = [[Fraction(0)] * (k + 1) for _ in range(k)]
    for c in range(k):
        for j in range(k - 1, -1, -1):
            a, b = rows[c][j] * bounds[j][0], rows[c][j] * bounds[j][1]
            suffix_lo[c][j] = suffix_lo[c][j + 1] + min(a, b)
            suffix_hi[c][j] = suffix_hi[c][j + 1] + max(a, b)
    out = []
    partial = [0] * k
    row_acc = [Fraction(0)] * k

    def rec(j: int):
        if j == k:
            if not any(partial):
                return
            q = EtaQuotient(N, dict(zip(ds, partial)))
            if q.admissible():
                out.append(q)
            return
        lo_j, hi_j = bounds[j]
        for r in range(lo_j, hi_j + 1):
            ok = True
            for c in range(k):
                val = row_acc[c] + rows[c][j] * r
                if val + suffix_hi[c][j + 1] < lo_val or val + suffix_lo[c][j + 1] > max_order:
                    ok = False
                    break
            if not ok:
                continue
            partial[j] = r
            for c in range(k):
                row_acc[c] += rows[c][j] * r
            rec(j + 1)
            for c in range(k):
                row_acc[c] -= rows[c][j] * r
            partial[j] = 0

    rec(0)
    out.sort(key=lambda q: q.exponent_key())
    return out
