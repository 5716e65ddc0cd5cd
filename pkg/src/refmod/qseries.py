"""Formal q-expansions with fractional exponents and exact coefficients.

A ``QSeries`` stores sum c_k q^(k/den) as a sparse integer-keyed map plus a
rational precision cutoff: all exponents below ``prec`` are tracked
exactly, nothing is claimed beyond it.  Coefficients are Fractions, or
Cyclo values when a non-real character enters.  Constructors cover eta
functions (with rational scaling of the argument), positive definite
lattice theta series and their duals, and the classical Eisenstein
families.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import isqrt

from . import _kernels
from .cyclotomic import Cyclo
from .exactnum import DirichletCharacter, bernoulli
from .intmath import divisors, lcm

__all__ = [
    "QSeries",
    "GramMatrix",
    "eta_series",
    "delta_series",
    "lattice_theta",
    "eisenstein_level1",
    "eisenstein_chi",
    "eisenstein_weight1",
    "DEFAULT_TERMS",
]

DEFAULT_TERMS = 25


def _is_zero_coeff(c) -> bool:
    if isinstance(c, Cyclo):
        return c.is_zero()
    return c == 0


def _inv_coeff(c):
    if isinstance(c, Cyclo):
        return c.inverse()
    return 1 / Fraction(c)


class QSeries:
    """sum_{k} terms[k] * q^(k/den) + O(q^prec)."""

    __slots__ = ("den", "terms", "prec")

    def __init__(self, den: int, terms: dict, prec: Fraction, *, normalize: bool = True):
        self.den = den
        self.prec = Fraction(prec)
        if normalize:
            terms = {
                k: (v if isinstance(v, Cyclo) else Fraction(v))
                for k, v in terms.items()
                if Fraction(k, den) < self.prec and not _is_zero_coeff(v)
            }
        self.terms = terms

    # --- construction ---------------------------------------------------

    @staticmethod
    def zero(prec: Fraction | int, den: int = 1) -> "QSeries":
        return QSeries(den, {}, prec, normalize=False)

    @staticmethod
    def one(prec: Fraction | int) -> "QSeries":
        return QSeries(1, {0: Fraction(1)}, prec)

    @staticmethod
    def monomial(exponent: Fraction | int, coeff=1, prec: Fraction | int | None = None) -> "QSeries":
        e = Fraction(exponent)
        if prec is None:
            prec = e + DEFAULT_TERMS
        return QSeries(e.denominator, {e.numerator: coeff}, prec)

    # --- bookkeeping ------------------------------------------------------

    def rescale_den(self, den: int) -> "QSeries":
        """Rewrite with exponent denominator ``den`` (a multiple of self.den)."""
        if den == self.den:
            return self
        s = den // self.den
        if s * self.den != den:
            raise ValueError("new denominator must be a multiple")
        return QSeries(den, {k * s: v for k, v in self.terms.items()}, self.prec, normalize=False)

    def _common(self, other: "QSeries") -> tuple["QSeries", "QSeries"]:
        d = lcm(self.den, other.den)
        return self.rescale_den(d), other.rescale_den(d)

    def truncate(self, prec: Fraction | int) -> "QSeries":
        prec = Fraction(prec)
        if prec > self.prec:
            raise ValueError("cannot raise precision")
        return QSeries(self.den, self.terms, prec)

    def leading_exponent(self) -> Fraction | None:
        """Smallest exponent with a nonzero coefficient, None if O(q^prec)."""
        if not self.terms:
            return None
        return Fraction(min(self.terms), self.den)

    def coefficient(self, exponent: Fraction | int):
        e = Fraction(exponent)
        if e >= self.prec:
            raise ValueError(f"coefficient of q^{e} is beyond the precision O(q^{self.prec})")
        if (e * self.den).denominator != 1:
            return Fraction(0)
        return self.terms.get(int(e * self.den), Fraction(0))

    def coefficients(self) -> list[tuple[Fraction, object]]:
        return [(Fraction(k, self.den), v) for k, v in sorted(self.terms.items())]

    # --- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            other = QSeries(1, {0: other}, self.prec)
        a, b = self._common(other)
        prec = min(a.prec, b.prec)
        out = dict(a.terms)
        for k, v in b.terms.items():
            w = out.get(k, 0) + v
            if _is_zero_coeff(w):
                out.pop(k, None)
            else:
                out[k] = w
        return QSeries(a.den, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.den, {k: -v for k, v in self.terms.items()}, self.prec, normalize=False)

    def __sub__(self, other):
        if isinstance(other, QSeries):
            return self + (-other)
        neg = -other if isinstance(other, Cyclo) else -Fraction(other)
        return self + QSeries(1, {0: neg}, self.prec)

    def __rsub__(self, other):
        return (-self) + other

    def scalar_mul(self, c) -> "QSeries":
        if _is_zero_coeff(c):
            return QSeries.zero(self.prec, self.den)
        return QSeries(self.den, {k: v * c for k, v in self.terms.items()}, self.prec)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return self.scalar_mul(other)
        a, b = self._common(other)
        # error terms: lead(a)+prec(b) and lead(b)+prec(a); empty factors only
        # tighten the bound
        la, lb = a.leading_exponent(), b.leading_exponent()
        bounds = []
        if la is not None:
            bounds.append(la + b.prec)
        if lb is not None:
            bounds.append(lb + a.prec)
        bounds.append(a.prec + b.prec)
        prec = min(bounds)
        cutoff_key = prec * a.den  # exponents k with k/den < prec
        out = _convolve(a.terms, b.terms, cutoff_key)
        return QSeries(a.den, out, prec)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return (self.inverse()) ** (-k)
        result: QSeries | None = None
        base = self
        while True:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if not k:
                break
            base = base * base
        if result is None:
            # q^0 with the precision this series could support
            return QSeries.one(self.prec if self.leading_exponent() is None else Fraction(10**9))
        return result

    def inverse(self) -> "QSeries":
        """Series inverse; the leading coefficient must be invertible.

        If f = c q^a (1 + u) is known to O(q^P) then 1/f is computed to
        O(q^(P - 2a)).
        """
        la = self.leading_exponent()
        if la is None:
            raise ZeroDivisionError("cannot invert a series with no known nonzero term")
        den = self.den
        a = int(la * den)
        prec_out = self.prec - 2 * la
        f0 = self.terms[a]
        inv0 = _inv_coeff(f0)
        # h_m solves sum_{i+j=m} f_{a+i} h_{-a+j} = delta_{m,0}
        mmax = int((prec_out + la) * den)  # need -a+j with j/den < prec_out + la
        h: dict[int, object] = {}
        fshift = {k - a: v for k, v in self.terms.items()}
        for m in range(0, max(mmax, 0)):
            s = Fraction(1) if m == 0 else Fraction(0)
            for i, fi in fshift.items():
                if 0 < i <= m:
                    hj = h.get(m - i)
                    if hj is not None:
                        s = s - fi * hj
            if not _is_zero_coeff(s):
                h[m] = s * inv0
        return QSeries(den, {j - a: v for j, v in h.items()}, prec_out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return self.scalar_mul(_inv_coeff(other))
        return self * other.inverse()

    def scale_exponents(self, t: Fraction | int) -> "QSeries":
        """Substitute q -> q^t (t a positive rational)."""
        t = Fraction(t)
        if t <= 0:
            raise ValueError("scaling factor must be positive")
        den = self.den * t.denominator
        out = {k * t.numerator: v for k, v in self.terms.items()}
        return QSeries(den, out, self.prec * t)

    # --- comparisons -------------------------------------------------------

    def agrees_with(self, other: "QSeries", upto: Fraction | int | None = None) -> bool:
        """Termwise equality for all exponents < upto (default: shared precision)."""
        a, b = self._common(other)
        bound = min(a.prec, b.prec) if upto is None else Fraction(upto)
        if bound > min(a.prec, b.prec):
            raise ValueError("comparison beyond tracked precision")
        cut = bound * a.den
        ta = {k: v for k, v in a.terms.items() if k < cut}
        tb = {k: v for k, v in b.terms.items() if k < cut}
        if set(ta) != set(tb):
            return False
        return all(_coeff_eq(ta[k], tb[k]) for k in ta)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._common(other)
        return a.prec == b.prec and a.terms.keys() == b.terms.keys() and all(
            _coeff_eq(a.terms[k], b.terms[k]) for k in a.terms
        )

    # --- serialization -------------------------------------------------------

    def to_json(self) -> str:
        items = []
        for k, v in sorted(self.terms.items()):
            if isinstance(v, Cyclo):
                raise ValueError("JSON serialization covers rational coefficients")
            items.append([k, f"{v.numerator}/{v.denominator}"])
        return json.dumps({"denominator": self.den, "terms": items, "precision": str(self.prec)})

    @staticmethod
    def from_json(blob: str) -> "QSeries":
        data = json.loads(blob)
        terms = {int(k): Fraction(s) for k, s in data["terms"]}
        return QSeries(int(data["denominator"]), terms, Fraction(data["precision"]))

    def __repr__(self):
        if not self.terms:
            return f"O(q^{self.prec})"
        parts = []
        for k, v in sorted(self.terms.items())[:8]:
            e = Fraction(k, self.den)
            parts.append(f"{v}*q^{e}" if e else f"{v}")
        tail = " + ..." if len(self.terms) > 8 else ""
        return " + ".join(parts) + tail + f" + O(q^{self.prec})"


def _coeff_eq(a, b) -> bool:
    if isinstance(a, Cyclo) or isinstance(b, Cyclo):
        return Cyclo.coerce(a) == Cyclo.coerce(b)
    return a == b


def _convolve(t1: dict, t2: dict, cutoff_key: Fraction) -> dict:
    cut = int(cutoff_key) if cutoff_key == int(cutoff_key) else int(cutoff_key) + 1
    k1 = sorted(t1)
    k2 = sorted(t2)
    # fast integer path
    if all(isinstance(v, Fraction) for v in t1.values()) and all(
        isinstance(v, Fraction) for v in t2.values()
    ):
        d1 = 1
        for v in t1.values():
            d1 = lcm(d1, v.denominator)
        d2 = 1
        for v in t2.values():
            d2 = lcm(d2, v.denominator)
        v1 = [int(t1[k] * d1) for k in k1]
        v2 = [int(t2[k] * d2) for k in k2]
        # keys may be negative; shift so the kernel sees nonnegative sums
        s1 = k1[0] if k1 else 0
        s2 = k2[0] if k2 else 0
        keys, vals = _kernels.series_conv_int(
            [k - s1 for k in k1], v1, [k - s2 for k in k2], v2, cut - s1 - s2
        )
        scale = Fraction(1, d1 * d2)
        return {k + s1 + s2: v * scale for k, v in zip(keys, vals)}
    out: dict[int, object] = {}
    for ka in k1:
        va = t1[ka]
        for kb in k2:
            k = ka + kb
            if k >= cut:
                break
            w = out.get(k, 0) + va * t2[kb]
            if _is_zero_coeff(w):
                out.pop(k, None)
            else:
                out[k] = w
    return out


# --- eta ---------------------------------------------------------------------


def eta_series(t: Fraction | int = 1, prec: Fraction | int | None = None) -> "QSeries":
    """q^(t/24) prod_{n>0} (1 - q^(t n)), for a positive rational scaling t."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("eta scaling must be positive")
    if prec is None:
        prec = Fraction(t, 24) + DEFAULT_TERMS
    prec = Fraction(prec)
    den = lcm(24 * t.denominator, t.denominator)
    # product of (1 - q^(t n)) while t*n/1 < prec - t/24 (shifted by the prefactor)
    terms: dict[int, Fraction] = {0: Fraction(1)}
    cutoff = (prec - Fraction(t, 24)) * den
    n = 1
    step = int(t * den)
    while n * step < cutoff:
        factor = {0: Fraction(1), n * step: Fraction(-1)}
        terms = _convolve(terms, factor, cutoff)
        n += 1
    shift = int(Fraction(t, 24) * den)
    return QSeries(den, {k + shift: v for k, v in terms.items()}, prec)


def delta_series(prec: Fraction | int | None = None) -> "QSeries":
    """The weight-12 cusp form q prod (1-q^n)^24."""
    if prec is None:
        prec = 1 + DEFAULT_TERMS
    return eta_series(1, prec) ** 24


# --- lattice theta functions ---------------------------------------------------


class GramMatrix:
    """A symmetric positive definite integer Gram matrix with even diagonal."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = [tuple(int(x) for x in r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        for i in range(n):
            if rows[i][i] % 2:
                raise ValueError("diagonal entries must be even")
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix must be symmetric")
        self.rows = tuple(rows)
        if not self._positive_definite():
            raise ValueError("matrix must be positive definite")

    def _positive_definite(self) -> bool:
        n = len(self.rows)
        m = [[Fraction(x) for x in r] for r in self.rows]
        # leading principal minors via fraction-free-ish Gaussian elimination
        det = Fraction(1)
        for i in range(n):
            piv = m[i][i]
            if piv <= 0:
                return False
            det *= piv
            for j in range(i + 1, n):
                f = m[j][i] / piv
                for k in range(i, n):
                    m[j][k] -= f * m[i][k]
        return det > 0

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def determinant(self) -> int:
        n = len(self.rows)
        m = [[Fraction(x) for x in r] for r in self.rows]
        det = Fraction(1)
        for i in range(n):
            piv = m[i][i]
            det *= piv
            for j in range(i + 1, n):
                f = m[j][i] / piv
                for k in range(i, n):
                    m[j][k] -= f * m[i][k]
        assert det.denominator == 1
        return int(det)

    def __repr__(self):
        return f"GramMatrix({list(list(r) for r in self.rows)})"


def _cholesky(rows) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Q(x) = sum_i D[i] (x_i + sum_{j>i} L[i][j] x_j)^2 for the form x^T rows x."""
    n = len(rows)
    a = [[Fraction(rows[i][j]) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    L = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        D[i] = a[i][i]
        for j in range(i + 1, n):
            L[i][j] = a[i][j] / a[i][i]
        for j in range(i + 1, n):
            for k in range(j, n):
                a[j][k] = a[j][k] - a[i][j] * a[i][k] / a[i][i]
                a[k][j] = a[j][k]
    return D, L


def _floor_sqrt_frac(x: Fraction) -> int:
    """floor(sqrt(x)) for x >= 0, exactly."""
    if x < 0:
        raise ValueError("negative")
    p, q = x.numerator, x.denominator
    return isqrt(p * q) // q


def _theta_counts(rows, bound: Fraction) -> dict[Fraction, int]:
    """Counts of vectors with Q(x) = x^T rows x <= 2*bound... see lattice_theta."""
    n = len(rows)
    D, L = _cholesky(rows)
    counts: dict[Fraction, int] = {}

    def rec(i: int, remaining: Fraction, partial: list[Fraction], acc: Fraction):
        if i < 0:
            counts[acc] = counts.get(acc, 0) + 1
            return
        mu = sum(L[i][j] * partial[j] for j in range(i + 1, n)) if i + 1 < n else Fraction(0)
        # D[i] * (x + mu)^2 <= remaining; scan a provably covering integer
        # window, then filter each candidate exactly
        lim = remaining / D[i]
        s = _floor_sqrt_frac(lim)
        mf = mu.numerator // mu.denominator
        for x in range(-s - mf - 2, s - mf + 3):
            val = D[i] * (x + mu) ** 2
            if val <= remaining:
                partial[i] = Fraction(x)
                rec(i - 1, remaining - val, partial, acc + val)
        partial[i] = Fraction(0)

    rec(n - 1, bound, [Fraction(0)] * n, Fraction(0))
    return counts


def lattice_theta(
    gram: GramMatrix | list, prec: Fraction | int | None = None, *, dual: bool = False
) -> "QSeries":
    """Theta series sum_{x} q^(Q(x)/2) of a positive definite even lattice.

    The coefficient of q^m counts the vectors of norm 2m.  With dual=True
    the sum runs over the dual lattice instead: exponents then live in
    (1/det)Z and the coefficient of q^(m) counts dual vectors x with
    x^T G^(-1) x = 2m.
    """
    if not isinstance(gram, GramMatrix):
        gram = GramMatrix(gram)
    if prec is None:
        prec = Fraction(DEFAULT_TERMS)
    prec = Fraction(prec)
    rows: list[list[Fraction]]
    if dual:
        det = gram.determinant()
        n = gram.dimension
        # inverse of the Gram matrix, exactly
        m = [[Fraction(gram.rows[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for i in range(n):
            piv = m[i][i]
            m[i] = [x / piv for x in m[i]]
            for j in range(n):
                if j != i and m[j][i]:
                    f = m[j][i]
                    m[j] = [a - f * b for a, b in zip(m[j], m[i])]
        rows = [r[n:] for r in m]
    else:
        rows = [[Fraction(x) for x in r] for r in gram.rows]
    # strictly below prec: enumerate Q(x)/2 < prec, i.e. Q(x) <= 2*prec - epsilon
    counts = _theta_counts(rows, 2 * prec)
    den = 1
    for v in counts:
        den = lcm(den, (v / 2).denominator)
    terms: dict[int, Fraction] = {}
    for v, c in counts.items():
        e = v / 2
        if e < prec:
            terms[int(e * den)] = terms.get(int(e * den), Fraction(0)) + c
    return QSeries(den, terms, prec)


# --- Eisenstein series -----------------------------------------------------------


def _divisor_power_sum(n: int, k: int) -> int:
    return sum(d**k for d in divisors(n))


def eisenstein_level1(k: int, prec: Fraction | int | None = None) -> "QSeries":
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for even k >= 2.

    E_2 itself is only quasimodular; combinations sum a_d E_2(d tau) with
    sum a_d/d = 0 are the modular ones.
    """
    if k < 2 or k % 2:
        raise ValueError("even weight >= 2 required")
    if prec is None:
        prec = DEFAULT_TERMS
    prec = Fraction(prec)
    c = Fraction(-2 * k) / bernoulli(k)
    nmax = int(prec) if prec == int(prec) else int(prec) + 1
    terms: dict[int, Fraction] = {0: Fraction(1)}
    for n in range(1, nmax):
        if n < prec:
            terms[n] = c * _divisor_power_sum(n, k - 1)
    return QSeries(1, terms, prec)


def eisenstein_chi(k: int, chi: DirichletCharacter, prec: Fraction | int | None = None) -> "QSeries":
    """E_k(tau, chi) = sum_{n>=1} q^n sum_{d|n} d^(k-1) chi(n/d), k >= 2."""
    if k < 2:
        raise ValueError("weight >= 2 required")
    if chi.is_principal():
        raise ValueError("character must be non-principal")
    parity = 0 if chi.is_even() else 1
    if parity != k % 2:
        raise ValueError("character parity must match the weight")
    if prec is None:
        prec = DEFAULT_TERMS
    prec = Fraction(prec)
    nmax = int(prec) if prec == int(prec) else int(prec) + 1
    terms: dict[int, object] = {}
    real = chi.is_real()
    for n in range(1, nmax):
        if n >= prec:
            continue
        if real:
            s = Fraction(0)
            for d in divisors(n):
                v = chi.value_number(n // d)
                if v:
                    s += Fraction(d**(k - 1)) * v
        else:
            s = Cyclo.zero()
            for d in divisors(n):
                v = chi(n // d)
                if v != 0:
                    s = s + v.as_cyclo() * Fraction(d**(k - 1))
        if not _is_zero_coeff(s):
            terms[n] = s
    return QSeries(1, terms, prec)


def eisenstein_weight1(chi: DirichletCharacter, prec: Fraction | int | None = None) -> "QSeries":
    """E_1(tau, chi) = 1 + (2/L(0,chi)) sum_{n>=1} q^n sum_{d|n} chi(n/d).

    Here L(0,chi) = -B_{1,chi}; chi must be odd and non-principal.
    """
    from .exactnum import generalized_bernoulli_b1

    if chi.is_principal() or not chi.is_odd():
        raise ValueError("an odd non-principal character is required")
    if prec is None:
        prec = DEFAULT_TERMS
    prec = Fraction(prec)
    b1 = generalized_bernoulli_b1(chi)
    l0 = -b1 if isinstance(b1, Fraction) else (-Fraction(1)) * b1
    factor = 2 / l0 if isinstance(l0, Fraction) else Cyclo.from_rational(2) * l0.inverse()
    nmax = int(prec) if prec == int(prec) else int(prec) + 1
    terms: dict[int, object] = {0: Fraction(1)}
    real = chi.is_real()
    for n in range(1, nmax):
        if n >= prec:
            continue
        if real:
            s = Fraction(0)
            for d in divisors(n):
                s += chi.value_number(n // d)
        else:
            s = Cyclo.zero()
            for d in divisors(n):
                v = chi(n // d)
                if v != 0:
                    s = s + v.as_cyclo()
        s = s * factor
        if not _is_zero_coeff(s):
            terms[n] = s
    return QSeries(1, terms, prec)
