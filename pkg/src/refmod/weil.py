"""The Weil representation of a discriminant form, exactly over cyclotomics.

``WeilContext`` fixes a realized discriminant group and provides the
generator matrices, application of arbitrary S/T words to group-ring
vectors, the support computation behind the reflectivity check, and the
scalar/permutation test for matrices congruent to the diagonal mod N.

All vector entries are sums of M-th roots of unity with integer
coefficients (M = lcm(8, level)); the S-scalar e(-sign/8)/sqrt|A| is
tracked symbolically as conj(Milgram sum)/|A| so every comparison is an
exact cyclotomic identity.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import _kernels
from .characters import CharacterSpec, char_eval
from .cyclotomic import Cyclo
from .discforms import DiscriminantGroup, GenusSymbol, milgram_signature
from .gamma0 import MetaplecticElement, element_from_word, matrix_word
from .intmath import kronecker, lcm

__all__ = [
    "WeilContext",
    "WeilVector",
    "discriminant_form_character",
    "random_torus_word",
    "MATRIX_BUDGET",
]


def random_torus_word(N: int, rng) -> tuple[list[tuple[str, int]], MetaplecticElement]:
    """A random (word, element) with b = c = 0 mod N and three S letters.

    The torus class a mod N sweeps all units as the parameters vary:
    T^j S T^m S T^n S T^k has lower-left mn - 1 and needs n = m^-1 and
    k = (jm - 1)(-m) mod N; extra T^(N r) dressing keeps the congruence.
    """
    from .intmath import inverse_mod

    while True:
        m = rng.randrange(1, 4 * N + 1)
        if gcd(m, N) == 1:
            break
    n = inverse_mod(m, N) + N * rng.randrange(0, 4)
    j = rng.randrange(-2 * N, 2 * N + 1)
    k = ((j * m - 1) * (-m)) % N + N * rng.randrange(-2, 3)
    word = [("T", j), ("S", 1), ("T", m), ("S", 1), ("T", n), ("S", 1), ("T", k)]
    r0, r1 = rng.randrange(-2, 3), rng.randrange(-2, 3)
    if r0:
        word = [("T", N * r0)] + word
    if r1:
        word = word + [("T", N * r1)]
    g = element_from_word(word)
    assert g.b % N == 0 and g.c % N == 0
    return word, g

MATRIX_BUDGET = 512


def discriminant_form_character(order: int, signature: int, N: int) -> CharacterSpec:
    """The character by which diagonal-mod-N elements act on the Weil
    representation: chi_{|A|} for 4 not| N, and
    chi_theta^(sign + (-1||A|) - 1) chi_{|A| 2^sign} for 4 | N."""
    signature %= 8
    if N % 4:
        if signature % 2:
            raise ValueError("odd signature forces 4 | N")
        return CharacterSpec(N, 0, order)
    e = (signature + kronecker(-1, order) - 1) % 4
    return CharacterSpec(N, e, order * 2**signature)


class WeilVector:
    """A group-ring vector with an exact symbolic scalar prefactor.

    value = (conjG/|A|)^spower * prod(extracted) * sum entries[i] e_gamma_i
    where each entry is a dict {exponent mod M: integer coefficient}.
    """

    __slots__ = ("ctx", "ptr", "exps", "coeffs", "spower", "extracted", "_reduced", "_mono")

    def __init__(self, ctx: "WeilContext", ptr, exps, coeffs, spower=0, extracted=()):
        self.ctx = ctx
        self.ptr = ptr
        self.exps = exps
        self.coeffs = coeffs
        self.spower = spower
        self.extracted = tuple(extracted)
        self._reduced = None
        self._mono = None

    @staticmethod
    def basis(ctx: "WeilContext", index: int) -> "WeilVector":
        nA = ctx.nA
        ptr = [0] * (nA + 1)
        for k in range(index, nA):
            ptr[k + 1] = 1
        return WeilVector(ctx, ptr, [0], [1], 0, ())

    def entry(self, i: int) -> dict[int, int]:
        lo, hi = self.ptr[i], self.ptr[i + 1]
        return {self.exps[t]: self.coeffs[t] for t in range(lo, hi)}

    def _all_monomial(self) -> bool:
        if self._mono is None:
            ptr = self.ptr
            nA = self.ctx.nA
            if len(self.exps) > nA:
                self._mono = False
            else:
                nonempty = sum(1 for i in range(nA) if ptr[i] != ptr[i + 1])
                self._mono = len(self.exps) == nonempty
        return self._mono

    def reduce(self) -> "WeilVector":
        """Every entry rewritten into the canonical cyclotomic basis.

        A vector whose entries are all single terms is already canonical
        up to zero-ness (a nonzero multiple of a root of unity is never
        zero), so it is returned as is."""
        if self._reduced is not None:
            return self._reduced
        if self._all_monomial():
            self._reduced = self
            return self
        ptr, exps, coeffs = _kernels.reduce_entries(
            self.ctx.nA, self.ctx.M, self.ctx.reduce_plan, self.ptr, self.exps, self.coeffs
        )
        out = WeilVector(self.ctx, ptr, exps, coeffs, self.spower, self.extracted)
        self._reduced = out
        out._reduced = out
        return out

    def support(self) -> list[int]:
        """Indices whose entry is nonzero as a cyclotomic number."""
        v = self.reduce()
        return [i for i in range(v.ctx.nA) if v.ptr[i] != v.ptr[i + 1]]

    def entry_value(self, i: int) -> Cyclo:
        """The exact value of entry i, scalar prefactor included."""
        v = self.reduce()
        val = Cyclo(
            self.ctx.M,
            {e: Fraction(c) for e, c in v.entry(i).items()},
            reduce=False,
        )
        return val * self.scalar()

    def value_scaled(self, i: int) -> tuple[list[int], list[int]]:
        """entry_value(i) * |A|^spower as an integer root combination.

        Assembled as conjG^spower times the extracted factors times the raw
        entry, everything inside the compiled multiply-reduce kernel."""
        ctx = self.ctx
        M = ctx.M
        v = self.reduce()
        lhs_e, lhs_c = [0], [1]
        for _ in range(self.spower):
            lhs_e, lhs_c = _kernels.cyclo_mul_reduce(
                M, ctx.reduce_plan, lhs_e, lhs_c, ctx.conjG_exps, ctx.conjG_coeffs
            )
        for fac in self.extracted:
            fe = list(fac.coeffs)
            fc = [int(fac.coeffs[k]) for k in fe]
            lhs_e, lhs_c = _kernels.cyclo_mul_reduce(M, ctx.reduce_plan, lhs_e, lhs_c, fe, fc)
        ent = v.entry(i)
        return _kernels.cyclo_mul_reduce(
            M, ctx.reduce_plan, lhs_e, lhs_c, list(ent.keys()), list(ent.values())
        )

    def check_value(self, i: int, root_exponent: Fraction) -> bool:
        """entry_value(i) == e(root_exponent), verified in integers."""
        ctx = self.ctx
        M = ctx.M
        x = (Fraction(root_exponent) % 1) * M
        if x.denominator != 1:
            return False
        rhs_e, rhs_c = _kernels.cyclo_reduce_int(
            M, ctx.reduce_plan, [int(x) % M], [ctx.nA**self.spower]
        )
        lhs_e, lhs_c = self.value_scaled(i)
        return lhs_e == rhs_e and lhs_c == rhs_c

    def scalar(self) -> Cyclo:
        out = self.ctx.s_scalar ** self.spower
        for f in self.extracted:
            out = out * f
        return out

    # --- generator actions -----------------------------------------------

    def apply_T(self, n: int = 1) -> "WeilVector":
        M = self.ctx.M
        nh = self.ctx.norm_half
        exps = list(self.exps)
        for i in range(self.ctx.nA):
            shift = (n * nh[i]) % M
            if shift:
                for t in range(self.ptr[i], self.ptr[i + 1]):
                    exps[t] = (exps[t] + shift) % M
        return WeilVector(self.ctx, self.ptr, exps, self.coeffs, self.spower, self.extracted)

    def apply_S(self) -> "WeilVector":
        ctx = self.ctx
        ptr, exps, coeffs = _kernels.s_apply(ctx.nA, ctx.M, self.ptr, self.exps, self.coeffs, ctx.P)
        v = WeilVector(ctx, ptr, exps, coeffs, self.spower + 1, self.extracted)
        # factoring pays off once the raw sweep would touch nA^2-sized
        # inputs; for small groups the direct sweep is cheaper
        if ctx.nA >= 48:
            return v._try_factor()
        return v

    def _try_factor(self) -> "WeilVector":
        """Pull a common cyclotomic factor out of the entries when every
        nonzero entry is +- a root of unity times the first one.  Entries
        are first rewritten into the canonical basis; along Gauss-sum words
        this keeps them monomial, which keeps the S sweep at its minimum
        cost."""
        ctx = self.ctx
        M = ctx.M
        if self._all_monomial():
            return self
        red = self.reduce()
        base: dict[int, int] | None = None
        for i in range(ctx.nA):
            if red.ptr[i] != red.ptr[i + 1]:
                base = red.entry(i)
                break
        if base is None:
            return red
        base_exps = list(base)
        nbase = len(base)
        new_entries: list[tuple[int, int] | None] = []
        for i in range(ctx.nA):
            lo, hi = red.ptr[i], red.ptr[i + 1]
            if lo == hi:
                new_entries.append(None)
                continue
            if hi - lo != nbase:
                return red
            d = red.entry(i)
            found = None
            e0 = next(iter(d))
            for be in base_exps:
                shift = (e0 - be) % M
                r_num, r_den = d[e0], base[be]
                if r_num != r_den and r_num != -r_den:
                    continue
                r = 1 if r_num == r_den else -1
                if all(d.get((e + shift) % M) == r * c for e, c in base.items()):
                    found = (shift, r)
                    break
            if found is None:
                return red
            new_entries.append(found)
        ptr = [0] * (ctx.nA + 1)
        exps, coeffs = [], []
        for i, ent in enumerate(new_entries):
            if ent is not None:
                exps.append(ent[0])
                coeffs.append(ent[1])
            ptr[i + 1] = len(exps)
        factor = Cyclo(M, {e: Fraction(c) for e, c in base.items()}, reduce=False)
        return WeilVector(ctx, ptr, exps, coeffs, self.spower, self.extracted + (factor,))

    def apply_word(self, word: list[tuple[str, int]]) -> "WeilVector":
        """Apply ("T", n)/("S", n) letters; leftmost letter acts last."""
        v = self
        for letter, n in reversed(word):
            if letter == "T":
                v = v.apply_T(n)
            elif letter == "S":
                if n < 0:
                    raise ValueError("negative S powers are not used")
                for _ in range(n):
                    v = v.apply_S()
            else:
                raise ValueError(letter)
        return v


class WeilContext:
    """All precomputed data for the Weil representation of one realized form."""

    def __init__(self, group: DiscriminantGroup, symbol: GenusSymbol | None = None):
        self.group = group
        self.symbol = symbol
        self.nA = group.order
        self.level = group.level()
        self.M = lcm(8, self.level)
        self.signature = symbol.signature() if symbol is not None else milgram_signature(group)
        M = self.M
        gnorm = [int((x / 2 % 1) * M) for x in group.gen_norms]
        gpair_full = []
        r = group.rank
        for i in range(r):
            row = []
            for j in range(r):
                v = group.gen_pairs[i][j] if i != j else (group.gen_norms[i] % 1)
                row.append(int(v * M))
            gpair_full.append(row)
        gpair_off = [[gpair_full[i][j] if i != j else 0 for j in range(r)] for i in range(r)]
        self.norm_half = _kernels.norm_half_exponents(list(group.orders), gnorm, gpair_off, M)
        from array import array

        # persistent int buffer: the compiled S sweep views it without copying
        self.P = array("i", _kernels.pair_matrix(list(group.orders), gpair_full, M))
        self.elements = group.elements()
        self.index = {el: i for i, el in enumerate(self.elements)}
        from .cyclotomic import _reduction_data

        self.reduce_plan = [tuple(row) for row in _reduction_data(self.M)]
        G = group.milgram_sum()
        # e(-sign/8)/sqrt|A| = conj(G)/|A|
        self.s_scalar = G.conjugate() * Fraction(1, self.nA)
        conjG = G.conjugate().promote(self.M)
        self.conjG_exps = sorted(conjG.coeffs)
        self.conjG_coeffs = [int(conjG.coeffs[k]) for k in self.conjG_exps]

    # --- exact matrices (small groups) --------------------------------------

    def rho_T(self) -> list[list[Cyclo]]:
        self._check_matrix_budget()
        n = self.nA
        out = [[Cyclo.zero() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            out[i][i] = Cyclo.root(Fraction(self.norm_half[i], self.M))
        return out

    def rho_S(self) -> list[list[Cyclo]]:
        self._check_matrix_budget()
        n, M = self.nA, self.M
        out = [[Cyclo.zero() for _ in range(n)] for _ in range(n)]
        for g in range(n):
            for d in range(n):
                # coefficient of e_delta in rho(S) e_gamma
                out[d][g] = self.s_scalar * Cyclo.root(Fraction(-self.P[g * n + d], M))
        return out

    def rho_Z_scalar(self) -> Cyclo:
        return Cyclo.root(Fraction(-self.signature, 4))

    def rho_Z_action(self, gamma: tuple[int, ...]) -> tuple[Cyclo, tuple[int, ...]]:
        """((-i)^sign, -gamma)."""
        return self.rho_Z_scalar(), self.group.neg(gamma)

    def _check_matrix_budget(self):
        if self.nA > MATRIX_BUDGET:
            raise ValueError(f"matrix budget {MATRIX_BUDGET} exceeded (|A| = {self.nA})")

    # --- structured relation checks ------------------------------------------

    def check_orthogonality(self) -> bool:
        """sum_delta e((lambda, delta)) is |A| at 0 and 0 elsewhere.

        This is nondegeneracy of the pairing; combined with the exact scalar
        identity |c|^2 = 1/|A| it is unitarity of rho(S), and it also pins
        the support structure of rho(S)^2.
        """
        ones = WeilVector(self, list(range(self.nA + 1)), [0] * self.nA, [1] * self.nA)
        swept = ones.apply_S()  # entries: sum_delta e(-(delta, lambda)), scalar c
        supp = swept.support()
        if supp != [0]:
            return False
        # value at 0 must be c |A|, i.e. the |A|-scaled value equals conjG |A|
        lhs = swept.value_scaled(0)
        rhs = _kernels.cyclo_mul_reduce(
            self.M, self.reduce_plan, self.conjG_exps, self.conjG_coeffs, [0], [self.nA]
        )
        if (lhs[0], lhs[1]) != (rhs[0], rhs[1]):
            return False
        # |c|^2 = conjG conj(conjG) / |A|^2 == 1/|A|
        ce, cc = _kernels.cyclo_mul_reduce(
            self.M,
            self.reduce_plan,
            self.conjG_exps,
            self.conjG_coeffs,
            [(-k) % self.M for k in self.conjG_exps],
            self.conjG_coeffs,
        )
        pairs = sorted(zip(ce, cc))
        return pairs == [(0, self.nA)]

    def check_S_squared(self) -> bool:
        """rho(S)^2 = rho(Z) as an exact matrix identity.

        Entries of rho(S)^2 at (eps, gamma) are c^2 R(gamma+eps) with
        R(lambda) = sum_delta e(-(delta, lambda)); orthogonality pins the
        support to eps = -gamma and the scalar must be (-i)^sign.
        """
        v = WeilVector.basis(self, 0).apply_S().apply_S()
        if v.support() != [0]:
            return False
        return v.check_value(0, Fraction(-self.signature, 4))

    def check_ST_cubed(self) -> bool:
        """(rho(S) rho(T))^3 = rho(Z), via the bilinear collapse.

        The full matrix identity reduces to the statement that
        w = rho(STSTST) e_0 equals (-i)^sign e_0: the (eps, gamma) entry of
        rho(S)rho(T)rho(S)rho(T)rho(S) is an exact monomial times
        w_(gamma+eps), so support and scalar of w decide every entry.
        """
        v = WeilVector.basis(self, 0)
        for _ in range(3):
            v = v.apply_T(1).apply_S()  # T acts first on e_0 trivially anyway
        if v.support() != [0]:
            return False
        return v.check_value(0, Fraction(-self.signature, 4))

    # --- naive matrix route (small groups, used as the cross-check) -----------

    def matrix_mul(self, A, B):
        n = self.nA
        out = [[Cyclo.zero() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            Ai = A[i]
            for k in range(n):
                a = Ai[k]
                if a.is_zero():
                    continue
                Bk = B[k]
                row = out[i]
                for j in range(n):
                    if not Bk[j].is_zero():
                        row[j] = row[j] + a * Bk[j]
        return out

    def matrix_is_identity_times(self, A, scalar: Cyclo, perm=None) -> bool:
        n = self.nA
        for i in range(n):
            for j in range(n):
                target = j if perm is None else perm[j]
                want = scalar if i == target else Cyclo.zero()
                if not (A[i][j] == want):
                    return False
        return True

    # --- words, support, scalar/permutation action ------------------------------

    def apply_word_to_basis(self, word, gamma: tuple[int, ...]) -> WeilVector:
        return WeilVector.basis(self, self.index[gamma]).apply_word(word)

    def rho_word_apply_e0(self, word) -> WeilVector:
        """Image of e_0 under a word in ("S", n) / ("T", n) letters."""
        return self.apply_word_to_basis(word, self.group.zero())

    def support_e0(self, c: int, N: int | None = None, m: int = 1) -> set[tuple[int, ...]]:
        """Support of rho(T^m S T^n S) e_0 where gcd(n, N) = gcd(c, N).

        Contract: the support is contained in the twisted coset A^{c*},
        which is what makes per-cusp singularity bookkeeping possible.
        """
        N = N or self.level
        n = gcd(c, N)
        word = [("T", m), ("S", 1), ("T", n), ("S", 1)]
        v = WeilVector.basis(self, 0).apply_word(word)
        return {self.elements[i] for i in v.support()}

    def twisted_coset_indices(self, n: int) -> set[int]:
        """Indices of A^{n*}, computed from the integer pairing tables."""
        M, nA = self.M, self.nA
        conds = []
        for i, d in enumerate(self.group.orders):
            step = d // gcd(d, n)
            if step == d:
                continue
            coords = [0] * self.group.rank
            coords[i] = step
            gi = self.index[tuple(coords)]
            target = (n * self.norm_half[gi]) % M
            conds.append((gi, target))
        out = set()
        for k in range(nA):
            if all(self.P[gi * nA + k] == target for gi, target in conds):
                out.add(k)
        return out

    def scalar_permutation_check(
        self,
        g: MetaplecticElement,
        N: int | None = None,
        sample: list[tuple[int, ...]] | None = None,
        word: list[tuple[str, int]] | None = None,
    ) -> bool:
        """Verify rho(g) e_gamma = chi_A(g) e_(a^-1 gamma) on the sample.

        g must have b = c = 0 mod N for N a multiple of the level.  The
        word for g defaults to the Euclidean decomposition; a caller who
        built g from a known short word can pass it to keep the sweep in
        the Gauss-monomial regime.
        """
        N = N or self.level
        a, b, c, d = g.matrix
        if b % N or c % N:
            raise ValueError("need N | b and N | c")
        spec = discriminant_form_character(self.nA, self.signature, N)
        # rho is computed on the product of lifted letters; that product has
        # the same matrix as g (its branch is whatever the cocycle gives),
        # and the scalar/permutation claim is tested for that exact element
        if word is None:
            word = matrix_word(a, b, c, d)
        lifted = element_from_word(word)
        assert lifted.matrix == g.matrix
        if sample is None:
            sample = self.elements
        chi = char_eval(spec, lifted)
        for gamma in sample:
            v = self.apply_word_to_basis(word, gamma)
            supp = v.support()
            if len(supp) != 1:
                return False
            # the permutation index is d = a^(-1) mod N for the composition
            # convention rho(gh) = rho(g) rho(h) used here
            target = self.group.smul(d, gamma)
            if self.elements[supp[0]] != target:
                return False
            if not v.check_value(supp[0], chi.exponent):
                return False
        return True
