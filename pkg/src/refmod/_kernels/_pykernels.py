"""Pure-Python kernels.

Same contracts as the compiled twin in ``_ckernels``; see benchmarks/ for
the speed comparison.  All exponents are integers modulo M (representing
M-th roots of unity) and all coefficients are Python ints, so everything
is exact.
"""

from __future__ import annotations

BACKEND = "python"


def mixed_radix_coords(orders: list[int]) -> list[tuple[int, ...]]:
    """All coordinate tuples for the group prod Z/orders[j], last axis fastest."""
    coords = [()]
    for d in orders:
        coords = [c + (x,) for c in coords for x in range(d)]
    return coords


def norm_half_exponents(
    orders: list[int], gnorm: list[int], gpair: list[list[int]], M: int
) -> list[int]:
    """(gamma^2/2)*M mod M for every element, in mixed-radix order.

    gnorm[j] is (e_j^2/2)*M mod M and gpair[j][k] is ((e_j,e_k))*M mod M.
    """
    r = len(orders)
    out = []
    for c in mixed_radix_coords(orders):
        tot = 0
        for j in range(r):
            cj = c[j]
            if not cj:
                continue
            tot += cj * cj * gnorm[j]
            for k in range(j + 1, r):
                if c[k]:
                    tot += cj * c[k] * gpair[j][k]
        out.append(tot % M)
    return out


def pair_matrix(orders: list[int], gpair: list[list[int]], M: int) -> list[int]:
    """Flat nA*nA table of ((gamma_i, gamma_k))*M mod M.

    gpair[j][k] = ((e_j, e_k))*M mod M including the diagonal.
    """
    coords = mixed_radix_coords(orders)
    r = len(orders)
    nA = len(coords)
    # v[i][l] = (gamma_i, e_l) * M mod M
    vrows = []
    for c in coords:
        row = [sum(c[j] * gpair[j][l] for j in range(r)) % M for l in range(r)]
        vrows.append(row)
    P = [0] * (nA * nA)
    for i in range(nA):
        vi = vrows[i]
        base = i * nA
        for k, ck in enumerate(coords):
            P[base + k] = sum(ck[l] * vi[l] for l in range(r)) % M
    return P


def s_apply(
    nA: int,
    M: int,
    ptr: list[int],
    exps: list[int],
    coeffs: list[int],
    P: list[int],
) -> tuple[list[int], list[int], list[int]]:
    """One Fourier sweep over the group: out[k] = sum_i v[i] * e(-(g_i,g_k)).

    The vector v is given entrywise in compressed form (ptr/exps/coeffs) and
    the result comes back the same way, with exponents reduced mod M.
    """
    out_ptr = [0] * (nA + 1)
    out_exps: list[int] = []
    out_coeffs: list[int] = []
    for k in range(nA):
        acc: dict[int, int] = {}
        for i in range(nA):
            lo, hi = ptr[i], ptr[i + 1]
            if lo == hi:
                continue
            shift = P[i * nA + k]
            for t in range(lo, hi):
                e = exps[t] - shift
                e %= M
                w = acc.get(e, 0) + coeffs[t]
                if w:
                    acc[e] = w
                else:
                    del acc[e]
        for e in sorted(acc):
            out_exps.append(e)
            out_coeffs.append(acc[e])
        out_ptr[k + 1] = len(out_exps)
    return out_ptr, out_exps, out_coeffs


def cyclo_reduce_int(
    M: int, plan: list[tuple[int, int, int, int]], exps: list[int], coeffs: list[int]
) -> tuple[list[int], list[int]]:
    """Rewrite an integer combination of M-th roots into the canonical basis.

    plan rows are (p, q, p^(a-1), step) per prime power q = p^a | M: a term
    whose exponent has top base-p digit p-1 at q fans out to p-1 terms with
    negated coefficient, shifting by multiples of step.
    """
    cur: dict[int, int] = {}
    for k, v in zip(exps, coeffs):
        w = cur.get(k, 0) + v
        if w:
            cur[k] = w
        else:
            del cur[k]
    for p, q, pa1, step in plan:
        out: dict[int, int] = {}
        for k, v in cur.items():
            if (k % q) // pa1 == p - 1:
                for j in range(1, p):
                    k2 = (k - j * step) % M
                    w = out.get(k2, 0) - v
                    if w:
                        out[k2] = w
                    else:
                        del out[k2]
            else:
                w = out.get(k, 0) + v
                if w:
                    out[k] = w
                else:
                    del out[k]
        cur = out
    keys = sorted(cur)
    return keys, [cur[k] for k in keys]


def cyclo_mul_reduce(
    M: int, plan, e1: list[int], c1: list[int], e2: list[int], c2: list[int]
) -> tuple[list[int], list[int]]:
    """Product of two integer root-of-unity combinations, canonically reduced."""
    acc: dict[int, int] = {}
    for ka, va in zip(e1, c1):
        for kb, vb in zip(e2, c2):
            k = ka + kb
            if k >= M:
                k -= M
            w = acc.get(k, 0) + va * vb
            if w:
                acc[k] = w
            else:
                del acc[k]
    return cyclo_reduce_int(M, plan, list(acc.keys()), list(acc.values()))


def reduce_entries(
    nA: int, M: int, plan, ptr: list[int], exps: list[int], coeffs: list[int]
) -> tuple[list[int], list[int], list[int]]:
    """Canonically reduce every entry of a compressed vector."""
    out_ptr = [0] * (nA + 1)
    out_exps: list[int] = []
    out_coeffs: list[int] = []
    for i in range(nA):
        lo, hi = ptr[i], ptr[i + 1]
        if lo != hi:
            e2, c2 = cyclo_reduce_int(M, plan, exps[lo:hi], coeffs[lo:hi])
            out_exps.extend(e2)
            out_coeffs.extend(c2)
        out_ptr[i + 1] = len(out_exps)
    return out_ptr, out_exps, out_coeffs


def series_conv_int(
    keys1: list[int],
    vals1: list[int],
    keys2: list[int],
    vals2: list[int],
    cutoff: int,
) -> tuple[list[int], list[int]]:
    """Sparse integer series convolution, truncated to keys < cutoff.

    Both key lists must be sorted ascending.
    """
    acc: dict[int, int] = {}
    for k1, v1 in zip(keys1, vals1):
        for k2, v2 in zip(keys2, vals2):
            k = k1 + k2
            if k >= cutoff:
                break
            w = acc.get(k, 0) + v1 * v2
            if w:
                acc[k] = w
            else:
                del acc[k]
    keys = sorted(acc)
    return keys, [acc[k] for k in keys]
