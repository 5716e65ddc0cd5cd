#!/usr/bin/env python3
"""Benchmark: compiled kernels against the pure-Python fallback.

Times the four hot kernels on Weil-representation-sized workloads and a
long eta-product convolution, printing one row per kernel with the
speedup.  Run from the repository root:

    python benchmarks/bench_kernels.py
"""

import random
import time
from array import array

from refmod._kernels import _pykernels

try:
    from refmod._kernels import _ckernels
except ImportError:
    _ckernels = None

from refmod.cyclotomic import _reduction_data


def bench(label, fn_c, fn_py, repeat=3):
    def run(fn):
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        return best

    t_py = run(fn_py)
    if fn_c is None:
        print(f"{label:34s} python {t_py*1e3:9.2f} ms   (no compiled kernel)")
        return
    t_c = run(fn_c)
    print(
        f"{label:34s} python {t_py*1e3:9.2f} ms   compiled {t_c*1e3:9.2f} ms"
        f"   speedup {t_py/t_c:7.1f}x"
    )


def main():
    rng = random.Random(1)

    # workload 1: the S sweep on a 200-element cyclic group, monomial input
    nA, M = 199, 1592
    gpair = [[8]]  # (gen, gen) * M mod M for the 5^{+1}-like normalization
    P_list = _pykernels.pair_matrix([nA], [[rng.randrange(M)]], M)
    P = array("i", P_list)
    ptr = list(range(nA + 1))
    exps = [rng.randrange(M) for _ in range(nA)]
    coeffs = [1] * nA
    bench(
        f"s_apply (|A|={nA}, M={M})",
        (lambda: _ckernels.s_apply(nA, M, ptr, exps, coeffs, P)) if _ckernels else None,
        lambda: _pykernels.s_apply(nA, M, ptr, exps, coeffs, P),
    )

    # workload 2: canonical reduction of a dense vector of Gauss sums
    plan = [tuple(r) for r in _reduction_data(M)]
    big_ptr, big_exps, big_coeffs = _pykernels.s_apply(nA, M, ptr, exps, coeffs, P)
    bench(
        "reduce_entries (dense sweep output)",
        (lambda: _ckernels.reduce_entries(nA, M, plan, big_ptr, big_exps, big_coeffs))
        if _ckernels
        else None,
        lambda: _pykernels.reduce_entries(nA, M, plan, big_ptr, big_exps, big_coeffs),
    )

    # workload 3: cyclotomic multiply-reduce of two Milgram-sized factors
    e1 = [rng.randrange(M) for _ in range(nA)]
    c1 = [1] * nA
    e2 = [rng.randrange(M) for _ in range(nA)]
    c2 = [rng.choice((-1, 1)) for _ in range(nA)]
    bench(
        "cyclo_mul_reduce (two Gauss sums)",
        (lambda: _ckernels.cyclo_mul_reduce(M, plan, e1, c1, e2, c2)) if _ckernels else None,
        lambda: _pykernels.cyclo_mul_reduce(M, plan, e1, c1, e2, c2),
    )

    # workload 4: pairing table of a rank-3 group of order 180
    orders = [4, 9, 5]
    gp = [[rng.randrange(360) for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            gp[j][i] = gp[i][j]
    bench(
        "pair_matrix (|A|=180, rank 3)",
        (lambda: _ckernels.pair_matrix(orders, gp, 360)) if _ckernels else None,
        lambda: _pykernels.pair_matrix(orders, gp, 360),
    )

    # workload 5: sparse integer series convolution (eta-product sized)
    keys = list(range(0, 2400, 1))
    vals = [rng.randrange(-10**6, 10**6) or 1 for _ in keys]
    bench(
        "series_conv_int (2400 x 2400 terms)",
        (lambda: _ckernels.series_conv_int(keys, vals, keys, vals, 2400)) if _ckernels else None,
        lambda: _pykernels.series_conv_int(keys, vals, keys, vals, 2400),
    )

    # end-to-end: one full Weil property check on the largest acceptance symbol
    from refmod.discforms import parse_genus_symbol, realize_group
    from refmod.weil import WeilContext, random_torus_word

    sym = parse_genus_symbol("8^{-1}_3 25^{-1}")
    ctx = WeilContext(realize_group(sym), sym)

    def weil_unit():
        rng2 = random.Random(7)
        assert ctx.check_orthogonality() and ctx.check_S_squared() and ctx.check_ST_cubed()
        for _ in range(5):
            word, g = random_torus_word(ctx.level, rng2)
            sample = [ctx.elements[rng2.randrange(ctx.nA)]]
            assert ctx.scalar_permutation_check(g, ctx.level, sample, word=word)

    t0 = time.perf_counter()
    weil_unit()
    print(
        f"{'weil unit (|A|=200), active backend':34s} "
        f"{'compiled' if _ckernels else 'python':8s} {(time.perf_counter()-t0)*1e3:9.2f} ms"
    )


if __name__ == "__main__":
    main()
