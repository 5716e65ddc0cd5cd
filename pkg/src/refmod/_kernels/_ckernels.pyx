# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: group pairing tables, the S-matrix Fourier sweep and
sparse integer series convolution.  Mirrors _pykernels exactly."""

from libc.stdlib cimport calloc, free, malloc

BACKEND = "c"


def mixed_radix_coords(orders):
    coords = [()]
    for d in orders:
        coords = [c + (x,) for c in coords for x in range(d)]
    return coords


def norm_half_exponents(orders, gnorm, gpair, int M):
    cdef int r = len(orders)
    cdef int nA = 1
    cdef int j, k, i
    for j in range(r):
        nA *= <int> orders[j]
    cdef long long *ords = <long long *> malloc(r * sizeof(long long))
    cdef long long *gn = <long long *> malloc(r * sizeof(long long))
    cdef long long *gp = <long long *> malloc(r * r * sizeof(long long))
    cdef long long *c = <long long *> calloc(r if r else 1, sizeof(long long))
    for j in range(r):
        ords[j] = orders[j]
        gn[j] = gnorm[j]
        for k in range(r):
            gp[j * r + k] = gpair[j][k]
    out = [0] * nA
    cdef long long tot, cj
    for i in range(nA):
        tot = 0
        for j in range(r):
            cj = c[j]
            if cj:
                tot += cj * cj * gn[j]
                for k in range(j + 1, r):
                    if c[k]:
                        tot += cj * c[k] * gp[j * r + k]
        out[i] = tot % M
        # increment mixed-radix counter, last axis fastest
        for j in range(r - 1, -1, -1):
            c[j] += 1
            if c[j] < ords[j]:
                break
            c[j] = 0
    free(ords); free(gn); free(gp); free(c)
    return out


def pair_matrix(orders, gpair, int M):
    cdef int r = len(orders)
    cdef int nA = 1
    cdef int j, l, i, k
    for j in range(r):
        nA *= <int> orders[j]
    coords = mixed_radix_coords(orders)
    cdef long long *gp = <long long *> malloc((r * r if r else 1) * sizeof(long long))
    for j in range(r):
        for l in range(r):
            gp[j * r + l] = gpair[j][l]
    cdef long long *cc = <long long *> malloc((nA * r if r else 1) * sizeof(long long))
    for i in range(nA):
        for j in range(r):
            cc[i * r + j] = coords[i][j]
    cdef long long *vrow = <long long *> malloc((r if r else 1) * sizeof(long long))
    P = [0] * (nA * nA)
    cdef long long s
    for i in range(nA):
        for l in range(r):
            s = 0
            for j in range(r):
                s += cc[i * r + j] * gp[j * r + l]
            vrow[l] = s % M
        for k in range(nA):
            s = 0
            for l in range(r):
                s += cc[k * r + l] * vrow[l]
            P[i * nA + k] = s % M
    free(gp); free(cc); free(vrow)
    return P


def s_apply(int nA, int M, ptr, exps, coeffs, int[::1] P):
    cdef int nnz = len(exps)
    cdef int i, k, t, e, lo, hi, nout
    cdef long long w
    cdef int *c_ptr = <int *> malloc((nA + 1) * sizeof(int))
    cdef int *c_exps = <int *> malloc((nnz if nnz else 1) * sizeof(int))
    cdef long long *c_coeffs = <long long *> malloc((nnz if nnz else 1) * sizeof(long long))
    cdef long long *buf = <long long *> calloc(M, sizeof(long long))
    cdef bint big = 0
    cdef long long cap = 4611686018427387904 / (nnz + 1)
    for i in range(nA + 1):
        c_ptr[i] = ptr[i]
    for t in range(nnz):
        c_exps[t] = exps[t]
        v = coeffs[t]
        # output entries accumulate up to nnz input terms; fall back to
        # arbitrary-precision arithmetic if that could overflow 63 bits
        if v > cap or v < -cap:
            big = 1
        else:
            c_coeffs[t] = v
    if big:
        free(c_ptr); free(c_exps); free(c_coeffs); free(buf)
        from . import _pykernels
        return _pykernels.s_apply(nA, M, ptr, exps, coeffs, P)
    out_ptr = [0] * (nA + 1)
    out_exps = []
    out_coeffs = []
    cdef int shift
    nout = 0
    for k in range(nA):
        for i in range(nA):
            lo = c_ptr[i]
            hi = c_ptr[i + 1]
            if lo == hi:
                continue
            shift = P[i * nA + k]
            for t in range(lo, hi):
                e = c_exps[t] - shift
                if e < 0:
                    e += M
                buf[e] += c_coeffs[t]
        for e in range(M):
            w = buf[e]
            if w != 0:
                out_exps.append(e)
                out_coeffs.append(w)
                nout += 1
                buf[e] = 0
        out_ptr[k + 1] = nout
    free(c_ptr); free(c_exps); free(c_coeffs); free(buf)
    return out_ptr, out_exps, out_coeffs


def cyclo_mul_reduce(int M, plan, e1, c1, e2, c2):
    cdef Py_ssize_t n1 = len(e1), n2 = len(e2)
    cdef Py_ssize_t i, j
    cdef int k, p, q, pa1, step, t, k2
    cdef long long v, va
    # min(n1,n2) <= M <= 2^11 accumulated products of two 24-bit factors stay
    # far below 2^63; larger coefficients take the python (bigint) path
    cdef long long cap = 16777216
    for i in range(n1):
        cv = c1[i]
        if cv > cap or cv < -cap:
            from . import _pykernels
            return _pykernels.cyclo_mul_reduce(M, plan, e1, c1, e2, c2)
    for j in range(n2):
        cv = c2[j]
        if cv > cap or cv < -cap:
            from . import _pykernels
            return _pykernels.cyclo_mul_reduce(M, plan, e1, c1, e2, c2)
    cdef long long *buf = <long long *> calloc(M, sizeof(long long))
    cdef int *ee1 = <int *> malloc((n1 if n1 else 1) * sizeof(int))
    cdef long long *cc1 = <long long *> malloc((n1 if n1 else 1) * sizeof(long long))
    cdef int *ee2 = <int *> malloc((n2 if n2 else 1) * sizeof(int))
    cdef long long *cc2 = <long long *> malloc((n2 if n2 else 1) * sizeof(long long))
    for i in range(n1):
        ee1[i] = e1[i]; cc1[i] = c1[i]
    for j in range(n2):
        ee2[j] = e2[j]; cc2[j] = c2[j]
    for i in range(n1):
        va = cc1[i]
        for j in range(n2):
            k = ee1[i] + ee2[j]
            if k >= M:
                k -= M
            buf[k] += va * cc2[j]
    for row in plan:
        p = row[0]; q = row[1]; pa1 = row[2]; step = row[3]
        for k in range(M):
            v = buf[k]
            if v != 0 and (k % q) // pa1 == p - 1:
                buf[k] = 0
                for t in range(1, p):
                    k2 = (k - t * step) % M
                    if k2 < 0:
                        k2 += M
                    buf[k2] -= v
    out_exps = []
    out_coeffs = []
    for k in range(M):
        if buf[k] != 0:
            out_exps.append(k)
            out_coeffs.append(buf[k])
    free(buf); free(ee1); free(cc1); free(ee2); free(cc2)
    return out_exps, out_coeffs


def reduce_entries(int nA, int M, plan, ptr, exps, coeffs):
    """Canonically reduce every entry of a compressed vector in one sweep."""
    cdef Py_ssize_t nnz = len(exps)
    cdef Py_ssize_t t
    cdef int i, k, k2, p, q, pa1, step, j, lo, hi
    cdef long long v
    cdef long long cap = 4611686018427387904 / ((nnz + 1) * (<long long> M + 1))
    for t in range(nnz):
        cv = coeffs[t]
        if cv > cap or cv < -cap:
            from . import _pykernels
            return _pykernels.reduce_entries(nA, M, plan, ptr, exps, coeffs)
    cdef long long *buf = <long long *> calloc(M, sizeof(long long))
    cdef int nplan = len(plan)
    cdef int *c_plan = <int *> malloc((4 * nplan if nplan else 1) * sizeof(int))
    for i in range(nplan):
        row = plan[i]
        c_plan[4 * i] = row[0]; c_plan[4 * i + 1] = row[1]
        c_plan[4 * i + 2] = row[2]; c_plan[4 * i + 3] = row[3]
    out_ptr = [0] * (nA + 1)
    out_exps = []
    out_coeffs = []
    cdef Py_ssize_t nout = 0
    for i in range(nA):
        lo = ptr[i]
        hi = ptr[i + 1]
        if lo == hi:
            out_ptr[i + 1] = nout
            continue
        for t in range(lo, hi):
            buf[<int> exps[t]] += <long long> coeffs[t]
        for j in range(nplan):
            p = c_plan[4 * j]; q = c_plan[4 * j + 1]
            pa1 = c_plan[4 * j + 2]; step = c_plan[4 * j + 3]
            for k in range(M):
                v = buf[k]
                if v != 0 and (k % q) // pa1 == p - 1:
                    buf[k] = 0
                    for t in range(1, p):
                        k2 = (k - t * step) % M
                        if k2 < 0:
                            k2 += M
                        buf[k2] -= v
        for k in range(M):
            if buf[k] != 0:
                out_exps.append(k)
                out_coeffs.append(buf[k])
                nout += 1
                buf[k] = 0
        out_ptr[i + 1] = nout
    free(buf); free(c_plan)
    return out_ptr, out_exps, out_coeffs


def cyclo_reduce_int(int M, plan, exps, coeffs):
    cdef Py_ssize_t n = len(exps)
    cdef Py_ssize_t i
    cdef int p, q, pa1, step, k, k2, j
    cdef long long v
    cdef bint big = 0
    # total fan-out mass is below (n+1)(M+1) times the largest coefficient
    cdef long long cap = 4611686018427387904 / ((n + 1) * (<long long> M + 1))
    for i in range(n):
        cv = coeffs[i]
        if cv > cap or cv < -cap:
            big = 1
            break
    if big:
        from . import _pykernels
        return _pykernels.cyclo_reduce_int(M, plan, exps, coeffs)
    cdef long long *buf = <long long *> calloc(M, sizeof(long long))
    for i in range(n):
        buf[exps[i]] += <long long> coeffs[i]
    # fan-out targets have an allowed digit at the current prime, so a
    # single ascending sweep per prime is complete
    for row in plan:
        p = row[0]; q = row[1]; pa1 = row[2]; step = row[3]
        for k in range(M):
            v = buf[k]
            if v != 0 and (k % q) // pa1 == p - 1:
                buf[k] = 0
                for j in range(1, p):
                    k2 = (k - j * step) % M
                    if k2 < 0:
                        k2 += M
                    buf[k2] -= v
    out_exps = []
    out_coeffs = []
    for k in range(M):
        if buf[k] != 0:
            out_exps.append(k)
            out_coeffs.append(buf[k])
    free(buf)
    return out_exps, out_coeffs


def series_conv_int(keys1, vals1, keys2, vals2, cutoff):
    # coefficients are arbitrary-precision Python ints; the win over the
    # pure-Python kernel is the C-level loop and early cutoff break
    cdef Py_ssize_t n1 = len(keys1), n2 = len(keys2)
    cdef Py_ssize_t i, j
    cdef long long k, k1, co = cutoff
    cdef long long *ck1 = <long long *> malloc((n1 if n1 else 1) * sizeof(long long))
    cdef long long *ck2 = <long long *> malloc((n2 if n2 else 1) * sizeof(long long))
    for i in range(n1):
        ck1[i] = keys1[i]
    for j in range(n2):
        ck2[j] = keys2[j]
    acc = {}
    for i in range(n1):
        k1 = ck1[i]
        v1 = vals1[i]
        for j in range(n2):
            k = k1 + ck2[j]
            if k >= co:
                break
            w = acc.get(k)
            if w is None:
                acc[k] = v1 * vals2[j]
            else:
                w = w + v1 * vals2[j]
                if w:
                    acc[k] = w
                else:
                    del acc[k]
    free(ck1); free(ck2)
    keys = sorted(acc)
    return keys, [acc[k] for k in keys]
