# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _kernels_py.py (see that module for the contract).

Coefficients stay generic Python objects (exact rationals or cyclotomic
numbers); what the compiled code removes is interpreter dispatch in the
tuple-merge and dict-accumulate loops.
"""


cpdef mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    cdef list out = []
    cdef Py_ssize_t i = 0, j = 0, na = len(a), nb = len(b)
    cdef tuple pa, pb
    while i < na and j < nb:
        pa = <tuple?> a[i]
        pb = <tuple?> b[j]
        if pa[0] == pb[0]:
            e = pa[1] + pb[1]
            if e:
                out.append((pa[0], e))
            i += 1
            j += 1
        elif pa[0] < pb[0]:
            out.append(pa)
            i += 1
        else:
            out.append(pb)
            j += 1
    while i < na:
        out.append(a[i])
        i += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


cpdef dict terms_add(dict A, dict B):
    if not A:
        return dict(B)
    if not B:
        return dict(A)
    cdef dict out = dict(A)
    for m, c in B.items():
        acc = out.get(m)
        if acc is None:
            out[m] = c
        else:
            acc = acc + c
            if acc:
                out[m] = acc
            else:
                del out[m]
    return out


cpdef dict terms_mul(dict A, dict B):
    if not A or not B:
        return {}
    cdef dict out = {}

    for ma, ca in A.items():
        for mb, cb in B.items():
            m = mono_mul(ma, mb)
            c = ca * cb
            acc = out.get(m)
            if acc is None:
                if c:
                    out[m] = c
            else:
                acc = acc + c
                if acc:
                    out[m] = acc
                else:
                    del out[m]
    return out


cpdef dict terms_scale(dict A, c):
    if not c:
        return {}
    cdef dict out = {}
    for m, c0 in A.items():
        cc = c * c0
        if cc:
            out[m] = cc
    return out


cpdef dict terms_rename(dict A, dict ren):
    cdef dict out = {}
    cdef dict acc
    cdef list pairs
    cdef tuple m2
    for m, c in A.items():
        if m:
            acc = {}
            for v, e in m:
                v2 = ren.get(v, v)
                e0 = acc.get(v2)
                acc[v2] = e if e0 is None else e0 + e
            pairs = []
            for v, e in acc.items():
                if e:
                    pairs.append((v, e))
            pairs.sort()
            m2 = tuple(pairs)
        else:
            m2 = ()
        prev = out.get(m2)
        if prev is None:
            out[m2] = c
        else:
            prev = prev + c
            if prev:
                out[m2] = prev
            else:
                del out[m2]
    return out
