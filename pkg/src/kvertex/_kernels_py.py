"""Pure-Python term-map kernels.

These are the inner loops of Laurent-polynomial arithmetic: monomials are
canonical sorted tuples of (variable, exponent) pairs, polynomials are dicts
mapping such tuples to nonzero coefficients.  A compiled twin of this module
lives in ``_kernels.pyx``; both must stay behaviourally identical (see
tests/test_backends.py).
"""


def mono_mul(a, b):
    """Merge two sorted exponent tuples, adding exponents, dropping zeros."""
    if not a:
        return b
    if not b:
        return a
    out = []
    i = 0
    j = 0
    na = len(a)
    nb = len(b)
    while i < na and j < nb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            e = ea + eb
            if e:
                out.append((va, e))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    while i < na:
        out.append(a[i])
        i += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


def terms_add(A, B):
    """Sum of two term maps; never mutates its arguments."""
    if not A:
        return dict(B)
    if not B:
        return dict(A)
    out = dict(A)
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


def terms_mul(A, B):
    """Distributive product of two term maps."""
    if not A or not B:
        return {}
    out = {}
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


def terms_scale(A, c):
    """Multiply every coefficient by the scalar c."""
    if not c:
        return {}
    return {m: cc for m, cc in ((m, c * c0) for m, c0 in A.items()) if cc}


def terms_rename(A, ren):
    """Rename variables via the map ren (missing names pass through).

    Renaming can merge or reorder variables, so monomial keys are rebuilt
    and collisions are accumulated.
    """
    out = {}
    for m, c in A.items():
        if m:
            acc = {}
            for v, e in m:
                v2 = ren.get(v, v)
                e0 = acc.get(v2)
                acc[v2] = e if e0 is None else e0 + e
            m2 = tuple(sorted((v, e) for v, e in acc.items() if e))
        else:
            m2 = m
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
