"""Compare the compiled term kernels against the pure-Python fallback.

Run after `python setup.py build_ext --inplace`:

    python benchmarks/bench_kernels.py

Coefficients are exact Python objects either way, so the compiled kernels
win on dispatch overhead in the merge loops, not on arithmetic.
"""
import random
import time
from fractions import Fraction

import kvertex._kernels_py as py_kernels

try:
    import kvertex._kernels as c_kernels
except ImportError:
    c_kernels = None


def random_terms(rnd, nterms, nvars=3, span=4):
    names = [f"s_{{1,{i}}}" for i in range(1, nvars + 1)] + ["t", "z"]
    out = {}
    for _ in range(nterms):
        mono = tuple(sorted((v, rnd.randint(-span, span)) for v in
                            rnd.sample(names, rnd.randint(1, len(names)))
                            if rnd.random() < 0.8))
        mono = tuple((v, e) for v, e in mono if e)
        out[mono] = Fraction(rnd.randint(-9, 9) or 1, rnd.randint(1, 7))
    return out


def bench(kernels, polys, repeat=5):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for a, b in zip(polys, polys[1:]):
            prod = kernels.terms_mul(a, b)
            kernels.terms_add(prod, a)
            kernels.terms_scale(prod, Fraction(3, 2))
            kernels.terms_rename(prod, {"t": "u"})
    return time.perf_counter() - t0


def shuffle_workload():
    from kvertex.laurent import LaurentPoly, symmetrize
    from kvertex.quiver import GradedElement, Quiver, vertex_shuffle
    q = Quiver(("1",), ())
    p = symmetrize(LaurentPoly.var("s_{1,1}", 2) * LaurentPoly.var("s_{1,2}", -1),
                   [["s_{1,1}", "s_{1,2}"]])
    f = GradedElement(q, (2,), p)
    t0 = time.perf_counter()
    for _ in range(40):
        vertex_shuffle(f, f)
    return time.perf_counter() - t0


def main():
    rnd = random.Random(0)
    polys = [random_terms(rnd, n) for n in (20, 40, 80, 120, 200)]
    t_py = bench(py_kernels, polys)
    print(f"python  kernels: {t_py:8.4f} s  (terms_mul/add/scale/rename chain)")
    if c_kernels is not None:
        t_c = bench(c_kernels, polys)
        print(f"compiled kernels: {t_c:7.4f} s  ({t_py / t_c:4.2f}x)")
    else:
        print("compiled kernels: not built (run `python setup.py build_ext --inplace`)")
    import kvertex
    print(f"active backend for the package: {kvertex.backend_name()}")
    print(f"vertex_shuffle workload: {shuffle_workload():.4f} s")


if __name__ == "__main__":
    main()
