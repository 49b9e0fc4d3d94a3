"""Parity between the compiled term kernels and the pure-Python fallback."""
import random
from fractions import Fraction

import pytest

import kvertex._kernels_py as py_kernels
from kvertex._backend import backend_name

try:
    import kvertex._kernels as c_kernels
except ImportError:
    c_kernels = None

needs_compiled = pytest.mark.skipif(c_kernels is None,
                                    reason="compiled kernels not built")


def random_terms(rnd, nterms):
    names = ["s_{1,1}", "s_{1,2}", "t", "z"]
    out = {}
    for _ in range(nterms):
        mono = tuple(sorted((v, rnd.randint(-3, 3)) for v in
                            rnd.sample(names, rnd.randint(0, 4))))
        mono = tuple((v, e) for v, e in mono if e)
        c = Fraction(rnd.randint(-5, 5), rnd.randint(1, 4))
        if c:
            out[mono] = c
    return out


def test_backend_reports_a_name():
    assert backend_name() in ("compiled", "python")


@needs_compiled
def test_kernel_parity(suite_seed):
    rnd = random.Random(suite_seed)
    for _ in range(60):
        A = random_terms(rnd, rnd.randint(0, 10))
        B = random_terms(rnd, rnd.randint(0, 10))
        assert py_kernels.terms_add(A, B) == c_kernels.terms_add(A, B)
        assert py_kernels.terms_mul(A, B) == c_kernels.terms_mul(A, B)
        c = Fraction(rnd.randint(-3, 3), rnd.randint(1, 3))
        assert py_kernels.terms_scale(A, c) == c_kernels.terms_scale(A, c)
        ren = {"t": "u", "s_{1,1}": "s_{1,2}", "s_{1,2}": "s_{1,1}"}
        assert py_kernels.terms_rename(A, ren) == c_kernels.terms_rename(A, ren)


@needs_compiled
def test_mono_mul_parity_and_cancellation():
    a = (("s", 2), ("t", -1))
    b = (("s", -2), ("u", 1))
    assert py_kernels.mono_mul(a, b) == c_kernels.mono_mul(a, b) == (("t", -1), ("u", 1))
    assert c_kernels.mono_mul((), a) == a
    assert c_kernels.mono_mul(a, (("s", -2), ("t", 1))) == ()


def test_fallback_forced_by_env():
    import subprocess
    import sys
    out = subprocess.run(
        [sys.executable, "-c",
         "import kvertex; print(kvertex.backend_name())"],
        env={"KVERTEX_PURE_PYTHON": "1", "PYTHONPATH": "src", "PATH": "/usr/bin:/bin"},
        capture_output=True, text=True, cwd=__file__.rsplit("/tests/", 1)[0])
    assert out.stdout.strip() == "python"


@needs_compiled
def test_same_results_through_laurent_layer(suite_seed):
    # identical polynomial products through both kernel sets
    import subprocess
    import sys
    prog = (
        "from kvertex.laurent import LaurentPoly\n"
        "s, t = LaurentPoly.var('s'), LaurentPoly.var('t')\n"
        "p = ((1 - s) * (1 + t)) ** 3 - (s + t) ** 2\n"
        "print(sorted((str(m), str(c)) for m, c in"
        " ((__import__('kvertex.laurent', fromlist=['Monomial']).Monomial(k), v)"
        " for k, v in p.terms.items())))\n")
    outs = []
    root = __file__.rsplit("/tests/", 1)[0]
    for env_extra in ({}, {"KVERTEX_PURE_PYTHON": "1"}):
        env = {"PYTHONPATH": "src", "PATH": "/usr/bin:/bin", **env_extra}
        r = subprocess.run([sys.executable, "-c", prog], env=env,
                           capture_output=True, text=True, cwd=root)
        assert r.returncode == 0, r.stderr
        outs.append(r.stdout)
    assert outs[0] == outs[1]
