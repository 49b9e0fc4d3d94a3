from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kvertex.laurent import (LP_ONE, LP_ZERO, MONO_ONE, LaurentPoly, Monomial,
                             PolyFraction, laurent_exact_div, poly_arith,
                             symmetrize)

s = LaurentPoly.var("s")
t = LaurentPoly.var("t")


def test_poly_arith_examples():
    assert poly_arith(s + t, -1 * s, "add") == t
    z = LaurentPoly.var("z")
    assert poly_arith(1 - z, 1 + z, "mul") == 1 - z * z
    half = LaurentPoly.var("s", Fraction(1, 2))
    assert poly_arith(half, half, "mul") == s
    with pytest.raises(ValueError):
        poly_arith(s, t, "div")


coeffs = st.integers(min_value=-4, max_value=4)
exps = st.integers(min_value=-2, max_value=2)


@st.composite
def polys(draw):
    n = draw(st.integers(min_value=0, max_value=4))
    terms = []
    for _ in range(n):
        mono = {}
        for v in ("s", "t"):
            e = draw(exps)
            if e:
                mono[v] = e
        terms.append((Monomial.make(mono), Fraction(draw(coeffs))))
    return LaurentPoly.from_terms(terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + LP_ZERO == a
    assert a * LP_ONE == a


def test_monomial_canonical_form():
    m = Monomial.make({"s": Fraction(2, 2), "t": 0})
    assert m == Monomial.var("s")
    assert str(Monomial.var("t", Fraction(1, 2))) == "t^(1/2)"
    assert (Monomial.var("s") * Monomial.var("s", -1)).is_one()


def test_symmetrize_examples():
    p = LaurentPoly.var("s1")
    assert symmetrize(p, [["s1", "s2"]]) == LaurentPoly.var("s1") + LaurentPoly.var("s2")
    z = LaurentPoly.var("z")
    p2 = z * LaurentPoly.var("s1") * LaurentPoly.var("s2")
    assert symmetrize(p2, [["s1", "s2"]]) == 2 * p2
    sym = symmetrize(LaurentPoly.var("s1", 2) * LaurentPoly.var("s2", -1), [["s1", "s2"]])
    assert symmetrize(sym, [["s1", "s2"]], "averaged") == sym


def test_symmetrize_averaged_idempotent():
    p = LaurentPoly.var("s1", 2) + 3 * LaurentPoly.var("s2") * t
    once = symmetrize(p, [["s1", "s2"]], "averaged")
    assert symmetrize(once, [["s1", "s2"]], "averaged") == once


def test_symmetrize_rejects_overlapping_blocks():
    with pytest.raises(ValueError):
        symmetrize(s, [["s", "t"], ["t"]])


def test_symmetrize_multi_block():
    p = LaurentPoly.var("a1") * LaurentPoly.var("b1")
    out = symmetrize(p, [["a1", "a2"], ["b1", "b2"]])
    expect = sum((LaurentPoly.var(a) * LaurentPoly.var(b)
                  for a in ("a1", "a2") for b in ("b1", "b2")), LP_ZERO)
    assert out == expect


def test_exact_division():
    f = (1 - t) * (1 - s) * (1 - s)
    assert laurent_exact_div(f, 1 - s) == (1 - t) * (1 - s)
    assert laurent_exact_div(f, LP_ONE - t) == (1 - s) * (1 - s)
    assert laurent_exact_div(1 - t, 1 - s) is None
    half = LaurentPoly.var("s", Fraction(1, 2))
    assert laurent_exact_div(s - t * s, LP_ONE - t) == s
    assert laurent_exact_div((1 - half) * (1 + half), LP_ONE - half) == 1 + half


def test_poly_fraction_equality_and_collapse():
    fr = PolyFraction(s - s * t, LP_ONE - t)
    assert fr == PolyFraction.of(s)
    assert fr.as_poly() == s
    fr2 = PolyFraction(LP_ONE, LP_ONE - t)
    assert fr2.as_poly() is None
    assert (fr2 * (LP_ONE - t)).as_poly() == LP_ONE
    assert (fr2 - fr2).is_zero()
    with pytest.raises(ZeroDivisionError):
        PolyFraction(s, LP_ZERO)


def test_poly_fraction_field_ops():
    a = PolyFraction(LP_ONE, LP_ONE - t)
    b = PolyFraction(-1 * t, LP_ONE - t)
    assert a + b == PolyFraction.of(LP_ONE)
    assert (a * b).inv() == PolyFraction((LP_ONE - t) ** 2, -1 * t)
    assert a ** 2 == PolyFraction(LP_ONE, (LP_ONE - t) ** 2)
