from fractions import Fraction

import pytest

from kvertex.scalars import (Cyclo, cyclo_root, cyclotomic_poly,
                             generalized_binomial, root_of_unity)


def test_generalized_binomial_values():
    assert generalized_binomial(5, 2) == 10
    assert generalized_binomial(-1, 3) == -1  # (-1)(-2)(-3)/6
    assert generalized_binomial(0, 0) == 1
    with pytest.raises(ValueError):
        generalized_binomial(3, -1)


def test_generalized_binomial_matches_falling_factorial():
    import math
    for n in range(-6, 7):
        for k in range(0, 6):
            ff = Fraction(1)
            for i in range(k):
                ff *= n - i
            assert generalized_binomial(n, k) == ff / math.factorial(k)


def test_roots_of_unity_basics():
    assert root_of_unity(1, 0) == Fraction(1)
    assert root_of_unity(2, 1) == Fraction(-1)
    z4 = root_of_unity(4, 1)
    assert z4 * z4 == Fraction(-1)
    assert z4 ** 4 == Fraction(1)
    with pytest.raises(ValueError):
        root_of_unity(0, 1)


def test_cyclotomic_relations_up_to_12():
    for n in range(1, 13):
        z = root_of_unity(n, 1)
        assert z ** n == Fraction(1)
        phi = cyclotomic_poly(n)
        val = sum((z ** k) * c for k, c in enumerate(phi))
        assert val == Fraction(0)


def test_inverse_and_division():
    for n in range(2, 13):
        for j in range(1, n):
            z = root_of_unity(n, j)
            if isinstance(z, Cyclo):
                assert z * z.inverse() == Fraction(1)
                assert (Fraction(1) / z) * z == Fraction(1)


def test_mixed_order_arithmetic():
    z2 = root_of_unity(2, 1)      # demotes to -1
    z3 = root_of_unity(3, 1)
    z6 = root_of_unity(6, 1)
    # zeta6 = -zeta3^2
    assert z6 == z2 * z3 * z3
    assert z6 ** 3 == Fraction(-1)
    # embedding commutes with arithmetic at every order
    for n in (2, 3, 4, 6, 12):
        z = root_of_unity(n, 1)
        assert (z + Fraction(1, 2)) - z == Fraction(1, 2)
        assert z * 2 - z == z


def test_rational_demotion():
    # any cyclotomic expression that lands in Q comes back as a Fraction
    z5 = root_of_unity(5, 1)
    s = z5 + z5 ** 2 + z5 ** 3 + z5 ** 4
    assert isinstance(s, Fraction) and s == -1


def test_cyclo_root_angles():
    assert cyclo_root(Fraction(0)) == 1
    assert cyclo_root(Fraction(1, 2)) == -1
    assert cyclo_root(Fraction(7, 2)) == -1
    z = cyclo_root(Fraction(1, 3))
    assert z * z == cyclo_root(Fraction(2, 3))
