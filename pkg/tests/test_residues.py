import random
from fractions import Fraction

import pytest

from kvertex.laurent import LP_ONE, LP_ZERO, MONO_ONE, LaurentPoly, Monomial, PolyFraction
from kvertex.residues import (K_THEORY, NAIVE, ResidueKind, constraint_suite,
                              diagonal_w_side_residue, diagonal_z_side_residues,
                              iadic_valuation_at_least, local_residue_at_root,
                              residue_coh, residue_k, residue_k_oracle,
                              residue_k_via_pfrac, residue_naive,
                              rho_simple_product)
from kvertex.series import RationalFunction

T = Monomial.var("t")
S = Monomial.var("s")


def rf(num, factors):
    return RationalFunction("z", num, factors)


def one(c=1):
    return LaurentPoly.scalar(c)


class TestResidueK:
    def test_normalization(self):
        assert residue_k(rf(one(), [(0, MONO_ONE, 1, 1)])) == one()

    def test_higher_pole_with_numerator(self):
        f = rf(LaurentPoly.var("z", 2), [(0, MONO_ONE, 1, 3)])
        assert residue_k(f) == LP_ZERO

    def test_pure_laurent_polynomial(self):
        assert residue_k(rf(LaurentPoly.var("z", 3) - 2, [])) == LP_ZERO

    def test_two_pole_example(self):
        f = rf(one(), [(0, MONO_ONE, 1, 1), (0, T, 1, 1)])
        assert residue_k(f) == one()
        assert residue_k_oracle(f, 10) == one()
        assert residue_k_via_pfrac(f) == one()

    def test_z_over_one_minus_z(self):
        f = rf(LaurentPoly.var("z"), [(0, MONO_ONE, 1, 1)])
        assert residue_k_oracle(f, 10) == one()

    def test_inversion_antisymmetry_example(self):
        f = rf(one(), [(0, MONO_ONE, 1, 1)])
        assert residue_k(f.subs_invert()) == -1 * one()

    def test_oracle_order_guard(self):
        f = rf(one(), [(0, MONO_ONE, 1, 3)])
        with pytest.raises(ValueError):
            residue_k_oracle(f, 3)


class TestResidueNaive:
    def test_unit_pole(self):
        assert residue_naive(rf(one(), [(0, MONO_ONE, 1, 1)])) == one()

    def test_quarter_root(self):
        assert residue_naive(rf(one(), [(Fraction(1, 4), MONO_ONE, 1, 1)])) == LP_ZERO

    def test_character_pole(self):
        assert residue_naive(rf(one(), [(0, T, 1, 1)])) == LP_ZERO


class TestResidueCoh:
    def test_examples(self):
        u = LaurentPoly.var("u", -1)
        assert residue_coh(u) == one()
        assert residue_coh(LaurentPoly.var("u", -2)) == LP_ZERO
        assert residue_coh(LaurentPoly.var("u", 3)) == LP_ZERO
        mixed = LaurentPoly.var("u", -1) * LaurentPoly.term(1, T) + LaurentPoly.var("u", 2)
        assert residue_coh(mixed) == LaurentPoly.term(1, T)


class TestConstraintSuite:
    def test_ktheory_passes_all(self):
        rows = constraint_suite(K_THEORY, 6, 4)
        assert len(rows) == 105
        assert all(ok for (*_x, ok) in rows)

    def test_specific_entries(self):
        rows = {(n, k, a): v for (n, k, a, v, _e, _ok) in constraint_suite(K_THEORY, 3, 1)}
        assert rows[(3, 0, 0)] == one()
        assert rows[(3, 1, 2)] == LP_ZERO

    def test_naive_fails_at_n2(self):
        rows = constraint_suite(NAIVE, 2, 1)
        failed = {(n, k, a): v for (n, k, a, v, _e, ok) in rows if not ok}
        assert (2, 0, 0) in failed
        assert failed[(2, 0, 0)] == LaurentPoly.scalar(Fraction(1, 2))

    def test_cohomological_rejected(self):
        with pytest.raises(ValueError):
            constraint_suite(ResidueKind("cohomological"), 2, 1)


class TestComparison:
    def test_all_roots_and_multiplicities(self):
        angles = sorted({Fraction(j, n) for n in range(1, 7) for j in range(n)})
        for angle in angles:
            for m in range(1, 5):
                f = rf(one(), [(angle, MONO_ONE, 1, m)])
                assert residue_k(f) == one()
                expected = one(1 if angle == 0 else 0)
                assert residue_naive(f) == expected

    def test_residue_theorem_decomposition(self, suite_seed):
        rnd = random.Random(suite_seed)
        for _ in range(20):
            nf = rnd.randint(1, 2)
            factors = []
            for _i in range(nf):
                n = rnd.randint(1, 6)
                factors.append((Fraction(rnd.randint(0, n - 1), n), MONO_ONE,
                                rnd.randint(1, 2), rnd.randint(1, 2)))
            f = rf(LaurentPoly.var("z", rnd.randint(0, 2)), factors)
            total = residue_naive(f)
            pole_angles = set()
            for (a, _m, n), _e in f.den.items():
                for j in range(n):
                    pang = (Fraction(j) - Fraction(a)) / n % 1
                    if pang != 0:
                        pole_angles.add(pang)
            for pang in sorted(pole_angles):
                total = total - local_residue_at_root(f, pang)
            assert PolyFraction.of(residue_k(f)) == PolyFraction.of(total)

    def test_local_residue_rejects_character_poles(self):
        with pytest.raises(ValueError):
            local_residue_at_root(rf(one(), [(0, T, 1, 1)]), Fraction(1, 2))


class TestClosedFormVsOracle:
    def test_seeded_random_functions(self, suite_seed):
        from kvertex.suites import random_rational
        rnd = random.Random(suite_seed)
        for _ in range(60):
            f = random_rational(rnd)
            assert residue_k(f) == residue_k_oracle(f, f.total_pole_mult() + 8)

    def test_pfrac_route_agrees(self, suite_seed):
        rnd = random.Random(suite_seed)
        chars = [MONO_ONE, T, S * T.inv()]
        for _ in range(25):
            nf = rnd.randint(1, 2)
            factors = []
            for i in rnd.sample(range(3), nf):
                factors.append((Fraction(0), chars[i], rnd.randint(1, 2), rnd.randint(1, 3)))
            f = rf(LaurentPoly.var("z", rnd.randint(-2, 2)), factors)
            assert residue_k(f) == residue_k_via_pfrac(f)

    def test_t_invariance(self, suite_seed):
        # the z -> u z substitution leaves the z^0 coefficients untouched
        from kvertex.suites import random_rational
        rnd = random.Random(suite_seed + 1)
        u = Monomial.var("u")
        for _ in range(20):
            f = random_rational(rnd)
            assert residue_k(f.subs_scale(u)) == residue_k(f)

    def test_inversion_antisymmetry_random(self, suite_seed):
        from kvertex.suites import random_rational
        rnd = random.Random(suite_seed + 2)
        for _ in range(20):
            f = random_rational(rnd)
            assert residue_k(f.subs_invert()) == -1 * residue_k(f)


class TestRhoSimpleProduct:
    def test_matches_oracle(self, suite_seed):
        rnd = random.Random(suite_seed)
        monos = [MONO_ONE, T, Monomial.var("t", 2), S * T.inv()]
        for _ in range(40):
            npoles = rnd.randint(1, 3)
            poles = [((Fraction(0), monos[i]), rnd.randint(1, 3))
                     for i in rnd.sample(range(4), npoles)]
            A = rnd.randint(-3, 5)
            f = rf(LaurentPoly.var("z", A), [(a, m, 1, e) for (a, m), e in poles])
            assert rho_simple_product(A, poles) == residue_k_oracle(
                f, f.total_pole_mult() + abs(A) + 3)

    def test_root_of_unity_pole(self):
        # 1/(1 - zeta3 z)^2 has residue 1
        assert rho_simple_product(0, [((Fraction(1, 3), MONO_ONE), 2)]) == LP_ONE


class TestDiagonalExpansion:
    def test_z_side_vanishes(self):
        for n in (1, 2):
            res = diagonal_z_side_residues(1, S, n, [T] * n, 6)
            assert all(r.is_zero() for r in res)

    def test_w_side_pivot_matches_exactly(self):
        # pivot = s reproduces rho_K(f) with zero defect at every order
        res = diagonal_w_side_residue(0, S, 1, [S], 8)
        assert res == {0: LP_ONE}

    def test_w_side_generic_pivot_filtration(self):
        order = 8
        res = diagonal_w_side_residue(0, S, 1, [T], order)
        base = residue_k(rf(one(), [(0, S, 1, 1)]))
        for j in range(order):
            defect = res.get(j, LP_ZERO) - (base if j == 0 else LP_ZERO)
            assert iadic_valuation_at_least(defect, order - j)

    def test_iadic_valuation(self):
        p = (LP_ONE - LaurentPoly.term(1, T)) ** 3
        assert iadic_valuation_at_least(p, 3)
        assert not iadic_valuation_at_least(p, 4)
        assert iadic_valuation_at_least(LP_ZERO, 100)
