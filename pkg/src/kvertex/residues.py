"""Residue maps on rational functions of the expansion variable.

Three functionals:

* residue_k      -- z^0 coefficient of (expansion at 0) - (expansion at oo),
                    computed in closed form on partial-fraction terms;
* residue_naive  -- minus the classical residue at z=1 of z^-1 f(z) dz;
* residue_coh    -- the classical residue at u=0 (coefficient of 1/u).

residue_k_oracle implements the defining series prescription directly and is
kept independent of the closed-form path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .laurent import LP_ONE, LP_ZERO, LaurentPoly, Monomial, PolyFraction
from .scalars import generalized_binomial
from .series import (RationalFunction, _is_zero, _ser_inv, _ser_mul, _ser_pow,
                     expand_at, partial_fractions, split_poles, unit_value)

MONO_ONE = Monomial(())


@dataclass(frozen=True)
class ResidueKind:
    tag: str

    def __post_init__(self):
        if self.tag not in ("ktheory", "naive", "cohomological"):
            raise ValueError(f"unknown residue kind {self.tag!r}")


K_THEORY = ResidueKind("ktheory")
NAIVE = ResidueKind("naive")
COHOMOLOGICAL = ResidueKind("cohomological")


def residue_k(f: RationalFunction) -> LaurentPoly:
    """Closed-form K-theoretic residue.

    The denominator is linearized over the splitting cover, and the explicit
    binomial formulas for the z^0 coefficients at z=0 and z=infinity are
    evaluated on the resulting pole data (linearly over the numerator's
    z-powers).  Fraction-free: the result is always a Laurent polynomial in
    the characters.

    >>> str(residue_k(RationalFunction.one_over_factor("z", 0, MONO_ONE)))
    '1'
    """
    if f.is_poly():
        return LP_ZERO
    poles = [(pm, mult) for pm, mult in sorted(split_poles(f).items())]
    out = LP_ZERO
    for k, p in f.num.split_var(f.var).items():
        r = rho_simple_product(k, poles)
        if not r.is_zero():
            out = out + p * r
    return out


def residue_k_via_pfrac(f: RationalFunction) -> LaurentPoly:
    """Independent route: sum of the partial-fraction pole coefficients
    (each term A/(1 - a z)^m has residue exactly A)."""
    if f.is_poly():
        return LP_ZERO
    total = partial_fractions(f).coefficient_sum()
    poly = total.as_poly()
    if poly is None:
        raise ArithmeticError("residue did not reduce to a Laurent polynomial")
    return poly


def residue_k_oracle(f: RationalFunction, order: int) -> LaurentPoly:
    """The definition, verbatim: z^0 term of f_+ minus z^0 term of f_-.

    order must exceed the total pole multiplicity so that both truncated
    expansions already carry their exact z^0 coefficients.
    """
    if order <= f.total_pole_mult():
        raise ValueError("order must exceed the total pole multiplicity")

    def z0(ser):
        if ser.valuation() <= 0 < ser.trunc:
            return ser.coeff(0)
        return Fraction(0)

    out = z0(expand_at(f, "zero", order)) - z0(expand_at(f, "infinity", order))
    return out if isinstance(out, LaurentPoly) else LaurentPoly.scalar(out)


def rho_simple_product(var_power: int, poles) -> LaurentPoly:
    """residue_k of z^A / prod_i (1 - a_i z)^(m_i) via the binomial formulas.

    poles: list of ((angle, mono), mult).  The z^0 coefficient at z=0 is the
    convolution over compositions of -A, the one at z=infinity over
    compositions of A - sum(m_i); both are finite.
    """
    A = var_power

    def convolve(target, invert):
        if target < 0:
            return LP_ZERO
        out = LP_ZERO

        def rec(i, rem, acc):
            nonlocal out
            if i == len(poles):
                if rem == 0:
                    out = out + acc
                return
            (angle, mono), m = poles[i]
            for j in range(rem + 1):
                c = generalized_binomial(m - 1 + j, m - 1)
                u = unit_value(angle, mono, -j if invert else j)
                rec(i + 1, rem - j, acc * (u * c))

        rec(0, target, LP_ONE)
        return out

    total_m = sum(m for _p, m in poles)
    plus = convolve(-A, invert=False)
    minus = convolve(A - total_m, invert=True)
    if not minus.is_zero():
        scale = LaurentPoly.scalar(Fraction(-1) ** total_m)
        for (angle, mono), m in poles:
            scale = scale * unit_value(angle, mono, -m)
        minus = minus * scale
    return plus - minus


def residue_naive(f: RationalFunction):
    """-Res_{z=1}(z^-1 f(z) dz), read off the multiplicative expansion:
    with u = 1-z the value is the u^-1 coefficient of z^-1 f (the sign from
    dz = -du cancels against (z-1)^-1 = -u^-1).

    Returns a LaurentPoly when polynomial in the characters, else the exact
    PolyFraction.
    """
    g = f.shift(-1)
    depth = g.unit_pole_depth()
    if depth == 0:
        return LP_ZERO
    ser = expand_at(g, "one", depth + 2)
    c = ser.coeffs.get(-1, Fraction(0))
    if isinstance(c, PolyFraction):
        p = c.as_poly()
        return p if p is not None else c
    return c if isinstance(c, LaurentPoly) else LaurentPoly.scalar(c)


def residue_coh(f: LaurentPoly, var: str = "u") -> LaurentPoly:
    """Res_{u=0} f(u) du for f whose denominator is a power of u: the
    coefficient of u^-1 of the Laurent polynomial f."""
    return f.split_var(var).get(-1, LP_ZERO)


def local_residue_at_root(f: RationalFunction, angle: Fraction):
    """Res_{z=gamma}(z^-1 f dz) at gamma = root(angle); f may only have
    root-of-unity poles (trivial character parts), and the residue is
    computed from the (z - gamma)-adic expansion with cyclotomic
    coefficients."""
    for (_a, m, _n), _e in f.den.items():
        if not m.is_one():
            raise ValueError("local residues are computed only at root-of-unity poles")
    angle = Fraction(angle) % 1
    depth = sum(e for (a, _m, n), e in f.den.items()
                if (Fraction(a) + n * angle) % 1 == 0)
    if depth == 0:
        return LP_ZERO
    span = depth + 2

    def gamma_pow(k):
        return unit_value(Fraction(angle * k) % 1, MONO_ONE)

    # expand z^-1 f in v = z - gamma; (gamma + v)^k = sum_j C(k,j) gamma^(k-j) v^j
    ser: dict = {}
    for k, p in f.num.split_var(f.var).items():
        k1 = k - 1  # the z^-1 measure factor
        for j in range(span + depth):
            c = generalized_binomial(k1, j)
            if not c:
                continue
            term = PolyFraction.of(p * (gamma_pow(k1 - j) * c))
            acc = ser.get(j)
            ser[j] = term if acc is None else acc + term
    ser = {k: c for k, c in ser.items() if not _is_zero(c)}
    for (a, _m, n), e in f.den.items():
        # 1 - root(a)(gamma + v)^n as a v-polynomial
        base: dict = {}
        c0 = PolyFraction.of(LP_ONE - unit_value(Fraction(a), MONO_ONE) * gamma_pow(n))
        if not _is_zero(c0):
            base[0] = c0
        for j in range(1, n + 1):
            base[j] = PolyFraction.of(unit_value(Fraction(a), MONO_ONE) * gamma_pow(n - j)
                                      * (-generalized_binomial(n, j)))
        inv = _ser_inv(base, span + depth)
        fac = _ser_pow(inv, e, span)
        ser = _ser_mul(ser, fac, span)
    c = ser.get(-1, PolyFraction.of(LP_ZERO))
    if isinstance(c, PolyFraction):
        p = c.as_poly()
        return p if p is not None else c
    return c if isinstance(c, LaurentPoly) else LaurentPoly.scalar(c)


def residue(f: RationalFunction, kind: ResidueKind = K_THEORY):
    if kind.tag == "ktheory":
        return residue_k(f)
    if kind.tag == "naive":
        return residue_naive(f)
    raise ValueError("the cohomological residue acts on Laurent data in u; use residue_coh")


def constraint_suite(kind: ResidueKind, n_max: int, k_max: int):
    """Evaluate rho(z^(nk+a)/(1 - z^n)^(k+1)) for n <= n_max, k <= k_max,
    0 <= a < n against the normalization forced by quasi-unipotent line
    bundles: 1 when k = a = 0, else 0.

    Returns a list of (n, k, a, value, expected, passed).
    """
    if n_max < 1 or k_max < 1:
        raise ValueError("n_max and k_max must be at least 1")
    if kind.tag == "cohomological":
        raise ValueError("constraint family is not in the cohomological residue's domain")
    rows = []
    for n in range(1, n_max + 1):
        for k in range(0, k_max + 1):
            for a in range(0, n):
                f = RationalFunction("z", LaurentPoly.var("z", n * k + a),
                                     [(0, MONO_ONE, n, k + 1)])
                value = residue(f, kind)
                expected = LaurentPoly.scalar(1 if (k == 0 and a == 0) else 0)
                if isinstance(value, PolyFraction):
                    passed = value == PolyFraction.of(expected)
                else:
                    passed = value == expected
                rows.append((n, k, a, value, expected, passed))
    return rows


# -- diagonal expansions of f(z/w) ------------------------------------------------


def diagonal_w_side_residue(a_pow: int, s: Monomial, n: int, pivots, w_order: int) -> dict:
    """rho_{K,z} applied term-by-term to the w-directed expansion of f(z/w),
    f = z^a/(1 - s z)^n, one pivot per factor, truncated at k < w_order.

    Each factor 1/(1 - s z w^-1) expands with pivot p as
    sum_k (-p z)^k/(1 - p z)^(k+1) (1 - (s/p) w^-1)^k; the prefactor
    contributes z^a w^-a.  Returns {j: LaurentPoly} for the (1-w)^j
    coefficients of the residue, j < w_order.
    """
    pivots = [Monomial(p) for p in pivots]
    if len(pivots) != n:
        raise ValueError("one pivot per denominator factor is required")

    # w^-a as a series in u = 1-w
    wpart: dict = {}
    if a_pow >= 0:
        for j in range(w_order):
            c = generalized_binomial(a_pow - 1 + j, j)
            if c:
                wpart[j] = LaurentPoly.scalar(c)
    else:
        for j in range(min(w_order, -a_pow + 1)):
            c = generalized_binomial(-a_pow, j) * (Fraction(-1) ** j)
            if c:
                wpart[j] = LaurentPoly.scalar(c)

    def one_minus_c_winv(c: Monomial) -> dict:
        # 1 - c w^-1 = (1 - c) - c(u + u^2 + ...)
        out = {}
        head = LP_ONE - LaurentPoly.term(1, c)
        if not head.is_zero():
            out[0] = head
        for j in range(1, w_order):
            out[j] = LaurentPoly.term(-1, c)
        return out

    factor_series = [one_minus_c_winv(s * p.inv()) for p in pivots]
    # precompute powers of each factor's w-series once
    factor_pows = []
    for fs in factor_series:
        pows = [{0: LP_ONE}]
        for _ in range(1, w_order):
            pows.append(_ser_mul(pows[-1], fs, w_order))
        factor_pows.append(pows)
    out: dict = {}

    def emit(kvec):
        # the z-residue is cheap and usually zero: compute it first
        A = a_pow + sum(kvec)
        zres = rho_simple_product(A, [((Fraction(0), pivots[t]), kvec[t] + 1) for t in range(n)])
        if zres.is_zero():
            return
        scale = LaurentPoly.scalar(Fraction(-1) ** sum(kvec))
        for t, k in enumerate(kvec):
            if k:
                scale = scale * LaurentPoly.term(1, pivots[t] ** k)
        zres = zres * scale
        wser = dict(wpart)
        for t, k in enumerate(kvec):
            if k:
                wser = _ser_mul(wser, factor_pows[t][k], w_order)
        for j, cw in wser.items():
            term = zres * cw
            acc = out.get(j)
            out[j] = term if acc is None else acc + term

    import itertools
    for kvec in itertools.product(range(w_order), repeat=n):
        emit(list(kvec))
    return {j: c for j, c in out.items() if not c.is_zero()}


def diagonal_z_side_residues(a_pow: int, s: Monomial, n: int, pivots, order: int) -> list:
    """rho_{K,z} of sample terms of the z-directed expansion of f(z/w): those
    z-parts are Laurent polynomials z^a prod_i (1 - (s/q_i) z)^(k_i), so each
    residue is exactly zero.  Returns the list of computed residues."""
    pivots = [Monomial(p) for p in pivots]
    if len(pivots) != n:
        raise ValueError("one pivot per denominator factor is required")
    residues = []
    for k in range(order):
        poly = LP_ONE
        for q in pivots:
            poly = poly * (LP_ONE - LaurentPoly.term(1, (s * q.inv()) * Monomial.var("z"))) ** k
        f = RationalFunction.from_poly(poly * LaurentPoly.var("z", a_pow), "z")
        residues.append(residue_k(f))
    return residues


def iadic_valuation_at_least(p: LaurentPoly, m: int) -> bool:
    """True when p lies in I^m, I = (1 - v : v a character variable), decided
    by substituting v -> 1 - y_v and expanding below total y-degree m."""
    if p.is_zero() or m <= 0:
        return True

    def add(d, key, c):
        a = d.get(key)
        if a is None:
            d[key] = c
        else:
            a = a + c
            if a:
                d[key] = a
            else:
                del d[key]

    acc: dict = {}
    for mono, c in p.terms.items():
        term = {(): c}
        for v, e in mono:
            if not isinstance(e, int):
                raise ValueError("integer character exponents required")
            pw = {}
            for j in range(m):
                cj = generalized_binomial(e, j) * (Fraction(-1) ** j)
                if cj:
                    pw[j] = cj
            new: dict = {}
            for key, ck in term.items():
                deg = sum(kk for _vv, kk in key)
                for j, cj in pw.items():
                    if deg + j >= m:
                        continue
                    nk = tuple(sorted(key + ((v, j),))) if j else key
                    add(new, nk, ck * cj)
            term = new
        for key, ck in term.items():
            add(acc, key, ck)
    return not acc
