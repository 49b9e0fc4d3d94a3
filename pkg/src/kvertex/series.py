"""Rational functions in one distinguished variable and their expansions.

A RationalFunction is a Laurent-polynomial prefactor over a multiset of
factors (1 - c*z^n)^e, where c is a root of unity times a monomial in the
other variables.  It can be expanded as a formal series at z=0, z=infinity
and at the multiplicative point z=1 (series in 1-z), and decomposed into
partial fractions over a cyclotomic cover that splits every 1 - c*z^n into
linear factors.

Truncation orders are explicit arguments everywhere; no ambient state.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .laurent import (LP_ONE, LP_ZERO, MONO_ONE, LaurentPoly, Monomial,
                      PolyFraction, _mono_sort_key)
from .scalars import cyclo_root, generalized_binomial, scalar_pow

POINTS = ("zero", "infinity", "one")


def factor_poly(var: str, angle: Fraction, mono: Monomial, n: int) -> LaurentPoly:
    """The Laurent polynomial 1 - root(angle)*mono*z^n."""
    return LP_ONE - LaurentPoly.term(cyclo_root(angle), Monomial(mono) * Monomial.var(var, n))


def unit_value(angle: Fraction, mono: Monomial, k=1) -> LaurentPoly:
    """(root(angle) * mono)^k as a one-term Laurent polynomial."""
    return LaurentPoly.term(cyclo_root(Fraction(angle * k) % 1), Monomial(mono) ** k)


class RationalFunction:
    """prefactor / prod (1 - c z^n)^e with c = root-of-unity * monomial."""

    __slots__ = ("var", "num", "den")

    def __init__(self, var: str, num: LaurentPoly, factors=()):
        self.var = var
        den: dict = {}
        extra = None
        for angle, mono, n, e in factors:
            if e == 0:
                continue
            if e < 0:
                raise ValueError("factor multiplicity must be positive")
            angle = Fraction(angle) % 1
            mono = Monomial(mono)
            if mono.exponent(var):
                raise ValueError("factor character may not involve the expansion variable")
            if n == 0:
                raise ValueError("factor exponent n must be nonzero")
            if n < 0:
                # 1/(1 - u z^-n)^e = (-1)^e u^-e z^(ne) / (1 - u^-1 z^n)^e
                scale = LaurentPoly.term(
                    scalar_pow(Fraction(-1), e) * scalar_pow(cyclo_root(angle), -e),
                    (mono.inv() ** e) * Monomial.var(var, -n * e))
                extra = scale if extra is None else extra * scale
                angle, mono, n = (-angle) % 1, mono.inv(), -n
            key = (angle, mono, n)
            den[key] = den.get(key, 0) + e
        if extra is not None:
            num = num * extra
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_poly(num: LaurentPoly, var: str = "z") -> "RationalFunction":
        return RationalFunction(var, num)

    @staticmethod
    def one_over_factor(var: str, angle, mono: Monomial, n: int = 1, e: int = 1,
                        num: LaurentPoly = LP_ONE) -> "RationalFunction":
        return RationalFunction(var, num, [(angle, mono, n, e)])

    def factors(self):
        return [(a, m, n, e) for (a, m, n), e in self.den.items()]

    # -- algebra ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return not self.den

    def den_poly(self) -> LaurentPoly:
        out = LP_ONE
        for (angle, mono, n), e in self.den.items():
            out = out * (factor_poly(self.var, angle, mono, n) ** e)
        return out

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            if other.var != self.var:
                raise ValueError("mismatched expansion variables")
            merged = dict(self.den)
            for k, e in other.den.items():
                merged[k] = merged.get(k, 0) + e
            return RationalFunction(self.var, self.num * other.num,
                                    [(a, m, n, e) for (a, m, n), e in merged.items()])
        return RationalFunction(self.var, self.num * other, self.factors())

    __rmul__ = __mul__

    def __neg__(self):
        return RationalFunction(self.var, -self.num, self.factors())

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            p = other if isinstance(other, LaurentPoly) else LaurentPoly.scalar(other)
            other = RationalFunction.from_poly(p, self.var)
        if other.var != self.var:
            raise ValueError("mismatched expansion variables")
        keys = set(self.den) | set(other.den)
        den = {k: max(self.den.get(k, 0), other.den.get(k, 0)) for k in keys}

        def lift(f):
            extra = LP_ONE
            for (a, m, n), e in den.items():
                miss = e - f.den.get((a, m, n), 0)
                if miss:
                    extra = extra * (factor_poly(self.var, a, m, n) ** miss)
            return f.num * extra

        return RationalFunction(self.var, lift(self) + lift(other),
                                [(a, m, n, e) for (a, m, n), e in den.items()])

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return self + (-other)
        return self + (-1 * (other if isinstance(other, LaurentPoly) else LaurentPoly.scalar(other)))

    def equals(self, other: "RationalFunction") -> bool:
        """Exact equality after clearing denominators."""
        if self.var != other.var:
            return False
        return self.num * other.den_poly() == other.num * self.den_poly()

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.equals(other)
        return NotImplemented

    __hash__ = None

    # -- substitutions --------------------------------------------------------

    def subs_scale(self, tmono: Monomial) -> "RationalFunction":
        """The character substitution z -> tmono * z."""
        num = self.num.subs_mono(self.var, Monomial(tmono) * Monomial.var(self.var))
        factors = [(a, m * tmono ** n, n, e) for (a, m, n), e in self.den.items()]
        return RationalFunction(self.var, num, factors)

    def subs_invert(self) -> "RationalFunction":
        """The substitution z -> z^-1."""
        num = LaurentPoly.from_terms(
            (Monomial(tuple((v, -e if v == self.var else e) for v, e in m)), c)
            for m, c in self.num.terms.items())
        return RationalFunction(self.var, num,
                                [(a, m, -n, e) for (a, m, n), e in self.den.items()])

    def shift(self, k: int) -> "RationalFunction":
        return self * LaurentPoly.var(self.var, k)

    def rename_chars(self, ren: dict) -> "RationalFunction":
        if self.var in ren or self.var in ren.values():
            raise ValueError("cannot rename the expansion variable")
        factors = []
        for (a, m, n), e in self.den.items():
            m2 = Monomial(sorted((ren.get(v, v), ee) for v, ee in m))
            factors.append((a, m2, n, e))
        return RationalFunction(self.var, self.num.rename(ren), factors)

    def unit_pole_depth(self) -> int:
        """Total vanishing order of the denominator at z=1."""
        return sum(e for (a, m, _n), e in self.den.items() if a == 0 and m.is_one())

    def total_pole_mult(self) -> int:
        return sum(n * e for (_a, _m, n), e in self.den.items())

    def __str__(self):
        num = str(self.num)
        if not self.den:
            return num
        parts = []
        for (a, m, n), e in sorted(self.den.items(),
                                   key=lambda kv: (_mono_sort_key(kv[0][1]), kv[0][0], kv[0][2])):
            term = LaurentPoly.term(cyclo_root(a), m * Monomial.var(self.var, n))
            ts = str(term)
            base = f"(1 + {ts[1:]})" if ts.startswith("-") else f"(1 - {ts})"
            parts.append(base if e == 1 else f"{base}^{e}")
        den = "*".join(parts)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num} / ({den})" if len(parts) > 1 else f"{num} / {den}"

    def __repr__(self):
        return f"<RationalFunction {self}>"


# -- formal series -------------------------------------------------------------


def _is_zero(c):
    if isinstance(c, (LaurentPoly, PolyFraction)):
        return c.is_zero()
    return not c


def _eq_coeff(a, b):
    if isinstance(a, PolyFraction) or isinstance(b, PolyFraction):
        return PolyFraction.of(a) == PolyFraction.of(b)
    if isinstance(a, LaurentPoly) or isinstance(b, LaurentPoly):
        a = a if isinstance(a, LaurentPoly) else LaurentPoly.scalar(a)
        return a == b
    return a == b


def _smul(a, b):
    if isinstance(a, PolyFraction) or isinstance(b, PolyFraction):
        return PolyFraction.of(a) * PolyFraction.of(b)
    return a * b


def _ser_mul(A: dict, B: dict, tbound) -> dict:
    out: dict = {}
    for i, ci in A.items():
        for j, cj in B.items():
            k = i + j
            if k >= tbound:
                continue
            c = _smul(ci, cj)
            acc = out.get(k)
            out[k] = c if acc is None else acc + c
    return {k: c for k, c in out.items() if not _is_zero(c)}


def _ser_inv(A: dict, count: int) -> dict:
    """count coefficients of 1/A starting at the valuation; A must be exact
    over the consumed range and have an invertible leading coefficient."""
    v = min(k for k, c in A.items() if not _is_zero(c))
    inv0 = PolyFraction.of(A[v]).inv()
    out = {-v: inv0}
    for k in range(1, count):
        s = None
        for j in range(1, k + 1):
            aj = A.get(v + j)
            if aj is None or _is_zero(aj):
                continue
            prev = out.get(-v + k - j)
            if prev is None:
                continue
            term = _smul(aj, prev)
            s = term if s is None else s + term
        if s is None or _is_zero(s):
            continue
        out[-v + k] = -_smul(inv0, s)
    return {k: c for k, c in out.items() if not _is_zero(c)}


def _ser_pow(A: dict, e: int, tbound) -> dict:
    out = {0: Fraction(1)}
    base = A
    while e:
        if e & 1:
            out = _ser_mul(out, base, tbound)
        base = _ser_mul(base, base, tbound)
        e >>= 1
    return out


class FormalSeries:
    """Truncated series in one of the uniformizers z, z^-1 or 1-z.

    Coefficients with index >= trunc are unknown and asking for them raises;
    absent indices below trunc are exact zeros.
    """

    __slots__ = ("point", "var", "coeffs", "trunc")

    def __init__(self, point: str, var: str, coeffs: dict, trunc: int):
        if point not in POINTS:
            raise ValueError(f"unknown expansion point {point!r}")
        self.point = point
        self.var = var
        self.coeffs = {k: c for k, c in coeffs.items() if not _is_zero(c)}
        self.trunc = trunc

    @property
    def uniformizer(self) -> str:
        return {"zero": self.var, "infinity": f"{self.var}^-1", "one": f"1-{self.var}"}[self.point]

    def coeff(self, k: int):
        if k >= self.trunc:
            raise ValueError(f"coefficient {k} is at or beyond truncation {self.trunc}")
        return self.coeffs.get(k, Fraction(0))

    def valuation(self) -> int:
        return min(self.coeffs) if self.coeffs else self.trunc

    def items(self):
        return sorted(self.coeffs.items())

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        self._check(other)
        t = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return FormalSeries(self.point, self.var, {k: c for k, c in out.items() if k < t}, t)

    def __mul__(self, other):
        if isinstance(other, FormalSeries):
            self._check(other)
            t = min(self.trunc + other.valuation(), other.trunc + self.valuation())
            return FormalSeries(self.point, self.var, _ser_mul(self.coeffs, other.coeffs, t), t)
        return FormalSeries(self.point, self.var,
                            {k: _smul(c, other) for k, c in self.coeffs.items()}, self.trunc)

    __rmul__ = __mul__

    def _check(self, other):
        if self.point != other.point or self.var != other.var:
            raise ValueError("series uniformizers differ")

    def same_up_to(self, other: "FormalSeries", order=None) -> bool:
        self._check(other)
        t = min(self.trunc, other.trunc)
        if order is not None:
            t = min(t, order)
        lo = min(self.valuation(), other.valuation(), 0)
        return all(_eq_coeff(self.coeffs.get(k, Fraction(0)), other.coeffs.get(k, Fraction(0)))
                   for k in range(lo, t))

    def _upow(self, k: int) -> str:
        if k == 0:
            return "1"
        if self.point == "zero":
            return self.var + (f"^{k}" if k != 1 else "")
        if self.point == "infinity":
            return f"{self.var}^-{k}"
        return f"(1-{self.var})" + (f"^{k}" if k != 1 else "")

    def __str__(self):
        parts = []
        for k, c in self.items():
            cs = str(c)
            if k == 0:
                parts.append(cs if " " not in cs else f"({cs})")
                continue
            if _eq_coeff(c, Fraction(1)):
                parts.append(self._upow(k))
            elif _eq_coeff(c, Fraction(-1)):
                parts.append("-" + self._upow(k))
            else:
                if " " in cs or "/" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{self._upow(k)}")
        if not parts:
            body = "0"
        else:
            body = parts[0]
            for p in parts[1:]:
                body += " - " + p[1:] if p.startswith("-") else " + " + p
        return f"{body} + O({self._upow(self.trunc) if self.trunc != 0 else '1'})"

    def __repr__(self):
        return f"<FormalSeries {self}>"


# -- expansions ------------------------------------------------------------------


def expand_at(f: RationalFunction, point: str, order: int) -> FormalSeries:
    """Expand f at z=0, z=infinity or z=1 with `order` exact coefficients
    counted from the leading term.

    >>> f = RationalFunction.one_over_factor("z", 0, MONO_ONE)
    >>> str(expand_at(f, "zero", 3))
    '1 + z + z^2 + O(z^3)'
    """
    if order <= 0:
        raise ValueError("order must be positive")
    if point not in POINTS:
        raise ValueError(f"unknown expansion point {point!r}")
    if f.is_zero():
        return FormalSeries(point, f.var, {}, order)
    slack = 2
    for _ in range(8):
        coeffs, tbound = _expand_raw(f, point, order + slack)
        coeffs = {k: c for k, c in coeffs.items() if not _is_zero(c)}
        if coeffs:
            va = min(coeffs)
            if tbound - va >= order:
                t = va + order
                return FormalSeries(point, f.var, {k: c for k, c in coeffs.items() if k < t}, t)
        slack = slack * 2 + order
    raise RuntimeError("expansion did not stabilize")


def _expand_raw(f: RationalFunction, point: str, order: int):
    num_split = f.num.split_var(f.var)
    if point == "zero":
        v0 = min(num_split)
        tbound = v0 + order
        ser = {k: p for k, p in num_split.items() if k < tbound}
        for (a, m, n), e in f.den.items():
            fac = {}
            j = 0
            while n * j < tbound - v0:
                fac[n * j] = unit_value(a, m, j) * generalized_binomial(e - 1 + j, e - 1)
                j += 1
            ser = _ser_mul(ser, fac, tbound)
        return ser, tbound

    if point == "infinity":
        # keys are powers of 1/z
        shift = sum(n * e for (_a, _m, n), e in f.den.items())
        v0 = -max(num_split) + shift
        tbound = v0 + order
        ser = {-k: p for k, p in num_split.items()}
        for (a, m, n), e in f.den.items():
            # 1/(1-u z^n)^e = (-1)^e u^-e Z^(ne) sum_j binom(e-1+j, e-1) u^-j Z^(nj)
            sign = Fraction(-1) ** e
            fac = {}
            j = 0
            while n * (e + j) < tbound - (v0 - n * e):
                fac[n * (e + j)] = unit_value(a, m, -(e + j)) * (sign * generalized_binomial(e - 1 + j, e - 1))
                j += 1
            ser = _ser_mul(ser, fac, tbound)
        return ser, tbound

    # point == "one": series in u = 1-z; coefficients live in the fraction field
    depth = f.unit_pole_depth()
    v0 = -depth
    tbound = v0 + order
    span = order + 1
    ser: dict = {}
    for k, p in num_split.items():
        # z^k = (1-u)^k = sum_j binom(k, j) (-u)^j
        for j in range(span):
            c = generalized_binomial(k, j) * (Fraction(-1) ** j)
            if not c:
                continue
            term = PolyFraction.of(p * c)
            acc = ser.get(j)
            ser[j] = term if acc is None else acc + term
    ser = {k: c for k, c in ser.items() if not _is_zero(c)}
    for (a, m, n), e in f.den.items():
        # 1 - u_root*m*(1-u)^n as a u-polynomial
        base = {0: PolyFraction.of(LP_ONE - unit_value(a, m))}
        for j in range(1, n + 1):
            base[j] = PolyFraction.of(unit_value(a, m) * (-generalized_binomial(n, j) * (Fraction(-1) ** j)))
        base = {k: c for k, c in base.items() if not _is_zero(c)}
        inv = _ser_inv(base, span + depth)
        fac = _ser_pow(inv, e, tbound + depth + 1)
        ser = _ser_mul(ser, fac, tbound)
    return ser, tbound


def series_of_poly(p: LaurentPoly, var: str, point: str, order: int) -> FormalSeries:
    """View a Laurent polynomial in var as a truncated series at the point."""
    return expand_at(RationalFunction.from_poly(p, var), point, order)


# -- partial fractions --------------------------------------------------------------


class PoleTerm(NamedTuple):
    angle: Fraction
    mono: Monomial
    mult: int
    coeff: PolyFraction


class PartialFractions:
    """f = sum_k poly_part[k] z^k + sum coeff / (1 - a z)^mult over distinct
    linear poles a = root(angle) * mono on the splitting cover."""

    __slots__ = ("var", "poly_part", "terms")

    def __init__(self, var: str, poly_part: dict, terms: list):
        self.var = var
        self.poly_part = poly_part
        self.terms = terms

    def poly_part_as_laurent(self):
        """Polynomial part as a LaurentPoly, or None when fractions remain."""
        out = LP_ZERO
        for k, c in self.poly_part.items():
            p = c.as_poly() if isinstance(c, PolyFraction) else c
            if p is None:
                return None
            out = out + p * LaurentPoly.var(self.var, k)
        return out

    def as_fraction(self) -> PolyFraction:
        """Recombine into one exact fraction, treating z as an ordinary variable."""
        z = LaurentPoly.var(self.var)
        total = PolyFraction.of(LP_ZERO)
        for k, c in self.poly_part.items():
            total = total + PolyFraction.of(c) * LaurentPoly.var(self.var, k)
        for t in self.terms:
            den = (LP_ONE - unit_value(t.angle, t.mono) * z) ** t.mult
            total = total + t.coeff * PolyFraction(LP_ONE, den)
        return total

    def recombines_to(self, f: RationalFunction) -> bool:
        """Exact identity L N = L Q D + sum_t n_t (L/d_t) (D / pole_t), where
        L clears the z-free coefficient denominators; everything stays in the
        polynomial ring."""
        poles = split_poles(f)
        order = sorted(poles, key=lambda km: (_mono_sort_key(km[1]), km[0]))
        dens = [t.coeff.den for t in self.terms]
        L = LP_ONE
        for d in dens:
            L = L * d
        # lhs: L * numerator of f
        lhs = {k: p * L for k, p in f.num.split_var(f.var).items()}
        # D as a z-split polynomial
        D: dict = {0: LP_ONE}
        for (angle, mono) in order:
            lin = {0: LP_ONE, 1: -unit_value(angle, mono)}
            for _ in range(poles[(angle, mono)]):
                D = _zpoly_mul(D, lin)
        rhs: dict = {}

        def acc(zp: dict, scale: LaurentPoly):
            for k, c in zp.items():
                cc = c * scale
                prev = rhs.get(k)
                cc = cc if prev is None else prev + cc
                if cc.is_zero():
                    rhs.pop(k, None)
                else:
                    rhs[k] = cc

        for k, c in self.poly_part.items():
            p = c.as_poly() if isinstance(c, PolyFraction) else c
            assert p is not None, "polynomial part must be fraction-free"
            acc({kk + k: cc for kk, cc in D.items()}, p * L)
        for t, d in zip(self.terms, dens):
            Lt = LP_ONE
            for t2, d2 in zip(self.terms, dens):
                if t2 is not t:
                    Lt = Lt * d2
            cof: dict = {0: LP_ONE}
            for (angle, mono) in order:
                mult = poles[(angle, mono)]
                if (angle, mono) == (t.angle, t.mono):
                    mult -= t.mult
                lin = {0: LP_ONE, 1: -unit_value(angle, mono)}
                for _ in range(mult):
                    cof = _zpoly_mul(cof, lin)
            acc(cof, t.coeff.num * Lt)
        diff_keys = set(lhs) | set(rhs)
        return all((lhs.get(k, LP_ZERO) - rhs.get(k, LP_ZERO)).is_zero() for k in diff_keys)

    def coefficient_sum(self) -> PolyFraction:
        total = PolyFraction.of(LP_ZERO)
        for t in self.terms:
            total = total + t.coeff
        return total

    def __str__(self):
        lines = []
        pp = sorted(self.poly_part.items())
        if pp:
            body = " + ".join(f"({c})*{self.var}^{k}" if k else f"({c})" for k, c in pp)
            lines.append(f"polynomial part: {body}")
        else:
            lines.append("polynomial part: 0")
        for t in sorted(self.terms, key=lambda t: (_mono_sort_key(t.mono), t.angle, t.mult)):
            a = unit_value(t.angle, t.mono)
            ts = str(a)
            if ts == "1":
                base = f"(1 - {self.var})"
            elif ts == "-1":
                base = f"(1 + {self.var})"
            elif ts.startswith("-"):
                base = f"(1 + {ts[1:]}*{self.var})"
            else:
                base = f"(1 - {ts}*{self.var})"
            pw = f"^{t.mult}" if t.mult > 1 else ""
            lines.append(f"+ ({t.coeff}) / {base}{pw}")
        return "\n".join(lines)


def split_poles(f: RationalFunction) -> dict:
    """Linearize every factor over the n-fold cover: {(angle, mono): mult}.

    1 - u z^n = prod_{j<n} (1 - zeta_n^j u^(1/n) z), so a factor with angle a
    contributes poles at angles (a+j)/n with character mono^(1/n).
    """
    poles: dict = {}
    for (a, m, n), e in f.den.items():
        if n == 1:
            poles[(a, m)] = poles.get((a, m), 0) + e
        else:
            mroot = m ** Fraction(1, n)
            for j in range(n):
                key = (Fraction(a + j, n) % 1, mroot)
                poles[key] = poles.get(key, 0) + e
    return poles


def _zpoly_mul(A: dict, B: dict) -> dict:
    out: dict = {}
    for i, ci in A.items():
        for j, cj in B.items():
            k = i + j
            c = ci * cj
            acc = out.get(k)
            out[k] = c if acc is None else acc + c
    return {k: c for k, c in out.items() if not c.is_zero()}


def _zpoly_deriv(A: dict) -> dict:
    return {k - 1: c * k for k, c in A.items() if k}


def _zpoly_eval_inv(A: dict, angle, mono: Monomial) -> LaurentPoly:
    """Evaluate a z-split polynomial at z = 1/(root(angle)*mono)."""
    out = LP_ZERO
    for k, c in A.items():
        out = out + c * unit_value(Fraction(angle * (-k)) % 1, mono ** (-k))
    return out


def partial_fractions(f: RationalFunction) -> PartialFractions:
    """Exact decomposition; recombining the output reproduces f.

    The Laurent-polynomial part is extracted by exact long division in the
    character ring (the cover denominator has unit constant and leading
    terms), and the pole coefficients come from the derivative formula

        A_{m_i - j} = (-1/a_i)^j / j! * (d/dz)^j [f (1 - a_i z)^{m_i}]
                      evaluated at z = 1/a_i,

    so every output coefficient is a single fraction of Laurent polynomials.

    >>> f = RationalFunction("z", LP_ONE, [(0, MONO_ONE, 2, 1)])
    >>> print(partial_fractions(f))
    polynomial part: 0
    + (1/2) / (1 - z)
    + (1/2) / (1 + z)
    """
    from .scalars import scalar_inv

    poles = split_poles(f)
    order = sorted(poles, key=lambda km: (_mono_sort_key(km[1]), km[0]))
    D: dict = {0: LP_ONE}
    for (angle, mono) in order:
        lin = {0: LP_ONE, 1: -unit_value(angle, mono)}
        for _ in range(poles[(angle, mono)]):
            D = _zpoly_mul(D, lin)
    M = max(D) if D else 0
    N = dict(f.num.split_var(f.var))
    Q: dict = {}

    def subtract_multiple(c, shift):
        # N -= c * z^shift * (D - z^shift-part already removed by caller)
        for k, dk in D.items():
            key = shift + k
            sub = c * dk
            acc = N.get(key)
            acc = -sub if acc is None else acc - sub
            if acc.is_zero():
                N.pop(key, None)
            else:
                N[key] = acc

    # clear negative z-powers:  c z^lo / D = c z^lo + (N - c z^lo D)/D
    while N and min(N) < 0:
        lo = min(N)
        c = N[lo]
        Q[lo] = Q.get(lo, LP_ZERO) + c
        subtract_multiple(c, lo)
    # ordinary long division on the high side; lead(D) is a unit term
    if M:
        lc, lm = D[M].as_unit()
        lead_inv = LaurentPoly.term(scalar_inv(lc), lm.inv())
        while N and max(N) >= M:
            hi = max(N)
            q = N[hi] * lead_inv
            Q[hi - M] = Q.get(hi - M, LP_ZERO) + q
            subtract_multiple(q, hi - M)
    else:
        for k, c in N.items():
            Q[k] = Q.get(k, LP_ZERO) + c
        N = {}

    terms: list = []
    for (angle, mono) in order:
        m_tot = poles[(angle, mono)]
        Di: dict = {0: LP_ONE}
        for (a2, m2) in order:
            if (a2, m2) == (angle, mono):
                continue
            lin = {0: LP_ONE, 1: -unit_value(a2, m2)}
            for _ in range(poles[(a2, m2)]):
                Di = _zpoly_mul(Di, lin)
        Di_deriv = _zpoly_deriv(Di)
        den0 = _zpoly_eval_inv(Di, angle, mono)
        Nj = dict(N)
        jfact = Fraction(1)
        for j in range(m_tot):
            if j:
                jfact *= j
            num_eval = _zpoly_eval_inv(Nj, angle, mono)
            if not num_eval.is_zero():
                scale = unit_value(Fraction(angle * (-j)) % 1, mono ** (-j)) \
                    * (Fraction(-1) ** j / jfact)
                A = PolyFraction(num_eval * scale, den0 ** (j + 1))
                terms.append(PoleTerm(angle, mono, m_tot - j, A.simplified()))
            if j + 1 < m_tot:
                t1 = _zpoly_mul(_zpoly_deriv(Nj), Di)
                t2 = _zpoly_mul(Nj, Di_deriv)
                Nj = {kk: t1.get(kk, LP_ZERO) - (j + 1) * t2.get(kk, LP_ZERO)
                      for kk in set(t1) | set(t2)}
                Nj = {kk: c for kk, c in Nj.items() if not c.is_zero()}
    poly_part = {k: c for k, c in Q.items() if not c.is_zero()}
    return PartialFractions(f.var, poly_part, terms)


# -- the parametrized equivariant expansion ---------------------------------------


class EquivariantExpansion:
    """Truncated pivot expansion of 1/(1 - t z w): the k-th term is
    (-s z)^k / (1 - s z)^(k+1) * (1 - (t/s) w)^k for a chosen pivot s.

    Any character pivot gives a valid expansion; the truncation defect after
    multiplying back by (1 - t z w) is the geometric tail r^order.
    """

    __slots__ = ("t", "pivot", "order", "zvar", "wvar")

    def __init__(self, t: Monomial, pivot: Monomial, order: int, zvar="z", wvar="w"):
        if order <= 0:
            raise ValueError("order must be positive")
        if not isinstance(pivot, Monomial):
            raise ValueError("pivot must be a character monomial")
        self.t = Monomial(t)
        self.pivot = Monomial(pivot)
        self.order = order
        self.zvar = zvar
        self.wvar = wvar

    def z_coefficient(self, k: int) -> RationalFunction:
        """(-s z)^k / (1 - s z)^(k+1)."""
        num = LaurentPoly.term(Fraction(-1) ** k, (self.pivot ** k) * Monomial.var(self.zvar, k))
        return RationalFunction(self.zvar, num, [(0, self.pivot, 1, k + 1)])

    def kernel_factor(self) -> LaurentPoly:
        """1 - (t/s) w."""
        return LP_ONE - LaurentPoly.term(1, self.t * self.pivot.inv() * Monomial.var(self.wvar))

    def terms(self):
        fac = self.kernel_factor()
        return [(k, self.z_coefficient(k), fac ** k) for k in range(self.order)]

    def w_series_coefficient(self, j: int) -> RationalFunction:
        """Coefficient of (1-w)^j as one rational function in z."""
        c = self.t * self.pivot.inv()
        out = None
        for k in range(self.order):
            b = generalized_binomial(k, j)
            if not b:
                continue
            scale = LaurentPoly.term(b, c ** j) * ((LP_ONE - LaurentPoly.term(1, c)) ** (k - j))
            if scale.is_zero():
                continue
            rf = self.z_coefficient(k) * scale
            out = rf if out is None else out + rf
        return out if out is not None else RationalFunction.from_poly(LP_ZERO, self.zvar)

    def product_defect(self) -> PolyFraction:
        """(1 - t z w) * partial_sum - 1 as an exact fraction."""
        z = LaurentPoly.var(self.zvar)
        w = LaurentPoly.var(self.wvar)
        szf = LP_ONE - LaurentPoly.term(1, self.pivot) * z
        fac = self.kernel_factor()
        total = PolyFraction.of(LP_ZERO)
        for k in range(self.order):
            num = LaurentPoly.term(Fraction(-1) ** k, (self.pivot ** k) * Monomial.var(self.zvar, k)) * (fac ** k)
            total = total + PolyFraction(num, szf ** (k + 1))
        tzw = LP_ONE - LaurentPoly.term(1, self.t) * z * w
        return PolyFraction.of(tzw) * total - 1

    def defect_is_geometric_tail(self) -> bool:
        r_num = LaurentPoly.term(-1, self.pivot) * LaurentPoly.var(self.zvar) * self.kernel_factor()
        szf = LP_ONE - LaurentPoly.term(1, self.pivot) * LaurentPoly.var(self.zvar)
        return self.product_defect() == -PolyFraction(r_num ** self.order, szf ** self.order)


def expand_equivariant(t: Monomial, pivot: Monomial, order: int,
                       zvar: str = "z", wvar: str = "w") -> EquivariantExpansion:
    """Pivot-parametrized expansion of 1/(1 - t z w)."""
    return EquivariantExpansion(t, pivot, order, zvar, wvar)
