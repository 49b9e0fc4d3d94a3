"""Exact scalars: arbitrary-precision rationals and cyclotomic numbers.

Rationals are stdlib ``fractions.Fraction`` (already canonical: reduced,
positive denominator).  Cyclotomic numbers are elements of Q(zeta_N) stored
in the power basis 1, zeta, ..., zeta^(d-1) reduced modulo the N-th
cyclotomic polynomial (d = deg Phi_N); any value that reduces to a rational
is demoted to a plain Fraction, so rationals have a single representation
everywhere.
"""
from __future__ import annotations

import math
from fractions import Fraction

ExactScalar = Fraction


def generalized_binomial(n, k: int) -> Fraction:
    """binom(n, k) = n(n-1)...(n-k+1)/k! for any integer (or rational) n.

    >>> generalized_binomial(5, 2), generalized_binomial(-1, 3)
    (Fraction(10, 1), Fraction(-1, 1))
    """
    if k < 0:
        raise ValueError("binomial lower index must be nonnegative")
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(n - i, i + 1)
    return out


def _int_polydiv_exact(num, den):
    # exact division of integer coefficient lists (low -> high), monic-ish den
    num = list(num)
    d = len(den) - 1
    q = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        lead = den[d]
        assert c % lead == 0
        f = c // lead
        q[i - d] = f
        for j, dj in enumerate(den):
            num[i - d + j] -= f * dj
    assert all(x == 0 for x in num), "inexact polynomial division"
    return q


_CYCLO_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    cached = _CYCLO_CACHE.get(n)
    if cached is not None:
        return cached
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    num = [0] * (n + 1)
    num[0] = -1
    num[n] = 1
    for d in range(1, n):
        if n % d == 0:
            num = _int_polydiv_exact(num, cyclotomic_poly(d))
    out = tuple(num)
    _CYCLO_CACHE[n] = out
    return out


def _reduce_mod_cyclo(order: int, vec: list) -> list:
    """Reduce a coefficient list (powers of zeta_order) to degree < deg Phi."""
    phi = cyclotomic_poly(order)
    d = len(phi) - 1
    # first fold exponents mod order (zeta^order = 1)
    if len(vec) > order:
        folded = [Fraction(0)] * order
        for k, c in enumerate(vec):
            folded[k % order] += c
        vec = folded
    vec = list(vec) + [Fraction(0)] * max(0, d - len(vec))
    for i in range(len(vec) - 1, d - 1, -1):
        c = vec[i]
        if c:
            for j in range(d + 1):
                vec[i - d + j] -= c * phi[j]
    return vec[:d]


class Cyclo:
    """An element of Q(zeta_N) in reduced power-basis form.

    Arithmetic between different orders lifts both operands to the lcm
    order; results that land in Q come back as plain Fractions.
    """

    __slots__ = ("order", "vec")

    def __init__(self, order: int, vec: tuple):
        self.order = order
        self.vec = vec

    # -- construction ---------------------------------------------------

    @staticmethod
    def make(order: int, coeffs) -> "Cyclo | Fraction":
        """Build from a {power: coeff} map or coefficient list; demotes."""
        if isinstance(coeffs, dict):
            top = max(coeffs) + 1 if coeffs else 1
            lst = [Fraction(0)] * top
            for k, c in coeffs.items():
                lst[k] += Fraction(c) if isinstance(c, int) else c
        else:
            lst = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        vec = _reduce_mod_cyclo(order, lst)
        if all(c == 0 for c in vec[1:]):
            return vec[0] if vec else Fraction(0)
        return Cyclo(order, tuple(vec))

    def lift(self, order: int) -> "Cyclo":
        if order == self.order:
            return self
        assert order % self.order == 0
        step = order // self.order
        lst = [Fraction(0)] * (self.order * step)
        for k, c in enumerate(self.vec):
            lst[k * step] = c
        return Cyclo(order, tuple(_reduce_mod_cyclo(order, lst)))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.order == self.order:
                return self, other
            m = math.lcm(self.order, other.order)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            o = Cyclo(self.order, tuple([Fraction(other)] + [Fraction(0)] * (len(self.vec) - 1)))
            return self, o
        return self, None

    def __add__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        return Cyclo.make(a.order, [x + y for x, y in zip(a.vec, b.vec)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, tuple(-c for c in self.vec))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclo) else -Fraction(other) if isinstance(other, int) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return Cyclo(self.order, tuple(c * other for c in self.vec))
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        prod = [Fraction(0)] * (2 * len(a.vec))
        for i, ci in enumerate(a.vec):
            if ci:
                for j, cj in enumerate(b.vec):
                    if cj:
                        prod[i + j] += ci * cj
        return Cyclo.make(a.order, prod)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo | Fraction":
        """Field inverse via the extended Euclidean algorithm mod Phi_N."""

        def trim(p):
            while p and p[-1] == 0:
                p.pop()
            return p

        def polydivmod(a, b):
            a = list(a)
            db = len(b) - 1
            lead = b[db]
            q = [Fraction(0)] * max(1, len(a) - db)
            for i in range(len(a) - 1, db - 1, -1):
                if a[i]:
                    f = a[i] / lead
                    q[i - db] = f
                    for j in range(db + 1):
                        a[i - db + j] -= f * b[j]
            return trim(q), trim(a)

        def polymul(a, b):
            out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return trim(out)

        def polysub(a, b):
            out = [Fraction(0)] * max(len(a), len(b))
            for i, c in enumerate(a):
                out[i] += c
            for i, c in enumerate(b):
                out[i] -= c
            return trim(out)

        phi = [Fraction(c) for c in cyclotomic_poly(self.order)]
        r0, r1 = phi, trim(list(self.vec))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, polysub(s0, polymul(q, s1))
        if len(r0) != 1:
            raise ZeroDivisionError("element is zero modulo the cyclotomic relation")
        g = r0[0]
        return Cyclo.make(self.order, [c / g for c in s0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, Cyclo):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        inv = self.inverse()
        return inv * other if isinstance(inv, Cyclo) else other * inv

    def __pow__(self, k: int):
        if k < 0:
            base = self.inverse()
            k = -k
        else:
            base = self
        out = Fraction(1)
        while k:
            if k & 1:
                out = out * base if isinstance(out, Cyclo) else base * out
            base = base * base
            k >>= 1
        return out

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return False  # demotion invariant: a Cyclo is never rational
        if isinstance(other, Cyclo):
            a, b = self._coerce(other)
            return a.vec == b.vec
        return NotImplemented

    def __bool__(self):
        return any(self.vec)

    __hash__ = None  # not hashable: equal values may carry different orders

    def __repr__(self):
        return f"Cyclo({self.order}, {self.vec!r})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.vec):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"zeta{self.order}^{k}")
            elif c == -1:
                parts.append(f"-zeta{self.order}^{k}")
            else:
                parts.append(f"{c}*zeta{self.order}^{k}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def root_of_unity(order: int, j: int):
    """zeta_order^j in canonical form (a Fraction when it is rational).

    >>> root_of_unity(2, 1)
    Fraction(-1, 1)
    """
    if order < 1:
        raise ValueError("root order must be positive")
    return Cyclo.make(order, {j % order: Fraction(1)})


def cyclo_root(angle: Fraction):
    """The root of unity e^(2 pi i angle) for a rational angle."""
    angle = Fraction(angle) % 1
    return root_of_unity(angle.denominator, angle.numerator)


def scalar_inv(c):
    """Multiplicative inverse of a Fraction or Cyclo scalar."""
    if isinstance(c, Cyclo):
        return c.inverse()
    return Fraction(1) / Fraction(c)


def scalar_pow(c, k: int):
    if isinstance(c, Cyclo):
        return c ** k
    return Fraction(c) ** k


def scalar_str(c) -> str:
    """Render a scalar; cyclotomic combinations get wrapped in parens."""
    if isinstance(c, Cyclo):
        s = str(c)
        return f"({s})" if (" + " in s or " - " in s) else s
    return str(c)
