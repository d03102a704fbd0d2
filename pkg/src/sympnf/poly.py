"""Dense univariate polynomials over any supported field, with exact
division, extended gcd, squarefree decomposition and factorization.

Over finite fields the factorization is complete (squarefree split,
distinct-degree split, then the odd-characteristic randomized equal-degree
split with a caller-supplied seed).  Over the rationals only rational roots
are extracted; remaining nonlinear factors come back in the ``unresolved``
slot of the Factorization rather than as an error.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import (
    DivisionByZeroError,
    MixedFieldsError,
    NotCoprimeError,
)
from .fields import pth_root

__all__ = [
    "Poly",
    "Factorization",
    "poly_gcd",
    "poly_xgcd",
    "multi_bezout",
    "squarefree_decomposition",
    "is_irreducible",
    "factor",
]


class Poly:
    """Dense polynomial; coefficients low-to-high, trailing zeros trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    # -- constructors

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(i) for i in ints])

    # -- structure

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            raise DivisionByZeroError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else self.field.zero

    def _check(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise MixedFieldsError("polynomials over different fields")
            return other
        raise MixedFieldsError(f"cannot combine Poly with {type(other).__name__}")

    # -- arithmetic

    def __add__(self, other):
        o = self._check(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.field, [self[i] + o[i] for i in range(n)])

    def __sub__(self, other):
        o = self._check(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.field, [self[i] - o[i] for i in range(n)])

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.field, [c * other for c in self.coeffs])
        o = self._check(other)
        if self.is_zero() or o.is_zero():
            return Poly.zero(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly.one(self.field)
        a = self
        while e:
            if e & 1:
                result = result * a
            a = a * a
            e >>= 1
        return result

    def divmod(self, other) -> tuple["Poly", "Poly"]:
        """Euclidean division: self = q * other + r with deg r < deg other."""
        o = self._check(other)
        if o.is_zero():
            raise DivisionByZeroError("polynomial division by zero")
        rem = list(self.coeffs)
        db = o.degree
        q = [self.field.zero] * max(0, len(rem) - db)
        inv_lc = self.field.one / o.lc()
        for i in range(len(rem) - db - 1, -1, -1):
            c = rem[i + db] * inv_lc
            if c:
                q[i] = c
                for j, bj in enumerate(o.coeffs):
                    rem[i + j] = rem[i + j] - c * bj
        return Poly(self.field, q), Poly(self.field, rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.field.one / self.lc()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly(
            self.field,
            [self.coeffs[i] * self.field.from_int(i) for i in range(1, len(self.coeffs))],
        )

    def evaluate(self, x):
        """Horner evaluation at a scalar."""
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def pow_mod(self, e: int, m: "Poly") -> "Poly":
        result = Poly.one(self.field)
        a = self % m
        while e:
            if e & 1:
                result = (result * a) % m
            a = (a * a) % m
            e >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k."""
        if self.is_zero():
            return self
        return Poly(self.field, (self.field.zero,) * k + self.coeffs)

    def sort_key(self):
        return (self.degree, tuple(self.field.sort_key(c) for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((len(self.coeffs), self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = [f"{c!r}*t^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Poly(" + " + ".join(terms) + ")"


# --- gcds ------------------------------------------------------------------


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(a, 0) = monic(a)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Returns (g, s, u) with g monic and s*a + u*b = g."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(field), Poly.zero(field)
    t0, t1 = Poly.zero(field), Poly.one(field)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = Poly.constant(field, field.one / r0.lc())
    return r0.monic(), s0 * inv, t0 * inv


def multi_bezout(rs: list[Poly]) -> list[Poly]:
    """Cofactors Q_i with sum(Q_i * R_i) = 1, by folding xgcd left to right.

    Raises NotCoprimeError when gcd(R_1, ..., R_k) != 1.
    """
    if not rs:
        raise NotCoprimeError("empty polynomial list")
    field = rs[0].field
    one = Poly.one(field)
    g = rs[0]
    coeffs = [one]
    for r in rs[1:]:
        g2, s, u = poly_xgcd(g, r)
        coeffs = [c * s for c in coeffs]
        coeffs.append(u)
        g = g2
    if g != one:
        raise NotCoprimeError("polynomials are not coprime")
    acc = Poly.zero(field)
    for q, r in zip(coeffs, rs):
        acc = acc + q * r
    if acc != one:  # exact identity is part of the contract
        raise NotCoprimeError("Bezout identity failed to close")
    return coeffs


# --- squarefree decomposition ----------------------------------------------


def _poly_pth_root(f: Poly) -> Poly:
    """For f = h(t)^p in characteristic p, return h (perfect base field)."""
    p = f.field.char
    if f.field.kind == "prime":
        # Frobenius is the identity on F_p
        return Poly(f.field, [f[i * p] for i in range(f.degree // p + 1)])
    return Poly(f.field, [pth_root(f[i * p]) for i in range(f.degree // p + 1)])


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree parts with multiplicities: f = lc * prod g_j^j.

    In characteristic p the vanishing-derivative branch extracts p-th roots
    of coefficients and recurses with multiplicities scaled by p.
    """
    if f.is_zero():
        raise DivisionByZeroError("cannot decompose the zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    p = f.field.char
    df = f.derivative()
    if df.is_zero():
        # f = h(t)^p
        return [(g, m * p) for g, m in squarefree_decomposition(_poly_pth_root(f))]
    out = []
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        # remaining part has all multiplicities divisible by p
        for g, m in squarefree_decomposition(_poly_pth_root(c)):
            out.append((g, m * p))
    out.sort(key=lambda gm: (gm[1], gm[0].sort_key()))
    return out


# --- factorization over finite fields --------------------------------------


def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test over a finite field."""
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    q = f.field.order
    x = Poly.x(f.field)
    for r in sorted({p for p in _prime_factors(n)}):
        h = x.pow_mod(q ** (n // r), f)
        if poly_gcd(h - x, f).degree != 0:
            return False
    h = x.pow_mod(q ** n, f)
    return (h - x) % f == Poly.zero(f.field)


def _prime_factors(n: int):
    d = 2
    while d * d <= n:
        if n % d == 0:
            yield d
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        yield n


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    q = f.field.order
    out = []
    x = Poly.x(f.field)
    h = x
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append((f, f.degree))
            break
        h = h.pow_mod(q, f)
        g = poly_gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus split in odd characteristic; f a product of
    irreducibles all of degree d."""
    if f.degree == d:
        return [f.monic()]
    field = f.field
    q = field.order
    exp = (q ** d - 1) // 2
    while True:
        # the trial element must range over the full field: sub-field-valued
        # polynomials act identically on Frobenius-conjugate factors and
        # would never separate them
        a = Poly(field, [field.random_element(rng) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        g = poly_gcd(a, f)
        if 0 < g.degree < f.degree:
            left, right = g, f // g
        else:
            b = a.pow_mod(exp, f) - Poly.one(field)
            g = poly_gcd(b, f)
            if g.degree == 0 or g.degree == f.degree:
                continue
            left, right = g, f // g
        return _equal_degree(left, d, rng) + _equal_degree(right, d, rng)


# --- rational root extraction ----------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _rational_roots(f: Poly) -> list:
    """All rational roots of a squarefree f over QQ (each simple)."""
    from fractions import Fraction

    field = f.field
    roots = []
    while f.degree > 0 and not f[0]:
        roots.append(Fraction(0))
        f = f // Poly.x(field)
    if f.degree < 1:
        return roots
    # primitive integer form
    denom = math.lcm(*[c.denominator for c in f.coeffs])
    ints = [int(c * denom) for c in f.coeffs]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            if math.gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if f.evaluate(cand) == 0:
                    roots.append(cand)
    return roots


# --- full factorization ----------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factors) * prod(unresolved), all monic, exact."""

    unit: object
    factors: tuple[tuple[Poly, int], ...]
    unresolved: tuple[tuple[Poly, int], ...] = ()

    def product(self) -> Poly:
        field = self.factors[0][0].field if self.factors else self.unresolved[0][0].field
        acc = Poly.constant(field, self.unit)
        for g, m in self.factors + self.unresolved:
            acc = acc * g ** m
        return acc

    def is_complete(self) -> bool:
        return not self.unresolved


def factor(f: Poly, seed: int = 0) -> Factorization:
    """Factor a nonconstant polynomial.

    Finite fields: complete factorization into monic irreducibles.  The
    rationals: squarefree split plus rational-root extraction; leftover
    nonlinear parts are reported as unresolved data.
    """
    if f.degree < 1:
        raise DivisionByZeroError("cannot factor a constant polynomial")
    field = f.field
    unit = f.lc()
    factors: list[tuple[Poly, int]] = []
    unresolved: list[tuple[Poly, int]] = []
    if field.kind == "rational":
        from fractions import Fraction

        for g, m in squarefree_decomposition(f):
            rest = g
            for root in sorted(_rational_roots(g)):
                lin = Poly(field, [-root, Fraction(1)])
                factors.append((lin, m))
                rest = rest // lin
            if rest.degree > 0:
                unresolved.append((rest.monic(), m))
    else:
        rng = random.Random((seed, field.order, tuple(field.sort_key(c) for c in f.coeffs)).__hash__())
        for g, m in squarefree_decomposition(f):
            for part, d in _distinct_degree(g):
                for irr in _equal_degree(part, d, rng):
                    factors.append((irr, m))
    factors.sort(key=lambda fm: fm[0].sort_key())
    unresolved.sort(key=lambda fm: fm[0].sort_key())
    result = Factorization(unit, tuple(factors), tuple(unresolved))
    if result.product() != f:  # re-multiplication check is part of the contract
        raise NotCoprimeError("factorization failed to reproduce its input")
    return result
