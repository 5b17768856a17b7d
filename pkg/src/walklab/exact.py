"""Exact algebra kernels: dense rational polynomials, quadratic surds,
characteristic polynomials, cyclotomic machinery, and spectra.

Everything in this module is exact.  No floating point enters any
computation; integrality, divisibility and sign decisions are made over
Z and Q only.  Matrices are plain lists of rows with int or Fraction
entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

Matrix = Sequence[Sequence[int | Fraction]]


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial over Q, constant term first.

    Poly([1, 0, 1]) is 1 + x^2.  Coefficients are stored as Fractions and
    trailing zeros are trimmed, so degree() is the index of the last
    nonzero coefficient (-1 for the zero polynomial).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int | Fraction]) -> None:
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> Poly:
        return cls(())

    @classmethod
    def one(cls) -> Poly:
        return cls((1,))

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def monomial(cls, coeff: int | Fraction, power: int) -> Poly:
        return cls([0] * power + [coeff])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other: Poly | int | Fraction) -> Poly:
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other: Poly | int | Fraction) -> Poly:
        return self + (-other if isinstance(other, Poly) else Poly((-Fraction(other),)))

    def __rsub__(self, other: int | Fraction) -> Poly:
        return Poly((other,)) - self

    def __mul__(self, other: Poly | int | Fraction) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        rem = list(self.coeffs)
        d = other.degree()
        lead = other.coeffs[-1]
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            t = rem[i] / lead
            q[i - d] = t
            rem[i] = Fraction(0)
            for j in range(d):
                rem[i - d + j] -= t * other.coeffs[j]
        return Poly(q), Poly(rem)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError(f"{self} is not divisible by {other}")
        return q

    def divides(self, other: Poly) -> bool:
        return divmod(other, self)[1].is_zero()

    def __call__(self, x):
        """Horner evaluation; works for any value supporting + and *."""
        if not self.coeffs:
            return 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        acc = self.coeffs[-1] * (x ** 0) if not isinstance(x, (int, Fraction)) else self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def scale_arg(self, c: int | Fraction) -> Poly:
        """Return p(c*x)."""
        out, pw = [], Fraction(1)
        for a in self.coeffs:
            out.append(a * pw)
            pw *= c
        return Poly(out)

    def shift_up(self, k: int) -> Poly:
        """Return x^k * p."""
        if self.is_zero():
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if c < 0:
                sign = " - " if parts else "-"
            else:
                sign = " + " if parts else ""
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                xpart = "x" if i == 1 else f"x^{i}"
                body = xpart if mag == 1 else f"{mag}*{xpart}"
            parts.append(f"{sign}{body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


# ---------------------------------------------------------------------------
# integer helpers


def squarefree_part(d: int) -> tuple[int, int]:
    """Decompose d = s^2 * m with m square-free, by trial division.

    Returns (m, s).  Requires d >= 1.
    """
    if d < 1:
        raise ValueError("squarefree_part requires a positive integer")
    m, s = 1, 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    m *= d
    return m, s


def _iroot_ceil(x: int, k: int) -> int:
    """Smallest r >= 0 with r^k >= x (x >= 0); pure integer arithmetic."""
    if x <= 0:
        return 0
    if k == 1:
        return x
    r = 1 << ((x.bit_length() + k - 1) // k)  # r^k >= x by construction
    while r > 0 and r ** k >= x:
        r -= 1
    while r ** k < x:
        r += 1
    return r


def _root_bound(p: Poly) -> int:
    """Integer Fujiwara-style bound: every complex root z of monic p has
    |z| <= 2 * max_i |a_{n-i}|^(1/i)."""
    n = p.degree()
    if n <= 0:
        return 0
    bound = 0
    for i in range(1, n + 1):
        a = p.coeffs[n - i]
        if a == 0:
            continue
        num = _iroot_ceil(abs(a.numerator), i)
        bound = max(bound, num)
    return 2 * bound + 1


def totients_upto(limit: int) -> np.ndarray:
    """Euler phi for 0..limit as an exact integer sieve."""
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if phi[p] == p:  # p prime
            phi[p::p] -= phi[p::p] // p
    return phi


@lru_cache(maxsize=None)
def _totient(d: int) -> int:
    m, result = d, d
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


# ---------------------------------------------------------------------------
# cyclotomic polynomials and minimal polynomials of 2cos(2pi/d)


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> Poly:
    """d-th cyclotomic polynomial, by exact division of x^d - 1."""
    if d < 1:
        raise ValueError("cyclotomic index must be >= 1")
    p = Poly([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            p = p.exact_div(cyclotomic(e))
    return p


@lru_cache(maxsize=None)
def min_poly_2cos(d: int) -> Poly:
    """Monic integer polynomial whose roots are 2cos(2*pi*j/d), gcd(j,d)=1.

    For d >= 3 it has degree phi(d)/2 and is obtained from the d-th
    cyclotomic polynomial via the substitution pairing x <-> z + 1/z:
    the cyclotomic polynomial is palindromic, so Phi_d(z)/z^(phi/2) is an
    integer combination of the Vieta-Lucas basis z^j + z^(-j).
    """
    if d < 1:
        raise ValueError("index must be >= 1")
    if d == 1:
        return Poly([-2, 1])
    if d == 2:
        return Poly([2, 1])
    phi = cyclotomic(d)
    half = phi.degree() // 2
    # basis polynomials v_j(x) = z^j + z^-j restated in x = z + 1/z
    v: list[Poly] = [Poly([2]), Poly.x()]
    while len(v) <= half:
        v.append(Poly.x() * v[-1] - v[-2])
    out = Poly([phi.coeffs[half]])
    for j in range(1, half + 1):
        out = out + phi.coeffs[half + j] * v[j]
    return out


# ---------------------------------------------------------------------------
# quadratic surds


def _sign_of_surd(a: Fraction, b: Fraction, m: int) -> int:
    """Exact sign of a + b*sqrt(m) (m > 1 square-free)."""
    if b == 0:
        return -1 if a < 0 else (1 if a > 0 else 0)
    if a == 0:
        return 1 if b > 0 else -1
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 with b^2 * m
    lhs, rhs = a * a, b * b * m
    if a > 0:  # b < 0
        return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
    return 1 if lhs < rhs else (-1 if lhs > rhs else 0)


class QuadraticNumber:
    """Exact real number a + b*sqrt(m) with a, b rational and m > 1
    square-free; b == 0 iff the value is rational (then m is None).

    Arithmetic stays inside one quadratic field: combining two irrational
    values with different radicands raises ValueError.
    """

    __slots__ = ("a", "b", "m")

    def __init__(self, a: int | Fraction, b: int | Fraction = 0, m: int | None = None):
        a, b = Fraction(a), Fraction(b)
        if b != 0:
            if m is None or m < 1:
                raise ValueError("irrational part requires a positive radicand")
            m0, s = squarefree_part(m)
            b *= s
            if m0 == 1:
                a += b
                b = Fraction(0)
                m = None
            else:
                m = m0
        if b == 0:
            m = None
        self.a, self.b, self.m = a, b, m

    @classmethod
    def sqrt(cls, radicand: int, coeff: int | Fraction = 1) -> QuadraticNumber:
        """coeff * sqrt(radicand) for radicand >= 0."""
        if radicand < 0:
            raise ValueError("negative radicand")
        if radicand == 0:
            return cls(0)
        return cls(0, coeff, radicand)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.m)

    def _coerced(self, other) -> QuadraticNumber | None:
        if isinstance(other, QuadraticNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other)
        return None

    def __add__(self, other) -> QuadraticNumber:
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if self.b != 0 and o.b != 0 and self.m != o.m:
            raise ValueError("cannot mix different radicands")
        m = self.m if self.b != 0 else o.m
        return QuadraticNumber(self.a + o.a, self.b + o.b, m)

    __radd__ = __add__

    def __neg__(self) -> QuadraticNumber:
        return QuadraticNumber(-self.a, -self.b, self.m)

    def __sub__(self, other) -> QuadraticNumber:
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> QuadraticNumber:
        return (-self) + other

    def __mul__(self, other) -> QuadraticNumber:
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if self.b != 0 and o.b != 0:
            if self.m != o.m:
                raise ValueError("cannot mix different radicands")
            return QuadraticNumber(
                self.a * o.a + self.b * o.b * self.m,
                self.a * o.b + self.b * o.a,
                self.m,
            )
        m = self.m if self.b != 0 else o.m
        return QuadraticNumber(self.a * o.a, self.a * o.b + self.b * o.a, m)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QuadraticNumber:
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if o.a == 0 and o.b == 0:
            raise ZeroDivisionError
        if o.b == 0:
            return QuadraticNumber(self.a / o.a, self.b / o.a, self.m)
        norm = o.a * o.a - o.b * o.b * o.m
        return (self * o.conjugate()) / QuadraticNumber(norm)

    def __rtruediv__(self, other) -> QuadraticNumber:
        o = self._coerced(other)
        return o / self

    def __pow__(self, e: int) -> QuadraticNumber:
        if e < 0:
            return QuadraticNumber(1) / self ** (-e)
        result = QuadraticNumber(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def sign(self) -> int:
        return _sign_of_surd(self.a, self.b, self.m or 2)

    def _cmp(self, other) -> int:
        """Exact three-way comparison, also across different radicands:
        a1 + b1 sqrt(m1) vs a2 + b2 sqrt(m2) reduces to comparing
        g = (a1 - a2) + b1 sqrt(m1) with the pure surd b2 sqrt(m2), and
        same-signed values compare by their squares inside Q(sqrt(m1))."""
        o = self._coerced(other)
        if o is None:
            raise TypeError(f"cannot compare with {other!r}")
        if self.b == 0 or o.b == 0 or self.m == o.m:
            return (self - o).sign()
        g = QuadraticNumber(self.a - o.a, self.b, self.m)
        sg = g.sign()
        sh = 1 if o.b > 0 else -1
        if sg != sh:
            return 1 if sg > sh else -1
        gsq = g * g
        diff = gsq - QuadraticNumber(o.b * o.b * o.m)
        return diff.sign() if sg > 0 else -diff.sign()

    def __eq__(self, other) -> bool:
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.m == o.m

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.m))

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __abs__(self) -> QuadraticNumber:
        return -self if self.sign() < 0 else self

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.b == 1:
            surd = f"√{self.m}"
        elif self.b == -1:
            surd = f"-√{self.m}"
        else:
            surd = f"{self.b}√{self.m}"
        if self.a == 0:
            return surd
        joiner = "+" if self.b > 0 else ""
        return f"{self.a}{joiner}{surd}"

    def __repr__(self) -> str:
        return f"QuadraticNumber({self})"


def is_quadratic_algebraic_integer(x: QuadraticNumber) -> bool:
    """Exact membership of x in the ring of algebraic integers.

    Rational values are algebraic integers iff they are plain integers.
    For x = a + b*sqrt(m) with b != 0 the integral basis of the quadratic
    field decides: integer a, b when m = 2, 3 (mod 4); when m = 1 (mod 4)
    the basis element is (1 + sqrt(m))/2, so 2b and a - b must be integers.
    """
    if x.is_rational:
        return x.a.denominator == 1
    assert x.m is not None
    if x.m % 4 in (2, 3):
        return x.a.denominator == 1 and x.b.denominator == 1
    twob = 2 * x.b
    return twob.denominator == 1 and (x.a - x.b).denominator == 1


# ---------------------------------------------------------------------------
# spectra


@dataclass(frozen=True)
class Spectrum:
    """Multiset of exact eigenvalues, stored as distinct values with
    positive multiplicities, sorted in descending order."""

    entries: tuple[tuple[QuadraticNumber, int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[QuadraticNumber, int]]) -> Spectrum:
        merged: dict[QuadraticNumber, int] = {}
        for value, mult in pairs:
            if mult <= 0:
                raise ValueError("multiplicities must be positive")
            if not isinstance(value, QuadraticNumber):
                value = QuadraticNumber(value)
            merged[value] = merged.get(value, 0) + mult
        ordered = sorted(merged.items(), key=lambda e: e[0], reverse=True)
        return cls(tuple(ordered))

    def dimension(self) -> int:
        return sum(mult for _, mult in self.entries)

    def distinct_count(self) -> int:
        return len(self.entries)

    def values(self) -> Iterator[QuadraticNumber]:
        for value, _ in self.entries:
            yield value

    def multiplicity(self, value: QuadraticNumber | int | Fraction) -> int:
        if not isinstance(value, QuadraticNumber):
            value = QuadraticNumber(value)
        for v, mult in self.entries:
            if v == value:
                return mult
        return 0

    def is_symmetric(self) -> bool:
        """True iff the multiset equals its negation."""
        return all(self.multiplicity(-v) == m for v, m in self.entries)

    def negated(self) -> Spectrum:
        return Spectrum.from_pairs((-v, m) for v, m in self.entries)

    def union(self, other: Spectrum) -> Spectrum:
        return Spectrum.from_pairs(tuple(self.entries) + tuple(other.entries))

    def scaled(self, factor: int | Fraction) -> Spectrum:
        if factor == 0:
            raise ValueError("zero scaling collapses the spectrum")
        return Spectrum.from_pairs((v * factor, m) for v, m in self.entries)

    def power_sum(self, r: int) -> Fraction:
        """Exact sum of the r-th powers of all eigenvalues (a rational
        number: conjugate surd pairs cancel for spectra of rational
        matrices).  Surd contributions are tracked per radicand."""
        rational = Fraction(0)
        surd: dict[int, Fraction] = {}
        for value, mult in self.entries:
            term = value ** r
            rational += term.a * mult
            if term.b:
                assert term.m is not None
                surd[term.m] = surd.get(term.m, Fraction(0)) + term.b * mult
        if any(coeff != 0 for coeff in surd.values()):
            raise ValueError("power sum is irrational")
        return rational

    def charpoly(self) -> Poly:
        """Product of (x - value)^mult; exact, rational coefficients."""
        out = Poly.one()
        seen: set[QuadraticNumber] = set()
        for value, mult in self.entries:
            if value in seen:
                continue
            if value.is_rational:
                out = out * Poly([-value.a, 1]) ** mult
            else:
                conj = value.conjugate()
                cm = self.multiplicity(conj)
                if cm != mult:
                    raise ValueError("conjugate multiplicities differ")
                quad = Poly([value.a * value.a - value.b * value.b * value.m,
                             -2 * value.a, 1])
                out = out * quad ** mult
                seen.add(conj)
            seen.add(value)
        return out

    def render(self) -> str:
        """Canonical text form, e.g. "{[±4]^1, [±2√2]^2, [0]^10}" for
        symmetric spectra and a plain descending list otherwise."""
        if self.is_symmetric():
            parts = []
            for value, mult in self.entries:
                s = value.sign()
                if s > 0:
                    parts.append(f"[±{value}]^{mult}")
                elif s == 0:
                    parts.append(f"[0]^{mult}")
            return "{" + ", ".join(parts) + "}"
        return "{" + ", ".join(f"[{v}]^{m}" for v, m in self.entries) + "}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Unresolved:
    """Partial spectrum extraction: what was resolved, plus the monic
    residual factor that resisted linear/quadratic splitting."""

    partial: tuple[tuple[QuadraticNumber, int], ...]
    residual: Poly


def extract_spectrum(p: Poly) -> Spectrum | Unresolved:
    """Resolve the roots of a monic integer polynomial into exact
    rational and quadratic-surd form.

    Strips all rational roots (integers, by the rational root theorem),
    then all monic integer quadratic factors with positive non-square
    discriminant, emitting conjugate surd pairs.  Anything left over
    (degree >= 1) is returned as an Unresolved residual.
    """
    if not p.is_monic():
        raise ValueError("spectrum extraction requires a monic polynomial")
    if not p.is_integral():
        raise ValueError("spectrum extraction requires integer coefficients")
    pairs: list[tuple[QuadraticNumber, int]] = []
    residual = p

    # multiplicity of the root 0
    nz = 0
    while nz <= residual.degree() and residual.coeffs[nz] == 0:
        nz += 1
    if nz:
        pairs.append((QuadraticNumber(0), nz))
        residual = Poly(residual.coeffs[nz:])

    # integer roots: divisors of the constant term within the root bound
    if residual.degree() >= 1:
        bound = _root_bound(residual)
        a0 = abs(int(residual.coeffs[0]))
        for d in range(1, min(bound, a0) + 1):
            if a0 % d:
                continue
            for root in (d, -d):
                mult = 0
                factor = Poly([-root, 1])
                while residual.degree() >= 1 and residual(root) == 0:
                    residual = residual.exact_div(factor)
                    mult += 1
                if mult:
                    pairs.append((QuadraticNumber(root), mult))
            if residual.degree() < 1:
                break
            a0 = abs(int(residual.coeffs[0]))

    # quadratic factors x^2 + b*x + c with real irrational roots
    if residual.degree() >= 2:
        bound = _root_bound(residual)
        c_cap = bound * bound
        stuck: list[tuple[Poly, int]] = []
        changed = True
        while changed and residual.degree() >= 2:
            changed = False
            a0 = abs(int(residual.coeffs[0]))
            for c_abs in range(1, min(c_cap, a0) + 1):
                if a0 % c_abs:
                    continue
                for c in (c_abs, -c_abs):
                    for b in range(-2 * bound, 2 * bound + 1):
                        factor = Poly([c, b, 1])
                        if not factor.divides(residual):
                            continue
                        disc = b * b - 4 * c
                        mult = 0
                        while factor.divides(residual):
                            residual = residual.exact_div(factor)
                            mult += 1
                        if disc > 0:
                            m, s = squarefree_part(disc)
                            lo = QuadraticNumber(Fraction(-b, 2), Fraction(-s, 2), m)
                            hi = QuadraticNumber(Fraction(-b, 2), Fraction(s, 2), m)
                            pairs.append((hi, mult))
                            pairs.append((lo, mult))
                        else:
                            # complex pair: keep the factor aside, unresolved
                            stuck.append((factor, mult))
                        changed = True
                if residual.degree() < 2:
                    break
        for factor, mult in stuck:
            residual = residual * factor ** mult

    if residual.degree() >= 1:
        return Unresolved(tuple(pairs), residual)
    return Spectrum.from_pairs(pairs)


# ---------------------------------------------------------------------------
# cyclotomic sieve


@dataclass(frozen=True)
class SieveResult:
    """Outcome of dividing out all cyclotomic factors: multiset of orders
    (d -> multiplicity) and the monic residual (1 when fully sieved)."""

    orders: tuple[tuple[int, int], ...]
    residual: Poly

    @property
    def full(self) -> bool:
        return self.residual.degree() <= 0

    def order_lcm(self) -> int:
        out = 1
        for d, _ in self.orders:
            out = math.lcm(out, d)
        return out

    def orders_dict(self) -> dict[int, int]:
        return dict(self.orders)


def cyclotomic_sieve(p: Poly) -> SieveResult:
    """Divide out every cyclotomic factor of a monic rational polynomial.

    Any cyclotomic factor Phi_d of the residual satisfies phi(d) <=
    deg(residual), and phi(d) >= sqrt(d/2) gives d <= 2*deg^2, so scanning
    d upward against the shrinking residual is complete.
    """
    if not p.is_monic():
        raise ValueError("sieve requires a monic polynomial")
    orders: dict[int, int] = {}
    residual = p
    phis: np.ndarray | None = None
    d = 1
    while residual.degree() > 0 and d <= 2 * residual.degree() ** 2:
        # once the scan runs long, sieve all totients at once; the bound
        # only shrinks afterwards, so the array covers every later d
        if phis is None and d > 1024:
            phis = totients_upto(2 * residual.degree() ** 2)
        phi_d = int(phis[d]) if phis is not None else _totient(d)
        if phi_d <= residual.degree():
            cyc = cyclotomic(d)
            while cyc.divides(residual):
                residual = residual.exact_div(cyc)
                orders[d] = orders.get(d, 0) + 1
        d += 1
    return SieveResult(tuple(sorted(orders.items())), residual)


def order_of_cos_pair(two_cos: QuadraticNumber, d_max: int = 1000) -> int | None:
    """Smallest d such that two_cos equals 2cos(2*pi*j/d) for some j
    coprime to d, found by exact evaluation of the minimal polynomials."""
    for d in range(1, d_max + 1):
        mp = min_poly_2cos(d)
        value = mp(two_cos)
        if isinstance(value, QuadraticNumber):
            if value == QuadraticNumber(0):
                return d
        elif value == 0:
            return d
    return None


# ---------------------------------------------------------------------------
# exact linear algebra


def mat_identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


_INT64_SAFE = 2 ** 62


def int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    """Exact integer matrix product; uses native int64 when the result
    provably fits, otherwise exact Python-int (object dtype) arithmetic."""
    n = len(a)
    inner = len(b)
    amax = max((abs(x) for row in a for x in row), default=0)
    bmax = max((abs(x) for row in b for x in row), default=0)
    if amax and bmax and amax * bmax * inner < _INT64_SAFE:
        prod = np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64)
        return prod.tolist()
    prod = np.array(a, dtype=object) @ np.array(b, dtype=object)
    return prod.tolist()


def int_mat_power(a: Sequence[Sequence[int]], e: int) -> list[list[int]]:
    """Exact a^e by binary powering."""
    n = len(a)
    result = mat_identity(n)
    base = [list(r) for r in a]
    while e:
        if e & 1:
            result = int_matmul(result, base)
        e >>= 1
        if e:
            base = int_matmul(base, base)
    return result


def _clear_denominators(mat: Matrix) -> tuple[list[list[int]], int]:
    """Return (c * mat as integer matrix, c) with c the global lcm of
    entry denominators."""
    c = 1
    for row in mat:
        for x in row:
            if isinstance(x, Fraction):
                c = math.lcm(c, x.denominator)
    out = [[int(x * c) for x in row] for row in mat]
    return out, c


def rank(mat: Matrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination on the
    denominator-cleared integer matrix."""
    if not mat:
        return 0
    m, _ = _clear_denominators(mat)
    rows, cols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


def kernel_dim(mat: Matrix) -> int:
    """dim Ker(mat) = n - rank(mat) for a square matrix."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("kernel_dim requires a square matrix")
    return n - rank(mat)


def eval_poly_at_matrix(p: Poly, a: Matrix) -> list[list[Fraction]]:
    """Exact Horner evaluation p(a)."""
    n = len(a)
    af = [[Fraction(x) for x in row] for row in a]
    if p.is_zero():
        return [[Fraction(0)] * n for _ in range(n)]
    acc = [[p.coeffs[-1] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for c in reversed(p.coeffs[:-1]):
        acc = mat_mul(acc, af)
        for i in range(n):
            acc[i][i] += c
    return acc


# ---------------------------------------------------------------------------
# characteristic polynomials


def _hessenberg_charpoly(mat: Matrix) -> Poly:
    """Exact charpoly via similarity reduction to Hessenberg form over Q,
    then the standard principal-minor recurrence."""
    n = len(mat)
    if n == 0:
        return Poly.one()
    h = [[Fraction(x) for x in row] for row in mat]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j] != 0), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for r in range(n):
                h[r][piv], h[r][j + 1] = h[r][j + 1], h[r][piv]
        d = h[j + 1][j]
        for i in range(j + 2, n):
            if h[i][j] == 0:
                continue
            t = h[i][j] / d
            hi, hp = h[i], h[j + 1]
            for c in range(j, n):
                if hp[c]:
                    hi[c] -= t * hp[c]
            for r in range(n):
                if h[r][i]:
                    h[r][j + 1] += t * h[r][i]
    # p_m(x) over leading principal minors of the Hessenberg form
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [Fraction(0)] * (m + 1)
        hmm = h[m - 1][m - 1]
        for i, c in enumerate(prev):
            cur[i + 1] += c
            if hmm:
                cur[i] -= hmm * c
        prod = Fraction(1)
        for idx in range(m - 2, -1, -1):
            prod *= h[idx + 1][idx]
            if prod == 0:
                break
            coeff = h[idx][m - 1] * prod
            if coeff:
                for i, c in enumerate(polys[idx]):
                    if c:
                        cur[i] -= coeff * c
        polys.append(cur)
    return Poly(polys[n])


def _primes_below(limit: int) -> Iterator[int]:
    """Primes < limit in descending order, deterministically."""
    candidate = limit - 1 if limit % 2 == 0 else limit - 2
    while candidate > 2:
        p = candidate
        is_p = True
        d = 3
        while d * d <= p:
            if p % d == 0:
                is_p = False
                break
            d += 2
        if is_p:
            yield p
        candidate -= 2
    yield 2


def _charpoly_mod(mat: np.ndarray, p: int) -> np.ndarray:
    """Charpoly coefficients mod p, via Hessenberg reduction mod p with
    vectorized row/column updates."""
    n = mat.shape[0]
    h = np.mod(mat, p).astype(np.int64)
    for j in range(n - 2):
        col = h[j + 1:, j]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = j + 1 + int(nz[0])
        if piv != j + 1:
            h[[piv, j + 1], :] = h[[j + 1, piv], :]
            h[:, [piv, j + 1]] = h[:, [j + 1, piv]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        t = (h[j + 2:, j] * inv) % p
        h[j + 2:, j:] = (h[j + 2:, j:] - t[:, None] * h[j + 1, j:][None, :]) % p
        h[:, j + 1] = (h[:, j + 1] + h[:, j + 2:] @ t) % p
    polys: list[np.ndarray] = [np.array([1], dtype=np.int64)]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[1:m + 1] = prev
        cur[:m] = (cur[:m] - int(h[m - 1, m - 1]) * prev) % p
        prod = 1
        for idx in range(m - 2, -1, -1):
            prod = (prod * int(h[idx + 1, idx])) % p
            if prod == 0:
                break
            coeff = (int(h[idx][m - 1]) * prod) % p
            if coeff:
                cur[:idx + 1] = (cur[:idx + 1] - coeff * polys[idx]) % p
        polys.append(np.mod(cur, p))
    return polys[n]


def _charpoly_modular_int(m: list[list[int]]) -> Poly:
    """Exact charpoly of an integer matrix by CRT over word-size primes.

    The coefficient bound uses |lambda| <= max absolute row sum, which
    holds for every eigenvalue, so |c_{n-i}| <= C(n,i) * bound^i.
    """
    n = len(m)
    row_bound = max((sum(abs(x) for x in row) for row in m), default=0)
    row_bound = max(row_bound, 1)
    coeff_bound = max(math.comb(n, i) * row_bound ** i for i in range(n + 1))
    # primes small enough that dot products of residues fit in int64
    pmax = math.isqrt(_INT64_SAFE // max(n, 1))
    primes: list[int] = []
    modulus = 1
    for p in _primes_below(pmax):
        primes.append(p)
        modulus *= p
        if modulus > 2 * coeff_bound + 1:
            break
    residues = [_charpoly_mod(np.array([[int(x) % p for x in row] for row in m],
                                       dtype=np.int64), p)
                for p in primes]
    coeffs: list[int] = []
    for i in range(n + 1):
        x = 0
        for p, res in zip(primes, residues):
            mi = modulus // p
            x += int(res[i]) * mi * pow(mi % p, p - 2, p)
        x %= modulus
        if x > modulus // 2:
            x -= modulus
        coeffs.append(x)
    return Poly(coeffs)


_MODULAR_THRESHOLD = 24


def charpoly(mat: Matrix) -> Poly:
    """Exact monic characteristic polynomial det(xI - mat).

    Rational Hessenberg reduction by default; large integer matrices go
    through an exact CRT-modular path with a rigorous coefficient bound.
    Integer input yields integer coefficients.
    """
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("charpoly requires a square matrix")
    ints, c = _clear_denominators(mat)
    if n > _MODULAR_THRESHOLD:
        p = _charpoly_modular_int(ints)
    else:
        p = _hessenberg_charpoly(ints)
        if not p.is_integral():  # integer input must give integer output
            raise AssertionError("charpoly of integer matrix not integral")
    if c == 1:
        return p
    # det(xI - M/c) = c^-n * det(cx I - M)
    return p.scale_arg(c) * Fraction(1, c ** n)


def bareiss_det(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix, fraction-free."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def charpoly_bareiss(mat: Sequence[Sequence[int]]) -> Poly:
    """Independent charpoly route for integer matrices: evaluate
    det(xI - mat) at n+1 integer points with Bareiss determinants and
    interpolate exactly (Newton divided differences over Q)."""
    n = len(mat)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        shifted = [[(x if i == j else 0) - mat[i][j] for j in range(n)] for i in range(n)]
        ys.append(bareiss_det(shifted))
    # Newton coefficients
    coeffs = [Fraction(y) for y in ys]
    for level in range(1, n + 1):
        for i in range(n, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level])
    poly = Poly.zero()
    basis = Poly.one()
    for i in range(n + 1):
        poly = poly + coeffs[i] * basis
        basis = basis * Poly([-xs[i], 1])
    return poly
