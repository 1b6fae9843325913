"""Exact rational scalars and dense univariate polynomials over them.

Rationals are ``fractions.Fraction`` (always in lowest terms, exact equality).
A polynomial in z is stored as a tuple of Fractions indexed by degree; the
zero polynomial has an empty tuple and degree -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MultipleRootError, ZeroPhiError

Rational = Fraction


def rat(value) -> Fraction:
    """Coerce ints, strings like "3/2", or Fractions to an exact rational."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def rat_str(value: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


_ZERO = Fraction(0)
_ONE = Fraction(1)


class Poly:
    """A dense polynomial over the rationals.

    >>> p = Poly([1, 0, -2])   # 1 - 2z^2
    >>> p.degree
    2
    >>> (p * p).degree
    4
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly([1])

    @staticmethod
    def z() -> "Poly":
        return Poly([0, 1])

    @staticmethod
    def monomial(k: int, c=1) -> "Poly":
        return Poly([0] * k + [c])

    @staticmethod
    def constant(c) -> "Poly":
        return Poly([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return Poly()
            out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(out)
        c = rat(other)
        return Poly([c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [_ZERO] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        r = list(self.coeffs)
        d = other.degree
        lead = other.lead
        while len(r) - 1 >= d and any(c != 0 for c in r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            k = len(r) - 1 - d
            t = r[-1] / lead
            q[k] = t
            for i, c in enumerate(other.coeffs):
                r[k + i] -= t * c
            r.pop()
        return Poly(q), Poly(r)

    def __truediv__(self, other):
        if isinstance(other, Poly):
            quo, rem = divmod(self, other)
            if not rem.is_zero():
                raise ValueError("inexact polynomial division")
            return quo
        c = rat(other)
        return Poly([a / c for a in self.coeffs])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self / self.lead

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def compose(self, other: "Poly") -> "Poly":
        """Substitute ``other`` for z (Horner scheme)."""
        result = Poly()
        for c in reversed(self.coeffs):
            result = result * other + Poly.constant(c)
        return result

    def __call__(self, value) -> Fraction:
        acc = _ZERO
        v = rat(value)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __repr__(self):
        if self.is_zero():
            return "Poly('0')"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            mag = abs(c)
            coeff = "" if (mag == 1 and mono) else rat_str(mag)
            sign = "-" if c < 0 else ("+" if parts else "")
            parts.append(f"{sign} {coeff}{mono}".strip() if parts else f"{sign}{coeff}{mono}")
        return f"Poly('{' '.join(parts)}')"

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data) -> "Poly":
        return Poly([rat(c) for c in data])


def poly_derivative(h: Poly) -> Poly:
    return h.derivative()


def poly_ext_gcd(h1: Poly, h2: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: return (g, c1, c2) with c1*h1 + c2*h2 = g, g monic."""
    if h1.is_zero() and h2.is_zero():
        raise ValueError("gcd of two zero polynomials")
    r0, r1 = h1, h2
    s0, s1 = Poly.one(), Poly.zero()
    t0, t1 = Poly.zero(), Poly.one()
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead = r0.lead
    return r0 / lead, s0 / lead, t0 / lead


@dataclass(frozen=True)
class BezoutPair:
    """Polynomials with alpha*phi + beta*phi' = 1 (checked on construction)."""

    alpha: Poly
    beta: Poly
    phi: Poly

    def __post_init__(self):
        if self.alpha * self.phi + self.beta * self.phi.derivative() != Poly.one():
            raise ValueError("alpha*phi + beta*phi' != 1")


def bezout_for_phi(phi: Poly) -> BezoutPair:
    """Return (alpha, beta) with alpha*phi + beta*phi' = 1, for squarefree phi."""
    if phi.is_zero():
        raise ZeroPhiError("phi = 0")
    g, c1, c2 = poly_ext_gcd(phi, phi.derivative())
    if g.degree > 0:
        raise MultipleRootError("phi(z) has a multiple root")
    # g is monic of degree 0, i.e. g = 1 already.
    return BezoutPair(c1, c2, phi)


def squarefree_part(h: Poly) -> Poly:
    """h / gcd(h, h'), made monic."""
    if h.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    g, _, _ = poly_ext_gcd(h, h.derivative())
    return (h / g).monic()


def sylvester_resultant(f: Poly, g: Poly) -> Fraction:
    """Resultant of f and g via the Sylvester matrix determinant."""
    if f.is_zero() or g.is_zero():
        return _ZERO
    m, n = f.degree, g.degree
    if m == 0:
        return f.lead**n
    if n == 0:
        return g.lead**m
    size = m + n
    rows = []
    fc = [f[m - k] for k in range(m + 1)]
    gc = [g[n - k] for k in range(n + 1)]
    for i in range(n):
        rows.append([_ZERO] * i + fc + [_ZERO] * (size - m - 1 - i))
    for i in range(m):
        rows.append([_ZERO] * i + gc + [_ZERO] * (size - n - 1 - i))
    # Fraction-exact Gaussian elimination tracking the determinant.
    det = _ONE
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            return _ZERO
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col] == 0:
                continue
            factor = rows[r][col] / inv
            for c in range(col, size):
                rows[r][c] -= factor * rows[col][c]
    return det


def resultant_power_map(phi: Poly, e: int) -> Poly:
    """A polynomial whose roots are the e-th powers of the roots of phi.

    Computed as N(w) = Res_z(phi(z), w - z^e), sampled at deg(phi)+1 points
    and recovered by Lagrange interpolation.
    """
    if phi.is_zero():
        raise ZeroPhiError("phi = 0")
    if e < 1:
        raise ValueError("e must be >= 1")
    l = phi.degree
    if l == 0:
        return Poly.one()
    points = []
    for c in range(l + 1):
        g = Poly.monomial(e, -1) + Poly.constant(c)
        points.append((Fraction(c), sylvester_resultant(phi, g)))
    return _lagrange(points)


def _lagrange(points: list[tuple[Fraction, Fraction]]) -> Poly:
    result = Poly.zero()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        num = Poly.constant(yi)
        den = _ONE
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            num = num * Poly([-xj, 1])
            den *= xi - xj
        result = result + num / den
    return result
