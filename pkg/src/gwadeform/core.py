"""The generalized Weyl algebra A = k[z; lambda, eta, phi(z)] in normal form.

Generators x, y, z with relations

    x b(z) = b(sigma(z)) x,   y b(z) = b(sigma^{-1}(z)) y,
    y x = phi(z),             x y = phi(sigma(z)),

where sigma(z) = lambda*z + eta.  Every element is a finite combination of
basis monomials z^p x_q with x_q = x^q for q >= 0 and y^{-q} for q < 0.
The filtration weight of z^p x_q is p + (l+1)|q| with l = deg phi.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ZeroPhiError
from .scalars import Poly, rat, rat_str

_ZERO = Fraction(0)


class GwaParams:
    """Defining data (lambda, eta, phi) plus cached basis-product tables."""

    def __init__(self, lam, eta, phi: Poly):
        self.lam = rat(lam)
        self.eta = rat(eta)
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")
        if not isinstance(phi, Poly):
            phi = Poly(phi)
        if phi.is_zero():
            raise ZeroPhiError("phi = 0 makes z a zero divisor")
        self.phi = phi
        self.l = phi.degree
        self._sigma_z: dict[int, Poly] = {}
        self._mono_cache: dict[tuple[int, int, int, int], dict] = {}
        self.phi_bar = self.sigma_pow(phi, 1)

    @property
    def is_quantum(self) -> bool:
        return self.lam != 1 and self.eta == 0

    @property
    def is_classical(self) -> bool:
        return self.lam == 1 and self.eta != 0

    @property
    def is_noncommutative(self) -> bool:
        return (self.lam, self.eta) != (1, 0)

    def __eq__(self, other):
        if isinstance(other, GwaParams):
            return (self.lam, self.eta, self.phi) == (other.lam, other.eta, other.phi)
        return NotImplemented

    def __repr__(self):
        return f"GwaParams(lam={self.lam}, eta={self.eta}, phi={self.phi!r})"

    # -- sigma -------------------------------------------------------------

    def sigma_z(self, j: int) -> Poly:
        """sigma^j(z) as a degree-1 polynomial; j may be negative."""
        cached = self._sigma_z.get(j)
        if cached is not None:
            return cached
        if self.lam == 1:
            p = Poly([j * self.eta, 1])
        else:
            lj = self.lam**j
            p = Poly([self.eta * (lj - 1) / (self.lam - 1), lj])
        self._sigma_z[j] = p
        return p

    def sigma_pow(self, h: Poly, j: int) -> Poly:
        """sigma^j extended to k[z] as an algebra map."""
        if j == 0 or h.degree < 1:
            return h
        return h.compose(self.sigma_z(j))

    # -- element constructors ----------------------------------------------

    def zero(self) -> "GwaElement":
        return GwaElement(self, {})

    def one(self) -> "GwaElement":
        return GwaElement(self, {(0, 0): Fraction(1)})

    def monomial(self, p: int, q: int, c=1) -> "GwaElement":
        c = rat(c)
        if c == 0:
            return self.zero()
        return GwaElement(self, {(p, q): c})

    def x(self, n: int = 1) -> "GwaElement":
        return self.monomial(0, n)

    def y(self, n: int = 1) -> "GwaElement":
        return self.monomial(0, -n)

    def z(self, n: int = 1) -> "GwaElement":
        return self.monomial(n, 0)

    def from_poly(self, h: Poly, q: int = 0) -> "GwaElement":
        """h(z) * x_q as an element."""
        return GwaElement(self, {(p, q): c for p, c in enumerate(h.coeffs) if c != 0})

    def scalar(self, c) -> "GwaElement":
        return self.monomial(0, 0, c)

    # -- basis product -----------------------------------------------------

    def weight(self, p: int, q: int) -> int:
        return p + (self.l + 1) * abs(q)

    def _mono_mul(self, p: int, q: int, i: int, j: int) -> dict:
        """(z^p x_q)(z^i x_j) as a term dict."""
        key = (p, q, i, j)
        cached = self._mono_cache.get(key)
        if cached is not None:
            return cached
        b = self.sigma_pow(Poly.monomial(i), q) if i else Poly.one()
        if q > 0 > j:
            mn = min(q, -j)
            for k in range(1, mn + 1):
                b = b * self.sigma_pow(self.phi_bar, q - k)
        elif q < 0 < j:
            mn = min(-q, j)
            for k in range(1, mn + 1):
                b = b * self.sigma_pow(self.phi, -(-q - k))
        terms = {(p + d, q + j): c for d, c in enumerate(b.coeffs) if c != 0}
        self._mono_cache[key] = terms
        return terms

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"lambda": rat_str(self.lam), "eta": rat_str(self.eta),
                "phi": self.phi.to_json()}

    @staticmethod
    def from_json(data) -> "GwaParams":
        return GwaParams(rat(data["lambda"]), rat(data["eta"]),
                         Poly.from_json(data["phi"]))


class GwaElement:
    """A finite combination sum c_{p,q} z^p x_q over a fixed algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GwaParams, terms: dict):
        self.algebra = algebra
        self.terms = {k: v for k, v in terms.items() if v != 0}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, GwaElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, p: int, q: int) -> Fraction:
        return self.terms.get((p, q), _ZERO)

    def __neg__(self):
        return GwaElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __add__(self, other: "GwaElement"):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, _ZERO) + v
        return GwaElement(self.algebra, out)

    def __sub__(self, other: "GwaElement"):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GwaElement):
            return multiply(self, other)
        c = rat(other)
        return GwaElement(self.algebra, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        # scalars commute; GwaElement * GwaElement goes through __mul__
        c = rat(other)
        return GwaElement(self.algebra, {k: c * v for k, v in self.terms.items()})

    def scalar_part(self) -> Fraction:
        return self.coeff(0, 0)

    def __repr__(self):
        if not self.terms:
            return "Gwa(0)"
        bits = []
        for (p, q), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0])):
            mono = ""
            if p:
                mono += f"z^{p}" if p > 1 else "z"
            if q > 0:
                mono += f"x^{q}" if q > 1 else "x"
            elif q < 0:
                mono += f"y^{-q}" if q < -1 else "y"
            bits.append(f"{rat_str(c)}*{mono}" if mono else rat_str(c))
        return "Gwa(" + " + ".join(bits) + ")"

    def to_json(self) -> list:
        out = []
        for (p, q), c in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0])):
            out.append({"p": p, "q": q, "c": rat_str(c)})
        return out

    @staticmethod
    def from_json(algebra: GwaParams, data) -> "GwaElement":
        terms = {}
        for rec in data:
            terms[(int(rec["p"]), int(rec["q"]))] = rat(rec["c"])
        return GwaElement(algebra, terms)

    def to_vector(self, window: list) -> list[Fraction]:
        """Coordinates with respect to an explicit (p, q) basis list."""
        idx = {pq: i for i, pq in enumerate(window)}
        vec = [_ZERO] * len(window)
        for pq, c in self.terms.items():
            if pq not in idx:
                raise ValueError(f"monomial {pq} outside the window")
            vec[idx[pq]] = c
        return vec

    @staticmethod
    def from_vector(algebra: GwaParams, window: list, vec) -> "GwaElement":
        return GwaElement(algebra, dict(zip(window, vec)))


def sigma_pow(params: GwaParams, h: Poly, j: int) -> Poly:
    return params.sigma_pow(h, j)


def multiply(u: GwaElement, v: GwaElement) -> GwaElement:
    """Product in A, in normal form."""
    alg = u.algebra
    out: dict = {}
    for (p, q), cu in u.terms.items():
        for (i, j), cv in v.terms.items():
            c = cu * cv
            for pq, w in alg._mono_mul(p, q, i, j).items():
                out[pq] = out.get(pq, _ZERO) + c * w
    return GwaElement(alg, out)


def filtration_degree(u: GwaElement) -> int:
    """Max of p + (l+1)|q| over the support; -1 for the zero element."""
    if u.is_zero():
        return -1
    alg = u.algebra
    return max(alg.weight(p, q) for (p, q) in u.terms)


def basis_window(params: GwaParams, n: int) -> list[tuple[int, int]]:
    """All (p, q) with p + (l+1)|q| <= n, ordered q ascending then p ascending."""
    w = params.l + 1
    out = []
    qmax = n // w
    for q in range(-qmax, qmax + 1):
        for p in range(n - w * abs(q) + 1):
            out.append((p, q))
    out.sort(key=lambda t: (t[1], t[0]))
    return out


@dataclass(frozen=True)
class Automorphism:
    """A diagonal algebra automorphism x -> a x, y -> b y, z -> c z + d.

    Validity (the images satisfy the four defining relations) is checked
    on construction.
    """

    params: GwaParams
    x_scale: Fraction
    y_scale: Fraction
    z_image: Poly

    def __post_init__(self):
        object.__setattr__(self, "x_scale", rat(self.x_scale))
        object.__setattr__(self, "y_scale", rat(self.y_scale))
        a = self.params
        if self.z_image.degree != 1 or self.x_scale == 0 or self.y_scale == 0:
            raise ValueError("automorphism must be invertible")
        X = self.x_scale * a.x()
        Y = self.y_scale * a.y()
        Z = a.from_poly(self.z_image)
        lam, eta = a.lam, a.eta
        checks = [
            X * Z - (lam * Z + eta * a.one()) * X,
            Y * Z - ((1 / lam) * Z - (eta / lam) * a.one()) * Y,
            Y * X - a.from_poly(a.phi.compose(self.z_image)),
            X * Y - a.from_poly(a.phi_bar.compose(self.z_image)),
        ]
        if any(not c.is_zero() for c in checks):
            raise ValueError("images do not satisfy the defining relations")

    def is_identity(self) -> bool:
        return (self.x_scale == 1 and self.y_scale == 1
                and self.z_image == Poly.z())

    def inverse(self) -> "Automorphism":
        c, d = self.z_image[1], self.z_image[0]
        return Automorphism(self.params, 1 / self.x_scale, 1 / self.y_scale,
                            Poly([-d / c, 1 / c]))


def identity_auto(params: GwaParams) -> Automorphism:
    return Automorphism(params, 1, 1, Poly.z())


def nakayama(params: GwaParams) -> Automorphism:
    """nu: x -> lambda x, y -> lambda^{-1} y, z -> z."""
    return Automorphism(params, params.lam, 1 / params.lam, Poly.z())


def apply_automorphism(rho: Automorphism, u: GwaElement) -> GwaElement:
    alg = u.algebra
    out: dict = {}
    zpow: dict[int, Poly] = {0: Poly.one()}
    for (p, q), c in u.terms.items():
        if p not in zpow:
            zpow[p] = rho.z_image**p
        scale = c * (rho.x_scale**q if q >= 0 else rho.y_scale ** (-q))
        for d, a in enumerate(zpow[p].coeffs):
            if a != 0:
                out[(d, q)] = out.get((d, q), _ZERO) + scale * a
    return GwaElement(alg, out)


@dataclass(frozen=True)
class BimoduleSpec:
    """An A-bimodule structure on A itself: a.m.b = f(a) m g(b)."""

    left_twist: Automorphism
    right_twist: Automorphism


def module_plain(params: GwaParams) -> BimoduleSpec:
    i = identity_auto(params)
    return BimoduleSpec(i, i)


def module_nu(params: GwaParams) -> BimoduleSpec:
    """A^nu: untwisted left action, right action through nu."""
    return BimoduleSpec(identity_auto(params), nakayama(params))


def bimodule_act(spec: BimoduleSpec, a_left: GwaElement, m: GwaElement,
                 a_right: GwaElement) -> GwaElement:
    return multiply(apply_automorphism(spec.left_twist, a_left),
                    multiply(m, apply_automorphism(spec.right_twist, a_right)))


class TensorElement:
    """A combination of (basis monomial) tensor (basis monomial) in A (x) A."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GwaParams, terms: dict):
        self.algebra = algebra
        self.terms = {k: v for k, v in terms.items() if v != 0}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return self.terms == other.terms
        return NotImplemented

    def __neg__(self):
        return TensorElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __add__(self, other: "TensorElement"):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, _ZERO) + v
        return TensorElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = rat(c)
        return TensorElement(self.algebra, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self.scale(other)

    def _leg(self, pq) -> GwaElement:
        return GwaElement(self.algebra, {pq: Fraction(1)})

    def act_left(self, a: GwaElement) -> "TensorElement":
        """a . (u (x) v) = (a u) (x) v."""
        out = TensorElement(self.algebra, {})
        for (L, R), c in self.terms.items():
            prod = multiply(a, self._leg(L))
            for pq, w in prod.terms.items():
                key = (pq, R)
                out.terms[key] = out.terms.get(key, _ZERO) + c * w
        return TensorElement(self.algebra, out.terms)

    def act_right(self, b: GwaElement) -> "TensorElement":
        """(u (x) v) . b = u (x) (v b)."""
        out = TensorElement(self.algebra, {})
        for (L, R), c in self.terms.items():
            prod = multiply(self._leg(R), b)
            for pq, w in prod.terms.items():
                key = (L, pq)
                out.terms[key] = out.terms.get(key, _ZERO) + c * w
        return TensorElement(self.algebra, out.terms)

    def mul_tensor(self, other: "TensorElement") -> "TensorElement":
        """Legwise product (a (x) b)(c (x) d) = ac (x) bd."""
        out: dict = {}
        for (L1, R1), c1 in self.terms.items():
            for (L2, R2), c2 in other.terms.items():
                left = multiply(self._leg(L1), self._leg(L2))
                right = multiply(self._leg(R1), self._leg(R2))
                c = c1 * c2
                for pqL, wL in left.terms.items():
                    for pqR, wR in right.terms.items():
                        key = (pqL, pqR)
                        out[key] = out.get(key, _ZERO) + c * wL * wR
        return TensorElement(self.algebra, out)

    def __repr__(self):
        if not self.terms:
            return "Tensor(0)"
        bits = []
        for (L, R), c in sorted(self.terms.items()):
            bits.append(f"{rat_str(c)}*{GwaElement(self.algebra, {L: Fraction(1)})!r}"
                        f"(x){GwaElement(self.algebra, {R: Fraction(1)})!r}")
        return "Tensor(" + " + ".join(bits) + ")"


def tensor_from_pair(a: GwaElement, b: GwaElement) -> TensorElement:
    out: dict = {}
    for L, cl in a.terms.items():
        for R, cr in b.terms.items():
            out[(L, R)] = out.get((L, R), _ZERO) + cl * cr
    return TensorElement(a.algebra, out)


def delta0(params: GwaParams, k: int) -> TensorElement:
    """Delta_0(z^k) = sum_{i=1}^{k} z^{k-i} (x) z^{i-1}; Delta_0(1) = 0."""
    terms = {((k - i, 0), (i - 1, 0)): Fraction(1) for i in range(1, k + 1)}
    return TensorElement(params, terms)


def delta0_poly(params: GwaParams, h: Poly) -> TensorElement:
    out = TensorElement(params, {})
    for k, c in enumerate(h.coeffs):
        if c != 0:
            out = out + delta0(params, k).scale(c)
    return out


@dataclass(frozen=True)
class LegMap:
    """h |-> sigma^j(d^d h / dz^d): derivative first, then sigma^j."""

    j: int = 0
    d: int = 0

    def apply(self, params: GwaParams, h: Poly) -> Poly:
        for _ in range(self.d):
            h = h.derivative()
        return params.sigma_pow(h, self.j)


LEG_ID = LegMap(0, 0)
LEG_D = LegMap(0, 1)


def twisted_delta(params: GwaParams, f_spec: LegMap, g_spec: LegMap,
                  h: Poly) -> TensorElement:
    """(iota (x) iota) o (f (x) g) o Delta_0 applied to h."""
    out: dict = {}
    for k, c in enumerate(h.coeffs):
        if c == 0:
            continue
        for i in range(1, k + 1):
            left = f_spec.apply(params, Poly.monomial(k - i))
            right = g_spec.apply(params, Poly.monomial(i - 1))
            for pL, cL in enumerate(left.coeffs):
                if cL == 0:
                    continue
                for pR, cR in enumerate(right.coeffs):
                    if cR == 0:
                        continue
                    key = ((pL, 0), (pR, 0))
                    out[key] = out.get(key, _ZERO) + c * cL * cR
    return TensorElement(params, out)


def delta_nu(params: GwaParams, gen: str, q: int) -> TensorElement:
    """Delta^nu(x^q) = sum_s x^{q-s} (x) (lambda x)^{s-1}, likewise for y."""
    if gen not in ("x", "y"):
        raise ValueError("gen must be 'x' or 'y'")
    sign = 1 if gen == "x" else -1
    lam = params.lam if gen == "x" else 1 / params.lam
    terms = {}
    for s in range(1, q + 1):
        key = ((0, sign * (q - s)), (0, sign * (s - 1)))
        terms[key] = terms.get(key, _ZERO) + lam ** (s - 1)
    return TensorElement(params, terms)


def tensor_act(T: TensorElement, spec: BimoduleSpec, m: GwaElement) -> GwaElement:
    """(a1 (x) a2) . m = a1 . m . a2 via the bimodule structure."""
    alg = T.algebra
    out = alg.zero()
    for (L, R), c in T.terms.items():
        a1 = GwaElement(alg, {L: c})
        a2 = GwaElement(alg, {R: Fraction(1)})
        out = out + bimodule_act(spec, a1, m, a2)
    return out
