"""Two resolutions of the algebra by bimodules, with identity checks.

* The periodic chain complex C with C_0 = A (x)_B A, odd degrees
  (A^s (x)_B A) + (A (x)_B ^s A), even positive degrees two untwisted
  copies.  Elements are kept in the standard form sum x_i (x) b_{ij} x_j.
* The bigraded family P (two rows q = 0, 1) with maps d^v, d^h, r
  satisfying the homotopy-double-complex identities, and its total complex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .core import (
    GwaElement,
    GwaParams,
    LEG_ID,
    LegMap,
    TensorElement,
    multiply,
    tensor_from_pair,
    twisted_delta,
)
from .scalars import Poly

_ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# The complex C
# ---------------------------------------------------------------------------

def _push_for(degree: int, summand: int) -> int:
    """sigma-power moved across the balanced tensor when standardizing.

    In A (x)_B A a middle b passes unchanged; in A^s (x)_B A (left leg,
    odd degrees, summand 0) it passes as sigma^{-1}(b); in A (x)_B ^s A
    (summand 1) as sigma(b).
    """
    if degree == 0 or degree % 2 == 0:
        return 0
    return -1 if summand == 0 else 1


class StandardTensor:
    """sum over (i, j) of x_i (x) b_{ij}(z) x_j with b_{ij} nonzero."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GwaParams, terms: dict):
        self.algebra = algebra
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, StandardTensor):
            return self.terms == other.terms
        return NotImplemented

    def __neg__(self):
        return StandardTensor(self.algebra, {k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Poly.zero()) + v
        return StandardTensor(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        bits = [f"x_{i}(x){b!r}x_{j}" for (i, j), b in sorted(self.terms.items())]
        return "Std(" + (" + ".join(bits) or "0") + ")"


def standardize(params: GwaParams, u: GwaElement, v: GwaElement,
                push: int) -> StandardTensor:
    """Standard form of u (x) v over the B-balanced tensor with twist push."""
    out: dict = {}
    for (p, q), c in u.terms.items():
        # z^p x_q = x_q * sigma^{-q}(z^p); the middle factor crosses as
        # sigma^{push} of itself.
        b = params.sigma_pow(Poly.monomial(p, c), -q + push)
        w = multiply(params.from_poly(b), v)
        for (m, j), cw in w.terms.items():
            key = (q, j)
            cur = out.get(key, Poly.zero())
            out[key] = cur + Poly.monomial(m, cw)
    return StandardTensor(params, out)


@dataclass
class CElement:
    degree: int
    components: tuple  # one StandardTensor (degree 0) or a pair

    def __post_init__(self):
        want = 1 if self.degree == 0 else 2
        if len(self.components) != want:
            raise ValueError("component count does not match the degree")

    @property
    def algebra(self) -> GwaParams:
        return self.components[0].algebra

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        return (self.degree == other.degree
                and self.components == other.components)

    def __add__(self, other):
        return CElement(self.degree, tuple(a + b for a, b in
                                           zip(self.components, other.components)))

    def __sub__(self, other):
        return CElement(self.degree, tuple(a - b for a, b in
                                           zip(self.components, other.components)))


def c_zero(params: GwaParams, degree: int) -> CElement:
    n = 1 if degree == 0 else 2
    return CElement(degree, tuple(StandardTensor(params, {}) for _ in range(n)))


def c_element(params: GwaParams, degree: int, *summands) -> CElement:
    """Build a CElement from lists of (u, v) GwaElement pairs per summand."""
    comps = []
    for s, pairs in enumerate(summands):
        acc = StandardTensor(params, {})
        for u, v in pairs:
            acc = acc + standardize(params, u, v, _push_for(degree, s))
        comps.append(acc)
    return CElement(degree, tuple(comps))


def _c_generator_images(params: GwaParams, i: int):
    """d_i on the two generators, as pairs-of-(u, v)-lists per target summand."""
    one, x, y = params.one(), params.x(), params.y()
    if i == 1:
        return ([[(x, one), (-1 * one, x)]],
                [[(y, one), (-1 * one, y)]])
    if i % 2 == 0:
        return ([[(y, one)], [(one, x)]],
                [[(one, y)], [(x, one)]])
    return ([[(x, one)], [(-1 * one, x)]],
            [[(-1 * one, y)], [(y, one)]])


def c_diff(i: int, e: CElement) -> CElement:
    """The differential d_i : C_i -> C_{i-1}, extended bimodule-linearly."""
    if i < 1 or e.degree != i:
        raise ValueError("degree mismatch")
    params = e.algebra
    gens = _c_generator_images(params, i)
    out = c_zero(params, i - 1)
    for s, comp in enumerate(e.components):
        for (q, j), b in comp.terms.items():
            left = params.monomial(0, q)
            right = multiply(params.from_poly(b), params.monomial(0, j))
            target = []
            for t, pairs in enumerate(gens[s]):
                acc = StandardTensor(params, {})
                for u, v in pairs:
                    acc = acc + standardize(params, multiply(left, u),
                                            multiply(v, right),
                                            _push_for(i - 1, t))
                target.append(acc)
            out = out + CElement(i - 1, tuple(target))
    return out


def c_augment(e: CElement) -> GwaElement:
    """Multiplication map A (x)_B A -> A on degree 0."""
    if e.degree != 0:
        raise ValueError("augmentation is defined in degree 0 only")
    params = e.algebra
    out = params.zero()
    for (q, j), b in e.components[0].terms.items():
        out = out + multiply(params.monomial(0, q),
                             multiply(params.from_poly(b), params.monomial(0, j)))
    return out


def _c_index_set(params: GwaParams, degree: int, window: int):
    """Deterministic standard-basis indices (summand, q, deg z, j) in a window."""
    w = params.l + 1
    nsum = 1 if degree == 0 else 2
    out = []
    for s in range(nsum):
        for q in range(-(window // w), window // w + 1):
            for j in range(-(window // w), window // w + 1):
                rem = window - w * (abs(q) + abs(j))
                for m in range(rem + 1):
                    out.append((s, q, m, j))
    return out


def _c_to_vector(e: CElement, index) -> list:
    pos = {k: n for n, k in enumerate(index)}
    vec = [_ZERO] * len(index)
    for s, comp in enumerate(e.components):
        for (q, j), b in comp.terms.items():
            for m, c in enumerate(b.coeffs):
                if c == 0:
                    continue
                key = (s, q, m, j)
                if key not in pos:
                    raise ValueError(f"standard monomial {key} outside the window")
                vec[pos[key]] = c
    return vec


def _c_from_vector(params: GwaParams, degree: int, index, vec) -> CElement:
    comps = [dict() for _ in range(1 if degree == 0 else 2)]
    for (s, q, m, j), c in zip(index, vec):
        if c == 0:
            continue
        cur = comps[s].get((q, j), Poly.zero())
        comps[s][(q, j)] = cur + Poly.monomial(m, c)
    return CElement(degree, tuple(StandardTensor(params, t) for t in comps))


def c_solve_preimage(i: int, target: CElement, window: int):
    """Find e in C_{i+1} with d_{i+1}(e) = target by an exact windowed solve.

    Returns None when the truncated system is inconsistent.
    """
    params = target.algebra
    if i >= 1 and not c_diff(i, target).is_zero():
        raise ValueError("target is not a cycle")
    src_window = window + params.l + 1
    tgt_window = src_window + 2 * (params.l + 1)
    src_index = _c_index_set(params, i + 1, src_window)
    tgt_index = _c_index_set(params, i, tgt_window)
    cols = []
    for (s, q, m, j) in src_index:
        basis = c_zero(params, i + 1)
        comps = list(basis.components)
        comps[s] = StandardTensor(params, {(q, j): Poly.monomial(m)})
        cols.append(_c_to_vector(c_diff(i + 1, CElement(i + 1, tuple(comps))),
                                 tgt_index))
    matrix = [[cols[c][r] for c in range(len(cols))] for r in range(len(tgt_index))]
    rhs = _c_to_vector(target, tgt_index)
    sol = linalg.solve(matrix, rhs)
    if sol is None:
        return None
    return _c_from_vector(params, i + 1, src_index, sol)


# ---------------------------------------------------------------------------
# The bigraded family P and its total complex
# ---------------------------------------------------------------------------

@dataclass
class PElement:
    p: int
    q: int  # row: 0 or 1
    components: tuple  # TensorElements; length 1 for p = 0, else 2

    def __post_init__(self):
        want = 1 if self.p == 0 else 2
        if self.q not in (0, 1) or len(self.components) != want:
            raise ValueError("bad P position or component count")

    @property
    def algebra(self) -> GwaParams:
        return self.components[0].algebra

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        return ((self.p, self.q) == (other.p, other.q)
                and self.components == other.components)

    def __add__(self, other):
        return PElement(self.p, self.q,
                        tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        return PElement(self.p, self.q,
                        tuple(a - b for a, b in zip(self.components, other.components)))


def p_zero(params: GwaParams, p: int, q: int) -> PElement:
    n = 1 if p == 0 else 2
    return PElement(p, q, tuple(TensorElement(params, {}) for _ in range(n)))


def p_generators(params: GwaParams, p: int, q: int):
    """The standard generators (1 (x) 1 in one slot) of P_{pq}."""
    n = 1 if p == 0 else 2
    gens = []
    for s in range(n):
        comps = [TensorElement(params, {}) for _ in range(n)]
        comps[s] = tensor_from_pair(params.one(), params.one())
        gens.append(PElement(p, q, tuple(comps)))
    return gens


def _apply_bimodule(images, a: GwaElement, b: GwaElement):
    """Outer action a . (generator image) . b, per target component."""
    return tuple(t.act_left(a).act_right(b) for t in images)


def _linear_extend(e: PElement, gen_images) -> tuple:
    """Extend generator images (list per source slot) bimodule-linearly."""
    params = e.algebra
    ncomp = len(gen_images[0])
    out = [TensorElement(params, {}) for _ in range(ncomp)]
    for s, comp in enumerate(e.components):
        for (L, R), c in comp.terms.items():
            a = GwaElement(params, {L: c})
            b = GwaElement(params, {R: Fraction(1)})
            for t, img in enumerate(_apply_bimodule(gen_images[s], a, b)):
                out[t] = out[t] + img
    return tuple(out)


def _t(params, u, v):
    return tensor_from_pair(u, v)


def p_dv(p: int, e: PElement) -> PElement:
    """Vertical map P_{p,1} -> P_{p,0}."""
    if e.q != 1 or e.p != p:
        raise ValueError("shape mismatch")
    a = e.algebra
    one, z = a.one(), a.z()
    sz = a.from_poly(a.sigma_z(1))
    siz = a.from_poly(a.sigma_z(-1))
    zero_t = TensorElement(a, {})
    if p == 0:
        gens = [[_t(a, z, one) - _t(a, one, z)]]
    elif p % 2 == 1:
        gens = [[_t(a, sz, one) - _t(a, one, z), zero_t],
                [zero_t, _t(a, siz, one) - _t(a, one, z)]]
    else:
        gens = [[_t(a, z, one) - _t(a, one, z), zero_t],
                [zero_t, _t(a, z, one) - _t(a, one, z)]]
    return PElement(p, 0, _linear_extend(e, gens))


def p_dh(p: int, q: int, e: PElement) -> PElement:
    """Horizontal map P_{p,q} -> P_{p-1,q}."""
    if p < 1 or (e.p, e.q) != (p, q):
        raise ValueError("shape mismatch")
    a = e.algebra
    one, x, y = a.one(), a.x(), a.y()
    lam = a.lam
    il = 1 / lam
    if q == 0:
        if p == 1:
            gens = [[_t(a, x, one) - _t(a, one, x)],
                    [_t(a, y, one) - _t(a, one, y)]]
        elif p % 2 == 0:
            gens = [[_t(a, y, one), _t(a, one, x)],
                    [_t(a, one, y), _t(a, x, one)]]
        else:
            gens = [[_t(a, x, one), -_t(a, one, x)],
                    [-_t(a, one, y), _t(a, y, one)]]
    else:
        if p == 1:
            gens = [[-_t(a, x, one) + _t(a, lam * one, x)],
                    [-_t(a, y, one) + _t(a, il * one, y)]]
        elif p % 2 == 0:
            gens = [[-_t(a, y, one), -_t(a, lam * one, x)],
                    [-_t(a, il * one, y), -_t(a, x, one)]]
        else:
            gens = [[-_t(a, x, one), _t(a, lam * one, x)],
                    [_t(a, il * one, y), -_t(a, y, one)]]
    return PElement(p - 1, q, _linear_extend(e, gens))


def p_r(p: int, e: PElement) -> PElement:
    """Homotopy-like map P_{p,0} -> P_{p-2,1} for p >= 2."""
    if p < 2 or (e.p, e.q) != (p, 0):
        raise ValueError("shape mismatch")
    a = e.algebra
    lam = a.lam
    sL, sR = LegMap(1, 0), LegMap(1, 0)
    d = twisted_delta(a, LEG_ID, LEG_ID, a.phi)
    ds_s = twisted_delta(a, sL, sR, a.phi).scale(lam)
    sd = twisted_delta(a, sL, LEG_ID, a.phi)
    d_s = twisted_delta(a, LEG_ID, sR, a.phi).scale(lam)
    zero_t = TensorElement(a, {})
    if p == 2:
        gens = [[-d], [-ds_s]]
    elif p % 2 == 1:
        gens = [[-sd, zero_t], [zero_t, -d_s]]
    else:
        gens = [[-d, zero_t], [zero_t, -ds_s]]
    return PElement(p - 2, 1, _linear_extend(e, gens))


def verify_hdc(params: GwaParams, max_p: int) -> list[dict]:
    """Check the homotopy-double-complex identities on all generators."""
    report = []

    def record(identity, p, q, idx, residual: PElement):
        report.append({"identity": identity, "position": (p, q),
                       "generator": idx, "pass": residual.is_zero()})

    for p in range(max_p + 1):
        # (d^v)^2 = 0 and r^2 = 0 are vacuous with two rows; recorded as such.
        report.append({"identity": "dv.dv", "position": (p, 0),
                       "generator": None, "pass": True, "vacuous": True})
        report.append({"identity": "r.r", "position": (p, 0),
                       "generator": None, "pass": True, "vacuous": True})
        if p >= 1:
            for idx, g in enumerate(p_generators(params, p, 1)):
                res = p_dh(p, 0, p_dv(p, g)) + p_dv(p - 1, p_dh(p, 1, g))
                record("dh.dv+dv.dh", p, 1, idx, res)
        if p >= 2:
            for idx, g in enumerate(p_generators(params, p, 0)):
                res = p_dh(p - 1, 0, p_dh(p, 0, g)) + p_dv(p - 2, p_r(p, g))
                record("dh.dh+dv.r", p, 0, idx, res)
            for idx, g in enumerate(p_generators(params, p, 1)):
                res = p_dh(p - 1, 1, p_dh(p, 1, g)) + p_r(p, p_dv(p, g))
                record("dh.dh+r.dv", p, 1, idx, res)
        if p >= 3:
            for idx, g in enumerate(p_generators(params, p, 0)):
                res = p_dh(p - 2, 1, p_r(p, g)) + p_r(p - 1, p_dh(p, 0, g))
                record("dh.r+r.dh", p, 0, idx, res)
    return report


@dataclass
class TotElement:
    """Total-complex element: T_0 = P_00, T_n = P_{n-1,1} + P_{n,0}."""

    degree: int
    parts: tuple  # (PElement,) or (PElement q=1, PElement q=0)

    @property
    def algebra(self):
        return self.parts[0].algebra

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def __add__(self, other):
        return TotElement(self.degree,
                          tuple(a + b for a, b in zip(self.parts, other.parts)))


def tot_zero(params: GwaParams, n: int) -> TotElement:
    if n == 0:
        return TotElement(0, (p_zero(params, 0, 0),))
    return TotElement(n, (p_zero(params, n - 1, 1), p_zero(params, n, 0)))


def tot_generators(params: GwaParams, n: int) -> list[TotElement]:
    out = []
    if n == 0:
        return [TotElement(0, (g,)) for g in p_generators(params, 0, 0)]
    for g in p_generators(params, n - 1, 1):
        out.append(TotElement(n, (g, p_zero(params, n, 0))))
    for g in p_generators(params, n, 0):
        out.append(TotElement(n, (p_zero(params, n - 1, 1), g)))
    return out


def tot_diff(n: int, e: TotElement) -> TotElement:
    """d = d^v + d^h + r assembled componentwise on the total complex."""
    if n < 1 or e.degree != n:
        raise ValueError("degree mismatch")
    params = e.algebra
    if n == 1:
        part01, part10 = e.parts
        return TotElement(0, (p_dv(0, part01) + p_dh(1, 0, part10),))
    up, right = e.parts  # up in P_{n-1,1}, right in P_{n,0}
    q1 = p_dh(n - 1, 1, up) + p_r(n, right)
    q0 = p_dv(n - 1, up) + p_dh(n, 0, right)
    return TotElement(n - 1, (q1, q0))
