"""Hochschild 2- and 3-cochains on the bar side, with comparison maps.

A 2-cochain F is stored as a memoized evaluator on basis pairs and is
assumed unit-normalized (F(u,1) = F(1,v) = 0) and z-left-linear with
vanishing x/y-power values (F(z u, v) = z F(u, v), F(x^q, x^j) =
F(y^q, y^j) = 0).  Under these conditions F is pinned down by its
coboundary together with the four values F(x,z), F(x,y), F(y,z), F(y,x);
`determine_F` carries out that reconstruction.

The theta maps translate between bar-resolution cochains and the
periodic cochain grid: theta2 sends a basis pair to an element of the
degree-2 column pair, its pullback turns a degree-2 periodic cochain
into a 2-cochain, and thetaprime2/thetaprime3 go the other way.
"""
from __future__ import annotations

from fractions import Fraction

from .core import (
    GwaElement,
    GwaParams,
    TensorElement,
    basis_window,
    filtration_degree,
    module_plain,
    tensor_act,
    tensor_from_pair,
)
from .errors import UnsupportedPatternError
from .percomplex import PerCochain
from .scalars import Poly, rat


class Cochain2:
    """A bilinear map A x A -> A given on basis pairs, lazily memoized."""

    def __init__(self, params: GwaParams, base_eval, provenance="explicit-table"):
        self.params = params
        self._base = base_eval  # (q, i, j) -> GwaElement, value at (x_q, z^i x_j)
        self._memo: dict[tuple[int, int, int], GwaElement] = {}
        self.provenance = provenance

    def eval_basis(self, q: int, i: int, j: int) -> GwaElement:
        """Value on (x_q, z^i x_j); the left z-power factors out."""
        a = self.params
        if q == 0 or (i == 0 and (j == 0 or (j > 0) == (q > 0))):
            return a.zero()
        key = (q, i, j)
        val = self._memo.get(key)
        if val is None:
            val = self._base(q, i, j)
            self._memo[key] = val
        return val

    def evaluate(self, u: GwaElement, v: GwaElement) -> GwaElement:
        a = self.params
        out = a.zero()
        for (p, q), cu in u.terms.items():
            if q == 0 and p > 0:
                # F(z^p, v) = z^{p-1} F(z, v) = 0 by unit normalization
                continue
            for (i, j), cv in v.terms.items():
                val = self.eval_basis(q, i, j)
                if val.is_zero():
                    continue
                out = out + (cu * cv) * (a.z(p) * val if p else val)
        return out

    def __call__(self, u: GwaElement, v: GwaElement) -> GwaElement:
        return self.evaluate(u, v)

    def __add__(self, other: "Cochain2") -> "Cochain2":
        return Cochain2(self.params,
                        lambda q, i, j: self.eval_basis(q, i, j)
                        + other.eval_basis(q, i, j),
                        "explicit-table")

    def scale(self, c) -> "Cochain2":
        c = rat(c)
        return Cochain2(self.params,
                        lambda q, i, j: c * self.eval_basis(q, i, j),
                        "explicit-table")

    def to_table(self, window: int) -> dict:
        """JSON table of values over basis pairs inside a filtration window."""
        pairs = []
        for pq1 in basis_window(self.params, window):
            w1 = self.params.weight(*pq1)
            for pq2 in basis_window(self.params, window - w1):
                val = self.evaluate(self.params.monomial(*pq1),
                                    self.params.monomial(*pq2))
                if not val.is_zero():
                    pairs.append({"left": {"p": pq1[0], "q": pq1[1]},
                                  "right": {"p": pq2[0], "q": pq2[1]},
                                  "value": val.to_json()})
        return {"provenance": self.provenance, "window": window, "values": pairs}


def cochain2_zero(params: GwaParams) -> Cochain2:
    return Cochain2(params, lambda q, i, j: params.zero(), "explicit-table")


class Cochain3:
    """A trilinear map A^3 -> A, built from 2-cochains and never tabulated."""

    def __init__(self, params: GwaParams, eval3):
        self.params = params
        self._eval = eval3

    def evaluate(self, u: GwaElement, v: GwaElement, w: GwaElement) -> GwaElement:
        return self._eval(u, v, w)

    def __call__(self, u, v, w):
        return self._eval(u, v, w)

    def __add__(self, other: "Cochain3") -> "Cochain3":
        return Cochain3(self.params,
                        lambda u, v, w: self._eval(u, v, w) + other._eval(u, v, w))

    def scale(self, c) -> "Cochain3":
        c = rat(c)
        return Cochain3(self.params, lambda u, v, w: c * self._eval(u, v, w))


def cochain3_zero(params: GwaParams) -> Cochain3:
    return Cochain3(params, lambda u, v, w: params.zero())


def circle(F: Cochain2, G: Cochain2) -> Cochain3:
    """F(G(u,v),w) - F(u,G(v,w))."""
    return Cochain3(F.params,
                    lambda u, v, w: F(G(u, v), w) - F(u, G(v, w)))


def hochschild_b(F: Cochain2) -> Cochain3:
    """The coboundary u F(v,w) - F(uv,w) + F(u,vw) - F(u,v) w."""
    return Cochain3(F.params,
                    lambda u, v, w: u * F(v, w) - F(u * v, w)
                    + F(u, v * w) - F(u, v) * w)


# ---------------------------------------------------------------------------
# Comparison maps between the bar resolution and the periodic grid
# ---------------------------------------------------------------------------

def theta1(params: GwaParams, pattern: tuple[int, int]) -> tuple:
    """Image of 1|z^i x_j|1 in the degree-1 column pair (z-, x-, y-slot)."""
    i, j = pattern
    z_slot = TensorElement(params, {})
    x_slot = TensorElement(params, {})
    y_slot = TensorElement(params, {})
    for k in range(1, i + 1):
        z_slot = z_slot + tensor_from_pair(params.z(i - k),
                                           params.monomial(k - 1, j))
    for k in range(1, abs(j) + 1):
        if j > 0:
            x_slot = x_slot + tensor_from_pair(params.monomial(i, j - k),
                                               params.x(k - 1))
        else:
            y_slot = y_slot + tensor_from_pair(params.monomial(i, j + k),
                                               params.y(k - 1))
    return (z_slot, x_slot, y_slot)


def theta2(params: GwaParams, left: tuple[int, int],
           right: tuple[int, int]) -> tuple:
    """Image of 1|z^p x_q|z^i x_j|1 as a 4-tuple in the degree-2 columns.

    Mixed patterns x^q-vs-y or y^q-vs-x with q >= 2 are unsupported.
    """
    p, q = left
    i, j = right
    slots = [TensorElement(params, {}) for _ in range(4)]
    if q == 0:
        return tuple(slots)
    zp = Poly.monomial(p)
    if q > 0 and j >= 0:
        # x^q against z^i x^j
        for k in range(1, i + 1):
            lz = zp * params.sigma_pow(Poly.monomial(i - k), q)
            for s in range(1, q + 1):
                lhs = params.from_poly(lz, q - s)
                rz = params.sigma_pow(Poly.monomial(k - 1), s - 1)
                rhs = params.lam ** (s - 1) * params.from_poly(rz, s - 1 + j)
                slots[0] = slots[0] - tensor_from_pair(lhs, rhs)
    elif q < 0 and j <= 0:
        # y^Q against z^i y^J
        Q, J = -q, -j
        for k in range(1, i + 1):
            lz = zp * params.sigma_pow(Poly.monomial(i - k), -Q)
            for s in range(1, Q + 1):
                lhs = params.from_poly(lz, -(Q - s))
                rz = params.sigma_pow(Poly.monomial(k - 1), -(s - 1))
                rhs = params.lam ** (1 - s) * params.from_poly(rz, -(s - 1) - J)
                slots[1] = slots[1] - tensor_from_pair(lhs, rhs)
    elif q == 1:
        # x against z^i y^J
        J = -j
        for k in range(1, i + 1):
            lhs = params.from_poly(zp * params.sigma_pow(Poly.monomial(i - k), 1))
            slots[0] = slots[0] - tensor_from_pair(
                lhs, params.monomial(k - 1, -J))
        slots[3] = tensor_from_pair(
            params.from_poly(zp * params.sigma_pow(Poly.monomial(i), 1)),
            params.y(J - 1))
    elif q == -1:
        # y against z^i x^j
        for k in range(1, i + 1):
            lhs = params.from_poly(zp * params.sigma_pow(Poly.monomial(i - k), -1))
            slots[1] = slots[1] - tensor_from_pair(
                lhs, params.monomial(k - 1, j))
        slots[2] = tensor_from_pair(
            params.from_poly(zp * params.sigma_pow(Poly.monomial(i), -1)),
            params.x(j - 1))
    else:
        raise UnsupportedPatternError(
            f"no displayed image for x_({q}) against z^{i} x_({j})")
    return tuple(slots)


def theta2_pullback(c: PerCochain) -> Cochain2:
    """The 2-cochain obtained by composing a degree-2 cochain with theta2."""
    if c.degree != 2:
        raise ValueError("theta2 pairs with degree-2 cochains only")
    params = c.params

    def base(q, i, j):
        slots = theta2(params, (0, q), (i, j))
        out = params.zero()
        for s in range(4):
            if not slots[s].is_zero():
                out = out + tensor_act(slots[s], c.module, c.components[s])
        return out

    return Cochain2(params, base, "explicit-table")


def _sigma_poly_elem(params: GwaParams, h: Poly, j: int) -> GwaElement:
    return params.from_poly(params.sigma_pow(h, j))


def thetaprime2(F: Cochain2, module=None) -> PerCochain:
    """Assemble the degree-2 cochain 4-tuple of F along the theta'_2 images."""
    a = F.params
    if module is None:
        module = module_plain(a)
    one, x, y, z = a.one(), a.x(), a.y(), a.z()
    lam = a.lam
    m1 = lam * F(z, x) - F(x, z)
    m2 = (1 / lam) * F(z, y) - F(y, z)
    m3 = F(y, x) + F(one, one) * a.from_poly(a.phi)
    m4 = F(x, y) + F(one, one) * a.from_poly(a.phi_bar)
    for i in range(1, a.l + 1):
        ai = a.phi[i]
        if ai == 0:
            continue
        for j in range(1, i + 1):
            m3 = m3 - ai * (F(a.z(i - j), z) * a.z(j - 1))
            m4 = m4 - ai * (F(_sigma_poly_elem(a, Poly.monomial(i - j), 1),
                             lam * z)
                            * _sigma_poly_elem(a, Poly.monomial(j - 1), 1))
    return PerCochain(a, module, 2, (m1, m2, m3, m4))


def thetaprime3(G: Cochain3, module=None) -> PerCochain:
    """Assemble the degree-3 cochain 4-tuple of G along the theta'_3 images."""
    a = G.params
    if module is None:
        module = module_plain(a)
    one, x, y, z = a.one(), a.x(), a.y(), a.z()
    lam = a.lam
    phi_el = a.from_poly(a.phi)
    phibar_el = a.from_poly(a.phi_bar)
    m1 = (G(z, y, x) - lam * G(y, z, x) + G(y, x, z)
          + G(z, one, one) * phi_el + G(one, one, z) * phi_el)
    m2 = (G(z, x, y) - (1 / lam) * G(x, z, y) + G(x, y, z)
          + G(z, one, one) * phibar_el + G(one, one, z) * phibar_el)
    m3 = (G(x, y, x) + G(x, one, one) * phi_el + G(one, one, x) * phi_el)
    m4 = G(y, x, y)
    for i in range(1, a.l + 1):
        ai = a.phi[i]
        if ai == 0:
            continue
        for j in range(1, i + 1):
            zij = a.z(i - j)
            zj1 = a.z(j - 1)
            sij = _sigma_poly_elem(a, Poly.monomial(i - j), 1)
            sj1 = _sigma_poly_elem(a, Poly.monomial(j - 1), 1)
            m1 = m1 - ai * (G(z, zij, z) * zj1)
            m2 = m2 - ai * (G(z, sij, lam * z) * sj1)
            m3 = m3 - ai * ((G(x, zij, z) - G(sij, x, z)
                             + G(sij, lam * z, x)) * zj1)
            m4 = m4 - ai * ((G(y, sij, lam * z) - G(zij, y, lam * z)
                             + G(zij, z, y)) * sj1)
    return PerCochain(a, module, 3, (m1, m2, m3, m4))


# ---------------------------------------------------------------------------
# Reconstruction from coboundary data
# ---------------------------------------------------------------------------

def determine_F(params: GwaParams, target_b, vxz: GwaElement, vxy: GwaElement,
                vyz: GwaElement, vyx: GwaElement) -> Cochain2:
    """The unique unit-normalized z-left-linear 2-cochain with the given
    coboundary and generator values.

    Values are filled by recursion: pure z-powers first, then pure x/y
    powers, then mixed second arguments, then induction on the left
    x/y-power.  The y-side recursions mirror the x-side ones (swap x and
    y, invert sigma, exchange phi with its shift); their correctness is
    certified by sampling the coboundary of the output.
    """
    zero = params.zero()
    one, x, y, z = params.one(), params.x(), params.y(), params.z()
    memo: dict[tuple[int, int, int], GwaElement] = {}

    def tb(u, v, w):
        if target_b is None:
            return zero
        return target_b.evaluate(u, v, w)

    def ev_right(q, elem):
        out = zero
        for (i, j), c in elem.terms.items():
            out = out + c * val(q, i, j)
        return out

    def val(q, i, j):
        if q == 0 or (i == 0 and (j == 0 or (j > 0) == (q > 0))):
            return zero
        key = (q, i, j)
        got = memo.get(key)
        if got is not None:
            return got
        if q == 1:
            if j == 0:  # F(x, z^i)
                if i == 1:
                    out = vxz
                else:
                    out = (tb(x, z, params.z(i - 1))
                           + _sigma_poly_elem(params, Poly.z(), 1)
                           * val(1, i - 1, 0)
                           + vxz * params.z(i - 1))
            elif j > 0:  # F(x, z^i x^j), i >= 1
                out = tb(x, params.z(i), params.x(j)) + val(1, i, 0) * params.x(j)
            elif i == 0:  # F(x, y^J)
                J = -j
                if J == 1:
                    out = vxy
                else:
                    out = tb(x, y, params.y(J - 1)) + vxy * params.y(J - 1)
            else:  # F(x, z^i y^J)
                J = -j
                out = (tb(x, params.z(i), params.y(J))
                       + _sigma_poly_elem(params, Poly.monomial(i), 1)
                       * val(1, 0, j)
                       + val(1, i, 0) * params.y(J))
        elif q > 1:
            xq1 = params.x(q - 1)
            if j >= 0:  # F(x^q, z^i x^j)
                shifted = params.from_poly(
                    params.sigma_pow(Poly.monomial(i), 1), j + 1)
                out = (xq1 * val(1, i, j) + ev_right(q - 1, shifted)
                       - tb(xq1, x, params.monomial(i, j)))
            else:  # F(x^q, z^i y^J)
                J = -j
                shifted = params.from_poly(
                    params.sigma_pow(Poly.monomial(i), 1) * params.phi_bar,
                    -(J - 1))
                out = (ev_right(q - 1, shifted) + xq1 * val(1, i, j)
                       - tb(xq1, x, params.monomial(i, j)))
        elif q == -1:
            if j == 0:  # F(y, z^i)
                if i == 1:
                    out = vyz
                else:
                    out = (tb(y, z, params.z(i - 1))
                           + _sigma_poly_elem(params, Poly.z(), -1)
                           * val(-1, i - 1, 0)
                           + vyz * params.z(i - 1))
            elif j < 0:  # F(y, z^i y^J), i >= 1
                J = -j
                out = tb(y, params.z(i), params.y(J)) + val(-1, i, 0) * params.y(J)
            elif i == 0:  # F(y, x^j)
                if j == 1:
                    out = vyx
                else:
                    out = tb(y, x, params.x(j - 1)) + vyx * params.x(j - 1)
            else:  # F(y, z^i x^j)
                out = (tb(y, params.z(i), params.x(j))
                       + _sigma_poly_elem(params, Poly.monomial(i), -1)
                       * val(-1, 0, j)
                       + val(-1, i, 0) * params.x(j))
        else:  # q < -1
            Q = -q
            yq1 = params.y(Q - 1)
            if j <= 0:  # F(y^Q, z^i y^J)
                J = -j
                shifted = params.from_poly(
                    params.sigma_pow(Poly.monomial(i), -1), -(J + 1))
                out = (yq1 * val(-1, i, j) + ev_right(-(Q - 1), shifted)
                       - tb(yq1, y, params.monomial(i, j)))
            else:  # F(y^Q, z^i x^j)
                shifted = params.from_poly(
                    params.sigma_pow(Poly.monomial(i), -1) * params.phi,
                    j - 1)
                out = (ev_right(-(Q - 1), shifted) + yq1 * val(-1, i, j)
                       - tb(yq1, y, params.monomial(i, j)))
        memo[key] = out
        return out

    return Cochain2(params, val, "determined-from-generators")


def preserves_gamma(F: Cochain2, window: int) -> bool:
    """Filtration bound F(b1, b2) in Gamma^{||b1|| + ||b2||} on a window."""
    params = F.params
    for pq1 in basis_window(params, window):
        w1 = params.weight(*pq1)
        for pq2 in basis_window(params, window - w1):
            val = F.evaluate(params.monomial(*pq1), params.monomial(*pq2))
            if filtration_degree(val) > w1 + params.weight(*pq2):
                return False
    return True
