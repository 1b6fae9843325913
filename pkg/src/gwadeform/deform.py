"""Truncated star products deforming the algebra along its defining cocycle.

The product u * v = uv + F_1(u,v) tau + F_2(u,v) tau^2 + ... is cut off at
a fixed order N.  F_1 is pulled back from the degree-2 cocycle (f(z) in
the quantum case, f(1) in the classical case) and each higher F_n is
reconstructed from the closed-form generator values together with the
stage coboundary sum circle(F_1, F_{n-1}) + ... + circle(F_{n-1}, F_1).

Verification helpers re-check what the construction promises:
associativity of the truncated product, the four presentation relations
of the deformed algebra (with the right-hand series obtained by direct
polynomial substitution, independently of the cochains), the stagewise
obstruction identity, and preservation of the filtration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    GwaElement,
    GwaParams,
    basis_window,
    filtration_degree,
    module_plain,
)
from .errors import CommutativeAlgebraError, MixedCaseError
from .hochschild import (
    Cochain2,
    circle,
    determine_F,
    hochschild_b,
    theta2_pullback,
)
from .percomplex import contract3, f_map, per_solve_preimage
from .scalars import Poly, bezout_for_phi, rat

_ZERO = Fraction(0)


@dataclass
class TruncatedElement:
    """An element of A[tau]/(tau^{N+1}): one coefficient per tau-power."""

    algebra: GwaParams
    coefficients: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def __eq__(self, other):
        if isinstance(other, TruncatedElement):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __neg__(self):
        return TruncatedElement(self.algebra,
                                tuple(-c for c in self.coefficients))

    def __add__(self, other):
        return TruncatedElement(self.algebra,
                                tuple(a + b for a, b in
                                      zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        return self + (-other)

    def tau_times(self, tau_poly) -> "TruncatedElement":
        """Multiply by a polynomial in tau (list of scalar coefficients)."""
        zero = self.algebra.zero()
        out = [zero] * (self.order + 1)
        for k, ck in enumerate(tau_poly):
            ck = rat(ck)
            if ck == 0:
                continue
            for n, un in enumerate(self.coefficients):
                if k + n <= self.order:
                    out[k + n] = out[k + n] + ck * un
        return TruncatedElement(self.algebra, tuple(out))

    def to_json(self) -> list:
        return [c.to_json() for c in self.coefficients]


def truncated_zero(params: GwaParams, order: int) -> TruncatedElement:
    return TruncatedElement(params, tuple(params.zero() for _ in range(order + 1)))


def lift(params: GwaParams, u: GwaElement, order: int) -> TruncatedElement:
    return TruncatedElement(params, (u,) + tuple(params.zero()
                                                 for _ in range(order)))


@dataclass
class StarProduct:
    params: GwaParams
    order: int
    cochains: list  # F_1 .. F_N

    def f_n(self, n: int) -> Cochain2:
        return self.cochains[n - 1]


def _nth_derivative(h: Poly, n: int) -> Poly:
    for _ in range(n):
        h = h.derivative()
    return h


def _closed_form_datum(params: GwaParams, n: int):
    """Generator values of the stage-n cochain from the closed forms."""
    c = Fraction((-1) ** n, math.factorial(n))
    if params.is_quantum:
        vxy = params.from_poly(Poly.monomial(n, c)
                               * _nth_derivative(params.phi_bar, n))
        return (params.zero(), vxy, params.y() * params.z(), params.zero())
    vxy = c * params.from_poly(_nth_derivative(params.phi_bar, n))
    return (params.zero(), vxy, params.zero(), params.zero())


def build_f1(params: GwaParams) -> Cochain2:
    """First-order cochain via the cocycle -> column-pullback -> rebuild path."""
    seed = params.z() if params.is_quantum else params.one()
    c = f_map(seed, params, module_plain(params))
    P = theta2_pullback(c)
    x, y, z = params.x(), params.y(), params.z()
    return determine_F(params, None, P(x, z), P(x, y), P(y, z), P(y, x))


def build_star(params: GwaParams, order: int = 4) -> StarProduct:
    if not params.is_noncommutative:
        raise CommutativeAlgebraError("the commutative case has no "
                                      "distinguished deformation here")
    if not (params.is_quantum or params.is_classical):
        raise MixedCaseError("lambda != 1 with eta != 0 is not handled; "
                             "normalize to the quantum form first")
    if not 1 <= order <= 8:
        raise ValueError("order must be between 1 and 8")
    cochains = [build_f1(params)]
    for n in range(2, order + 1):
        target = circle(cochains[0], cochains[n - 2])
        for i in range(2, n):
            target = target + circle(cochains[i - 1], cochains[n - i - 1])
        vxz, vxy, vyz, vyx = _closed_form_datum(params, n)
        cochains.append(determine_F(params, target, vxz, vxy, vyz, vyx))
    return StarProduct(params, order, cochains)


def star(sp: StarProduct, u: GwaElement, v: GwaElement) -> TruncatedElement:
    coeffs = [u * v]
    for n in range(1, sp.order + 1):
        coeffs.append(sp.f_n(n).evaluate(u, v))
    return TruncatedElement(sp.params, tuple(coeffs))


def star_mul(sp: StarProduct, U: TruncatedElement,
             V: TruncatedElement) -> TruncatedElement:
    """The tau-bilinear extension of the star product to truncated elements."""
    N = sp.order
    out = [sp.params.zero()] * (N + 1)
    for a, ua in enumerate(U.coefficients):
        if ua.is_zero():
            continue
        for b, vb in enumerate(V.coefficients):
            if vb.is_zero() or a + b > N:
                continue
            prod = star(sp, ua, vb)
            for m, w in enumerate(prod.coefficients):
                if a + b + m <= N:
                    out[a + b + m] = out[a + b + m] + w
    return TruncatedElement(sp.params, tuple(out))


def check_assoc(sp: StarProduct, u: GwaElement, v: GwaElement,
                w: GwaElement) -> TruncatedElement:
    """(u * v) * w - u * (v * w); zero iff the truncated product associates."""
    left = star_mul(sp, star(sp, u, v), lift(sp.params, w, sp.order))
    right = star_mul(sp, lift(sp.params, u, sp.order), star(sp, v, w))
    return left - right


def _binomial_shift_series(params: GwaParams, order: int,
                           scale_z: bool) -> TruncatedElement:
    """Taylor coefficients of phi_bar((1-tau) z) or phi_bar(z - tau).

    Computed by direct binomial expansion of the shifted argument, with
    no reference to the star-product cochains.
    """
    coeffs = []
    pb = params.phi_bar
    for n in range(order + 1):
        acc = Poly.zero()
        for k, bk in enumerate(pb.coeffs):
            if bk == 0 or k < n:
                continue
            c = bk * math.comb(k, n) * (-1) ** n
            acc = acc + Poly.monomial(k if scale_z else k - n, c)
        coeffs.append(params.from_poly(acc))
    return TruncatedElement(params, tuple(coeffs))


def check_relations(sp: StarProduct) -> dict:
    """Residuals of the four defining relations of the deformed presentation."""
    a = sp.params
    x, y, z = a.x(), a.y(), a.z()
    N = sp.order
    out = {}
    if a.is_quantum:
        lam = a.lam
        out["f1"] = star(sp, x, z) - star(sp, z, x).tau_times([lam, -lam])
        # (1 - tau) (y * z) = lambda^{-1} (z * y), the cleared form of f2
        out["f2"] = (star(sp, y, z).tau_times([1, -1])
                     - star(sp, z, y).tau_times([1 / lam]))
        out["f3"] = star(sp, x, y) - _binomial_shift_series(a, N, True)
    else:
        eta = a.eta
        zp = lift(a, a.from_poly(Poly([eta, 1])), N)
        zm = lift(a, a.from_poly(Poly([-eta, 1])), N)
        tau_one = TruncatedElement(a, tuple(
            a.one() if n == 1 else a.zero() for n in range(N + 1)))
        out["f1"] = star(sp, x, z) - star_mul(sp, zp - tau_one, lift(a, x, N))
        out["f2"] = star(sp, y, z) - star_mul(sp, zm + tau_one, lift(a, y, N))
        out["f3"] = star(sp, x, y) - _binomial_shift_series(a, N, False)
    out["f4"] = star(sp, y, x) - lift(a, a.from_poly(a.phi), N)
    return out


def _triples(params: GwaParams, window: int):
    for t1 in basis_window(params, window):
        w1 = params.weight(*t1)
        for t2 in basis_window(params, window - w1):
            w2 = params.weight(*t2)
            for t3 in basis_window(params, window - w1 - w2):
                yield t1, t2, t3


def check_obstruction(sp: StarProduct, n: int, window: int) -> dict:
    """Stage-n identity: sum of circle products equals the coboundary of F_n."""
    if not 2 <= n <= sp.order:
        raise ValueError("n must lie between 2 and the truncation order")
    a = sp.params
    lhs = circle(sp.f_n(1), sp.f_n(n - 1))
    for i in range(2, n):
        lhs = lhs + circle(sp.f_n(i), sp.f_n(n - i))
    rhs = hochschild_b(sp.f_n(n))
    checked = 0
    failures = []
    for t1, t2, t3 in _triples(a, window):
        u, v, w = a.monomial(*t1), a.monomial(*t2), a.monomial(*t3)
        if not (lhs(u, v, w) - rhs(u, v, w)).is_zero():
            failures.append({"triple": [t1, t2, t3]})
            if len(failures) >= 5:
                break
        checked += 1
    return {"n": n, "window": window, "triples": checked,
            "failures": failures, "pass": not failures}


def check_local_finiteness(sp: StarProduct, window: int) -> dict:
    """Every F_n keeps basis pairs inside their combined filtration level."""
    a = sp.params
    checked = 0
    failures = []
    for pq1 in basis_window(a, window):
        w1 = a.weight(*pq1)
        for pq2 in basis_window(a, window - w1):
            bound = w1 + a.weight(*pq2)
            for n in range(1, sp.order + 1):
                val = sp.f_n(n).evaluate(a.monomial(*pq1), a.monomial(*pq2))
                if filtration_degree(val) > bound:
                    failures.append({"pair": [pq1, pq2], "n": n})
                    if len(failures) >= 5:
                        break
            checked += 1
    return {"window": window, "pairs": checked,
            "failures": failures, "pass": not failures}


def discover_f2(params: GwaParams, sample_window: int = 6) -> dict:
    """Re-derive the stage-2 generator values from the obstruction cocycle.

    The circle square of F_1 is assembled into a degree-3 cocycle,
    contracted to a degree-2 preimage (n1, n2, n3, n4), and the system
    forced by unit normalization and z-left-linearity is solved:
    F_2(x,z) = -n1, F_2(y,z) = -n2, F_2(y,x) = n3, F_2(x,y) = n4.
    Requires phi without multiple roots (the contraction needs it).
    """
    from .hochschild import thetaprime3

    F1 = build_f1(params)
    obstruction = thetaprime3(circle(F1, F1))
    bez = bezout_for_phi(params.phi)
    n1, n2, n3, n4 = contract3(obstruction, bez).components
    derived = {"vxz": -n1, "vyz": -n2, "vyx": n3, "vxy": n4}
    tz, txy, tyz, tyx = _closed_form_datum(params, 2)
    closed_form = {"vxz": tz, "vxy": txy, "vyz": tyz, "vyx": tyx}
    F2 = determine_F(params, circle(F1, F1), derived["vxz"], derived["vxy"],
                     derived["vyz"], derived["vyx"])
    target = circle(F1, F1)
    bF2 = hochschild_b(F2)
    consistent = all(
        (bF2(params.monomial(*t1), params.monomial(*t2), params.monomial(*t3))
         - target(params.monomial(*t1), params.monomial(*t2),
                  params.monomial(*t3))).is_zero()
        for t1, t2, t3 in _triples(params, sample_window))
    return {
        "derived": {k: v.to_json() for k, v in derived.items()},
        "closed_form": {k: v.to_json() for k, v in closed_form.items()},
        "matches_closed_form": all(derived[k] == closed_form[k] for k in derived),
        "coboundary_consistent": consistent,
    }


def f1_noncoboundary_evidence(params: GwaParams, window: int | None = None) -> dict:
    """Windowed search for a degree-1 preimage of the defining cocycle.

    Finding none is one-sided evidence that the first-order deformation
    is nontrivial; a finite window cannot prove it outright.
    """
    if window is None:
        window = 2 * params.l + 8
    seed = params.z() if params.is_quantum else params.one()
    target = f_map(seed, params, module_plain(params))
    found = per_solve_preimage(target, window)
    return {"window": window, "preimage_found": found is not None,
            "one_sided": True, "pass": found is None}
