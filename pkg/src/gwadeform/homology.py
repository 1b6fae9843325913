"""Zeroth Hochschild homology with twisted coefficients: M / [A, M].

The twisted-commutator span is truncated to a filtration window.  Every
generator b.m - m.b (actions through the module twists) is supported in a
single x-column, so the span decomposes as a direct sum over columns and
each column keeps its own small echelon basis of z-coefficient vectors.

Closed-form predictions: the classical case keeps z^0 .. z^{l-2}; the
quantum case keeps z^{xi(i)} for i <= l - R together with a periodic
family z^{j+1} x_k governed by the multiplicative order e of lambda.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    BimoduleSpec,
    GwaElement,
    GwaParams,
    basis_window,
    bimodule_act,
    module_nu,
)
from .errors import CommutativeAlgebraError, MixedCaseError
from .linalg import Echelon
from .scalars import Poly, resultant_power_map, squarefree_part

_ZERO = Fraction(0)


class TruncatedSubspace:
    """Windowed span of single-column vectors, echelonized per column."""

    def __init__(self, params: GwaParams, window: int):
        self.params = params
        self.window = window
        self.columns: dict[int, Echelon] = {}

    def _column_dim(self, q: int) -> int:
        return self.window - (self.params.l + 1) * abs(q) + 1

    def _column(self, q: int) -> Echelon:
        ech = self.columns.get(q)
        if ech is None:
            ech = Echelon(self._column_dim(q))
            self.columns[q] = ech
        return ech

    def _split(self, u: GwaElement) -> dict[int, list]:
        parts: dict[int, list] = {}
        for (p, q), c in u.terms.items():
            if self.params.weight(p, q) > self.window:
                raise ValueError("element outside the window")
            vec = parts.get(q)
            if vec is None:
                vec = [_ZERO] * self._column_dim(q)
                parts[q] = vec
            vec[p] = c
        return parts

    def add(self, u: GwaElement) -> bool:
        grew = False
        for q, vec in self._split(u).items():
            if self._column(q).add(vec):
                grew = True
        return grew

    def contains(self, u: GwaElement) -> bool:
        try:
            parts = self._split(u)
        except ValueError:
            return False
        return all(self._column(q).contains(vec) for q, vec in parts.items())

    @property
    def rank(self) -> int:
        return sum(e.rank for e in self.columns.values())

    def row_elements(self):
        for q, ech in self.columns.items():
            for row in ech.rows:
                yield GwaElement(self.params,
                                 {(p, q): c for p, c in enumerate(row) if c != 0})

    def copy(self) -> "TruncatedSubspace":
        out = TruncatedSubspace(self.params, self.window)
        for u in self.row_elements():
            out.add(u)
        return out

    def subset_of(self, other: "TruncatedSubspace") -> bool:
        return all(other.contains(u) for u in self.row_elements())


def commutator_span(params: GwaParams, module: BimoduleSpec,
                    window: int) -> TruncatedSubspace:
    """Span of b.m - m.b over basis pairs with ||b|| + ||m|| <= window."""
    span = TruncatedSubspace(params, window)
    one = params.one()
    outer = basis_window(params, window)
    for pq_b in outer:
        b = params.monomial(*pq_b)
        wb = params.weight(*pq_b)
        for pq_m in basis_window(params, window - wb):
            m = params.monomial(*pq_m)
            c = bimodule_act(module, b, m, one) - bimodule_act(module, one, m, b)
            if not c.is_zero():
                span.add(c)
    return span


def compute_e(lam) -> int:
    """Multiplicative order of lambda over the rationals (0 if infinite)."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    if lam == 1:
        return 1
    if lam == -1:
        return 2
    return 0


def compute_R(phi: Poly, e: int) -> int:
    """Number of distinct values among the e-th powers of nonzero roots."""
    if phi.degree == 0:
        return 0
    if e == 0:
        # z_i^0 = 1 for every nonzero root: R = 1 iff a nonzero root exists.
        s = squarefree_part(phi)
        return 0 if s in (Poly.one(), Poly.z()) else 1
    n = squarefree_part(resultant_power_map(phi, e))
    if n.degree <= 0:
        return 0
    return n.degree - (1 if n(0) == 0 else 0)


def xi(i: int, e: int) -> int:
    """Exponent map for the quantum finite part."""
    if i < 1:
        raise ValueError("i must be positive")
    if i == 1:
        return 0
    if e == 0:
        return i
    if e == 1:
        raise ValueError("xi is undefined for i >= 2 when e = 1")
    k, c = divmod(i - 2, e - 1)
    c += 2
    return k * e + c


@dataclass
class H0Prediction:
    kind: str  # "quantum" | "classical"
    e: int
    R: int
    finite_basis: list[int]  # z-exponents
    periodic: bool

    def survivors_in_window(self, params: GwaParams, window: int):
        out = [(i, 0) for i in self.finite_basis if i <= window]
        if self.periodic:
            step = self.e if self.e else None
            if step is None:
                if 1 <= window:
                    out.append((1, 0))
            else:
                w = params.l + 1
                j = 0
                while j + 1 <= window:
                    kmax = (window - (j + 1)) // w
                    for k in range(-kmax, kmax + 1):
                        if k % step == 0:
                            out.append((j + 1, k))
                    j += step
        return sorted(set(out), key=lambda t: (t[1], t[0]))

    def to_json(self) -> dict:
        return {"kind": self.kind, "e": self.e, "R": self.R,
                "finite_basis": self.finite_basis,
                "periodic": ({"j": f"{self.e}N", "k": f"{self.e}Z"}
                             if self.periodic and self.e else
                             ({"j": "{0}", "k": "{0}"} if self.periodic else None))}


def predict_h0(params: GwaParams) -> H0Prediction:
    if not params.is_noncommutative:
        raise CommutativeAlgebraError("no prediction for the commutative case")
    if params.is_classical:
        l = params.l
        return H0Prediction("classical", 1, 0,
                            list(range(l - 1)) if l >= 2 else [], False)
    if not params.is_quantum:
        raise MixedCaseError("lambda != 1 with eta != 0 is not normalized here")
    e = compute_e(params.lam)
    R = compute_R(params.phi, e)
    finite = [xi(i, e) for i in range(1, params.l - R + 1)]
    return H0Prediction("quantum", e, R, finite, True)


def compare_h0(params: GwaParams, window: int | None = None) -> dict:
    """Predicted basis of M/[A, M^nu] against the windowed commutator span.

    Survivor checks are one-sided (non-membership at a finite window).
    A non-predicted monomial is certified once its class is expressible in
    the predicted basis modulo the span; "strictly_zero" marks the ones
    lying in the span itself.
    """
    pred = predict_h0(params)
    if window is None:
        window = max(2 * params.l + 8, 12)
    mod = module_nu(params)
    escalations = [window, window + params.l + 2, window + 2 * params.l + 4]
    spans = {}

    def span_at(w):
        if w not in spans:
            spans[w] = commutator_span(params, mod, w)
        return spans[w]

    augmented_spans = {}

    def augmented_at(w):
        if w not in augmented_spans:
            aug = span_at(w).copy()
            for pq_s in pred.survivors_in_window(params, w):
                aug.add(params.monomial(*pq_s))
            augmented_spans[w] = aug
        return augmented_spans[w]

    base = span_at(escalations[0])
    survivors = pred.survivors_in_window(params, window)
    survivor_report = []
    independence = base.copy()
    for pq in survivors:
        u = params.monomial(*pq)
        survivor_report.append({"monomial": {"p": pq[0], "q": pq[1]},
                                "in_span": base.contains(u),
                                "independent": independence.add(u)})
    non_predicted = []
    predicted_set = set(survivors)
    for pq in basis_window(params, window):
        if pq in predicted_set:
            continue
        u = params.monomial(*pq)
        entry = {"monomial": {"p": pq[0], "q": pq[1]}, "certified": False,
                 "strictly_zero": False, "window": None}
        for w in escalations:
            if span_at(w).contains(u):
                entry.update(certified=True, strictly_zero=True, window=w)
                break
            if augmented_at(w).contains(u):
                entry.update(certified=True, strictly_zero=False, window=w)
                break
        non_predicted.append(entry)
    ok = (all(s["independent"] and not s["in_span"] for s in survivor_report)
          and all(n["certified"] for n in non_predicted))
    return {
        "prediction": pred.to_json(),
        "window": window,
        "survivors": survivor_report,
        "non_predicted": non_predicted,
        "dimension": {"window_dim": len(basis_window(params, window)),
                      "span_rank": base.rank,
                      "survivor_count": len(survivors)},
        "pass": ok,
    }
