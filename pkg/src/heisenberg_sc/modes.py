"""Vertex-operator modes on the Heisenberg Fock space.

For a monomial state ``v = h_{i1}(-n1) ... h_{ik}(-nk) 1`` the field ``Y(v, z)``
is the normally ordered product of the fields
``d^{n-1}/dz^{n-1} h_i(z) / (n-1)!``, and in ``h_i(z) = sum_j h_i(j) z^{-j-1}``
the derived field carries ``h_i(j)`` with coefficient
``(-1)^{n-1} binom(j+n-1, n-1)``. The mode ``v_m`` collects the mode tuples
with ``sum_t (j_t + n_t) = m + 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

from heisenberg_sc import fock
from heisenberg_sc.fock import FockElement, basis_of_degree, weight
from heisenberg_sc.linalg import MalformedInputError
from heisenberg_sc.scalars import ZERO, GaussianRational, gq


def gbinom(x: int, r: int) -> int:
    """Binomial coefficient ``x choose r`` for any integer ``x`` and ``r >= 0``."""
    num = 1
    for t in range(r):
        num *= x - t
    return num // factorial(r)


def field_coefficient(n: int, j: int) -> int:
    """Coefficient of ``h(j) z^{-j-n}`` in ``d^{n-1} h(z) / (n-1)!``."""
    return (-1) ** (n - 1) * gbinom(j + n - 1, n - 1)


def _compositions(total: int, parts: int):
    """Tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _apply_annihilators(wmono, ops) -> dict:
    """Apply ``h_i(j)`` (all ``j >= 1``) to a monomial; returns ``{monomial: int}``."""
    cur = {wmono: 1}
    for j, i in ops:
        nxt: dict = {}
        for m, c in cur.items():
            for k, m2 in fock.annihilate(m, j, i):
                nxt[m2] = nxt.get(m2, 0) + c * k
        cur = {m: c for m, c in nxt.items() if c}
        if not cur:
            break
    return cur


@lru_cache(maxsize=None)
def monomial_mode(vmono, m: int, wmono) -> tuple:
    """``v_m w`` for monomials ``v`` and ``w``, as ``((monomial, int), ...)``."""
    k = len(vmono)
    J = m + 1 - weight(vmono)
    wt_w = weight(wmono)
    out: dict = {}
    if k == 0:
        return ((wmono, 1),) if m == -1 else ()
    for mask in range(1 << k):
        ann = [t for t in range(k) if mask >> t & 1]
        cre = [t for t in range(k) if not mask >> t & 1]
        # annihilation modes j >= 1; h(0) is the zero operator here
        for js in itertools.product(range(1, wt_w + 1), repeat=len(ann)):
            s_a = sum(js)
            if s_a > wt_w:
                continue
            # creation modes j <= -n contribute; -n < j <= -1 have zero coefficient
            excess = -(J - s_a) - sum(vmono[t][0] for t in cre)
            if excess < 0 or (not cre and excess != 0):
                continue
            coef_a = 1
            for t, j in zip(ann, js):
                coef_a *= field_coefficient(vmono[t][0], j)
            if not coef_a:
                continue
            mid = _apply_annihilators(wmono, [(j, vmono[t][1]) for t, j in zip(ann, js)])
            if not mid:
                continue
            for es in _compositions(excess, len(cre)):
                coef = coef_a
                pairs = []
                for t, e in zip(cre, es):
                    n_t, i_t = vmono[t]
                    j = -n_t - e
                    coef *= field_coefficient(n_t, j)
                    pairs.append((-j, i_t))
                if not coef:
                    continue
                for mono, c in mid.items():
                    for p in pairs:
                        mono = fock.create(mono, *p)
                    out[mono] = out.get(mono, 0) + coef * c
    return tuple((mono, c) for mono, c in out.items() if c)


def clear_caches() -> None:
    monomial_mode.cache_clear()
    fock.create.cache_clear()


def _check_pair(v: FockElement, w: FockElement) -> None:
    if not isinstance(v, FockElement) or not isinstance(w, FockElement):
        raise TypeError("vertex_mode expects FockElement arguments")
    if v.rank != w.rank:
        raise MalformedInputError(f"rank mismatch {v.rank} != {w.rank}")


def vertex_mode(v: FockElement, m: int, w: FockElement) -> FockElement:
    """The mode ``v_m`` of ``Y(v, z) = sum v_m z^{-m-1}`` applied to ``w``."""
    _check_pair(v, w)
    out: dict = {}
    for vm, a in v.terms.items():
        for wm, b in w.terms.items():
            ab = a * b
            for mono, c in monomial_mode(vm, m, wm):
                t = out.get(mono)
                t = ab * c if t is None else t + ab * c
                if t:
                    out[mono] = t
                else:
                    del out[mono]
    return FockElement._raw(v.rank, out)


def _require_weight2(omega: FockElement) -> None:
    if not omega.is_homogeneous(2):
        raise MalformedInputError(f"expected a homogeneous weight-2 vector, got weights {sorted(omega.weights())}")


def virasoro_mode(omega: FockElement, n: int, w: FockElement) -> FockElement:
    """``L'(n) w`` where ``Y(omega, z) = sum L'(n) z^{-n-2}``."""
    _require_weight2(omega)
    return vertex_mode(omega, n + 1, w)


def conformal_vector(d: int, Lambda: Sequence | None = None) -> FockElement:
    """``1/2 sum h_i(-1)^2 1 + sum Lambda_i h_i(-2) 1``."""
    Lambda = [gq(x) for x in (Lambda if Lambda is not None else [0] * d)]
    if len(Lambda) != d:
        raise MalformedInputError(f"Lambda must have length {d}")
    terms = [(((1, i), (1, i)), Fraction(1, 2)) for i in range(1, d + 1)]
    terms += [(((2, i),), lam) for i, lam in enumerate(Lambda, 1) if lam]
    return FockElement(d, terms)


class ModeOperator:
    """``w -> v_m w`` with per-monomial memoization for repeated use."""

    def __init__(self, v: FockElement, m: int):
        self.v = v
        self.m = m
        self._memo: dict = {}

    def on_monomial(self, mono) -> FockElement:
        r = self._memo.get(mono)
        if r is None:
            r = vertex_mode(self.v, self.m, FockElement._raw(self.v.rank, {mono: gq(1)}))
            self._memo[mono] = r
        return r

    def __call__(self, w: FockElement) -> FockElement:
        _check_pair(self.v, w)
        out: dict = {}
        for mono, c in w.terms.items():
            for m2, x in self.on_monomial(mono).terms.items():
                t = out.get(m2)
                t = c * x if t is None else t + c * x
                if t:
                    out[m2] = t
                else:
                    del out[m2]
        return FockElement._raw(w.rank, out)


class VirasoroFamily:
    """The operators ``L'(n)`` of a weight-2 vector, memoized by mode."""

    def __init__(self, omega: FockElement):
        _require_weight2(omega)
        self.omega = omega
        self.central_charge: GaussianRational | None = None
        self._ops: dict = {}

    def L(self, n: int) -> ModeOperator:
        op = self._ops.get(n)
        if op is None:
            op = self._ops[n] = ModeOperator(self.omega, n + 1)
        return op


@dataclass
class BracketReport:
    ok: bool
    central_charge: GaussianRational | None
    failures: list = field(default_factory=list)


def read_central_charge(omega: FockElement) -> GaussianRational | None:
    """``c'`` with ``L'(2) omega = (c'/2) 1``, or ``None`` if not a vacuum multiple."""
    x = virasoro_mode(omega, 2, omega)
    if x.is_zero():
        return ZERO
    if set(x.terms) != {()}:
        return None
    return 2 * x.terms[()]


def virasoro_bracket_check(
    omega: FockElement, degree_bound: int = 4, mode_bound: int = 3, stop_at_first: bool = False
) -> BracketReport:
    """Check ``[L'(m), L'(n)] = (m-n) L'(m+n) + (m^3-m)/12 delta_{m+n,0} c'`` on ``V_k``, ``k <= N``."""
    fam = VirasoroFamily(omega)
    c = read_central_charge(omega)
    if c is None:
        return BracketReport(False, None, [("L'(2)w' not a multiple of vacuum", 2, 2, 2, None)])
    fam.central_charge = c
    failures = []
    d = omega.rank
    rng = range(-mode_bound, mode_bound + 1)
    for k in range(degree_bound + 1):
        for mono in basis_of_degree(d, k):
            w = FockElement._raw(d, {mono: gq(1)})
            for m in rng:
                for n in rng:
                    if n < m:
                        continue  # antisymmetric in (m, n)
                    lhs = fam.L(m)(fam.L(n)(w)) - fam.L(n)(fam.L(m)(w))
                    rhs = fam.L(m + n)(w).scale(m - n)
                    if m + n == 0:
                        rhs = rhs + w.scale(c * Fraction(m**3 - m, 12))
                    if lhs != rhs:
                        failures.append((m, n, k, mono))
                        if stop_at_first:
                            return BracketReport(False, c, failures)
    return BracketReport(not failures, c, failures)


def lh_commutator_check(
    h: FockElement, degree_bound: int = 4, Lambda: Sequence | None = None, mode_bound: int = 3
) -> bool:
    """Whether ``[L(m), h_n] = -n h_{m+n}`` on ``V_k`` for ``k <= degree_bound``."""
    if not h.is_homogeneous(1):
        raise MalformedInputError("h must be a homogeneous weight-1 vector")
    d = h.rank
    fam = VirasoroFamily(conformal_vector(d, Lambda))
    hops = {n: ModeOperator(h, n) for n in range(-2 * mode_bound, 2 * mode_bound + 1)}
    rng = range(-mode_bound, mode_bound + 1)
    for k in range(degree_bound + 1):
        for mono in basis_of_degree(d, k):
            w = FockElement._raw(d, {mono: gq(1)})
            for m in rng:
                for n in rng:
                    lhs = fam.L(m)(hops[n](w)) - hops[n](fam.L(m)(w))
                    if lhs != hops[m + n](w).scale(-n):
                        return False
    return True


def operator_matrix_columns(op: Callable[[FockElement], FockElement], d: int, degree: int, target_degree: int) -> list[dict]:
    """Sparse columns ``{row: value}`` of ``op`` restricted to ``V_degree``."""
    src = basis_of_degree(d, degree)
    if target_degree < 0:
        return [{} for _ in src]
    tgt_index = basis_of_degree(d, target_degree).index
    cols = []
    for mono in src:
        img = op(FockElement._raw(d, {mono: gq(1)}))
        col = {}
        for m2, x in img.terms.items():
            if m2 not in tgt_index:
                raise MalformedInputError(f"operator image leaves degree {target_degree}")
            col[tgt_index[m2]] = x
        cols.append(col)
    return cols
