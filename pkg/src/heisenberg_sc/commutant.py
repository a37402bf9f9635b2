"""Graded commutants of semi-conformal points, computed as kernels on each weight space.

With ``B = 0`` the weight-raising operator ``L'(-1)`` of ``1/2 h(-1)^T A h(-1) 1``
is ``sum_{i,j} A_ij sum_{k>=1} h_i(-k-1) h_j(k)``: every factor ``h_j(-k)`` of a
monomial is replaced by ``k * sum_i A_ij h_i(-k-1)``. The commutant of
``<w'>`` is ``Ker L'(-1)`` and the double commutant ``Ker (L(-1) - L'(-1))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from heisenberg_sc import fock
from heisenberg_sc.fock import basis_of_degree
from heisenberg_sc.linalg import MalformedInputError, Matrix, Subspace, kernel, sparse_rank
from heisenberg_sc.modes import operator_matrix_columns, virasoro_mode
from heisenberg_sc.partitions import colored_partition_numbers, convolve
from heisenberg_sc.scalars import ZERO
from heisenberg_sc.semiconformal import ScPoint
from heisenberg_sc.variety import image_and_kernel

Which = Literal["Lprime(-1)", "L(-1)-Lprime(-1)"]
LPRIME = "Lprime(-1)"
COMPLEMENT = "L(-1)-Lprime(-1)"


class PreconditionViolation(ValueError):
    """The input lies outside the situation a check is stated for."""


@dataclass(frozen=True)
class GradedMap:
    source_degree: int
    target_degree: int
    matrix: Matrix


def _require_lambda_zero(p: ScPoint) -> None:
    if any(p.Lambda):
        raise PreconditionViolation("commutant computations are stated for Lambda = 0")


def _shift_matrix(p: ScPoint, which: str):
    if which == LPRIME:
        return p.A
    if which == COMPLEMENT:
        return Matrix.identity(p.d) - p.A
    raise MalformedInputError(f"unknown operator {which!r}")


def shift_operator_columns(M: Matrix, d: int, n: int) -> list[dict]:
    """Sparse columns of ``sum_{i,j} M_ij sum_{k>=1} h_i(-k-1) h_j(k)`` on ``V_n``."""
    src = basis_of_degree(d, n)
    tgt = basis_of_degree(d, n + 1).index
    cols = []
    for mono in src:
        col: dict = {}
        seen = set()
        for pos, (k, j) in enumerate(mono):
            if (k, j) in seen:
                continue
            seen.add((k, j))
            mult = k * mono.count((k, j))
            rest = mono[:pos] + mono[pos + 1 :]
            for i in range(1, d + 1):
                c = M[i - 1, j - 1]
                if not c:
                    continue
                row = tgt[fock.create(rest, k + 1, i)]
                t = col.get(row, ZERO) + c * mult
                if t:
                    col[row] = t
                else:
                    col.pop(row, None)
        cols.append(col)
    return cols


def _columns_to_matrix(cols: list[dict], nrows: int) -> Matrix:
    return Matrix([[col.get(r, ZERO) for col in cols] for r in range(nrows)], cols=len(cols))


def graded_operator(p: ScPoint, which: str, n: int) -> GradedMap:
    """Matrix of ``L'(-1)`` or ``L(-1) - L'(-1)`` from ``V_n`` to ``V_{n+1}``."""
    if n < 0:
        raise MalformedInputError("degree must be non-negative")
    cols = shift_operator_columns(_shift_matrix(p, which), p.d, n)
    return GradedMap(n, n + 1, _columns_to_matrix(cols, len(basis_of_degree(p.d, n + 1))))


def graded_operator_by_modes(p: ScPoint, which: str, n: int) -> GradedMap:
    """Same matrix evaluated through the general mode calculus."""
    from heisenberg_sc.modes import conformal_vector

    omega = p.element()
    if which == COMPLEMENT:
        omega = conformal_vector(p.d, p.Lambda) - omega
    elif which != LPRIME:
        raise MalformedInputError(f"unknown operator {which!r}")
    cols = operator_matrix_columns(lambda w: virasoro_mode(omega, -1, w), p.d, n, n + 1)
    return GradedMap(n, n + 1, _columns_to_matrix(cols, len(basis_of_degree(p.d, n + 1))))


def nullity(p: ScPoint, which: str, n: int) -> int:
    cols = shift_operator_columns(_shift_matrix(p, which), p.d, n)
    return len(cols) - sparse_rank(cols)


@dataclass
class CommutantProfile:
    point: ScPoint
    degree_bound: int
    dims_commutant: list
    dims_double_commutant: list
    expected_commutant: list = field(default_factory=list)
    expected_double_commutant: list = field(default_factory=list)
    dims_total: list = field(default_factory=list)

    @property
    def matches_expected(self) -> bool:
        return (
            self.dims_commutant == self.expected_commutant
            and self.dims_double_commutant == self.expected_double_commutant
        )

    @property
    def convolution(self) -> list:
        return convolve(self.dims_commutant, self.dims_double_commutant, self.degree_bound)

    @property
    def tensor_identity_holds(self) -> bool:
        return self.convolution == self.dims_total

    def to_json(self) -> dict:
        rows = []
        for n in range(self.degree_bound + 1):
            rows.append(
                {
                    "n": n,
                    "dim_V": self.dims_total[n],
                    "commutant": {"actual": self.dims_commutant[n], "expected": self.expected_commutant[n]},
                    "double_commutant": {
                        "actual": self.dims_double_commutant[n],
                        "expected": self.expected_double_commutant[n],
                    },
                    "convolution": self.convolution[n],
                }
            )
        return {
            "point": self.point.to_json(),
            "degree_bound": self.degree_bound,
            "rank": self.point.rank_of_A,
            "table": rows,
            "matches_expected": self.matches_expected,
            "tensor_identity_holds": self.tensor_identity_holds,
        }


def commutant_dims(p: ScPoint, N: int = 6) -> CommutantProfile:
    _require_lambda_zero(p)
    d, r = p.d, p.rank_of_A
    dims_c = [nullity(p, LPRIME, n) for n in range(N + 1)]
    dims_cc = [nullity(p, COMPLEMENT, n) for n in range(N + 1)]
    return CommutantProfile(
        point=p,
        degree_bound=N,
        dims_commutant=dims_c,
        dims_double_commutant=dims_cc,
        expected_commutant=list(colored_partition_numbers(d - r, N)),
        expected_double_commutant=list(colored_partition_numbers(r, N)),
        dims_total=[len(basis_of_degree(d, n)) for n in range(N + 1)],
    )


def _weight1_kernel(p: ScPoint, which: str) -> Subspace:
    gm = graded_operator(p, which, 1)
    basis = basis_of_degree(p.d, 1)
    # V_1 coordinates reindexed to flavor order
    perm = [basis.index[((1, i),)] for i in range(1, p.d + 1)]
    vecs = [tuple(v[perm[i]] for i in range(p.d)) for v in kernel(gm.matrix)]
    return Subspace.span(p.d, vecs)


def weight1_identification(p: ScPoint) -> bool:
    """``Im A = Ker(L(-1) - L'(-1)) on V_1`` and ``Ker A = Ker L'(-1) on V_1``."""
    _require_lambda_zero(p)
    im, ker = image_and_kernel(p)
    return _weight1_kernel(p, COMPLEMENT).same_as(im) and _weight1_kernel(p, LPRIME).same_as(ker)


def tensor_dim_check(p: ScPoint, N: int = 6) -> bool:
    prof = commutant_dims(p, N)
    return prof.tensor_identity_holds


def dimension_criterion_check(p: ScPoint, N: int = 6) -> bool:
    """Weight-1 dimension hypotheses and the resulting graded tensor identity.

    Raises :class:`PreconditionViolation` for the bottom and top points.
    """
    _require_lambda_zero(p)
    if p.rank_of_A in (0, p.d):
        raise PreconditionViolation("needs 0 < w' < w: both weight-1 pieces must be nonzero")
    c1 = nullity(p, LPRIME, 1)
    cc1 = nullity(p, COMPLEMENT, 1)
    if c1 == 0 or cc1 == 0 or c1 + cc1 != p.d:
        return False
    return tensor_dim_check(p, N)


def l_minus_one_nullities(d: int, N: int = 6) -> list[int]:
    """Nullity of ``L(-1)`` on ``V_n`` for ``n = 0..N``."""
    M = Matrix.identity(d)
    out = []
    for n in range(N + 1):
        cols = shift_operator_columns(M, d, n)
        out.append(len(cols) - sparse_rank(cols))
    return out
