"""The poset of semi-conformal points and the orthogonal group acting on it."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from heisenberg_sc.fock import FockElement
from heisenberg_sc.linalg import (
    MalformedInputError,
    Matrix,
    Subspace,
    as_vector,
    inverse,
    kernel,
    subspace_regular,
)
from heisenberg_sc.modes import vertex_mode
from heisenberg_sc.scalars import ZERO
from heisenberg_sc.semiconformal import QuadraticVector, ScPoint

BOTTOM, MINIMAL, MAXIMAL, TOP, INTERIOR = "bottom", "minimal", "maximal", "top", "interior"


def _same_ambient(p1: ScPoint, p2: ScPoint) -> None:
    if p1.d != p2.d or p1.Lambda != p2.Lambda:
        raise MalformedInputError("points live over different (d, Lambda)")


def involution(p: ScPoint) -> ScPoint:
    """``w' -> w - w'``: ``A -> I - A`` and ``B -> Lambda^T - B``."""
    A = Matrix.identity(p.d) - p.A
    B = tuple(l - b for l, b in zip(p.Lambda, p.B))
    return ScPoint.from_quadratic(QuadraticVector(p.d, A, B, p.Lambda))


def leq_matrix(p1: ScPoint, p2: ScPoint) -> bool:
    """``A1 A2 = A2 A1 = A1``."""
    _same_ambient(p1, p2)
    return p1.A @ p2.A == p1.A and p2.A @ p1.A == p1.A


def image_and_kernel(p: ScPoint) -> tuple[Subspace, Subspace]:
    d = p.d
    im = Subspace.span(d, [p.A.column(j) for j in range(d)])
    ker = Subspace(d, tuple(kernel(p.A)))
    return im, ker


def leq_by_images(p1: ScPoint, p2: ScPoint) -> bool:
    """``Im A1`` contained in ``Im A2``, decided by row reduction."""
    _same_ambient(p1, p2)
    return image_and_kernel(p1)[0] <= image_and_kernel(p2)[0]


def leq_direct(p1: ScPoint, p2: ScPoint, degree_bound: int = 4) -> bool:
    """Order test through the mode equations, with ``L^2`` from ``p2`` and ``L^1`` from ``p1``."""
    _same_ambient(p1, p2)
    w1, w2 = p1.element(), p2.element()

    def L2(n):
        return vertex_mode(w2, n + 1, w1)

    def L1(n):
        return vertex_mode(w1, n + 1, w1)

    zero = FockElement.zero(p1.d)
    if L2(0) != w1.scale(2) or L2(1) != zero:
        return False
    if L2(2) != L1(2) or L2(-1) != L1(-1):
        return False
    return all(L2(n) == zero for n in range(3, max(4, degree_bound) + 1))


def projector_from_subspace(S: Subspace, Lambda: Sequence | None = None) -> ScPoint:
    """The self-adjoint projector onto a regular subspace: ``V (V^T V)^{-1} V^T``."""
    d = S.ambient_dim
    if not S.basis:
        return ScPoint.from_projector(Matrix.zeros(d), Lambda)
    if not subspace_regular(S):
        raise MalformedInputError("subspace is not regular: the form degenerates on it")
    V = S.matrix()
    A = V @ inverse(V.T() @ V) @ V.T()
    return ScPoint.from_projector(A, Lambda)


@dataclass(frozen=True)
class OrthogonalElement:
    o: Matrix

    def __post_init__(self):
        o = self.o if isinstance(self.o, Matrix) else Matrix(self.o)
        n = o.rows
        if not o.is_square() or o.T() @ o != Matrix.identity(n) or o @ o.T() != Matrix.identity(n):
            raise MalformedInputError("matrix is not orthogonal: o^T o != I")
        object.__setattr__(self, "o", o)

    @classmethod
    def rotation(cls, d: int, i: int, j: int, cos, sin) -> "OrthogonalElement":
        """Plane rotation in coordinates ``(i, j)`` (0-based) with ``cos^2 + sin^2 = 1``."""
        rows = Matrix.identity(d).tolist()
        rows[i][i] = rows[j][j] = as_vector([cos])[0]
        rows[i][j] = -as_vector([sin])[0]
        rows[j][i] = as_vector([sin])[0]
        return cls(Matrix(rows))

    @classmethod
    def cayley(cls, K: Matrix) -> "OrthogonalElement":
        """``(I - K)(I + K)^{-1}`` for skew-symmetric ``K``."""
        if K.T() != -K:
            raise MalformedInputError("Cayley transform needs a skew-symmetric matrix")
        I = Matrix.identity(K.rows)
        return cls((I - K) @ inverse(I + K))

    @classmethod
    def random(cls, d: int, rng: random.Random, height: int = 3) -> "OrthogonalElement":
        """A random rational orthogonal matrix from a small-height skew matrix."""
        rows = [[ZERO] * d for _ in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                x = Fraction(rng.randint(-height, height), rng.randint(1, height))
                rows[i][j] = x
                rows[j][i] = -x
        o = cls.cayley(Matrix(rows))
        if rng.random() < 0.5:
            flip = Matrix.diag([-1] + [1] * (d - 1))
            o = cls(flip @ o.o)
        return o


def conjugate(p: ScPoint, o: OrthogonalElement | Matrix) -> ScPoint:
    """``A -> o A o^T``; for ``Lambda != 0`` only stabilizers of ``Lambda`` act."""
    if not isinstance(o, OrthogonalElement):
        o = OrthogonalElement(o)
    m = o.o
    if m.rows != p.d:
        raise MalformedInputError("orthogonal element has the wrong size")
    if any(p.Lambda) and m.apply(p.Lambda) != tuple(p.Lambda):
        raise MalformedInputError("for Lambda != 0 the element must fix Lambda")
    A = m @ p.A @ m.T()
    return ScPoint.from_projector(A, p.Lambda)


@dataclass(frozen=True)
class Chain:
    points: tuple

    def __post_init__(self):
        ranks = [p.rank_of_A for p in self.points]
        if any(a >= b for a, b in zip(ranks, ranks[1:])):
            raise MalformedInputError("chain ranks must strictly increase")
        for a, b in zip(self.points, self.points[1:]):
            if not leq_matrix(a, b):
                raise MalformedInputError("adjacent chain points are not ordered")

    @property
    def length(self) -> int:
        return len(self.points) - 1

    def is_complete(self) -> bool:
        if not self.points:
            return False
        d = self.points[0].d
        return self.points[0].A.is_zero() and self.points[-1].A == Matrix.identity(d)

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "complete": self.is_complete(),
            "points": [p.to_json() for p in self.points],
        }


def coordinate_projector(d: int, k: int) -> Matrix:
    return Matrix.diag([1] * k + [0] * (d - k))


def build_chain(d: int, degree_bound: int = 4) -> Chain:
    """``0 < diag(1,0,..) < diag(1,1,0,..) < ... < I`` checked by both order tests."""
    pts = tuple(ScPoint.from_projector(coordinate_projector(d, k)) for k in range(d + 1))
    for a, b in zip(pts, pts[1:]):
        if not (leq_matrix(a, b) and leq_direct(a, b, degree_bound)):
            raise AssertionError("coordinate chain failed an order test")
        if leq_matrix(b, a) or leq_direct(b, a, degree_bound):
            raise AssertionError("coordinate chain is not strict")
    return Chain(pts)


def is_minimal(p: ScPoint) -> bool:
    """Nonzero and minimal among nonzero points."""
    return p.rank_of_A == 1


def is_maximal(p: ScPoint) -> bool:
    """Different from the conformal vector and maximal among such points."""
    return p.rank_of_A == p.d - 1


def classify_extremal(p: ScPoint) -> str:
    """Position in the poset by rank.

    Rank 0 and d take precedence. For d = 2 rank-one points are both minimal
    and maximal; they are reported as minimal, use :func:`is_maximal` for the
    other role.
    """
    r, d = p.rank_of_A, p.d
    if r == 0:
        return BOTTOM
    if r == d:
        return TOP
    if r == 1:
        return MINIMAL
    if r == d - 1:
        return MAXIMAL
    return INTERIOR


def classification_report(points: Sequence[ScPoint]) -> dict:
    return {
        "points": [
            {"A": p.A.to_json(), "rank": p.rank_of_A, "class": classify_extremal(p)} for p in points
        ],
        "ranks_realized": sorted({p.rank_of_A for p in points}),
    }
