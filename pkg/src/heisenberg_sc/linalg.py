"""Exact dense and sparse linear algebra over the Gaussian rationals.

The bilinear form on coordinate space is the standard symmetric one,
``<u, v> = sum_k u_k v_k`` (no complex conjugation), matching a fixed
orthonormal basis of the underlying orthogonal space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from heisenberg_sc.scalars import ONE, ZERO, GaussianRational, gq


class MalformedInputError(ValueError):
    """Raised when an argument has the wrong shape or violates a precondition."""


Vector = tuple  # tuple of GaussianRational


def as_vector(values: Iterable) -> Vector:
    return tuple(gq(x) for x in values)


def dot(u: Sequence[GaussianRational], v: Sequence[GaussianRational]) -> GaussianRational:
    if len(u) != len(v):
        raise MalformedInputError(f"length mismatch {len(u)} != {len(v)}")
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


class Matrix:
    """Immutable dense matrix with :class:`GaussianRational` entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(gq(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise MalformedInputError("ragged matrix rows")
        self._data = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def _wrap(cls, rows: tuple, cols: int) -> "Matrix":
        m = cls.__new__(cls)
        m._data = rows
        m.rows = len(rows)
        m.cols = cols
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._wrap(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._wrap(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        e = [gq(x) for x in entries]
        return cls._wrap(
            tuple(tuple(e[i] if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not columns:
            return cls._wrap(tuple(() for _ in range(nrows or 0)), 0)
        n = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(n)])

    @classmethod
    def outer(cls, u: Sequence, v: Sequence) -> "Matrix":
        return cls([[gq(a) * gq(b) for b in v] for a in u])

    # -- access -----------------------------------------------------------

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[GaussianRational]]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- algebra ----------------------------------------------------------

    def T(self) -> "Matrix":
        return Matrix._wrap(
            tuple(tuple(self._data[i][j] for i in range(self.rows)) for j in range(self.cols)),
            self.rows,
        )

    transpose = T

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def scale(self, c) -> "Matrix":
        c = gq(c)
        return Matrix._wrap(tuple(tuple(c * a for a in r) for r in self._data), self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise MalformedInputError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        return Matrix._wrap(
            tuple(tuple(dot(r, c) for c in ocols) for r in self._data), other.cols
        )

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise MalformedInputError("vector length does not match column count")
        return tuple(dot(r, v) for r in self._data)

    def trace(self) -> GaussianRational:
        if not self.is_square():
            raise MalformedInputError("trace of a non-square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self._data[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(not a for r in self._data for a in r)

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise MalformedInputError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self._data)
        return f"Matrix([{body}])"

    def to_json(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self._data]

    @classmethod
    def from_json(cls, data) -> "Matrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise MalformedInputError("matrix JSON must be an array of arrays")
        return cls([[gq(str(x)) for x in r] for r in data])


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form of ``M`` with its rank and pivot columns."""
    rows = [list(r) for r in M._data]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        if r >= M.rows:
            break
        p = next((i for i in range(r, M.rows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else ZERO for x in rows[r]]
        for i in range(M.rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Matrix._wrap(tuple(tuple(x) for x in rows), M.cols), r, pivots


def rank(M: Matrix) -> int:
    return rref(M)[1]


def kernel(M: Matrix) -> list[Vector]:
    """Basis of the right null space, one vector per free column."""
    R, rk, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * M.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(tuple(v))
    return basis


def solve(M: Matrix, b: Sequence) -> Vector | None:
    """One solution of ``M x = b`` or ``None`` if inconsistent."""
    aug = Matrix([list(M.row(i)) + [b[i]] for i in range(M.rows)])
    R, _, pivots = rref(aug)
    if M.cols in pivots:
        return None
    x = [ZERO] * M.cols
    for i, p in enumerate(pivots):
        x[p] = R[i, M.cols]
    return tuple(x)


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise MalformedInputError("inverse of a non-square matrix")
    n = M.rows
    aug = Matrix([list(M.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)])
    R, rk, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix([R.row(i)[n:] for i in range(n)])


def determinant(M: Matrix) -> GaussianRational:
    if not M.is_square():
        raise MalformedInputError("determinant of a non-square matrix")
    rows = [list(r) for r in M._data]
    n = M.rows
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def is_symmetric_idempotent(A: Matrix) -> bool:
    if not A.is_square():
        raise MalformedInputError(f"candidate matrix must be square, got {A.shape}")
    return A.T() == A and A @ A == A


def column_space_contains(M: Matrix, v: Sequence) -> bool:
    if not M.cols:
        return all(not x for x in v)
    cols = [M.column(j) for j in range(M.cols)]
    return rank(Matrix.from_columns(cols + [tuple(v)])) == rank(M)


@dataclass(frozen=True)
class Subspace:
    """A subspace of coordinate space given by a linearly independent basis."""

    ambient_dim: int
    basis: tuple

    def __post_init__(self):
        basis = tuple(as_vector(v) for v in self.basis)
        for v in basis:
            if len(v) != self.ambient_dim:
                raise MalformedInputError("basis vector has wrong length")
        object.__setattr__(self, "basis", basis)
        if basis and rank(self.matrix()) != len(basis):
            raise MalformedInputError("basis vectors are linearly dependent")

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        """Subspace spanned by arbitrary vectors (dependencies are dropped)."""
        vecs = [as_vector(v) for v in vectors]
        if not vecs:
            return cls(ambient_dim, ())
        R, rk, _ = rref(Matrix(vecs))
        return cls(ambient_dim, tuple(R.row(i) for i in range(rk)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        """Basis vectors as the columns of a matrix."""
        if not self.basis:
            return Matrix._wrap(tuple(() for _ in range(self.ambient_dim)), 0)
        return Matrix.from_columns(self.basis)

    def gram(self) -> Matrix:
        return Matrix([[dot(u, v) for v in self.basis] for u in self.basis])

    def contains(self, v: Sequence) -> bool:
        if not self.basis:
            return all(not x for x in v)
        return column_space_contains(self.matrix(), as_vector(v))

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def same_as(self, other: "Subspace") -> bool:
        return self.ambient_dim == other.ambient_dim and self.dim == other.dim and self <= other

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": [[str(x) for x in v] for v in self.basis]}


def subspace_regular(S: Subspace) -> bool:
    """Whether the standard bilinear form stays nondegenerate on ``S``."""
    if not S.basis:
        raise MalformedInputError("regularity test needs a non-empty basis")
    for v in S.basis:
        if all(not x for x in v):
            raise MalformedInputError("zero vector in basis")
    return bool(determinant(S.gram()))


def sparse_rank(columns: Sequence[dict]) -> int:
    """Rank of the vectors given as ``{row_index: value}`` dictionaries.

    Incremental echelon elimination keyed on the smallest row index; suited
    to the very sparse matrices of graded Fock-space operators.
    """
    pivots: dict = {}
    for col in columns:
        v = {k: x for k, x in col.items() if x}
        while v:
            k = min(v)
            p = pivots.get(k)
            if p is None:
                inv = v[k].inverse()
                pivots[k] = {key: x * inv for key, x in v.items()}
                break
            f = v[k]
            for key, x in p.items():
                y = v.get(key)
                y = -(f * x) if y is None else y - f * x
                if y:
                    v[key] = y
                else:
                    v.pop(key, None)
    return len(pivots)
