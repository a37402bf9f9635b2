"""Semi-conformal weight-2 vectors in matrix form, decided by two independent membership tests.

A weight-2 vector

    w' = sum_{i<=j} a_ij h_i(-1)h_j(-1) 1 + sum_i b_i h_i(-2) 1

is stored as the symmetric matrix ``A`` with ``A_ii = 2 a_ii`` and
``A_ij = A_ji = a_ij`` together with the column ``B = (b_1, ..., b_d)``, so that
``w' = 1/2 h(-1)^T A h(-1) 1 + h(-2)^T B 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from heisenberg_sc.fock import FockElement
from heisenberg_sc.linalg import MalformedInputError, Matrix, as_vector, dot, rank
from heisenberg_sc.modes import conformal_vector, vertex_mode, virasoro_mode
from heisenberg_sc.scalars import ZERO, GaussianRational, gq


@dataclass(frozen=True)
class QuadraticVector:
    d: int
    A: Matrix
    B: tuple
    Lambda: tuple

    def __post_init__(self):
        A = self.A if isinstance(self.A, Matrix) else Matrix(self.A)
        B = as_vector(self.B)
        Lam = as_vector(self.Lambda) if self.Lambda is not None else (ZERO,) * self.d
        if A.shape != (self.d, self.d):
            raise MalformedInputError(f"A must be {self.d}x{self.d}, got {A.shape}")
        if len(B) != self.d or len(Lam) != self.d:
            raise MalformedInputError("B and Lambda must have length d")
        if A.T() != A:
            raise MalformedInputError("A must be symmetric")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "Lambda", Lam)

    @classmethod
    def make(cls, A, B=None, Lambda=None) -> "QuadraticVector":
        A = A if isinstance(A, Matrix) else Matrix(A)
        d = A.rows
        return cls(d, A, tuple(B) if B is not None else (0,) * d, tuple(Lambda) if Lambda is not None else (0,) * d)

    def to_element(self) -> FockElement:
        return from_matrix(self)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "A": self.A.to_json(),
            "B": [str(x) for x in self.B],
            "Lambda": [str(x) for x in self.Lambda],
        }

    @classmethod
    def from_json(cls, data) -> "QuadraticVector":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict):
            raise MalformedInputError("QuadraticVector JSON must be an object")
        try:
            d = int(data["d"])
            A = Matrix.from_json(data["A"])
            B = [gq(str(x)) for x in data.get("B", [0] * d)]
            Lam = [gq(str(x)) for x in data.get("Lambda", [0] * d)]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"bad QuadraticVector JSON: {exc}") from exc
        return cls(d, A, tuple(B), tuple(Lam))


def from_matrix(q: QuadraticVector) -> FockElement:
    terms = []
    for i in range(q.d):
        terms.append((((1, i + 1), (1, i + 1)), q.A[i, i] * Fraction(1, 2)))
        for j in range(i + 1, q.d):
            terms.append((((1, i + 1), (1, j + 1)), q.A[i, j]))
        terms.append((((2, i + 1),), q.B[i]))
    return FockElement(q.d, terms)


def to_matrix(omega: FockElement, Lambda: Sequence | None = None) -> QuadraticVector:
    """Read ``(A, B)`` off a homogeneous weight-2 vector."""
    if not omega.is_homogeneous(2):
        raise MalformedInputError(f"expected a homogeneous weight-2 vector, got weights {sorted(omega.weights())}")
    d = omega.rank
    A = [[ZERO] * d for _ in range(d)]
    B = [ZERO] * d
    for mono, c in omega.terms.items():
        if len(mono) == 1:
            B[mono[0][1] - 1] = c
        else:
            (_, i), (_, j) = mono
            i, j = min(i, j) - 1, max(i, j) - 1
            if i == j:
                A[i][i] = 2 * c
            else:
                A[i][j] = A[j][i] = c
    return QuadraticVector(d, Matrix(A), tuple(B), tuple(Lambda) if Lambda is not None else (0,) * d)


def check_matrix(q: QuadraticVector) -> bool:
    """``A^T = A``, ``A^2 = A`` and ``A Lambda^T = B`` (column convention)."""
    if len(q.B) != q.d or len(q.Lambda) != q.d or q.A.shape != (q.d, q.d):
        raise MalformedInputError("dimension mismatch among A, B, Lambda")
    A = q.A
    return A.T() == A and A @ A == A and A.apply(q.Lambda) == tuple(q.B)


def central_charge_of(A: Matrix, B: Sequence) -> GaussianRational:
    """Central charge ``tr(A) - 12 B^T B`` of a semi-conformal point."""
    return A.trace() - 12 * dot(B, B)


@dataclass(frozen=True)
class ScPoint:
    """A verified semi-conformal vector: symmetric idempotent ``A`` and ``B = A Lambda^T``."""

    quadratic: QuadraticVector
    central_charge: GaussianRational
    rank_of_A: int

    @classmethod
    def from_quadratic(cls, q: QuadraticVector) -> "ScPoint":
        if not check_matrix(q):
            raise MalformedInputError("not a semi-conformal point: need A symmetric idempotent and B = A Lambda^T")
        return cls(q, central_charge_of(q.A, q.B), rank(q.A))

    @classmethod
    def from_projector(cls, A, Lambda=None) -> "ScPoint":
        A = A if isinstance(A, Matrix) else Matrix(A)
        d = A.rows
        Lam = as_vector(Lambda) if Lambda is not None else (ZERO,) * d
        return cls.from_quadratic(QuadraticVector(d, A, A.apply(Lam), Lam))

    @property
    def d(self) -> int:
        return self.quadratic.d

    @property
    def A(self) -> Matrix:
        return self.quadratic.A

    @property
    def B(self) -> tuple:
        return self.quadratic.B

    @property
    def Lambda(self) -> tuple:
        return self.quadratic.Lambda

    def element(self) -> FockElement:
        return from_matrix(self.quadratic)

    def to_json(self) -> dict:
        out = self.quadratic.to_json()
        out["central_charge"] = str(self.central_charge)
        out["rank"] = self.rank_of_A
        return out


@dataclass
class CheckReport:
    verdict: bool
    failures: list = field(default_factory=list)
    central_charge: GaussianRational | None = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "central_charge": None if self.central_charge is None else str(self.central_charge),
            "failures": [{"equation": tag, "witness": w.to_json() if w is not None else None} for tag, w in self.failures],
        }


def check_direct(omega: FockElement, Lambda: Sequence | None = None, degree_bound: int = 4) -> CheckReport:
    """Evaluate the defining equations of a semi-conformal vector with mode calculus.

    ``L`` are the modes of the conformal vector for ``Lambda`` and ``L'`` those
    of ``omega``. The vanishing tail ``L'(n) omega = L(n) omega = 0`` is
    checked for ``3 <= n <= max(4, degree_bound)``.
    """
    d = omega.rank
    if not omega.is_homogeneous(2):
        return CheckReport(False, [("w' homogeneous of weight 2", omega)], None)
    wL = conformal_vector(d, Lambda)
    failures: list = []

    def L(n, w):
        return virasoro_mode(wL, n, w)

    def Lp(n, w):
        return vertex_mode(omega, n + 1, w)

    def expect(tag, got, want):
        if got != want:
            failures.append((tag, got - want))

    two = omega.scale(2)
    expect("L'(0)w' = 2w'", Lp(0, omega), two)
    expect("L(0)w' = 2w'", L(0, omega), two)
    zero = FockElement.zero(d)
    expect("L'(1)w' = 0", Lp(1, omega), zero)
    expect("L(1)w' = 0", L(1, omega), zero)
    lp2 = Lp(2, omega)
    expect("L'(2)w' = L(2)w'", lp2, L(2, omega))
    c = None
    if set(lp2.terms) <= {()}:
        c = 2 * lp2.terms.get((), ZERO)
    else:
        failures.append(("L'(2)w' = (c'/2)1", lp2))
    expect("L'(-1)w' = L(-1)w'", Lp(-1, omega), L(-1, omega))
    for n in range(3, max(4, degree_bound) + 1):
        expect(f"L'({n})w' = 0", Lp(n, omega), zero)
        expect(f"L({n})w' = 0", L(n, omega), zero)
    return CheckReport(not failures, failures, c)


def omega_from_norm_one(h: FockElement) -> ScPoint:
    """The point ``1/2 h_{-1} h_{-1} 1`` for a weight-1 ``h`` with ``<h, h> = 1``."""
    if not h.is_homogeneous(1) or h.is_zero():
        raise MalformedInputError("h must be a nonzero homogeneous weight-1 vector")
    pairing = vertex_mode(h, 1, h)
    norm = pairing.terms.get((), ZERO)
    if norm != 1:
        raise NormError(norm)
    omega = vertex_mode(h, -1, h).scale(Fraction(1, 2))
    return ScPoint.from_quadratic(to_matrix(omega))


class NormError(MalformedInputError):
    def __init__(self, norm):
        super().__init__(f"<h, h> must be 1, got {norm}")
        self.norm = norm


# -- polynomial system ------------------------------------------------------


def variable_names(d: int) -> list[str]:
    names = [f"a_{i}_{j}" for i in range(1, d + 1) for j in range(i, d + 1)]
    return names + [f"b_{i}" for i in range(1, d + 1)]


class _Poly:
    """Sparse polynomial ``{exponent tuple: GaussianRational}`` in a fixed variable list."""

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms: dict = {}
        for e, c in (terms or {}).items():
            self._add(e, gq(c))

    def _add(self, e, c):
        t = self.terms.get(e, ZERO) + c
        if t:
            self.terms[e] = t
        else:
            self.terms.pop(e, None)

    @classmethod
    def var(cls, nvars, k, coeff=1):
        e = [0] * nvars
        e[k] = 1
        return cls(nvars, {tuple(e): coeff})

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    def __add__(self, other):
        out = _Poly(self.nvars, self.terms)
        for e, c in other.terms.items():
            out._add(e, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return _Poly(self.nvars, {e: gq(c) * x for e, x in self.terms.items()})

    def __mul__(self, other):
        out = _Poly(self.nvars)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out._add(tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return out

    def evaluate(self, values: Sequence) -> GaussianRational:
        acc = ZERO
        for e, c in self.terms.items():
            t = c
            for x, k in zip(values, e):
                if k:
                    t = t * x**k
            acc = acc + t
        return acc

    @staticmethod
    def _degrevlex_key(e):
        # larger total degree first; ties: smaller exponent in the last differing variable wins
        return (-sum(e), tuple(e[::-1]))

    def ordered_terms(self):
        return sorted(self.terms.items(), key=lambda t: self._degrevlex_key(t[0]))

    def normalized(self) -> "_Poly":
        """Scale to integer content 1 with a positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.re.denominator // gcd(den, c.re.denominator)
            den = den * c.im.denominator // gcd(den, c.im.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c.re * den))
            g = gcd(g, int(c.im * den))
        lead = self.ordered_terms()[0][1]
        sign = 1 if (lead.re > 0 or (lead.re == 0 and lead.im > 0)) else -1
        return self.scale(Fraction(sign * den, g))

    def render(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.ordered_terms():
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            if c.is_real():
                neg = c.re < 0
                mag = abs(c.re)
                coef = "" if (mag == 1 and mono) else str(mag)
            else:
                neg = False
                coef = f"({c})"
            body = f"{coef}*{mono}" if coef and mono else (coef or mono)
            pieces.append(("-", body) if neg else ("+", body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for s, b in pieces[1:]:
            text += f" {s} {b}"
        return text


def polynomial_system(d: int, Lambda: Sequence | None = None) -> list[tuple[str, _Poly]]:
    """The quadratic system in the coefficients ``a_ij`` (``i <= j``) and ``b_i``.

    Families, in order: diagonal of ``A^2 = A``; rows of ``A B = B``; rows of
    ``A Lambda^T = B``; the central-charge relation; off-diagonal entries of
    ``A^2 = A``. Each entry is ``(family tag, lhs - rhs)``.
    """
    if d < 1:
        raise MalformedInputError("d must be at least 1")
    Lam = as_vector(Lambda) if Lambda is not None else (ZERO,) * d
    if len(Lam) != d:
        raise MalformedInputError(f"Lambda must have length {d}")
    names = variable_names(d)
    nv = len(names)
    a_index = {}
    k = 0
    for i in range(d):
        for j in range(i, d):
            a_index[(i, j)] = k
            k += 1

    def a(i, j):
        i, j = min(i, j), max(i, j)
        return _Poly.var(nv, a_index[(i, j)])

    def A(i, j):
        return a(i, j).scale(2) if i == j else a(i, j)

    def b(i):
        return _Poly.var(nv, len(a_index) + i)

    zero = _Poly(nv)
    out = []
    for i in range(d):
        s = zero
        for k in range(d):
            s = s + A(i, k) * A(k, i)
        out.append(("A^2=A diagonal", s - A(i, i)))
    for i in range(d):
        s = zero
        for k in range(d):
            s = s + A(i, k) * b(k)
        out.append(("AB=B", s - b(i)))
    for i in range(d):
        s = zero
        for k in range(d):
            s = s + A(i, k).scale(Lam[k])
        out.append(("A Lambda^T=B", s - b(i)))
    lhs = zero
    rhs = zero
    for i in range(d):
        lhs = lhs + a(i, i) - b(i).scale(6 * Lam[i])
        rhs = rhs + (a(i, i) * a(i, i)).scale(2) - (b(i) * b(i)).scale(6)
        for j in range(i + 1, d):
            rhs = rhs + a(i, j) * a(i, j)
    out.append(("central charge", lhs - rhs))
    for i in range(d):
        for j in range(i + 1, d):
            s = zero
            for k in range(d):
                s = s + A(i, k) * A(k, j)
            out.append(("A^2=A off-diagonal", s - A(i, j)))
    return [(tag, p.normalized()) for tag, p in out]


def emit_polynomial_system(d: int, Lambda: Sequence | None = None) -> str:
    """UTF-8 text, one polynomial per line (each understood as ``= 0``)."""
    names = variable_names(d)
    return "".join(p.render(names) + "\n" for _, p in polynomial_system(d, Lambda))


def coefficient_values(q: QuadraticVector) -> list[GaussianRational]:
    """Values of ``a_ij`` (``i <= j``) and ``b_i`` for substitution into the system."""
    vals = []
    for i in range(q.d):
        for j in range(i, q.d):
            vals.append(q.A[i, i] * Fraction(1, 2) if i == j else q.A[i, j])
    return vals + list(q.B)


def system_vanishes(q: QuadraticVector) -> bool:
    vals = coefficient_values(q)
    return all(not p.evaluate(vals) for _, p in polynomial_system(q.d, q.Lambda))
