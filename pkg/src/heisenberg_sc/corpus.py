"""Seeded random corpora of candidate weight-2 vectors.

Positives are projectors onto random regular subspaces with small Gaussian
integer spanning vectors; negatives perturb one symmetric pair of entries of
``A`` (or one entry of ``B``) of a positive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from heisenberg_sc.linalg import Matrix, Subspace, rank, subspace_regular
from heisenberg_sc.scalars import GaussianRational, gq
from heisenberg_sc.semiconformal import QuadraticVector, ScPoint
from heisenberg_sc.variety import projector_from_subspace

LAMBDA_SAMPLE = (Fraction(1), Fraction(-1, 2), Fraction(2))


def lambda_sample(d: int) -> tuple:
    return tuple(gq(x) for x in LAMBDA_SAMPLE[:d])


@dataclass(frozen=True)
class Candidate:
    quadratic: QuadraticVector
    origin: str  # "projector" or "perturbed"


def _entry(rng: random.Random, height: int, complex_prob: float) -> GaussianRational:
    re = rng.randint(-height, height)
    im = rng.randint(-height, height) if rng.random() < complex_prob else 0
    return GaussianRational(re, im)


def random_regular_subspace(
    rng: random.Random, d: int, k: int, height: int = 2, complex_prob: float = 0.25
) -> Subspace:
    if k == 0:
        return Subspace(d, ())
    while True:
        vecs = [tuple(_entry(rng, height, complex_prob) for _ in range(d)) for _ in range(k)]
        if rank(Matrix(vecs)) != k:
            continue
        S = Subspace(d, tuple(vecs))
        if subspace_regular(S):
            return S


def random_point(rng: random.Random, d: int, Lambda: Sequence | None = None, k: int | None = None) -> ScPoint:
    k = rng.randint(0, d) if k is None else k
    return projector_from_subspace(random_regular_subspace(rng, d, k), Lambda)


def comparable_pair(rng: random.Random, d: int):
    """A random pair ``(p1, p2)`` with ``Im A1`` inside ``Im A2``."""
    k2 = rng.randint(0, d)
    S2 = random_regular_subspace(rng, d, k2)
    k1 = rng.randint(0, k2)
    while True:
        coeffs = [[gq(rng.randint(-2, 2)) for _ in range(k2)] for _ in range(k1)]
        vecs = [tuple(sum((c * v[t] for c, v in zip(row, S2.basis)), gq(0)) for t in range(d)) for row in coeffs]
        try:
            S1 = Subspace(d, tuple(vecs))
        except ValueError:
            continue
        if k1 == 0 or subspace_regular(S1):
            break
    return projector_from_subspace(S1), projector_from_subspace(S2)


def perturb(rng: random.Random, q: QuadraticVector) -> QuadraticVector:
    d = q.d
    delta = Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2, 3]))
    if any(q.Lambda) and rng.random() < 0.3:
        B = list(q.B)
        B[rng.randrange(d)] += delta
        return QuadraticVector(d, q.A, tuple(B), q.Lambda)
    rows = q.A.tolist()
    i, j = rng.randrange(d), rng.randrange(d)
    rows[i][j] = rows[i][j] + delta
    if i != j:
        rows[j][i] = rows[j][i] + delta
    return QuadraticVector(d, Matrix(rows), q.B, q.Lambda)


def build_corpus(d: int, Lambda: Sequence | None, size: int, seed: int) -> list[Candidate]:
    """``size`` candidates, alternating projector positives and perturbed negatives."""
    rng = random.Random(f"corpus:{d}:{seed}:{tuple(str(x) for x in (Lambda or ()))}")
    out: list[Candidate] = []
    for t in range(size):
        p = random_point(rng, d, Lambda)
        if t % 2 == 0:
            out.append(Candidate(p.quadratic, "projector"))
        else:
            out.append(Candidate(perturb(rng, p.quadratic), "perturbed"))
    return out


def unit_vectors(rng: random.Random, d: int, count: int) -> list[tuple]:
    """Rational vectors with ``u . u = 1`` from stereographic projection of random points."""
    out = []
    while len(out) < count:
        t = [Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(d - 1)]
        s = sum(x * x for x in t)
        # inverse stereographic projection from the pole (0, ..., 0, 1)
        u = tuple(2 * x / (1 + s) for x in t) + ((s - 1) / (1 + s),)
        if d == 1:
            u = (Fraction(rng.choice([-1, 1])),)
        out.append(tuple(gq(x) for x in u))
    return out
