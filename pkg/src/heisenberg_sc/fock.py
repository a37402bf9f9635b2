"""The Fock space V(1,0) of a rank-d Heisenberg algebra at level 1.

A monomial is a tuple of ``(mode, flavor)`` pairs, each pair standing for the
creation operator ``h_flavor(-mode)``. Pairs are kept sorted by mode
descending, then flavor ascending; repeated pairs encode powers. The empty
tuple is the vacuum.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from heisenberg_sc.linalg import MalformedInputError
from heisenberg_sc.scalars import ONE, ZERO, gq

Monomial = tuple  # tuple[tuple[int, int], ...]
VACUUM: Monomial = ()

# Multiplier for the structure constant of [h_1(1), h_1(-1)]; 1 is the true
# algebra. Anything else is a deliberately broken algebra for sensitivity runs.
_fault = {"h1_pairing": 1}


def _sort_key(pair):
    return (-pair[0], pair[1])


def canonical(pairs: Iterable) -> Monomial:
    pairs = [(int(n), int(i)) for n, i in pairs]
    for n, i in pairs:
        if n < 1 or i < 1:
            raise MalformedInputError(f"invalid creation factor ({n}, {i})")
    return tuple(sorted(pairs, key=_sort_key))


def weight(mono: Monomial) -> int:
    return sum(n for n, _ in mono)


def max_flavor(mono: Monomial) -> int:
    return max((i for _, i in mono), default=0)


def _insert(mono: Monomial, pair) -> Monomial:
    key = _sort_key(pair)
    for pos, p in enumerate(mono):
        if _sort_key(p) > key:
            return mono[:pos] + (pair,) + mono[pos:]
    return mono + (pair,)


@lru_cache(maxsize=None)
def annihilate(mono: Monomial, n: int, i: int) -> tuple:
    """``h_i(n)`` for ``n > 0`` on a monomial, as ``((coeff, monomial),)`` or ``()``."""
    count = mono.count((n, i))
    if not count:
        return ()
    pos = mono.index((n, i))
    c = n * count
    if n == 1 and i == 1:
        c = c * _fault["h1_pairing"]
    return ((c, mono[:pos] + mono[pos + 1 :]),)


@lru_cache(maxsize=None)
def create(mono: Monomial, n: int, i: int) -> Monomial:
    """``h_i(-n)`` for ``n > 0`` on a monomial."""
    return _insert(mono, (n, i))


@contextlib.contextmanager
def injected_fault(factor=2):
    """Temporarily rescale the ``[h_1(1), h_1(-1)]`` structure constant."""
    from heisenberg_sc import modes

    old = _fault["h1_pairing"]
    _fault["h1_pairing"] = factor
    _clear_caches(modes)
    try:
        yield
    finally:
        _fault["h1_pairing"] = old
        _clear_caches(modes)


def _clear_caches(modes_module) -> None:
    annihilate.cache_clear()
    modes_module.clear_caches()


class FockElement:
    """Finite linear combination of monomials with Gaussian-rational coefficients."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping | Iterable = ()):
        if rank < 1:
            raise MalformedInputError("rank must be at least 1")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for mono, c in items:
            m = canonical(mono)
            if max_flavor(m) > rank:
                raise MalformedInputError(f"flavor out of range for rank {rank}: {m}")
            c = gq(c)
            total = acc.get(m, ZERO) + c
            if total:
                acc[m] = total
            else:
                acc.pop(m, None)
        self.rank = rank
        self.terms = acc

    @classmethod
    def _raw(cls, rank: int, terms: dict) -> "FockElement":
        e = cls.__new__(cls)
        e.rank = rank
        e.terms = terms
        return e

    @classmethod
    def zero(cls, rank: int) -> "FockElement":
        return cls._raw(rank, {})

    @classmethod
    def vacuum(cls, rank: int) -> "FockElement":
        return cls._raw(rank, {VACUUM: ONE})

    @classmethod
    def monomial(cls, rank: int, pairs: Iterable, coeff=1) -> "FockElement":
        return cls(rank, [(tuple(pairs), coeff)])

    # -- linear structure ---------------------------------------------------

    def _check_rank(self, other: "FockElement") -> None:
        if not isinstance(other, FockElement):
            raise TypeError(f"expected FockElement, got {type(other).__name__}")
        if other.rank != self.rank:
            raise MalformedInputError(f"rank mismatch {self.rank} != {other.rank}")

    def __add__(self, other: "FockElement") -> "FockElement":
        self._check_rank(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            t = out.get(m)
            t = c if t is None else t + c
            if t:
                out[m] = t
            else:
                out.pop(m, None)
        return FockElement._raw(self.rank, out)

    def __neg__(self) -> "FockElement":
        return FockElement._raw(self.rank, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "FockElement") -> "FockElement":
        return self + (-other)

    def scale(self, c) -> "FockElement":
        c = gq(c)
        if not c:
            return FockElement.zero(self.rank)
        return FockElement._raw(self.rank, {m: c * x for m, x in self.terms.items()})

    def __rmul__(self, c) -> "FockElement":
        return self.scale(c)

    def __mul__(self, c) -> "FockElement":
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, FockElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    # -- grading ------------------------------------------------------------

    def weights(self) -> set[int]:
        return {weight(m) for m in self.terms}

    def is_homogeneous(self, n: int | None = None) -> bool:
        ws = self.weights()
        if not ws:
            return True
        return len(ws) == 1 and (n is None or n in ws)

    def degree(self) -> int | None:
        ws = self.weights()
        if len(ws) != 1:
            return None
        return next(iter(ws))

    def coordinates(self, basis: "GradedBasis") -> tuple:
        index = basis.index
        v = [ZERO] * len(basis)
        for m, c in self.terms.items():
            if m not in index:
                raise MalformedInputError(f"monomial {m} not in degree-{basis.degree} basis")
            v[index[m]] = c
        return tuple(v)

    # -- text / json ----------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [
            {"monomial": [list(p) for p in m], "coeff": str(c)}
            for m, c in sorted(self.terms.items(), key=lambda t: (weight(t[0]), t[0]))
        ]

    @classmethod
    def from_json(cls, rank: int, data) -> "FockElement":
        if not isinstance(data, list):
            raise MalformedInputError("FockElement JSON must be a list of terms")
        items = []
        for t in data:
            try:
                items.append((tuple(tuple(p) for p in t["monomial"]), gq(str(t["coeff"]))))
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedInputError(f"bad term {t!r}: {exc}") from exc
        return cls(rank, items)

    def __repr__(self):
        if not self.terms:
            return f"FockElement(rank={self.rank}, 0)"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (weight(t[0]), t[0])):
            ops = "".join(f"h{i}(-{n})" for n, i in m) or "1"
            parts.append(f"({c}){ops}")
        return f"FockElement(rank={self.rank}, {' + '.join(parts)})"


@dataclass(frozen=True)
class GradedBasis:
    """All monomials of one weight, in a fixed deterministic order."""

    rank: int
    degree: int
    monomials: tuple

    @property
    def index(self) -> dict:
        return _index_of(self)

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def element(self, k: int) -> FockElement:
        return FockElement._raw(self.rank, {self.monomials[k]: ONE})


@lru_cache(maxsize=None)
def _index_of(basis: GradedBasis) -> dict:
    return {m: k for k, m in enumerate(basis.monomials)}


def _pairs_desc(max_mode: int, d: int):
    for n in range(max_mode, 0, -1):
        for i in range(1, d + 1):
            yield (n, i)


@lru_cache(maxsize=None)
def basis_of_degree(d: int, n: int) -> GradedBasis:
    """Monomial basis of the weight-``n`` piece of the rank-``d`` Fock space."""
    if d < 1 or n < 0:
        raise MalformedInputError("need d >= 1 and n >= 0")
    out: list = []

    def rec(remaining: int, bound, prefix: list):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for pair in _pairs_desc(remaining, d):
            if bound is not None and _sort_key(pair) < _sort_key(bound):
                continue
            prefix.append(pair)
            rec(remaining - pair[0], pair, prefix)
            prefix.pop()

    rec(n, None, [])
    return GradedBasis(d, n, tuple(out))


def apply_heisenberg(i: int, n: int, v: FockElement) -> FockElement:
    """Action of ``h_i(n)`` on ``v``; ``h_i(0)`` is zero on the vacuum module."""
    if not 1 <= i <= v.rank:
        raise MalformedInputError(f"flavor {i} out of range 1..{v.rank}")
    if n == 0:
        return FockElement.zero(v.rank)
    out: dict = {}
    if n < 0:
        for m, c in v.terms.items():
            out[create(m, -n, i)] = c
        return FockElement._raw(v.rank, out)
    for m, c in v.terms.items():
        for k, m2 in annihilate(m, n, i):
            t = out.get(m2, ZERO) + c * k
            if t:
                out[m2] = t
            else:
                out.pop(m2, None)
    return FockElement._raw(v.rank, out)


def element_from_coordinates(basis: GradedBasis, coords) -> FockElement:
    terms = {}
    for m, c in zip(basis.monomials, coords):
        c = gq(c)
        if c:
            terms[m] = c
    return FockElement._raw(basis.rank, terms)
