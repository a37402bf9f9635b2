"""Exact computations on semi-conformal vectors of rank-d Heisenberg vertex operator algebras."""

from heisenberg_sc.scalars import GaussianRational, gq
from heisenberg_sc.linalg import Matrix, Subspace, kernel, rank, rref
from heisenberg_sc.fock import FockElement, basis_of_degree

__all__ = [
    "GaussianRational",
    "gq",
    "Matrix",
    "Subspace",
    "rref",
    "rank",
    "kernel",
    "FockElement",
    "basis_of_degree",
    "QuadraticVector",
    "ScPoint",
    "check_direct",
    "check_matrix",
]

__version__ = "0.1.0"
