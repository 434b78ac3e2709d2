"""Derivations, centroids, quasi-centroids and quasi-derivations of
finite-dimensional algebras given by structure constants, over Q."""

from .linalg import KERNEL, Subspace, nullspace_basis, rref
from .algebra import Algebra, make_algebra, NonAssociativeInput

__all__ = [
    "KERNEL",
    "Subspace",
    "nullspace_basis",
    "rref",
    "Algebra",
    "make_algebra",
    "NonAssociativeInput",
]
