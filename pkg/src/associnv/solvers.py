"""Linear systems for derivation-type invariants and their solution spaces.

Every solver assembles a homogeneous system over the entries of an unknown
map, flattened row-major (entry ``(p, k)`` at ``p*n + k``), with equations in
lexicographic ``(i, j, p)`` order, and returns its canonical nullspace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    Algebra,
    Matrix,
    flatten,
    identity,
    matmul,
    require_associative,
    unflatten,
)
from .linalg import (
    Subspace,
    is_subspace_of,
    nullspace_basis,
    subspace_contains,
    subspace_intersection,
    subspace_sum,
)

KINDS = (
    "derivations",
    "centroid",
    "quasi_centroid",
    "central_derivations",
    "qder_projection_D",
    "qder_projection_Dprime",
)


@dataclass(frozen=True)
class MapSpace:
    n: int
    kind: str
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def maps(self) -> list[Matrix]:
        return [unflatten(v, self.n) for v in self.space.basis]

    def contains(self, m) -> bool:
        return subspace_contains(self.space, flatten(m))

    def __contains__(self, m) -> bool:
        return self.contains(m)


@dataclass(frozen=True)
class QDerPairSpace:
    """Pairs ``(D, D')`` with ``D(x)y + xD(y) = D'(xy)``, stored as ``D`` then ``D'``."""

    n: int
    space: Subspace
    d_projection: MapSpace = field(compare=False)
    dprime_projection: MapSpace = field(compare=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    def pairs(self) -> list[tuple[Matrix, Matrix]]:
        nn = self.n * self.n
        return [
            (unflatten(v[:nn], self.n), unflatten(v[nn:], self.n)) for v in self.space.basis
        ]

    def contains(self, d, dprime) -> bool:
        return subspace_contains(self.space, flatten(d) + flatten(dprime))


def _zero_row(size):
    return [Fraction(0)] * size


def derivation_system(a: Algebra) -> list[list[Fraction]]:
    n, g = a.n, a.gamma
    rows = []
    for i in range(n):
        for j in range(n):
            for p in range(n):
                row = _zero_row(n * n)
                for k in range(n):
                    row[k * n + i] += g[k][j][p]
                    row[k * n + j] += g[i][k][p]
                    row[p * n + k] -= g[i][j][k]
                rows.append(row)
    return rows


def centroid_system(a: Algebra) -> list[list[Fraction]]:
    n, g = a.n, a.gamma
    rows = []
    for i in range(n):
        for j in range(n):
            for q in range(n):
                left = _zero_row(n * n)
                right = _zero_row(n * n)
                for k in range(n):
                    left[q * n + k] += g[i][j][k]
                    right[q * n + k] += g[i][j][k]
                for p in range(n):
                    left[p * n + i] -= g[p][j][q]
                    right[p * n + j] -= g[i][p][q]
                rows.append(left)
                rows.append(right)
    return rows


def quasi_centroid_system(a: Algebra) -> list[list[Fraction]]:
    n, g = a.n, a.gamma
    rows = []
    for i in range(n):
        for j in range(n):
            for q in range(n):
                row = _zero_row(n * n)
                for p in range(n):
                    row[p * n + i] += g[p][j][q]
                    row[p * n + j] -= g[i][p][q]
                rows.append(row)
    return rows


def central_derivation_system(a: Algebra) -> list[list[Fraction]]:
    n, g = a.n, a.gamma
    rows = []
    for i in range(n):
        for j in range(n):
            for q in range(n):
                left = _zero_row(n * n)
                right = _zero_row(n * n)
                for p in range(n):
                    left[p * n + i] += g[p][j][q]
                    right[p * n + j] += g[i][p][q]
                rows.append(left)
                rows.append(right)
    return rows


def quasi_derivation_system(a: Algebra) -> list[list[Fraction]]:
    """Unknowns: ``D`` flattened, then ``D'`` flattened (``2 n^2`` columns)."""
    n, g = a.n, a.gamma
    nn = n * n
    rows = []
    for i in range(n):
        for j in range(n):
            for p in range(n):
                row = _zero_row(2 * nn)
                for k in range(n):
                    row[k * n + i] += g[k][j][p]
                    row[k * n + j] += g[i][k][p]
                    row[nn + p * n + k] -= g[i][j][k]
                rows.append(row)
    return rows


@lru_cache(maxsize=512)
def _solve(a: Algebra, kind: str) -> Subspace:
    builder = {
        "derivations": derivation_system,
        "centroid": centroid_system,
        "quasi_centroid": quasi_centroid_system,
        "central_derivations": central_derivation_system,
        "qder_pairs": quasi_derivation_system,
    }[kind]
    ncols = 2 * a.n * a.n if kind == "qder_pairs" else a.n * a.n
    return nullspace_basis(builder(a), ncols)


def derivations(a: Algebra, allow_nonassociative: bool = False) -> MapSpace:
    require_associative(a, allow_nonassociative)
    return MapSpace(a.n, "derivations", _solve(a, "derivations"))


def centroid(a: Algebra, allow_nonassociative: bool = False) -> MapSpace:
    require_associative(a, allow_nonassociative)
    return MapSpace(a.n, "centroid", _solve(a, "centroid"))


def quasi_centroid(a: Algebra, allow_nonassociative: bool = False) -> MapSpace:
    require_associative(a, allow_nonassociative)
    return MapSpace(a.n, "quasi_centroid", _solve(a, "quasi_centroid"))


def central_derivations(a: Algebra, allow_nonassociative: bool = False) -> MapSpace:
    require_associative(a, allow_nonassociative)
    return MapSpace(a.n, "central_derivations", _solve(a, "central_derivations"))


def quasi_derivations(a: Algebra, allow_nonassociative: bool = False) -> QDerPairSpace:
    require_associative(a, allow_nonassociative)
    n, nn = a.n, a.n * a.n
    space = _solve(a, "qder_pairs")
    d = Subspace.span([v[:nn] for v in space.basis], nn)
    dp = Subspace.span([v[nn:] for v in space.basis], nn)
    return QDerPairSpace(
        n,
        space,
        MapSpace(n, "qder_projection_D", d),
        MapSpace(n, "qder_projection_Dprime", dp),
    )


@dataclass(frozen=True)
class SmallnessReport:
    small: bool
    qc_dim: int
    zder_dim: int
    zder_plus_scalars_dim: int
    # dimension of the subalgebra of End(A) generated by ZDer + scalars
    generated_subalgebra_dim: int
    zder_der_intersection_dim: int


def _composition_closure(space: Subspace, n: int) -> Subspace:
    current = space
    while True:
        maps = [unflatten(v, n) for v in current.basis]
        extra = [flatten(matmul(x, y)) for x in maps for y in maps]
        grown = Subspace.span(list(current.basis) + extra, n * n)
        if grown == current:
            return current
        current = grown


def is_small_quasi_centroid(a: Algebra, allow_nonassociative: bool = False) -> SmallnessReport:
    """QC(A) equals ZDer(A) + scalars, compared as linear spans."""
    qc = quasi_centroid(a, allow_nonassociative)
    zd = central_derivations(a, allow_nonassociative)
    der = derivations(a, allow_nonassociative)
    n = a.n
    scalars = Subspace.span([flatten(identity(n))], n * n)
    generated = subspace_sum(zd.space, scalars)
    assert is_subspace_of(generated, qc.space)
    closure = _composition_closure(generated, n)
    return SmallnessReport(
        small=generated.dim == qc.dim,
        qc_dim=qc.dim,
        zder_dim=zd.dim,
        zder_plus_scalars_dim=generated.dim,
        generated_subalgebra_dim=closure.dim,
        zder_der_intersection_dim=subspace_intersection(zd.space, der.space).dim,
    )
