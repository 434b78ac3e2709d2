"""Exact dense linear algebra over the rationals.

Matrices are plain sequences of rows; entries may be ``int`` or
``fractions.Fraction``. All results are tuples of ``Fraction`` so they are
hashable and safe to share.

The elimination kernel is chosen at import: the compiled ``_kernel``
extension when it was built, otherwise the pure-Python ``_rref_py``. Set
``ASSOCINV_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _rref_py

_compiled = None
if not os.environ.get("ASSOCINV_PURE_PYTHON"):
    try:
        from . import _kernel as _compiled
    except ImportError:  # extension not built
        _compiled = None

KERNEL = "compiled" if _compiled is not None else "python"

Vector = tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    pass


def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = lcm(den, x.denominator)
        if den == 1:
            out.append([int(x) for x in row])
        else:
            out.append([int(x * den) for x in row])
    return out


def _reduce(rows, ncols, kernel=None):
    """Integer pivot rows and pivot columns of the row space of ``rows``."""
    irows = _integer_rows(rows)
    if kernel == "python" or _compiled is None:
        return _rref_py.rref_int(irows, ncols)
    try:
        return _compiled.rref_int(irows, ncols)
    except OverflowError:
        return _rref_py.rref_int(irows, ncols)


def _ncols(rows, ncols):
    if ncols is None:
        if not rows:
            return 0
        ncols = len(rows[0])
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatch(f"row of length {len(row)}, expected {ncols}")
    return ncols


def rref(m: Sequence[Sequence], ncols: int | None = None, *, kernel: str | None = None):
    """Reduced row-echelon form of ``m``.

    Returns ``(reduced, pivot_columns, rank)``. ``reduced`` keeps the shape of
    ``m``: the nonzero rows come first, padded with zero rows. ``ncols`` is
    only needed when ``m`` has no rows.
    """
    rows = list(m)
    ncols = _ncols(rows, ncols)
    int_rows, pivots = _reduce(rows, ncols, kernel)
    reduced = [
        tuple(Fraction(x, row[c]) for x in row) for row, c in zip(int_rows, pivots)
    ]
    zero = tuple(Fraction(0) for _ in range(ncols))
    reduced.extend(zero for _ in range(len(rows) - len(reduced)))
    return tuple(reduced), tuple(pivots), len(pivots)


def rank(m: Sequence[Sequence], ncols: int | None = None) -> int:
    rows = list(m)
    return len(_reduce(rows, _ncols(rows, ncols))[1])


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim stored by its canonical RREF basis.

    Equal subspaces compare equal and hash equal. Build instances with
    :meth:`span`; the constructor trusts its input.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Sequence[Sequence], ambient_dim: int) -> "Subspace":
        vectors = list(vectors)
        _ncols(vectors, ambient_dim)
        reduced, _, r = rref(vectors, ambient_dim)
        return cls(ambient_dim, reduced[:r])

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(
            [[int(i == j) for j in range(ambient_dim)] for i in range(ambient_dim)],
            ambient_dim,
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(v) if x) for v in self.basis)

    def contains(self, v: Sequence) -> bool:
        return subspace_contains(self, v)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in ``basis``; ``v`` must lie in the subspace."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(Fraction(v[p]) for p in self.pivots)

    def __contains__(self, v) -> bool:
        return self.contains(v)


def nullspace_basis(m: Sequence[Sequence], ncols: int | None = None) -> Subspace:
    """Canonical basis of ``{v : m v = 0}``."""
    rows = list(m)
    ncols = _ncols(rows, ncols)
    reduced, pivots, r = rref(rows, ncols)
    pivot_set = set(pivots)
    vectors = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced[:r], pivots):
            v[p] = -row[f]
        vectors.append(v)
    return Subspace.span(vectors, ncols)


def _check_dims(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dims {a.ambient_dim} and {b.ambient_dim}")


def subspace_contains(s: Subspace, v: Sequence) -> bool:
    if len(v) != s.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} in Q^{s.ambient_dim}")
    # RREF basis: v is in the span iff subtracting its pivot coordinates leaves 0.
    residual = [Fraction(x) for x in v]
    for row, p in zip(s.basis, s.pivots):
        c = residual[p]
        if c:
            residual = [x - c * y for x, y in zip(residual, row)]
    return not any(residual)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    return Subspace.span(a.basis + b.basis, a.ambient_dim)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Solve x_a . A = x_b . B via the nullspace of the stacked bases."""
    _check_dims(a, b)
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    # columns: coefficients for a's basis then b's basis; rows: coordinates
    ka, kb = a.dim, b.dim
    system = [
        [a.basis[s][j] for s in range(ka)] + [-b.basis[t][j] for t in range(kb)]
        for j in range(n)
    ]
    kernel = nullspace_basis(system, ka + kb)
    vectors = [
        [sum((c[s] * a.basis[s][j] for s in range(ka)), Fraction(0)) for j in range(n)]
        for c in kernel.basis
    ]
    return Subspace.span(vectors, n)


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    _check_dims(a, b)
    return a == b


def is_subspace_of(a: Subspace, b: Subspace) -> bool:
    _check_dims(a, b)
    return all(subspace_contains(b, v) for v in a.basis)
