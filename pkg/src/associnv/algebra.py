"""Finite-dimensional algebras given by structure constants.

Basis indices are 0-based in code; user-facing messages print them 1-based
to match the ``e1, e2, ...`` naming used in catalog files.

A linear map is an ``n x n`` tuple of rows in the column convention:
``m[j][i]`` is the coefficient of ``e_j`` in ``phi(e_i)``, so matrices act on
coordinate column vectors and compose by ordinary matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import DimensionMismatch, Subspace, nullspace_basis, subspace_contains

DEFAULT_MAX_DIM = 16

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


class NonAssociativeInput(ValueError):
    """A solver was handed a non-associative algebra without an override."""

    def __init__(self, triple):
        self.triple = triple
        i, j, k = (t + 1 for t in triple)
        super().__init__(
            f"algebra is not associative: (e{i}e{j})e{k} != e{i}(e{j}e{k})"
        )


class NotAnIdeal(ValueError):
    pass


# -- small matrix helpers -----------------------------------------------------

def zero_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols)
        for row in a
    )


def commutator(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    ab, ba = matmul(a, b), matmul(b, a)
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(ab, ba))


def apply(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def flatten(m: Sequence[Sequence]) -> Vector:
    """Row-major flattening: entry ``m[p][k]`` lands at ``p*n + k``."""
    return tuple(Fraction(x) for row in m for x in row)


def unflatten(v: Sequence, n: int) -> Matrix:
    if len(v) != n * n:
        raise DimensionMismatch(f"vector of length {len(v)} is not {n}x{n}")
    return tuple(tuple(Fraction(x) for x in v[p * n:(p + 1) * n]) for p in range(n))


def inverse(m: Sequence[Sequence]) -> Matrix:
    from .linalg import rref

    n = len(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    reduced, pivots, r = rref(aug, 2 * n)
    if r < n or tuple(pivots[:n]) != tuple(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in reduced[:n])


def basis_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(n))


# -- algebras -------------------------------------------------------------------

@dataclass(frozen=True)
class Algebra:
    """Structure constants ``gamma[i][j][k]``: ``e_i e_j = sum_k gamma[i][j][k] e_k``.

    Associativity is not required here; the solvers check it.
    """

    n: int
    gamma: tuple[tuple[Vector, ...], ...]
    name: str = ""

    def e(self, i: int) -> Vector:
        return basis_vector(self.n, i)

    def product(self, i: int, j: int) -> Vector:
        return self.gamma[i][j]

    def multiply(self, x: Sequence, y: Sequence) -> Vector:
        return multiply(self, x, y)

    def element(self, coeffs: Sequence) -> Vector:
        if len(coeffs) != self.n:
            raise DimensionMismatch(f"element of length {len(coeffs)} in a {self.n}-dim algebra")
        return tuple(Fraction(c) for c in coeffs)


def make_algebra(gamma, name: str = "", max_dim: int = DEFAULT_MAX_DIM) -> Algebra:
    """Build an :class:`Algebra` from a nested ``n x n x n`` array of rationals."""
    n = len(gamma)
    if n == 0:
        raise ValueError("algebra of dimension 0")
    if n > max_dim:
        raise ValueError(f"dimension {n} exceeds cap {max_dim}")
    rows = []
    for i in range(n):
        if len(gamma[i]) != n:
            raise DimensionMismatch(f"gamma[{i}] has length {len(gamma[i])}, expected {n}")
        row = []
        for j in range(n):
            if len(gamma[i][j]) != n:
                raise DimensionMismatch(f"gamma[{i}][{j}] has length {len(gamma[i][j])}")
            row.append(tuple(Fraction(c) for c in gamma[i][j]))
        rows.append(tuple(row))
    return Algebra(n, tuple(rows), name)


def from_products(
    n: int,
    products: Mapping[tuple[int, int], Mapping[int, object]],
    name: str = "",
    max_dim: int = DEFAULT_MAX_DIM,
) -> Algebra:
    """Build from 1-based products ``{(i, j): {k: coeff}}``; missing products are 0."""
    if not 1 <= n <= max_dim:
        raise ValueError(f"dimension {n} outside 1..{max_dim}")
    gamma = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), terms in products.items():
        for k, c in terms.items():
            if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
                raise IndexError(f"index out of range in e{i}*e{j} -> e{k}")
            gamma[i - 1][j - 1][k - 1] += Fraction(c)
    return make_algebra(gamma, name, max_dim)


def zero_algebra(n: int) -> Algebra:
    return from_products(n, {}, name=f"zero_{n}")


def multiply(a: Algebra, x: Sequence, y: Sequence) -> Vector:
    n = a.n
    if len(x) != n or len(y) != n:
        raise DimensionMismatch(f"elements of length {len(x)}, {len(y)} in a {n}-dim algebra")
    out = [Fraction(0)] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, g in enumerate(a.gamma[i][j]):
                if g:
                    out[k] += c * g
    return tuple(out)


def associativity_violation(a: Algebra):
    """First basis triple (lexicographic, 0-based) with (e_i e_j) e_k != e_i (e_j e_k)."""
    n = a.n
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = multiply(a, a.gamma[i][j], a.e(k))
                rhs = multiply(a, a.e(i), a.gamma[j][k])
                if lhs != rhs:
                    return (i, j, k)
    return None


def is_associative(a: Algebra) -> bool:
    return associativity_violation(a) is None


def require_associative(a: Algebra, allow_nonassociative: bool = False) -> None:
    if allow_nonassociative:
        return
    bad = associativity_violation(a)
    if bad is not None:
        raise NonAssociativeInput(bad)


def left_mult(a: Algebra, x: Sequence) -> Matrix:
    """Matrix of ``y -> x y``."""
    cols = [multiply(a, x, a.e(i)) for i in range(a.n)]
    return tuple(tuple(cols[i][j] for i in range(a.n)) for j in range(a.n))


def right_mult(a: Algebra, x: Sequence) -> Matrix:
    """Matrix of ``y -> y x``."""
    cols = [multiply(a, a.e(i), x) for i in range(a.n)]
    return tuple(tuple(cols[i][j] for i in range(a.n)) for j in range(a.n))


def centralizer(a: Algebra, s: Subspace) -> Subspace:
    """``{x : x v = v x = 0 for all v in s}``."""
    n = a.n
    if s.ambient_dim != n:
        raise DimensionMismatch(f"subspace of Q^{s.ambient_dim} in a {n}-dim algebra")
    rows = []
    for v in s.basis:
        # x -> x v and x -> v x, one row per output coordinate
        rows.extend(left_mult(a, v))
        rows.extend(right_mult(a, v))
    return nullspace_basis(rows, n)


def center(a: Algebra) -> Subspace:
    """Two-sided annihilator ``{x : x A = A x = 0}``."""
    return centralizer(a, Subspace.full(a.n))


def is_ideal(a: Algebra, s: Subspace) -> bool:
    if s.ambient_dim != a.n:
        raise DimensionMismatch(f"subspace of Q^{s.ambient_dim} in a {a.n}-dim algebra")
    for v in s.basis:
        for i in range(a.n):
            e = a.e(i)
            if not subspace_contains(s, multiply(a, e, v)):
                return False
            if not subspace_contains(s, multiply(a, v, e)):
                return False
    return True


@dataclass(frozen=True)
class Ideal:
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim


def ideal(a: Algebra, s: Subspace) -> Ideal:
    if not is_ideal(a, s):
        raise NotAnIdeal("subspace is not a two-sided ideal")
    return Ideal(s)


def _residual(s: Subspace, v: Sequence) -> list[Fraction]:
    r = [Fraction(x) for x in v]
    for row, p in zip(s.basis, s.pivots):
        c = r[p]
        if c:
            r = [x - c * y for x, y in zip(r, row)]
    return r


def quotient(a: Algebra, i: Ideal | Subspace):
    """``A / I`` on the basis of classes of ``e_c``, ``c`` outside the pivots of ``I``.

    Returns ``(algebra, projection)`` where ``projection`` is the
    ``(n - dim I) x n`` matrix sending coordinates in ``A`` to coordinates in
    ``A / I``.
    """
    s = i.subspace if isinstance(i, Ideal) else i
    if not is_ideal(a, s):
        raise NotAnIdeal("subspace is not a two-sided ideal")
    pivots = set(s.pivots)
    keep = [c for c in range(a.n) if c not in pivots]
    m = len(keep)
    if m == 0:
        raise ValueError("quotient by the whole algebra is the zero space")

    def project(v):
        r = _residual(s, v)
        return tuple(r[c] for c in keep)

    cols = [project(a.e(j)) for j in range(a.n)]
    projection = tuple(tuple(cols[j][r] for j in range(a.n)) for r in range(m))
    gamma = [[project(a.gamma[c][d]) for d in keep] for c in keep]
    return make_algebra(gamma, name=f"{a.name}/I" if a.name else ""), projection


def induced_algebra(a: Algebra, i: Ideal | Subspace) -> Algebra:
    """The ideal as an algebra in its own canonical basis."""
    s = i.subspace if isinstance(i, Ideal) else i
    if s.dim == 0:
        raise ValueError("the zero ideal is not an algebra of positive dimension")
    gamma = [
        [s.coordinates(multiply(a, u, v)) for v in s.basis] for u in s.basis
    ]
    return make_algebra(gamma)


def change_basis(a: Algebra, p: Sequence[Sequence]) -> Algebra:
    """Structure constants in the basis ``f_i = sum_j p[j][i] e_j``."""
    n = a.n
    p_inv = inverse(p)
    new_basis = [tuple(Fraction(p[j][i]) for j in range(n)) for i in range(n)]
    gamma = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = multiply(a, new_basis[i], new_basis[j])
            row.append(apply(p_inv, prod))
        gamma.append(row)
    return make_algebra(gamma, name=a.name)


def scale(a: Algebra, c) -> Algebra:
    c = Fraction(c)
    return make_algebra(
        [[[c * g for g in a.gamma[i][j]] for j in range(a.n)] for i in range(a.n)],
        name=a.name,
    )
