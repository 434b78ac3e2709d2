"""Finite checks of structural identities relating the invariant spaces.

Each checker returns a :class:`PropertyReport`. A check either holds or
carries a witness (basis indices and the offending map). Informational
findings that are not asserted go into ``notes``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import solvers
from .algebra import (
    Algebra,
    Ideal,
    NotAnIdeal,
    apply,
    center,
    centralizer,
    commutator,
    flatten,
    identity,
    induced_algebra,
    is_ideal,
    left_mult,
    matmul,
    multiply,
    require_associative,
    right_mult,
    unflatten,
)
from .linalg import Subspace, nullspace_basis, subspace_contains, subspace_intersection


class NotInvariant(ValueError):
    pass


@dataclass
class Check:
    name: str
    holds: bool
    witness: Any = None

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError("a holding check carries no witness")
        if not self.holds and self.witness is None:
            raise ValueError("a failing check needs a witness")


@dataclass
class PropertyReport:
    name: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)

    def add(self, name: str, witness=None) -> None:
        self.checks.append(Check(name, witness is None, witness))

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


def _first_failure(pairs, test):
    for idx, value in pairs:
        if not test(value):
            return {"indices": idx, "map": value}
    return None


def _sub(x, y):
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(x, y))


def check_invariant_containments(a: Algebra) -> PropertyReport:
    """The four containments among Der, C, QC and QDer.

    QDer in bracket expressions means the space of maps ``D`` admitting some
    ``D'``. The derivation/centroid item is checked in bracket form
    ``[d, phi]``; whether plain composition stays inside C is only noted.
    """
    require_associative(a)
    der = solvers.derivations(a)
    c = solvers.centroid(a)
    qc = solvers.quasi_centroid(a)
    qd = solvers.quasi_derivations(a).d_projection
    rep = PropertyReport("invariant_containments")

    dm, cm, qcm, qdm = der.maps(), c.maps(), qc.maps(), qd.maps()
    rep.add(
        "der_centroid_bracket_in_centroid",
        _first_failure(
            (((s, t), commutator(d, phi)) for s, d in enumerate(dm) for t, phi in enumerate(cm)),
            c.contains,
        ),
    )
    rep.add(
        "qder_qc_bracket_in_qc",
        _first_failure(
            (((s, t), commutator(q, x)) for s, q in enumerate(qdm) for t, x in enumerate(qcm)),
            qc.contains,
        ),
    )
    rep.add(
        "qc_qc_bracket_in_qder",
        _first_failure(
            (((s, t), commutator(x, y)) for s, x in enumerate(qcm) for t, y in enumerate(qcm)),
            qd.contains,
        ),
    )
    rep.add(
        "centroid_in_qder",
        _first_failure(((s, phi) for s, phi in enumerate(cm)), qd.contains),
    )
    composed = _first_failure(
        (((s, t), matmul(d, phi)) for s, d in enumerate(dm) for t, phi in enumerate(cm)),
        c.contains,
    )
    rep.notes.append(
        "composition Der o C inside C: "
        + ("yes" if composed is None else f"no (basis pair {composed['indices']})")
    )
    return rep


def check_centroid_qc_bracket(a: Algebra) -> PropertyReport:
    """Images of ``[C, QC]`` lie in the annihilator; the bracket vanishes if it is 0."""
    require_associative(a)
    c = solvers.centroid(a)
    qc = solvers.quasi_centroid(a)
    z = center(a)
    rep = PropertyReport("centroid_qc_bracket")
    images_bad = None
    zero_bad = None
    for s, phi1 in enumerate(c.maps()):
        for t, phi2 in enumerate(qc.maps()):
            br = commutator(phi1, phi2)
            for i in range(a.n):
                if images_bad is None and not subspace_contains(z, apply(br, a.e(i))):
                    images_bad = {"indices": (s, t), "basis_vector": i, "map": br}
            if z.dim == 0 and zero_bad is None and any(any(r) for r in br):
                zero_bad = {"indices": (s, t), "map": br}
    rep.add("bracket_image_in_center", images_bad)
    if z.dim == 0:
        rep.add("bracket_zero_when_center_zero", zero_bad)
    else:
        rep.notes.append(f"center has dimension {z.dim}; vanishing check not applicable")
    return rep


def _operator_identity_space(a: Algebra, op) -> Subspace:
    """Maps ``phi`` with ``[phi, op(e_i)] = op(phi(e_i))`` for every basis ``e_i``.

    Linear in ``phi``; assembled by evaluating on elementary matrices.
    """
    n = a.n
    ops = [op(a, a.e(i)) for i in range(n)]
    columns = []
    for p in range(n):
        for k in range(n):
            unit = tuple(
                tuple(Fraction(int(r == p and s == k)) for s in range(n)) for r in range(n)
            )
            col = []
            for i in range(n):
                lhs = commutator(unit, ops[i])
                rhs = op(a, apply(unit, a.e(i)))
                col.extend(flatten(_sub(lhs, rhs)))
            columns.append(col)
    rows = [list(r) for r in zip(*columns)]
    return nullspace_basis(rows, n * n)


def _satisfies_operator_identity(a: Algebra, phi, op) -> bool:
    for i in range(a.n):
        if commutator(phi, op(a, a.e(i))) != op(a, apply(phi, a.e(i))):
            return False
    return True


def _bracket(a: Algebra, x, y):
    return tuple(u - v for u, v in zip(multiply(a, x, y), multiply(a, y, x)))


def check_derivation_operator_identities(
    a: Algebra, probes: int = 20, seed: int = 0
) -> PropertyReport:
    """``[d, L_x] = L_{d(x)}``, ``[d, R_x] = R_{d(x)}``, Lie derivation, and the converse."""
    require_associative(a)
    n = a.n
    der = solvers.derivations(a)
    rep = PropertyReport("derivation_operator_identities")
    left_bad = right_bad = lie_bad = None
    for s, d in enumerate(der.maps()):
        for i in range(n):
            x = a.e(i)
            dx = apply(d, x)
            if left_bad is None and commutator(d, left_mult(a, x)) != left_mult(a, dx):
                left_bad = {"indices": (s, i), "map": d}
            if right_bad is None and commutator(d, right_mult(a, x)) != right_mult(a, dx):
                right_bad = {"indices": (s, i), "map": d}
            for j in range(n):
                y = a.e(j)
                lhs = apply(d, _bracket(a, x, y))
                rhs = tuple(
                    u + v
                    for u, v in zip(_bracket(a, dx, y), _bracket(a, x, apply(d, y)))
                )
                if lie_bad is None and lhs != rhs:
                    lie_bad = {"indices": (s, i, j), "map": d}
    rep.add("bracket_with_left_mult", left_bad)
    rep.add("bracket_with_right_mult", right_bad)
    rep.add("lie_derivation", lie_bad)

    left_space = _operator_identity_space(a, left_mult)
    right_space = _operator_identity_space(a, right_mult)
    rep.add(
        "converse_left_space_equals_der",
        None if left_space == der.space else {"indices": (), "map": left_space.dim},
    )
    rep.add(
        "converse_right_space_equals_der",
        None if right_space == der.space else {"indices": (), "map": right_space.dim},
    )

    rng = random.Random(seed)
    probe_bad = None
    basis = der.maps()
    for t in range(probes):
        phi = [[Fraction(0)] * n for _ in range(n)]
        for d in basis:
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            for r in range(n):
                for s in range(n):
                    phi[r][s] += c * d[r][s]
        if t % 2:
            r, s = rng.randrange(n), rng.randrange(n)
            phi[r][s] += Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        phi = tuple(tuple(r) for r in phi)
        in_der = der.contains(phi)
        ok = _satisfies_operator_identity(a, phi, left_mult) and _satisfies_operator_identity(
            a, phi, right_mult
        )
        if ok != in_der and probe_bad is None:
            probe_bad = {"indices": (t,), "map": phi}
    rep.add("converse_probe", probe_bad)
    return rep


def check_multiplication_closure(a: Algebra) -> PropertyReport:
    """L(A) and R(A) are closed under composition; containment in Der is noted only."""
    require_associative(a)
    n = a.n
    rep = PropertyReport("multiplication_operator_closure")
    der = solvers.derivations(a)
    for label, op in (("left", left_mult), ("right", right_mult)):
        mats = [op(a, a.e(i)) for i in range(n)]
        span = Subspace.span([flatten(m) for m in mats], n * n)
        bad = None
        for s, x in enumerate(mats):
            for t, y in enumerate(mats):
                if not subspace_contains(span, flatten(matmul(x, y))):
                    bad = {"indices": (s, t), "map": matmul(x, y)}
                    break
            if bad:
                break
        rep.add(f"{label}_closed_under_composition", bad)
        inside = all(der.contains(m) for m in mats)
        rep.notes.append(f"{label} multiplications inside Der: {'yes' if inside else 'no'}")
    return rep


def verify_centroid_ideal_decomposition(
    a: Algebra, i: Ideal | Subspace, check_invariance: bool = True
) -> PropertyReport:
    """Centroid maps vanishing on an invariant ideal, and the splitting of the centroid.

    With ``check_invariance=False`` a non-invariant ideal is reported as a
    failed ``invariant`` check instead of raising :class:`NotInvariant`.
    """
    require_associative(a)
    s = i.subspace if isinstance(i, Ideal) else i
    if not is_ideal(a, s):
        raise NotAnIdeal("subspace is not a two-sided ideal")
    n = a.n
    lam = solvers.centroid(a)
    rep = PropertyReport("centroid_ideal_decomposition")

    not_inv = None
    for t, phi in enumerate(lam.maps()):
        for v in s.basis:
            if not subspace_contains(s, apply(phi, v)):
                not_inv = {"indices": (t,), "map": phi}
                break
        if not_inv:
            break
    if not_inv is not None and check_invariance:
        raise NotInvariant("ideal is not invariant under the centroid")
    rep.add("invariant", not_inv)

    if s.dim == 0:
        rep.notes.append("degenerate ideal: zero subspace, decomposition skipped")
        return rep
    if s.dim == n:
        rep.notes.append("degenerate ideal: whole algebra, quotient is zero")

    # V(I): centroid maps killing I, as a subspace of the centroid
    rows = []
    for v in s.basis:
        for r in range(n):
            row = [Fraction(0)] * (n * n)
            for k in range(n):
                row[r * n + k] = v[k]
            rows.append(row)
    vanish = nullspace_basis(rows, n * n)
    v_space = subspace_intersection(lam.space, vanish)
    v_maps = [unflatten(v, n) for v in v_space.basis]
    rep.notes.append(f"dim centroid = {lam.dim}, dim V(I) = {v_space.dim}")

    # alpha(phi)(y + I) = phi(y): needs phi(I) = 0 and lands in Z_A(I)
    zi = centralizer(a, s)
    wd_bad = img_bad = None
    for t, phi in enumerate(v_maps):
        for v in s.basis:
            if any(apply(phi, v)) and wd_bad is None:
                wd_bad = {"indices": (t,), "map": phi}
        for k in range(n):
            if not subspace_contains(zi, apply(phi, a.e(k))) and img_bad is None:
                img_bad = {"indices": (t, k), "map": phi}
    rep.add("alpha_well_defined", wd_bad)
    rep.add("alpha_image_in_centralizer", img_bad)

    # injectivity: phi is determined by its values on the quotient basis
    pivots = set(s.pivots)
    reps = [k for k in range(n) if k not in pivots]
    images = [
        [x for k in reps for x in apply(phi, a.e(k))] for phi in v_maps
    ]
    inj = Subspace.span(images, n * len(reps)).dim == v_space.dim if reps else v_space.dim == 0
    rep.add("alpha_injective", None if inj else {"indices": (), "map": v_space.dim})

    if s.dim == n:
        return rep
    lam_i = solvers.centroid(induced_algebra(a, s))
    rep.notes.append(f"dim centroid of I = {lam_i.dim}")
    if lam_i.dim != 1:
        rep.notes.append("hypothesis not met: centroid of I is not the scalars; split skipped")
        return rep
    ident = flatten(identity(n))
    direct = not subspace_contains(v_space, ident)
    total = 1 + v_space.dim == lam.dim and subspace_contains(lam.space, ident)
    rep.add(
        "centroid_splits_as_scalars_plus_V",
        None
        if direct and total
        else {"indices": (), "map": {"centroid_dim": lam.dim, "V_dim": v_space.dim}},
    )
    return rep


def central_ideal(a: Algebra):
    """The annihilator when it is a nonzero proper ideal, else ``None``."""
    z = center(a)
    return z if 0 < z.dim < a.n else None


def run_all(a: Algebra) -> list[PropertyReport]:
    reports = [
        check_invariant_containments(a),
        check_centroid_qc_bracket(a),
        check_derivation_operator_identities(a),
        check_multiplication_closure(a),
    ]
    z = central_ideal(a)
    if z is None:
        rep = PropertyReport("centroid_ideal_decomposition")
        rep.notes.append("degenerate ideal: annihilator is zero or the whole algebra; skipped")
        reports.append(rep)
    else:
        reports.append(verify_centroid_ideal_decomposition(a, z))
    return reports
