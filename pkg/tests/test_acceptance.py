"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL/SKIP line.

Timings are measured on a cold solver cache.
"""

import os
import random
import re
import time
from contextlib import contextmanager
from dataclasses import replace
from fractions import Fraction

import oracle
import pytest
from conftest import ACCEPTANCE, AS21, AS31, ASSOCIATIVE, K1, M2, fixture_catalog_text
from invariance import equivariant, random_invertible, random_scalar, scaling_invariant

from associnv import properties, solvers
from associnv.algebra import basis_vector, identity
from associnv.catalog import batch_verify, load_catalog, parse_catalog
from associnv.linalg import Subspace, nullspace_basis
from associnv.solvers import _solve

RRB_ENV = "ASSOCINV_RRB_CATALOG"
SMALL_4DIM = frozenset(
    f"As_4^{k}"
    for k in (10, 11, 12, 15, 17, 19, 29, 30, 31, 39, 40, 42, 43, 44, 45, 46, 47, 48, 49, 54, 55, 56, 57, 58)
)


@contextmanager
def criterion(k, what):
    ACCEPTANCE[k] = ("FAIL", what)
    try:
        yield
    except pytest.skip.Exception as exc:
        ACCEPTANCE[k] = ("SKIP", f"{what} ({exc.msg})")
        raise
    except BaseException as exc:
        ACCEPTANCE[k] = ("FAIL", f"{what}: {exc!r}"[:300])
        raise
    else:
        ACCEPTANCE[k] = ("PASS", what)


def _unit_row(r, c, n=3):
    row = [0] * (n * n)
    row[r * n + c] = 1
    return row


def _diff_row(r, c, r2, c2, n=3):
    row = _unit_row(r, c, n)
    row[r2 * n + c2] = -1
    return row


def cold(fn, *args):
    _solve.cache_clear()
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


def test_criterion_1_qc_as21():
    with criterion(1, "QC(As_2^1) dim 3, a12 = 0, < 10 ms"):
        qc, dt = cold(solvers.quasi_centroid, AS21)
        assert qc.dim == 3
        assert all(m[0][1] == 0 for m in qc.maps())
        assert dt < 0.010, dt


def test_criterion_2_qc_as31():
    with criterion(2, "QC(As_3^1) dim 6, a12 = a32 = 0, a33 = a11, < 10 ms"):
        qc, dt = cold(solvers.quasi_centroid, AS31)
        assert qc.dim == 6
        for m in qc.maps():
            assert m[0][1] == 0 and m[2][1] == 0 and m[2][2] == m[0][0]
        # the three constraints alone cut out QC
        cut = nullspace_basis([_unit_row(0, 1), _unit_row(2, 1), _diff_row(2, 2, 0, 0)], 9)
        assert cut == qc.space
        assert dt < 0.010, dt


def test_criterion_3_qder_as21():
    with criterion(3, "QDer(As_2^1): D-proj dim 3, d12 = 0, d'22 = 2 d11, d'12 = 0, < 10 ms"):
        q, dt = cold(solvers.quasi_derivations, AS21)
        assert q.d_projection.dim == 3
        assert all(d[0][1] == 0 for d in q.d_projection.maps())
        for d, dp in q.pairs():
            assert dp[1][1] == 2 * d[0][0]
            assert dp[0][1] == 0
        assert dt < 0.010, dt


def test_criterion_4_idempotent_qder_shape():
    with criterion(4, "1-dim idempotent: QDer pairs are (c id, 2c id)"):
        q = solvers.quasi_derivations(K1)
        assert q.dim == 1
        ((d, dp),) = q.pairs()
        c = d[0][0]
        assert c != 0
        assert d == tuple(tuple(c * x for x in row) for row in identity(1))
        assert dp == ((2 * c,),)
        assert q.contains(((Fraction(3),),), ((Fraction(6),),))
        assert not q.contains(((Fraction(3),),), ((Fraction(3),),))


def test_criterion_5_property_suite():
    with criterion(5, "property suite holds on every associative fixture, < 2 s"):
        _solve.cache_clear()
        t = time.perf_counter()
        failures = []
        for name, a in ASSOCIATIVE.items():
            for rep in properties.run_all(a):
                if not rep.holds:
                    failures.append((name, rep.name, [c.name for c in rep.checks if not c.holds]))
        line = Subspace.span([basis_vector(2, 1)], 2)
        dec = properties.verify_centroid_ideal_decomposition(AS21, line)
        dt = time.perf_counter() - t
        assert not failures, failures
        assert dec.holds, [c for c in dec.checks if not c.holds]
        expected = {
            "invariant",
            "alpha_well_defined",
            "alpha_image_in_centralizer",
            "alpha_injective",
            "centroid_splits_as_scalars_plus_V",
        }
        assert expected <= {c.name for c in dec.checks}
        assert dt < 2.0, dt


def test_criterion_6_oracle_equivalence():
    with criterion(6, "Der/C/QC/ZDer/QDer dims match the naive oracle for every fixture of dim <= 3"):
        solve = {
            "der": solvers.derivations,
            "centroid": solvers.centroid,
            "qc": solvers.quasi_centroid,
            "zder": solvers.central_derivations,
        }
        small = [a for a in ASSOCIATIVE.values() if a.n <= 3]
        assert len(small) == 5
        for a in small:
            for kind, f in solve.items():
                assert f(a).dim == oracle.dimension(a.gamma, kind), (a.name, kind)
            q = solvers.quasi_derivations(a)
            assert q.dim == oracle.dimension(a.gamma, "qder"), a.name
            assert (q.d_projection.dim, q.dprime_projection.dim) == oracle.qder_projection_dims(a.gamma)


def test_criterion_7_equivariance_and_scaling():
    with criterion(7, "basis-change equivariance and scaling invariance, 100 trials per fixture"):
        rng = random.Random(20261014)
        for name, a in ASSOCIATIVE.items():
            for t in range(100):
                p = random_invertible(a.n, rng)
                assert equivariant(a, p), (name, t, p)
                c = random_scalar(rng)
                assert scaling_invariant(a, c), (name, t, c)


def _normalize(name):
    return re.sub(r"[{}\s]", "", name)


def rrb_problems(entries):
    """Problems found in a drop-in four-dimensional catalog; empty when it conforms."""
    problems = []
    for e in entries:
        if e.dim != 4:
            continue
        a = e.algebra()
        rep = solvers.is_small_quasi_centroid(a)
        if not 1 <= rep.qc_dim <= 10:
            problems.append(f"{e.name}: QC dim {rep.qc_dim} outside [1, 10]")
        if _normalize(e.name) in SMALL_4DIM and not rep.small:
            problems.append(f"{e.name}: QC dim {rep.qc_dim} but ZDer + scalars dim {rep.zder_plus_scalars_dim}")
    return problems


def test_rrb_checker_on_synthetic_catalog():
    # harness self-test with borrowed names, not table data
    (m2,) = [e for e in parse_catalog(fixture_catalog_text()) if e.name == "M_2"]
    small = replace(m2, name="As_4^{10}")  # QC = scalars, ZDer = 0
    assert rrb_problems([small]) == []
    zero = parse_catalog("algebra As_4^{11} dim 4\nend\n")  # QC = End, dim 16
    assert rrb_problems(zero) == ["As_4^{11}: QC dim 16 outside [1, 10]"]


def test_criterion_8_conditional_table():
    what = "drop-in 4-dim catalog: QC dim in [1, 10], listed classes small"
    with criterion(8, what):
        path = os.environ.get(RRB_ENV)
        if not path:
            pytest.skip(f"no catalog supplied; set {RRB_ENV} to a file of faithful multiplication tables")
        entries = [e for e in load_catalog(path) if e.dim == 4]
        assert entries, f"{path} has no 4-dimensional entries"
        problems = rrb_problems(entries)
        assert not problems, problems


def test_criterion_9_performance():
    with criterion(9, "4-dim QDer solve (64 x 32) < 1 s; fixture verification pipeline < 10 s"):
        rows = solvers.quasi_derivation_system(M2)
        assert (len(rows), len(rows[0])) == (64, 32)
        q, dt = cold(solvers.quasi_derivations, M2)
        assert q.dim == 4
        assert dt < 1.0, dt
        entries = parse_catalog(fixture_catalog_text())
        report, dt = cold(batch_verify, entries)
        assert report.passed
        assert dt < 10.0, dt
