import os
import sys
from importlib import resources

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from associnv.algebra import from_products, zero_algebra  # noqa: E402
from associnv.catalog import parse_catalog  # noqa: E402


def _matrix_units():
    idx = {(1, 1): 1, (1, 2): 2, (2, 1): 3, (2, 2): 4}
    prods = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                prods[(a, b)] = {idx[(i, l)]: 1}
    return from_products(4, prods, name="M_2")


AS21 = from_products(2, {(1, 1): {2: 1}}, name="As_2^1")
AS31 = from_products(3, {(1, 3): {2: 1}, (3, 1): {2: 1}}, name="As_3^1")
K1 = from_products(1, {(1, 1): {1: 1}}, name="K_1")
ZERO2 = zero_algebra(2)
ZERO3 = zero_algebra(3)
M2 = _matrix_units()
NONASSOC = from_products(3, {(1, 1): {2: 1}, (2, 1): {3: 1}}, name="nonassoc_3")

ASSOCIATIVE = {a.name: a for a in (AS21, AS31, K1, ZERO2, ZERO3, M2)}


def fixture_catalog_text():
    return resources.files("associnv").joinpath("data/fixtures.cat").read_text()


def nonassoc_catalog_text():
    return resources.files("associnv").joinpath("data/nonassociative.cat").read_text()


@pytest.fixture(params=sorted(ASSOCIATIVE), ids=str)
def assoc(request):
    return ASSOCIATIVE[request.param]


@pytest.fixture
def fixture_entries():
    return parse_catalog(fixture_catalog_text())


# criterion number -> (status, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {status} - {detail}")
