import os

import pytest

from gainquad import GF, affine_gains, affine_plane, expand, field_from_order


def pytest_collection_modifyitems(config, items):
    if os.environ.get("GAINQUAD_EXTENDED"):
        return
    skip = pytest.mark.skip(reason="extended run; set GAINQUAD_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def plane2():
    return affine_plane(GF(2))


@pytest.fixture(scope="session")
def plane3():
    return affine_plane(GF(3))


@pytest.fixture(scope="session")
def expansion2(plane2):
    return expand(affine_gains(plane2))


@pytest.fixture(scope="session")
def expansion3(plane3):
    return expand(affine_gains(plane3))


@pytest.fixture(scope="session")
def expansions_small():
    """Quadrangle expansions for q = 2, 3, 4, keyed by q."""
    out = {}
    for q in (2, 3, 4):
        plane = affine_plane(field_from_order(q))
        out[q] = expand(affine_gains(plane))
    return out
