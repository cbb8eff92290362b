"""Shared fixtures: small named matroids used across the test modules."""

import pytest

from cremfan.generators import (
    a3_arrangement,
    complete_graph_matroid,
    coxeter_matroid,
    dowling_rank3,
    fano,
    uniform,
)


@pytest.fixture(scope="session")
def a3():
    """The rank-3 arrangement of six planes with four star spanning trees."""
    return a3_arrangement()


@pytest.fixture(scope="session")
def fano_m():
    return fano()


@pytest.fixture(scope="session")
def b3():
    return coxeter_matroid("B3")


@pytest.fixture(scope="session")
def b4():
    return coxeter_matroid("B4")


@pytest.fixture(scope="session")
def k4():
    return complete_graph_matroid(4)


@pytest.fixture(scope="session")
def k5():
    return complete_graph_matroid(5)


@pytest.fixture(scope="session")
def u23():
    return uniform(2, 3)


@pytest.fixture(scope="session")
def dowling_z2():
    return dowling_rank3("z2")


def by_label(M, *labels):
    """Resolve labels to a tuple of element indices."""
    lookup = {lab: i for i, lab in enumerate(M.ground.labels)}
    return tuple(lookup[lab] for lab in labels)
