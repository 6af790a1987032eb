import pytest

from multisoliton.graphs import SolitonGraph, WeightedGraph


def sg(*edge_weights, extra_nodes=()):
    return SolitonGraph.from_weighted(WeightedGraph.build(edge_weights, extra_nodes))


@pytest.fixture
def path_graph():
    """1 - a = b - 2"""
    return sg(("1", "a", 1), ("a", "b", 2), ("b", "2", 1))


@pytest.fixture
def c4_chestnut():
    """4-cycle a=b-c=d-a with port 1 hanging off a."""
    return sg(("1", "a", 1), ("a", "b", 2), ("b", "c", 1), ("c", "d", 2), ("d", "a", 1))


@pytest.fixture
def star():
    """Center u with three ports; the double bond goes to port 3."""
    return sg(("u", "1", 1), ("u", "2", 1), ("u", "3", 2))


@pytest.fixture
def fig1_like():
    """Two pentagon cycles joined by a path h-i-j-k that no soliton can enter."""
    return sg(
        ("1", "h", 1), ("h", "la", 2),
        ("la", "lb", 1), ("lb", "lc", 2), ("lc", "ld", 1), ("ld", "le", 2), ("le", "la", 1),
        ("h", "i", 1), ("i", "j", 2), ("j", "k", 1),
        ("2", "k", 1), ("k", "ra", 2),
        ("ra", "rb", 1), ("rb", "rc", 2), ("rc", "rd", 1), ("rd", "re", 2), ("re", "ra", 1),
    )
