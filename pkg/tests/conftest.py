"""Shared fixtures: the seven small reference trees and their frozen
characteristic polynomials, plus the depth-two flagship example."""

import pytest

from quantumtree import polynomials as pc
from quantumtree import trees as tc


def path(p, root=0):
    return tc.from_edge_list(p, root, [(i, i + 1) for i in range(p - 1)])


def star(p, root=0):
    return tc.from_edge_list(p, root, [(0, i) for i in range(1, p)])


@pytest.fixture(scope="session")
def reference_trees():
    """name -> (tree, psi coeffs ascending, psi_hat coeffs ascending)."""
    return {
        "p2": (path(2), [-1, 0, 1], [0, -1]),
        "3a": (star(3), [0, 2, 0, -2], [0, 0, 1]),
        "3b": (path(3), [0, 2, 0, -2], [-1, 0, 2]),
        "4a": (path(4), [1, 0, -5, 0, 4], [0, 3, 0, -4]),
        "4b": (tc.from_edge_list(4, 0, [(0, 1), (1, 2), (1, 3)]),
               [0, 0, -3, 0, 3], [0, 2, 0, -3]),
        "4c": (star(4), [0, 0, -3, 0, 3], [0, 0, 0, -1]),
        "4d": (tc.from_edge_list(4, 0, [(0, 1), (0, 2), (2, 3)]),
               [1, 0, -5, 0, 4], [0, 1, 0, -2]),
    }


@pytest.fixture(scope="session")
def reference_bcf_texts():
    return {
        "p2": "-z+1/z",
        "3a": "-2z+2/z",
        "3b": "-z-1/(-2z+1/z)",
        "4a": "-z-1/(-2z-1/(-2z+1/z))",
        "4b": "-z-1/(-3z+2/z)",
        "4c": "-3z+3/z",
        "4d": "-2z+1/z-1/(-2z+1/z)",
    }


@pytest.fixture(scope="session")
def snowflake():
    """Depth-two tree with branch stars of 3, 3 and 4 vertices."""
    s3 = star(3)
    s4 = star(4)
    return tc.attach_branches([s3, s3, s4])


@pytest.fixture(scope="session")
def snowflake_polys():
    psi = pc.poly([0, 0, 0, 0, 0, 52, 0, -202, 0, 258, 0, -108])
    psihat = pc.poly([0, 0, 0, 0, -12, 0, 52, 0, -75, 0, 36])
    return psi, psihat


def all_trees(p_lo, p_hi):
    return [t for p in range(p_lo, p_hi + 1)
            for t in tc.enumerate_rooted_trees(p)]
