import json
import random

import pytest
from hypothesis import given, settings, strategies as hst

from quantumtree import trees as tc

from conftest import all_trees, path, star


EXPECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 4, 5: 9, 6: 20, 7: 48, 8: 115}


def test_enumeration_counts():
    for p, n in EXPECTED_COUNTS.items():
        assert len(tc.enumerate_rooted_trees(p)) == n


def test_enumeration_codes_distinct():
    for p in range(1, 8):
        codes = [tc.canonical_code(t) for t in tc.enumerate_rooted_trees(p)]
        assert len(codes) == len(set(codes))


def test_enumeration_range_errors():
    with pytest.raises(ValueError, match="p out of range"):
        tc.enumerate_rooted_trees(0)
    with pytest.raises(ValueError, match="p out of range"):
        tc.enumerate_rooted_trees(13)


def test_from_edge_list_validation():
    with pytest.raises(ValueError, match="not a tree"):
        tc.from_edge_list(3, 0, [(0, 1)])
    with pytest.raises(ValueError, match="not a tree"):
        tc.from_edge_list(3, 0, [(0, 1), (0, 1)])
    with pytest.raises(ValueError, match="not a tree"):
        tc.from_edge_list(4, 0, [(0, 1), (2, 3), (0, 0)])
    with pytest.raises(ValueError, match="bad vertex id"):
        tc.from_edge_list(3, 5, [(0, 1), (1, 2)])
    with pytest.raises(ValueError, match="bad vertex id"):
        tc.from_edge_list(3, 0, [(0, 1), (1, 7)])
    with pytest.raises(ValueError, match="disconnected"):
        tc.from_edge_list(5, 0, [(0, 1), (2, 3), (3, 4), (2, 4)])


def test_degrees():
    t = star(4)
    assert tc.degree(t, 0) == 3
    assert all(tc.degree(t, v) == 1 for v in (1, 2, 3))
    with pytest.raises(ValueError, match="bad vertex id"):
        tc.degree(t, 9)


def test_degree_bonus_counts_in_degree():
    t = tc.RootedTree(p=2, root=0, edges=((0, 1),), degree_bonus=((0, 1),))
    assert tc.degree(t, 0) == 2
    assert tc.degree(t, 1) == 1


def test_root_subtrees_structure():
    for tree in all_trees(2, 6):
        pairs = tc.root_subtrees(tree)
        assert len(pairs) == tc.degree(tree, tree.root)
        assert sum(that.p for _t, that in pairs) == tree.p - 1
        for t_k, that in pairs:
            assert t_k.root == 0 or 0 <= t_k.root < t_k.p
            # the branch vertex keeps its original degree via the bonus
            assert tc.degree(that, that.root) >= 1
        rebuilt = tc.attach_branches([that for _t, that in pairs])
        assert tc.is_isomorphic(rebuilt, tree)


def test_root_subtrees_single_vertex():
    with pytest.raises(ValueError, match="single vertex"):
        tc.root_subtrees(tc.RootedTree(p=1, root=0, edges=()))


def test_canonical_code_distinguishes_root():
    chain_mid = tc.from_edge_list(3, 1, [(0, 1), (1, 2)])
    chain_end = path(3)
    assert not tc.is_isomorphic(chain_mid, chain_end)
    assert tc.is_isomorphic(chain_mid, star(3))


def test_canonical_code_sees_annotations():
    plain = path(2)
    annotated = tc.RootedTree(p=2, root=0, edges=((0, 1),),
                              degree_bonus=((0, 1),))
    assert tc.canonical_code(plain) != tc.canonical_code(annotated)


@settings(max_examples=60, deadline=None)
@given(hst.integers(2, 7), hst.randoms(use_true_random=False))
def test_isomorphism_invariant_under_relabeling(p, rng):
    pool = tc.enumerate_rooted_trees(p)
    tree = pool[rng.randrange(len(pool))]
    perm = list(range(p))
    rng.shuffle(perm)
    relabeled = tc.from_edge_list(
        p, perm[tree.root], [(perm[u], perm[v]) for u, v in tree.edges])
    assert tc.is_isomorphic(tree, relabeled)
    assert tc.canonical_code(tree) == tc.canonical_code(relabeled)


def test_bfs_order():
    t = tc.from_edge_list(5, 0, [(0, 1), (0, 2), (1, 3), (3, 4)])
    assert t.bfs_order() == [0, 1, 2, 3, 4]
    kids = t.children()
    assert kids[0] == [1, 2] and kids[1] == [3] and kids[3] == [4]


def test_json_round_trip():
    for tree in all_trees(1, 5):
        back = tc.tree_from_json(tc.tree_to_json(tree))
        assert back == tree
    obj = json.loads(tc.tree_to_json(star(4)))
    assert obj == {"p": 4, "root": 0, "edges": [[0, 1], [0, 2], [0, 3]]}


def test_attach_branches_sizes():
    t = tc.attach_branches([path(3), star(3)])
    assert t.p == 7
    assert tc.degree(t, 0) == 2
