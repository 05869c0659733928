import pytest
from hypothesis import given, settings, strategies as st

from fixtures import ALT_TREE, pair_left, pair_right, ref_l2
from slnet.altpath import (
    BLACK, RED, ColoredTree, build_altpath, detect_altpath, format_tree, is_shortest_reconstructible,
    make_pair, parse_tree, similar, swap_in_place,
)
from slnet.errors import InvalidColoring
from slnet.iso import is_isomorphic
from slnet.metrics import longest_matrix, shortest_matrix
from slnet.network import validate
from slnet.structure import level
from slnet.testkit import random_colored_tree

EDGE_TREE = ColoredTree([("x", "y")], {"x": BLACK, "y": RED}, {"x": 2, "y": 2})
PAIR_NAMES = {"a": "x_1", "b": "x_2", "c": "y_1", "d": "y_2"}


def test_similar_flips_colours():
    assert similar(EDGE_TREE).colors == {"x": RED, "y": BLACK}
    t = parse_tree(ALT_TREE)
    assert similar(similar(t)) == t


def test_single_edge_tree_gives_pair():
    left, right = make_pair(EDGE_TREE)
    assert is_isomorphic(left, pair_left().rename_taxa(PAIR_NAMES))
    assert is_isomorphic(right, pair_right().rename_taxa(PAIR_NAMES))


def test_alt_tree_pair():
    t = parse_tree(ALT_TREE)
    n1, n2 = make_pair(t)
    assert validate(n1) == [] and validate(n2) == []
    assert level(n1) == 2 and level(n2) == 2
    assert shortest_matrix(n1) == shortest_matrix(n2)
    assert longest_matrix(n1) != longest_matrix(n2)
    assert not is_isomorphic(n1, n2)


def test_tree_text_round_trip():
    t = parse_tree(ALT_TREE)
    assert parse_tree(format_tree(t)) == t


def test_colouring_must_be_proper():
    bad = ColoredTree([("x", "y")], {"x": BLACK, "y": BLACK}, {"x": 2, "y": 2})
    with pytest.raises(InvalidColoring):
        build_altpath(bad)
    with pytest.raises(InvalidColoring):
        build_altpath(ColoredTree([("x", "y")], {"x": BLACK, "y": RED}, {"x": 4, "y": 2}))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000), st.integers(2, 8))
def test_similar_structures_share_shortest_distances(seed, leaves):
    t = random_colored_tree(seed, leaves)
    t.check()
    n1, n2 = make_pair(t)
    assert shortest_matrix(n1) == shortest_matrix(n2)
    assert longest_matrix(n1) != longest_matrix(n2)


def test_detect_pair():
    emb = detect_altpath(pair_left())
    assert emb is not None
    tree = emb.tree()
    assert len(tree.edges) == 1
    assert sorted(tree.colors.values()) == [BLACK, RED]
    assert is_isomorphic(swap_in_place(pair_left(), emb), pair_right())


def test_detect_none_on_ref_l2():
    assert detect_altpath(ref_l2()) is None


def test_detect_alt_tree_covers_network():
    n1, n2 = make_pair(parse_tree(ALT_TREE))
    emb = detect_altpath(n1)
    assert emb is not None
    assert len(emb.parts) == 8 and len(emb.links) == 7
    swapped = swap_in_place(n1, emb)
    assert is_isomorphic(swapped, n2)
    assert shortest_matrix(swapped) == shortest_matrix(n1)


def test_swap_twice_is_identity():
    net = pair_left()
    once = swap_in_place(net, detect_altpath(net))
    twice = swap_in_place(once, detect_altpath(once))
    assert is_isomorphic(twice, net)


def test_reconstructibility_verdicts():
    assert not is_shortest_reconstructible(pair_left())
    assert is_shortest_reconstructible(ref_l2())
    tree = build_altpath(EDGE_TREE)
    assert not is_shortest_reconstructible(tree)
