from hypothesis import given, settings, strategies as st
import pytest

from fixtures import pair_left, ref_l2, ref_genside
from slnet.errors import InfeasibleParams
from slnet.network import format_network, validate
from slnet.structure import blobs, generator, is_bad_blob, level
from slnet.testkit import GenParams, random_colored_tree, random_genside_network, random_network, verify_roundtrip


def test_determinism():
    p = GenParams(seed=42)
    assert format_network(random_network(p)) == format_network(random_network(p))
    g = GenParams(seed=42, max_level=3, require_leaf_every_side=True)
    assert format_network(random_network(g)) == format_network(random_network(g))
    assert random_colored_tree(5, 6) == random_colored_tree(5, 6)


def test_infeasible_params():
    with pytest.raises(InfeasibleParams):
        random_network(GenParams(min_leaves=10, max_leaves=5))
    with pytest.raises(InfeasibleParams):
        random_network(GenParams(max_level=3))
    with pytest.raises(InfeasibleParams):
        random_colored_tree(0, 1)


def test_samples_are_valid_and_in_range():
    for s in range(300):
        net = random_network(GenParams(seed=s, min_leaves=5, max_leaves=20))
        assert validate(net) == []
        assert 5 <= len(net.taxa) <= 20
        assert level(net) <= 2


def test_no_bad_blobs_when_disallowed():
    for s in range(300):
        net = random_network(GenParams(seed=s, allow_bad_blobs=False))
        assert not any(is_bad_blob(net, b) for b in blobs(net))


def test_genside_samples_cover_every_side():
    levels = set()
    for s in range(100):
        net = random_genside_network(GenParams(seed=s, min_leaves=3, max_leaves=30, max_level=3))
        assert validate(net) == []
        assert not generator(net).has_empty_side()
        levels.add(level(net))
    assert levels == {1, 2, 3}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000), st.integers(2, 8))
def test_coloured_trees_are_proper(seed, leaves):
    t = random_colored_tree(seed, leaves)
    t.check()
    assert len(t.leaves) == leaves


def test_verify_roundtrip_reports():
    assert verify_roundtrip(ref_l2(), "sl").passed
    report = verify_roundtrip(pair_left(), "shortest")
    assert report.passed and report.status == "ambiguous" and report.expected == "ambiguous"
    assert verify_roundtrip(ref_genside(), "genside").passed
    assert "pass" in str(verify_roundtrip(ref_l2(), "sl"))


def test_verify_roundtrip_failure_is_reported():
    report = verify_roundtrip(ref_l2(), "nonsense")
    assert not report.passed and report.status == "error"
    report = verify_roundtrip(ref_genside(), "sl")
    assert not report.passed and report.detail
