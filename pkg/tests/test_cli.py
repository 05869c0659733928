import pytest

from fixtures import REF_TABLE, ALT_TREE, pair_left, ref_l2
from slnet.cli import main
from slnet.iso import is_isomorphic
from slnet.metrics import format_matrix, parse_matrix, shortest_matrix, sl_matrix
from slnet.network import format_network, parse_network


@pytest.fixture
def files(tmp_path):
    (tmp_path / "ref_l2.net").write_text(format_network(ref_l2()))
    (tmp_path / "pair.net").write_text(format_network(pair_left()))
    (tmp_path / "ref_l2.slm").write_text(format_matrix(sl_matrix(ref_l2())))
    (tmp_path / "pair.dm").write_text(format_matrix(shortest_matrix(pair_left())))
    (tmp_path / "alt_tree.tree").write_text(ALT_TREE)
    return tmp_path


def test_distances_reproduce_table(files):
    out = files / "out.slm"
    assert main(["distances", "--in", str(files / "ref_l2.net"), "--out", str(out)]) == 0
    m = parse_matrix(out.read_text())
    for (x, y), cell in REF_TABLE.items():
        assert (m.m(x, y), m.l(x, y)) == cell
    assert out.read_text() == (files / "ref_l2.slm").read_text()


def test_reconstruct_unique(files):
    out = files / "r.net"
    assert main(["reconstruct", "--mode", "sl", "--in", str(files / "ref_l2.slm"), "--out", str(out)]) == 0
    assert is_isomorphic(parse_network(out.read_text()), ref_l2())


def test_reconstruct_ambiguous_all(files, capsys):
    code = main(["reconstruct", "--mode", "shortest", "--in", str(files / "pair.dm"), "--all"])
    assert code == 10
    text = capsys.readouterr().out
    blocks = text.split("\n\n")
    assert len(blocks) == 2
    assert any(is_isomorphic(parse_network(b), pair_left()) for b in blocks)


def test_reconstruct_unrealizable(files):
    bad = files / "bad.dm"
    bad.write_text("4\nw\tx\ty\tz\n0\t3\t3\t3\n3\t0\t3\t3\n3\t3\t0\t3\n3\t3\t3\t0\n")
    assert main(["reconstruct", "--mode", "shortest", "--in", str(bad)]) == 20


def test_reconstruct_sl_needs_longest(files):
    assert main(["reconstruct", "--mode", "sl", "--in", str(files / "pair.dm")]) == 65


def test_check_splits(files, capsys):
    assert main(["check-splits", "--in", str(files / "ref_l2.slm")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == sorted(lines)
    assert "a,b,c1,c2|d1,d2,f,g" in lines and len(lines) == 3


def test_classify_pendant(files, capsys):
    assert main(["classify-pendant", "--in", str(files / "ref_l2.slm"), "--part", "a,b,c1,c2"]) == 0
    assert capsys.readouterr().out.strip() == "level2 a=(a) b=(b) c=(c1,c2) d=()"


def test_altpath_commands(files, capsys):
    n1, n2 = files / "n1.net", files / "n2.net"
    assert main(["altpath", "make-pair", "--tree", str(files / "alt_tree.tree"),
                 "--out1", str(n1), "--out2", str(n2)]) == 0
    assert main(["iso", str(n1), str(n2)]) == 1
    assert main(["altpath", "detect", "--in", str(n1)]) == 0
    assert main(["altpath", "detect", "--in", str(files / "ref_l2.net")]) == 1


def test_random_and_verify(files, capsys):
    out = files / "x.net"
    assert main(["random", "--seed", "7", "--leaves", "9", "--out", str(out)]) == 0
    first = out.read_text()
    assert len(parse_network(first).taxa) == 9
    assert main(["random", "--seed", "7", "--leaves", "9", "--out", str(out)]) == 0
    assert out.read_text() == first
    assert main(["verify", "--in", str(out), "--mode", "sl"]) == 0
    assert main(["verify", "--in", str(files / "pair.net"), "--mode", "shortest"]) == 0


def test_iso_and_dot(files, capsys):
    assert main(["iso", str(files / "ref_l2.net"), str(files / "ref_l2.net")]) == 0
    capsys.readouterr()
    assert main(["dot", "--in", str(files / "ref_l2.net")]) == 0
    assert capsys.readouterr().out.startswith("graph N {")


def test_error_codes(files):
    assert main([]) == 64
    assert main(["reconstruct", "--mode", "weird", "--in", "x"]) == 64
    assert main(["distances", "--in", str(files / "missing.net")]) == 65
    junk = files / "junk.net"
    junk.write_text("nonsense\n")
    assert main(["distances", "--in", str(junk)]) == 65
    assert main(["iso", str(files / "ref_l2.net"), str(files / "pair.net")]) == 65


def test_network_file_round_trip_is_byte_exact(files):
    text = (files / "ref_l2.net").read_text()
    assert format_network(parse_network(text)) == text
    text = (files / "ref_l2.slm").read_text()
    assert format_matrix(parse_matrix(text)) == text
