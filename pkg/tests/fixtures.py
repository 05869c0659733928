"""Hand transcriptions of the reference networks used across the tests."""

from slnet.network import Network


def named(edges, leaves):
    """Network from edges over arbitrary hashable vertex names; leaves maps taxon -> name."""
    ids = {}
    for u, v in edges:
        for x in (u, v):
            ids.setdefault(x, len(ids))
    return Network([(ids[u], ids[v]) for u, v in edges], {t: ids[v] for t, v in leaves.items()})


def _leaves(*taxa):
    return {t: "L" + t for t in taxa}


def ref_l2():
    edges = [
        ("p1", "v0"), ("v0", "p2"), ("p1", "v1"), ("v1", "p2"),
        ("p1", "c1s"), ("c1s", "c2s"), ("c2s", "v2"), ("v2", "p2"),
        ("v2", "cut"), ("cut", "cut1"), ("cut", "v3"),
        ("v3", "d1s"), ("d1s", "d2s"), ("d2s", "v3"),
        ("v0", "Lb"), ("v1", "La"), ("c1s", "Lc1"), ("c2s", "Lc2"),
        ("cut1", "Lf"), ("cut1", "Lg"), ("d1s", "Ld1"), ("d2s", "Ld2"),
    ]
    return named(edges, _leaves("a", "b", "c1", "c2", "d1", "d2", "f", "g"))


# upper triangle of the golden (shortest, longest) table
REF_TABLE = {
    ("a", "b"): (4, 8), ("a", "c1"): (4, 8), ("a", "c2"): (5, 7), ("a", "d1"): (7, 12),
    ("a", "d2"): (7, 12), ("a", "f"): (6, 10), ("a", "g"): (6, 10),
    ("b", "c1"): (4, 8), ("b", "c2"): (5, 7), ("b", "d1"): (7, 12), ("b", "d2"): (7, 12),
    ("b", "f"): (6, 10), ("b", "g"): (6, 10),
    ("c1", "c2"): (3, 7), ("c1", "d1"): (7, 10), ("c1", "d2"): (7, 10), ("c1", "f"): (6, 8),
    ("c1", "g"): (6, 8),
    ("c2", "d1"): (6, 11), ("c2", "d2"): (6, 11), ("c2", "f"): (5, 9), ("c2", "g"): (5, 9),
    ("d1", "d2"): (3, 4), ("d1", "f"): (5, 6), ("d1", "g"): (5, 6),
    ("d2", "f"): (5, 6), ("d2", "g"): (5, 6),
    ("f", "g"): (2, 2),
}


def _pair(first, second):
    x1, x2 = first
    y1, y2 = second
    edges = [
        ("p", "s1"), ("s1", "s2"), ("s2", "q"), ("p", "q"), ("p", "u"), ("u", "q"),
        ("u", "w"), ("w", "t1"), ("t1", "t2"), ("t2", "w"),
        ("s1", "L" + x1), ("s2", "L" + x2), ("t1", "L" + y1), ("t2", "L" + y2),
    ]
    return named(edges, _leaves(x1, x2, y1, y2))


def pair_left():
    """A (2,0,0,0) blob carrying a,b joined to a triangle carrying c,d."""
    return _pair(("a", "b"), ("c", "d"))


def pair_right():
    return _pair(("c", "d"), ("a", "b"))


GENSIDE_SIDES = {
    "a": ("north", "sw"), "d": ("sw", "se"), "g": ("se", "east"), "f": ("east", "north"),
    "b": ("north", "origin"), "c": ("origin", "sw"), "e": ("origin", "se"),
    "h": ("east", "west"), "i": ("west", "west"),
}


def ref_genside():
    edges = []
    leaves = {}
    for name, (x, y) in GENSIDE_SIDES.items():
        s1, s2 = f"{name}_s1", f"{name}_s2"
        edges += [(x, s1), (s1, s2), (s2, y)]
        for k, s in ((1, s1), (2, s2)):
            edges.append((s, f"L{name}{k}"))
            leaves[f"{name}{k}"] = f"L{name}{k}"
    return named(edges, leaves)


GENSIDE_TRIPLES = [("a", "b", "f"), ("a", "c", "d"), ("b", "c", "e"), ("d", "e", "g"), ("f", "g", "h")]
GENSIDE_BULB = ("i", "h")


def ladder():
    """Level-3 ladder: {a,ap}|{b,bp} passes the split test without a cut-edge."""
    edges = [
        ("00", "10"), ("10", "20"), ("20", "30"), ("30", "40"), ("40", "50"),
        ("01", "11"), ("11", "21"), ("21", "31"), ("31", "41"), ("41", "51"),
        ("10", "11"), ("20", "31"), ("30", "21"), ("40", "41"),
    ]
    return named(edges, {"a": "00", "ap": "01", "b": "50", "bp": "51"})


ALT_TREE = """\
leaf a black 2
leaf b black 2
leaf c red 2
leaf d black 2
leaf e black 2
color 1 red
color 2 black
color 3 red
edge a 1
edge b 1
edge 1 2
edge 2 3
edge 2 c
edge 3 d
edge 3 e
"""


def theta(k1, k2, k3, prefix="t"):
    """Theta network with chains of the given lengths on its three paths."""
    edges, leaves = [], {}
    for i, k in enumerate((k1, k2, k3)):
        prev = "P"
        for j in range(k):
            v = f"{prefix}{i}_{j}"
            edges.append((prev, v))
            edges.append((v, "L" + v))
            leaves[v] = "L" + v
            prev = v
        edges.append((prev, "Q"))
    return named(edges, leaves)


def cycle(n, prefix="x"):
    edges, leaves = [], {}
    for j in range(n):
        edges.append((f"c{j}", f"c{(j + 1) % n}"))
        edges.append((f"c{j}", f"L{j}"))
        leaves[f"{prefix}{j}"] = f"L{j}"
    return named(edges, leaves)
