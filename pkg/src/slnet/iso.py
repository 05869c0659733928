"""Leaf-labelled isomorphism through a canonical certificate.

Colour refinement is seeded by the taxa, then ties are broken by
individualizing one vertex of the first non-singleton cell and recursing.
Vertices with identical neighbourhoods are interchangeable, so only one of
each such group is tried.
"""

from __future__ import annotations

from .errors import TaxaMismatch
from .network import Network

Certificate = tuple


def _rank(sigs: dict[int, tuple]) -> dict[int, int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs.values())))}
    return {v: order[s] for v, s in sigs.items()}


def _refine(net: Network, colors: dict[int, int]) -> dict[int, int]:
    classes = len(set(colors.values()))
    while True:
        sigs = {v: (c, tuple(sorted(colors[w] for w in net.neighbors(v)))) for v, c in colors.items()}
        colors = _rank(sigs)
        k = len(set(colors.values()))
        if k == classes:
            return colors
        classes = k


def _certificate(net: Network, colors: dict[int, int]) -> Certificate:
    edges = tuple(sorted((min(colors[u], colors[v]), max(colors[u], colors[v])) for u, v in net.edges))
    labels = tuple((t, colors[net.leaf(t)]) for t in net.taxa)
    return (len(colors), edges, labels)


def _search(net: Network, colors: dict[int, int]) -> tuple[Certificate, dict[int, int]]:
    cells: dict[int, list[int]] = {}
    for v, c in colors.items():
        cells.setdefault(c, []).append(v)
    target = min((c for c, vs in cells.items() if len(vs) > 1), default=None)
    if target is None:
        return _certificate(net, colors), colors
    best = None
    seen_nbhd = set()
    for v in sorted(cells[target]):
        nb = net.neighbors(v)
        if nb in seen_nbhd:
            continue
        seen_nbhd.add(nb)
        split = {w: (c, 0 if w == v else 1) for w, c in colors.items()}
        cand = _search(net, _refine(net, _rank(split)))
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def _initial(net: Network) -> dict[int, int]:
    sigs = {}
    for v in net.vertices:
        t = net.label(v)
        sigs[v] = (0, t) if t is not None else (1, "")
    return _rank(sigs)


def canonical_labelling(net: Network) -> tuple[Certificate, dict[int, int]]:
    return _search(net, _refine(net, _initial(net)))


def certificate(net: Network) -> Certificate:
    """Hashable value equal for two networks iff they are isomorphic."""
    return canonical_labelling(net)[0]


def canonical_network(net: Network) -> Network:
    return net.relabel_vertices(canonical_labelling(net)[1])


def is_isomorphic(n1: Network, n2: Network) -> bool:
    if set(n1.taxa) != set(n2.taxa):
        raise TaxaMismatch(f"{sorted(set(n1.taxa) ^ set(n2.taxa))}")
    if len(n1) != len(n2) or len(n1.edges) != len(n2.edges):
        return False
    return certificate(n1) == certificate(n2)
