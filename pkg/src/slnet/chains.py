"""Cherries, chains and chain adjacency read from distance matrices."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx
import numpy as np

from .errors import CherriesPresent, NotACherry, TaxonCollision
from .metrics import DistanceMatrix
from .network import Network

Chain = tuple[str, ...]


class FreshNames:
    """Supplies ``_z<counter>`` taxa that avoid every name seen so far."""

    def __init__(self, taken=()):
        self.taken = set(taken)
        self.counter = 0

    def __call__(self) -> str:
        while True:
            name = f"_z{self.counter}"
            self.counter += 1
            if name not in self.taken:
                self.taken.add(name)
                return name


def find_cherries(m: DistanceMatrix) -> list[tuple[str, str]]:
    return [(x, y) for x, y in combinations(sorted(m.taxa), 2) if m.m(x, y) == 2]


def reduce_cherry(m: DistanceMatrix, x: str, y: str, z: str) -> DistanceMatrix:
    if x == y or m.m(x, y) != 2:
        raise NotACherry(f"{x},{y} at distance {m.m(x, y)}")
    if z in m:
        raise TaxonCollision(f"taxon {z!r} already present")
    rest = m.drop((x, y))
    row_m = {a: m.m(a, x) - 1 for a in rest.taxa}
    row_l = None if m.dl is None else {a: m.l(a, x) - 1 for a in rest.taxa}
    return rest.with_taxon(z, row_m, row_l)


def expand_cherry(m: DistanceMatrix, z: str, x: str, y: str) -> DistanceMatrix:
    if x in m or y in m or x == y:
        raise TaxonCollision(f"{x!r} or {y!r} already present")
    rest = m.drop((z,))
    row_m = {a: m.m(a, z) + 1 for a in rest.taxa}
    row_l = None if m.dl is None else {a: m.l(a, z) + 1 for a in rest.taxa}
    out = rest.with_taxon(x, row_m, row_l)
    row_m = dict(row_m, **{x: 2})
    row_l = None if row_l is None else dict(row_l, **{x: 2})
    return out.with_taxon(y, row_m, row_l)


@dataclass(frozen=True)
class CherryStep:
    x: str
    y: str
    z: str


def subtree_reduce(m: DistanceMatrix, fresh: FreshNames) -> tuple[DistanceMatrix, list[CherryStep]]:
    """Reduce cherries until none is left, always taking the smallest pair."""
    steps = []
    while m.n >= 3:
        cherries = find_cherries(m)
        if not cherries:
            break
        x, y = cherries[0]
        z = fresh()
        m = reduce_cherry(m, x, y, z)
        steps.append(CherryStep(x, y, z))
    return m, steps


def _orient(chain: list[str]) -> Chain:
    return tuple(chain) if chain[0] <= chain[-1] else tuple(reversed(chain))


def chains_from_matrix(m: DistanceMatrix) -> list[Chain]:
    """Partition the taxa into maximal chains (consecutive leaves at distance 3)."""
    dm = m.dm
    off = dm[~np.eye(m.n, dtype=bool)]
    if m.n > 2 and off.size and off.min() <= 2:
        raise CherriesPresent("reduce cherries first")
    g = nx.Graph()
    g.add_nodes_from(m.taxa)
    g.add_edges_from((x, y) for x, y in combinations(m.taxa, 2) if m.m(x, y) == 3)
    return _paths_of(g)


def _paths_of(g: nx.Graph) -> list[Chain]:
    out = []
    for comp in nx.connected_components(g):
        sub = g.subgraph(comp)
        ends = sorted(v for v in comp if sub.degree(v) <= 1)
        start = ends[0] if ends else min(comp)
        order = [start]
        prev = None
        while True:
            nxt = sorted(w for w in sub.neighbors(order[-1]) if w != prev and w not in order)
            if not nxt:
                break
            prev = order[-1]
            order.append(nxt[0])
        out.append(_orient(order))
    return sorted(out)


def structural_chains(net: Network) -> list[Chain]:
    """Chains read off the network itself: leaves whose neighbours are adjacent."""
    g = nx.Graph()
    g.add_nodes_from(net.taxa)
    attach = {t: next(iter(net.neighbors(net.leaf(t)))) for t in net.taxa}
    for x, y in combinations(net.taxa, 2):
        if net.has_edge(attach[x], attach[y]):
            g.add_edge(x, y)
    return _paths_of(g)


def chain_of(chains: list[Chain]) -> dict[str, int]:
    return {t: i for i, ch in enumerate(chains) for t in ch}


def ends(chain: Chain) -> tuple[str, ...]:
    return (chain[0],) if len(chain) == 1 else (chain[0], chain[-1])


@dataclass(frozen=True)
class Adjacency:
    """Witnessing end-leaf pairs for one pair of chains."""

    witnesses: tuple[tuple[str, str], ...]

    @property
    def kind(self) -> str:
        return ("none", "once", "twice")[min(len(self.witnesses), 2)]


def chain_adjacency(m: DistanceMatrix, chains: list[Chain]) -> dict[tuple[int, int], Adjacency]:
    """Adjacency between chain indices ``i < j``; pairs that are not adjacent are omitted.

    Two singleton chains have a single possible witness, so they are never
    reported twice adjacent here.
    """
    out = {}
    for i, j in combinations(range(len(chains)), 2):
        wit = tuple((x, y) for x in ends(chains[i]) for y in ends(chains[j]) if m.m(x, y) == 4)
        if wit:
            out[(i, j)] = Adjacency(wit)
    return out
