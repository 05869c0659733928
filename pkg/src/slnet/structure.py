"""Blob decomposition, level, pendant classification and generator graphs."""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .errors import InvalidNetwork, IsTree, NotPendant, UnrecognizedShape
from .forms import PendantForm
from .network import Network


@dataclass(frozen=True)
class Blob:
    vertices: frozenset[int]
    edges: tuple[tuple[int, int], ...]
    # (inside, outside) for every cut-edge leaving the blob, trivial ones included
    cut_edges: tuple[tuple[int, int], ...]
    poles: tuple[int, ...] = ()
    main_paths: tuple[tuple[int, ...], ...] = ()

    @property
    def level(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def nontrivial_cut_edges(self, net: Network) -> list[tuple[int, int]]:
        return [(u, w) for u, w in self.cut_edges if not net.is_leaf(w)]

    def is_pendant(self, net: Network) -> bool:
        return len(self.nontrivial_cut_edges(net)) == 1

    def leaves(self, net: Network) -> list[str]:
        return sorted(net.label(w) for _, w in self.cut_edges if net.is_leaf(w))


def _main_paths(net: Network, verts: frozenset[int]) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    inner = {v: [w for w in net.neighbors(v) if w in verts] for v in verts}
    poles = tuple(sorted(v for v, ns in inner.items() if len(ns) == 3))
    if len(poles) != 2:
        return poles, ()
    p, q = poles
    paths = []
    for first in sorted(inner[p]):
        path = [p, first]
        while path[-1] != q:
            nxt = [w for w in inner[path[-1]] if w != path[-2]]
            path.append(nxt[0])
        paths.append(tuple(path))
    return poles, tuple(paths)


def blobs(net: Network) -> list[Blob]:
    net.require_valid()
    out = []
    for comp in nx.biconnected_components(net.graph):
        if len(comp) < 3:
            continue
        verts = frozenset(comp)
        edges = tuple(sorted((u, v) for u, v in net.edges if u in verts and v in verts))
        cuts = tuple(sorted((u, w) for u in verts for w in net.neighbors(u) if w not in verts))
        blob = Blob(verts, edges, cuts)
        if blob.level == 2:
            poles, paths = _main_paths(net, verts)
            blob = Blob(verts, edges, cuts, poles, paths)
        out.append(blob)
    out.sort(key=lambda b: min(b.vertices))
    return out


def decompose(net: Network) -> tuple[list[Blob], nx.Graph]:
    """Blobs plus the tree whose edges are the non-trivial cut-edges.

    Tree nodes are ``("blob", index)`` or ``("vertex", id)`` for internal
    vertices outside every blob.  Each tree edge stores the network edge in
    its ``edge`` attribute.
    """
    bl = blobs(net)
    owner = {v: ("blob", i) for i, b in enumerate(bl) for v in b.vertices}
    tree = nx.Graph()
    for v in net.vertices:
        if not net.is_leaf(v):
            tree.add_node(owner.get(v, ("vertex", v)))
    for u, v in nx.bridges(net.graph):
        if net.is_leaf(u) or net.is_leaf(v):
            continue
        tree.add_edge(owner.get(u, ("vertex", u)), owner.get(v, ("vertex", v)), edge=(min(u, v), max(u, v)))
    return bl, tree


def level(net: Network) -> int:
    return max((b.level for b in blobs(net)), default=0)


def pendant_blobs(net: Network) -> list[Blob]:
    return [b for b in blobs(net) if b.is_pendant(net)]


def _leaf_along(net: Network, verts: frozenset[int], path) -> tuple[str, ...]:
    out = []
    for v in path:
        ext = [w for w in net.neighbors(v) if w not in verts]
        if not ext:
            continue
        taxon = net.label(ext[0])
        if taxon is None:
            raise UnrecognizedShape(f"vertex {v} carries a second non-trivial cut-edge")
        out.append(taxon)
    return tuple(out)


def classify_pendant(net: Network, blob: Blob) -> PendantForm:
    cuts = blob.nontrivial_cut_edges(net)
    if len(cuts) != 1:
        raise NotPendant(f"blob has {len(cuts)} non-trivial cut-edges")
    u = cuts[0][0]
    verts = blob.vertices
    if blob.level == 1:
        start = min(w for w in net.neighbors(u) if w in verts)
        cycle = [u, start]
        while True:
            nxt = [w for w in net.neighbors(cycle[-1]) if w in verts and w != cycle[-2]]
            if nxt[0] == u:
                break
            cycle.append(nxt[0])
        form = PendantForm.level1(_leaf_along(net, verts, cycle[1:]))
    elif blob.level == 2:
        p, q = blob.poles
        rest = [pth for pth in blob.main_paths if u not in pth]
        (third,) = [pth for pth in blob.main_paths if u in pth]
        i = third.index(u)
        form = PendantForm.level2(
            _leaf_along(net, verts, rest[0][1:-1]),
            _leaf_along(net, verts, rest[1][1:-1]),
            _leaf_along(net, verts, third[1:i]),
            _leaf_along(net, verts, third[i + 1:-1]),
        )
        if not form.a:
            raise UnrecognizedShape("level-2 pendant blob without leaves off the cut-edge path")
    else:
        raise UnrecognizedShape(f"pendant blob of level {blob.level}")
    form.check()
    return form


def is_bad_blob(net: Network, blob: Blob) -> bool:
    """Blob that turns into a bad pendant blob once its surroundings are reduced.

    A cycle is bad with 3 or 4 incident cut-edges; a level-2 blob is bad when
    its main paths carry 1, 0 and 2 or 3 cut-edges.
    """
    if blob.level == 1:
        return len(blob.cut_edges) in (3, 4)
    if blob.level == 2 and blob.main_paths:
        counts = sorted(len(pth) - 2 for pth in blob.main_paths)
        return counts in ([0, 1, 2], [0, 1, 3])
    return False


# -- generator -----------------------------------------------------------

LOOP_ANCHOR = -1


@dataclass(frozen=True)
class Side:
    ends: tuple[int, int]
    spine: tuple[int, ...]
    leaves: tuple[str, ...]

    @property
    def is_empty(self) -> bool:
        return not self.spine


@dataclass
class GeneratorGraph:
    """Multigraph left after pruning pendant subtrees and suppressing degree-2 vertices.

    ``spine`` lists the suppressed network vertices of a side in order from
    ``ends[0]``; ``leaves`` holds the taxa hanging directly off them.  A core
    that is a single cycle becomes one virtual vertex ``LOOP_ANCHOR`` with a
    loop whose spine is the whole cycle.
    """

    vertices: tuple[int, ...]
    sides: list[Side] = field(default_factory=list)

    def multigraph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for s in self.sides:
            g.add_edge(*s.ends)
        return g

    def has_empty_side(self) -> bool:
        return any(s.is_empty for s in self.sides)


def _core(net: Network) -> set[int]:
    g = nx.k_core(net.graph, 2)
    return set(g.nodes)


def generator(net: Network) -> GeneratorGraph:
    net.require_valid()
    core = _core(net)
    if not core:
        raise IsTree("network has no blobs")
    deg = {v: sum(1 for w in net.neighbors(v) if w in core) for v in core}

    def hanging(v):
        return tuple(net.label(w) for w in net.neighbors(v) if w not in core and net.is_leaf(w))

    gens = sorted(v for v in core if deg[v] == 3)
    if not gens:
        start = min(core)
        cycle = [start, min(w for w in net.neighbors(start) if w in core)]
        while True:
            nxt = [w for w in net.neighbors(cycle[-1]) if w in core and w != cycle[-2]]
            if nxt[0] == start:
                break
            cycle.append(nxt[0])
        leaves = tuple(t for v in cycle for t in hanging(v))
        return GeneratorGraph((LOOP_ANCHOR,), [Side((LOOP_ANCHOR, LOOP_ANCHOR), tuple(cycle), leaves)])

    gen_set = set(gens)
    sides = []
    used = set()
    for g0 in gens:
        for first in sorted(w for w in net.neighbors(g0) if w in core):
            if (g0, first) in used:
                continue
            walk = [g0, first]
            while walk[-1] not in gen_set:
                nxt = [w for w in net.neighbors(walk[-1]) if w in core and w != walk[-2]]
                walk.append(nxt[0])
            used.add((g0, first))
            used.add((walk[-1], walk[-2]))
            spine = tuple(walk[1:-1])
            sides.append(Side((g0, walk[-1]), spine, tuple(t for v in spine for t in hanging(v))))
    if any(len(s.spine) == 0 and s.ends[0] == s.ends[1] for s in sides):
        raise InvalidNetwork("loop without spine")
    return GeneratorGraph(tuple(gens), sides)
