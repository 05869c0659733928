"""Alt-path structures: construction, colour swap and detection inside networks.

A properly two-coloured binary tree becomes a network fragment by replacing
black internal vertices with K(2,3) gadgets, red internal vertices with plain
vertices, black leaves with (s,0,0,0) blobs and red leaves with s-leaf cycles.
Swapping the colours gives a fragment with the same distances between its
leaves, so a network containing one is not determined by shortest distances.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .errors import InvalidColoring, InvalidEmbedding, NetworkError, ParseError
from .iso import is_isomorphic
from .network import TAXON_RE, Network, NetworkBuilder
from .structure import blobs

BLACK = "black"
RED = "red"


@dataclass
class ColoredTree:
    edges: list[tuple[str, str]]
    colors: dict[str, str]
    # number of leaves s in {2, 3} hanging off each tree leaf's pendant blob
    sizes: dict[str, int] = field(default_factory=dict)

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.colors)
        g.add_edges_from(self.edges)
        return g

    @property
    def leaves(self) -> list[str]:
        g = self.graph()
        return sorted(v for v in g if g.degree(v) == 1)

    @property
    def internal(self) -> list[str]:
        g = self.graph()
        return sorted(v for v in g if g.degree(v) != 1)

    def check(self) -> None:
        g = self.graph()
        if set(g) != set(self.colors):
            raise InvalidColoring("every tree vertex needs a colour")
        if len(g) < 2 or not nx.is_tree(g):
            raise InvalidColoring("not a tree with at least two vertices")
        for v in g:
            if self.colors[v] not in (BLACK, RED):
                raise InvalidColoring(f"vertex {v} has colour {self.colors[v]!r}")
            if g.degree(v) not in (1, 3):
                raise InvalidColoring(f"vertex {v} has degree {g.degree(v)}")
            if g.degree(v) == 1 and self.sizes.get(v) not in (2, 3):
                raise InvalidColoring(f"leaf {v} needs size 2 or 3")
        for u, v in g.edges:
            if self.colors[u] == self.colors[v]:
                raise InvalidColoring(f"edge {u}-{v} joins two {self.colors[u]} vertices")


def similar(t: ColoredTree) -> ColoredTree:
    flip = {BLACK: RED, RED: BLACK}
    return ColoredTree(list(t.edges), {v: flip[c] for v, c in t.colors.items()}, dict(t.sizes))


def leaf_taxa(name: str, s: int) -> list[str]:
    return [f"{name}_{i}" for i in range(1, s + 1)]


def _attach_leaf_part(b: NetworkBuilder, color: str, spine: list[int]) -> int:
    """Pendant part around existing spine vertices; returns the port vertex."""
    if color == RED:
        u = b.new_vertex()
        b.add_edge(u, spine[0])
        b.add_edge(spine[-1], u)
        return u
    p, q, u = b.new_vertex(), b.new_vertex(), b.new_vertex()
    for x, y in ((p, q), (p, u), (u, q), (p, spine[0]), (spine[-1], q)):
        b.add_edge(x, y)
    return u


def _gadget(b: NetworkBuilder) -> list[int]:
    n, s = b.new_vertex(), b.new_vertex()
    ports = [b.new_vertex() for _ in range(3)]
    for v in ports:
        b.add_edge(n, v)
        b.add_edge(s, v)
    return ports


def build_altpath(t: ColoredTree) -> Network:
    """The alt-path structure of ``t``; leaf ``x`` of size s carries taxa x_1..x_s."""
    t.check()
    g = t.graph()
    b = NetworkBuilder()
    port: dict[tuple[str, str], int] = {}
    for v in sorted(g):
        nbrs = sorted(g.neighbors(v))
        if len(nbrs) == 1:
            spine = []
            for taxon in leaf_taxa(v, t.sizes[v]):
                if not TAXON_RE.match(taxon):
                    raise InvalidColoring(f"bad leaf name {v!r}")
                x = b.new_vertex()
                b.add_leaf(taxon, x)
                if spine:
                    b.add_edge(spine[-1], x)
                spine.append(x)
            port[(v, nbrs[0])] = _attach_leaf_part(b, t.colors[v], spine)
        elif t.colors[v] == RED:
            r = b.new_vertex()
            for w in nbrs:
                port[(v, w)] = r
        else:
            for w, p in zip(nbrs, _gadget(b)):
                port[(v, w)] = p
    for u, v in g.edges:
        b.add_edge(port[(u, v)], port[(v, u)])
    return b.build()


def make_pair(t: ColoredTree) -> tuple[Network, Network]:
    return build_altpath(t), build_altpath(similar(t))


# -- embeddings in a host network ----------------------------------------


@dataclass(frozen=True)
class Part:
    """Image of one tree vertex.

    ``kind`` is gadget, vertex, black_leaf or red_leaf.  ``body`` holds the
    vertices removed by a swap, ``ports`` the part's vertices on tree edges and
    ``spine`` the ordered vertices whose outside edges are the structure's leaves.
    """

    kind: str
    body: frozenset[int]
    ports: tuple[int, ...]
    spine: tuple[int, ...] = ()

    @property
    def color(self) -> str:
        return BLACK if self.kind in ("gadget", "black_leaf") else RED


@dataclass(frozen=True)
class AltPathEmbedding:
    parts: tuple[Part, ...]
    # network edges joining the parts, one per tree edge
    links: tuple[tuple[int, int], ...]

    def tree(self) -> ColoredTree:
        where = {}
        for i, part in enumerate(self.parts):
            for v in part.ports:
                where[v] = f"n{i}"
        edges = [(where[u], where[v]) for u, v in self.links]
        colors = {f"n{i}": p.color for i, p in enumerate(self.parts)}
        sizes = {f"n{i}": len(p.spine) for i, p in enumerate(self.parts) if p.spine}
        return ColoredTree(edges, colors, sizes)


def _gadget_part(net: Network, verts: frozenset[int]) -> Part | None:
    if len(verts) != 5:
        return None
    inner = {v: {w for w in net.neighbors(v) if w in verts} for v in verts}
    hubs = sorted(v for v in verts if len(inner[v]) == 3)
    ports = sorted(v for v in verts if len(inner[v]) == 2)
    if len(hubs) != 2 or len(ports) != 3 or inner[hubs[0]] != inner[hubs[1]]:
        return None
    return Part("gadget", verts, tuple(ports))


def _black_leaf_part(net: Network, blob) -> Part | None:
    paths = sorted(blob.main_paths, key=len)
    if [len(p) - 2 for p in paths] not in ([0, 1, 2], [0, 1, 3]):
        return None
    u = paths[1][1]
    return Part("black_leaf", frozenset(paths[0]) | {u}, (u,), tuple(paths[2][1:-1]))


def _red_leaf_parts(net: Network, blob) -> list[Part]:
    verts = blob.vertices
    if len(verts) not in (3, 4):
        return []
    out = []
    for u in sorted(verts):
        start = min(w for w in net.neighbors(u) if w in verts)
        cycle = [u, start]
        while True:
            nxt = [w for w in net.neighbors(cycle[-1]) if w in verts and w != cycle[-2]]
            if nxt[0] == u:
                break
            cycle.append(nxt[0])
        out.append(Part("red_leaf", frozenset([u]), (u,), tuple(cycle[1:])))
    return out


def _exits(net: Network, part: Part) -> list[tuple[int, int]] | None:
    """(port, outside neighbour) for every tree edge at the part, or None if malformed."""
    skip = part.body | set(part.spine)
    out = []
    for p in part.ports:
        outer = sorted(w for w in net.neighbors(p) if w not in skip)
        if part.kind != "vertex" and len(outer) != 1:
            return None
        out += [(p, w) for w in outer]
    return out


def _candidates(net: Network) -> list[AltPathEmbedding]:
    """Every structure that can be grown from a leaf part.

    Each blob or plain vertex admits at most one role (gadget, plain vertex,
    black leaf, red leaf), so once a leaf part and its tree edge are fixed the
    whole structure is forced.
    """
    internal_at: dict[int, Part] = {}
    leaf_at: dict[int, list[Part]] = {}
    bl_all = blobs(net)
    for bl in bl_all:
        if bl.level == 2:
            gp = _gadget_part(net, bl.vertices)
            if gp is not None:
                for v in gp.ports:
                    internal_at[v] = gp
                continue
            lp = _black_leaf_part(net, bl)
            if lp is not None:
                leaf_at.setdefault(lp.ports[0], []).append(lp)
        elif bl.level == 1:
            for lp in _red_leaf_parts(net, bl):
                leaf_at.setdefault(lp.ports[0], []).append(lp)
    in_blob = {v for bl in bl_all for v in bl.vertices}
    for v in net.vertices:
        if v not in in_blob and not net.is_leaf(v):
            internal_at[v] = Part("vertex", frozenset([v]), (v,))

    found = []
    seen = set()
    for a in sorted(leaf_at):
        for start in leaf_at[a]:
            emb = _grow(net, start, internal_at, leaf_at)
            if emb is not None and frozenset(emb.links) not in seen:
                seen.add(frozenset(emb.links))
                found.append(emb)
    return found


def _grow(net: Network, start: Part, internal_at, leaf_at) -> AltPathEmbedding | None:
    exits = _exits(net, start)
    if not exits:
        return None
    parts = [start]
    links = []
    used = set(start.body) | set(start.spine)
    frontier = [(*exits[0], start.color)]
    while frontier:
        src, dst, color = frontier.pop()
        links.append((src, dst))
        part = internal_at.get(dst)
        if part is not None:
            exits = _exits(net, part)
            if part.color == color or part.body & used or not exits or (dst, src) not in exits:
                return None
            frontier += [(p, w, part.color) for p, w in exits if (p, w) != (dst, src)]
        else:
            options = [lp for lp in leaf_at.get(dst, []) if lp.color != color
                       and _exits(net, lp) == [(dst, src)] and not (lp.body | set(lp.spine)) & used]
            if not options:
                return None
            part = options[0]
        parts.append(part)
        used |= part.body | set(part.spine)
    return AltPathEmbedding(tuple(parts), tuple(links))


def swap_in_place(net: Network, emb: AltPathEmbedding) -> Network:
    """Replace the embedded structure by its colour-swapped partner."""
    b = net.builder()
    try:
        for u, v in emb.links:
            if not net.has_edge(u, v):
                raise InvalidEmbedding(f"missing link {u}-{v}")
        # new endpoint of every link, keyed by (old port, outside neighbour)
        end: dict[tuple[int, int], int] = {}
        for part in emb.parts:
            exits = _exits(net, part)
            if not exits:
                raise InvalidEmbedding(f"part {part.kind} does not match the network")
            for v in part.body:
                b.remove_vertex(v)
            if part.kind == "gadget":
                r = b.new_vertex()
                for e in exits:
                    end[e] = r
            elif part.kind == "vertex":
                for e, g in zip(exits, _gadget(b)):
                    end[e] = g
            else:
                color = RED if part.kind == "black_leaf" else BLACK
                end[exits[0]] = _attach_leaf_part(b, color, list(part.spine))
        for u, v in emb.links:
            b.add_edge(end[(u, v)], end[(v, u)])
    except (ValueError, KeyError, NetworkError) as exc:
        raise InvalidEmbedding(str(exc)) from None
    return b.build()


def detect_altpath(net: Network) -> AltPathEmbedding | None:
    """An embedded alt-path structure whose swap gives another valid level-2 network."""
    net.require_valid()
    for emb in _candidates(net):
        try:
            other = swap_in_place(net, emb)
        except InvalidEmbedding:
            continue
        if not other.is_valid or max((bl.level for bl in blobs(other)), default=0) > 2:
            continue
        if not is_isomorphic(net, other):
            return emb
    return None


def is_shortest_reconstructible(net: Network) -> bool:
    return detect_altpath(net) is None


# -- text format ---------------------------------------------------------


def parse_tree(text: str) -> ColoredTree:
    edges, colors, sizes = [], {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "leaf" and len(parts) == 4:
                colors[parts[1]] = parts[2]
                sizes[parts[1]] = int(parts[3])
            elif parts[0] == "color" and len(parts) == 3:
                colors[parts[1]] = parts[2]
            elif parts[0] == "edge" and len(parts) == 3:
                edges.append((parts[1], parts[2]))
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"line {lineno}: cannot parse {raw!r}") from None
    return ColoredTree(edges, colors, sizes)


def format_tree(t: ColoredTree) -> str:
    leaves = set(t.leaves)
    lines = [f"leaf {v} {t.colors[v]} {t.sizes[v]}" for v in sorted(leaves)]
    lines += [f"color {v} {t.colors[v]}" for v in sorted(t.colors) if v not in leaves]
    lines += [f"edge {u} {v}" for u, v in t.edges]
    return "\n".join(lines) + "\n"
