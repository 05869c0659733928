"""Network data model, validation and text/DOT serialization.

A network is a simple connected undirected graph whose degree-1 vertices are
labelled bijectively by taxa and whose remaining vertices have degree 3.
Vertex ids are opaque integers; all structural equality goes through
:func:`slnet.iso.is_isomorphic`.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import networkx as nx

from .errors import InvalidNetwork, ParseError

TAXON_RE = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Violation:
    def describe(self) -> str:
        return repr(self)


@dataclass(frozen=True)
class DegreeViolation(Violation):
    vertex: int
    degree: int = -1


@dataclass(frozen=True)
class LoopViolation(Violation):
    vertex: int


@dataclass(frozen=True)
class ParallelEdge(Violation):
    u: int
    v: int


@dataclass(frozen=True)
class Disconnected(Violation):
    components: int


@dataclass(frozen=True)
class TooFewLeaves(Violation):
    leaves: int


@dataclass(frozen=True)
class UnknownVertex(Violation):
    taxon: str
    vertex: int


@dataclass(frozen=True)
class DuplicateSplit(Violation):
    edge1: tuple[int, int]
    edge2: tuple[int, int]


class Network:
    """Immutable leaf-labelled graph.

    ``edges`` may contain loops or repeated pairs so that :func:`validate`
    can report them; such networks are rejected by every algorithm.
    """

    def __init__(self, edges: Iterable[tuple[int, int]], leaves: Mapping[str, int]):
        edge_list = []
        adj: dict[int, set[int]] = {}
        for u, v in edges:
            u, v = int(u), int(v)
            edge_list.append((min(u, v), max(u, v)))
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        leaf_of = {}
        for taxon, v in leaves.items():
            leaf_of[str(taxon)] = int(v)
            adj.setdefault(int(v), set())
        self._edges = tuple(edge_list)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._leaf_of = leaf_of
        self._label_of = {v: t for t, v in leaf_of.items()}

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self._adj)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def taxa(self) -> tuple[str, ...]:
        return tuple(sorted(self._leaf_of))

    @property
    def leaf_map(self) -> dict[str, int]:
        return dict(self._leaf_of)

    def leaf(self, taxon: str) -> int:
        return self._leaf_of[taxon]

    def label(self, v: int) -> str | None:
        return self._label_of.get(v)

    def is_leaf(self, v: int) -> bool:
        return v in self._label_of

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def __len__(self) -> int:
        return len(self._adj)

    def __repr__(self) -> str:
        return f"Network({len(self._adj)} vertices, {len(self._edges)} edges, taxa={list(self.taxa)})"

    @cached_property
    def graph(self) -> nx.Graph:
        """A networkx view; callers must not mutate it."""
        g = nx.Graph()
        g.add_nodes_from(self._adj)
        g.add_edges_from((u, v) for u, v in self._edges if u != v)
        return g

    def builder(self) -> "NetworkBuilder":
        return NetworkBuilder.from_network(self)

    def relabel_vertices(self, mapping: Mapping[int, int]) -> "Network":
        return Network(((mapping[u], mapping[v]) for u, v in self._edges),
                       {t: mapping[v] for t, v in self._leaf_of.items()})

    def rename_taxa(self, mapping: Mapping[str, str]) -> "Network":
        return Network(self._edges, {mapping.get(t, t): v for t, v in self._leaf_of.items()})

    @cached_property
    def violations(self) -> tuple[Violation, ...]:
        return tuple(_violations(self))

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def require_valid(self) -> None:
        if self.violations:
            raise InvalidNetwork("; ".join(v.describe() for v in self.violations))


class NetworkBuilder:
    """Mutable scratch graph used by constructions; freeze with :meth:`build`."""

    def __init__(self) -> None:
        self.adj: dict[int, set[int]] = {}
        self.leaves: dict[str, int] = {}
        self._next = 0

    @classmethod
    def from_network(cls, net: Network) -> "NetworkBuilder":
        b = cls()
        for v in net.vertices:
            b.adj[v] = set(net.neighbors(v))
        b.leaves = net.leaf_map
        b._next = max(b.adj, default=-1) + 1
        return b

    def new_vertex(self) -> int:
        while self._next in self.adj:
            self._next += 1
        v = self._next
        self.adj[v] = set()
        self._next += 1
        return v

    def add_edge(self, u: int, v: int) -> None:
        if u == v or v in self.adj[u]:
            raise InvalidNetwork(f"cannot add edge {u}-{v}")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def remove_edge(self, u: int, v: int) -> None:
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def remove_vertex(self, v: int) -> None:
        for u in self.adj.pop(v):
            self.adj[u].discard(v)
        taxon = self.taxon_at(v)
        if taxon is not None:
            del self.leaves[taxon]

    def add_leaf(self, taxon: str, attach_to: int | None = None) -> int:
        if taxon in self.leaves:
            raise InvalidNetwork(f"taxon {taxon!r} already present")
        v = self.new_vertex()
        self.leaves[taxon] = v
        if attach_to is not None:
            self.add_edge(v, attach_to)
        return v

    def taxon_at(self, v: int) -> str | None:
        for t, w in self.leaves.items():
            if w == v:
                return t
        return None

    def unlabel(self, taxon: str) -> int:
        return self.leaves.pop(taxon)

    def build(self) -> Network:
        edges = [(u, v) for u in self.adj for v in self.adj[u] if u < v]
        return Network(edges, self.leaves)


def single_edge(x: str, y: str) -> Network:
    return Network([(0, 1)], {x: 0, y: 1})


# -- validation ----------------------------------------------------------


def cut_edge_splits(net: Network) -> dict[tuple[int, int], frozenset[str]]:
    """Map every cut-edge to the taxa on the side of its first endpoint."""
    g = net.graph
    out = {}
    for u, v in nx.bridges(g):
        side = _component_without_edge(net, u, v)
        out[(u, v)] = frozenset(t for t in net.taxa if net.leaf(t) in side)
    return out


def _component_without_edge(net: Network, u: int, v: int) -> set[int]:
    seen = {u}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        for x in net.neighbors(w):
            if x in seen or (w == u and x == v):
                continue
            seen.add(x)
            queue.append(x)
    return seen


def _violations(net: Network) -> list[Violation]:
    out: list[Violation] = []
    seen_edges = set()
    for u, v in net.edges:
        if u == v:
            out.append(LoopViolation(u))
        elif (u, v) in seen_edges:
            out.append(ParallelEdge(u, v))
        seen_edges.add((u, v))
    for t, v in net.leaf_map.items():
        if not TAXON_RE.match(t):
            out.append(UnknownVertex(t, v))
    for v in net.vertices:
        d = net.degree(v)
        if net.is_leaf(v):
            if d != 1:
                out.append(DegreeViolation(v, d))
        elif d != 3:
            out.append(DegreeViolation(v, d))
    if len(net.taxa) < 2:
        out.append(TooFewLeaves(len(net.taxa)))
    if len(net) and not nx.is_connected(net.graph):
        out.append(Disconnected(nx.number_connected_components(net.graph)))
    if out:
        return out
    all_taxa = frozenset(net.taxa)
    by_split: dict[frozenset[str], tuple[int, int]] = {}
    for edge, side in sorted(cut_edge_splits(net).items()):
        key = min(side, all_taxa - side, key=lambda s: sorted(s))
        if key in by_split:
            out.append(DuplicateSplit(by_split[key], edge))
        else:
            by_split[key] = edge
    return out


def validate(net: Network) -> list[Violation]:
    return list(net.violations)


# -- text formats --------------------------------------------------------


def parse_network(text: str) -> Network:
    edges = []
    leaves: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "leaf" and len(parts) == 3:
                taxon, vid = parts[1], int(parts[2])
                if not TAXON_RE.match(taxon) or vid < 0:
                    raise ValueError
                if taxon in leaves:
                    raise ParseError(f"line {lineno}: duplicate taxon {taxon}")
                leaves[taxon] = vid
            elif parts[0] == "edge" and len(parts) == 3:
                u, v = int(parts[1]), int(parts[2])
                if u < 0 or v < 0:
                    raise ValueError
                edges.append((u, v))
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"line {lineno}: cannot parse {raw!r}") from None
    return Network(edges, leaves)


def format_network(net: Network) -> str:
    lines = [f"leaf {t} {net.leaf(t)}" for t in net.taxa]
    lines += [f"edge {u} {v}" for u, v in sorted(net.edges)]
    return "\n".join(lines) + "\n"


def to_dot(net: Network, name: str = "N") -> str:
    lines = [f"graph {name} {{"]
    for v in net.vertices:
        taxon = net.label(v)
        if taxon is None:
            lines.append(f"  {v} [shape=point];")
        else:
            lines.append(f'  {v} [shape=box, label="{taxon}"];')
    for u, v in sorted(net.edges):
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
