"""Shortest and longest leaf distances, sl-matrices and their text format."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping, Sequence

import networkx as nx
import numpy as np

from .errors import LevelTooHigh, ParseError, TaxaMismatch, TaxonCollision, TooLarge
from .network import Network


class DistanceMatrix:
    """Symmetric taxa-indexed integer matrix; ``dl`` is None for shortest-only data."""

    def __init__(self, taxa: Sequence[str], dm, dl=None):
        self.taxa = tuple(taxa)
        self._index = {t: i for i, t in enumerate(self.taxa)}
        if len(self._index) != len(self.taxa):
            raise TaxonCollision("duplicate taxa")
        self.dm = np.array(dm, dtype=np.int64).reshape(len(self.taxa), len(self.taxa))
        self.dm.setflags(write=False)
        if dl is not None:
            dl = np.array(dl, dtype=np.int64).reshape(self.dm.shape)
            dl.setflags(write=False)
        self.dl = dl

    @classmethod
    def from_function(cls, taxa, dm_of, dl_of=None) -> "DistanceMatrix":
        taxa = tuple(taxa)
        dm = [[0 if x == y else dm_of(x, y) for y in taxa] for x in taxa]
        dl = None if dl_of is None else [[0 if x == y else dl_of(x, y) for y in taxa] for x in taxa]
        return cls(taxa, dm, dl)

    @property
    def n(self) -> int:
        return len(self.taxa)

    @property
    def is_sl(self) -> bool:
        return self.dl is not None

    def index(self, t: str) -> int:
        return self._index[t]

    def __contains__(self, t: str) -> bool:
        return t in self._index

    def m(self, x: str, y: str) -> int:
        return int(self.dm[self._index[x], self._index[y]])

    def l(self, x: str, y: str) -> int:  # noqa: E743
        return int(self.dl[self._index[x], self._index[y]])

    def shortest(self) -> "DistanceMatrix":
        return self if self.dl is None else DistanceMatrix(self.taxa, self.dm)

    def restrict(self, taxa: Iterable[str]) -> "DistanceMatrix":
        wanted = set(taxa)
        keep = [t for t in self.taxa if t in wanted]
        idx = [self._index[t] for t in keep]
        dl = None if self.dl is None else self.dl[np.ix_(idx, idx)]
        return DistanceMatrix(keep, self.dm[np.ix_(idx, idx)], dl)

    def drop(self, taxa: Iterable[str]) -> "DistanceMatrix":
        gone = set(taxa)
        return self.restrict(t for t in self.taxa if t not in gone)

    def with_taxon(self, z: str, row_m: Mapping[str, int], row_l: Mapping[str, int] | None = None) -> "DistanceMatrix":
        if z in self._index:
            raise TaxonCollision(f"taxon {z!r} already present")
        n = self.n
        dm = np.zeros((n + 1, n + 1), dtype=np.int64)
        dm[:n, :n] = self.dm
        for t, i in self._index.items():
            dm[i, n] = dm[n, i] = row_m[t]
        dl = None
        if self.dl is not None:
            dl = np.zeros_like(dm)
            dl[:n, :n] = self.dl
            for t, i in self._index.items():
                dl[i, n] = dl[n, i] = row_l[t]
        return DistanceMatrix(self.taxa + (z,), dm, dl)

    def reorder(self, taxa: Sequence[str]) -> "DistanceMatrix":
        if set(taxa) != set(self.taxa) or len(taxa) != self.n:
            raise TaxaMismatch("reorder needs the same taxa")
        idx = [self._index[t] for t in taxa]
        dl = None if self.dl is None else self.dl[np.ix_(idx, idx)]
        return DistanceMatrix(taxa, self.dm[np.ix_(idx, idx)], dl)

    def sorted(self) -> "DistanceMatrix":
        return self.reorder(sorted(self.taxa))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DistanceMatrix) or set(self.taxa) != set(other.taxa):
            return False
        o = other.reorder(self.taxa)
        if (self.dl is None) != (o.dl is None):
            return False
        return bool(np.array_equal(self.dm, o.dm) and (self.dl is None or np.array_equal(self.dl, o.dl)))

    def __hash__(self):
        return hash(self.taxa)

    def __repr__(self) -> str:
        kind = "sl" if self.is_sl else "shortest"
        return f"DistanceMatrix({kind}, taxa={list(self.taxa)})"

    def violations(self) -> list[str]:
        out = []
        dm = self.dm
        if not np.array_equal(dm, dm.T):
            out.append("shortest distances not symmetric")
        if np.any(np.diag(dm) != 0):
            out.append("non-zero diagonal")
        off = dm[~np.eye(self.n, dtype=bool)]
        if off.size and off.min() < 1:
            out.append("off-diagonal distance below 1")
        if self.n > 2 and off.size and off.min() < 2:
            out.append("distance 1 with more than two taxa")
        # triangle inequality: dm[i,k] <= dm[i,j] + dm[j,k]
        if self.n and np.any(dm[:, None, :] > dm[:, :, None] + dm[None, :, :]):
            out.append("triangle inequality fails")
        if self.dl is not None:
            if not np.array_equal(self.dl, self.dl.T):
                out.append("longest distances not symmetric")
            if np.any(self.dl < dm):
                out.append("longest below shortest")
            if np.any(np.diag(self.dl) != 0):
                out.append("non-zero diagonal")
        return out


# -- computation ---------------------------------------------------------


def _bfs(net: Network, src: int) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in net.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def shortest_matrix(net: Network) -> DistanceMatrix:
    net.require_valid()
    taxa = net.taxa
    dm = np.zeros((len(taxa), len(taxa)), dtype=np.int64)
    for i, x in enumerate(taxa):
        dist = _bfs(net, net.leaf(x))
        for j, y in enumerate(taxa):
            dm[i, j] = dist[net.leaf(y)]
    return DistanceMatrix(taxa, dm)


def _block_longest(net: Network, block: frozenset[int]) -> dict[tuple[int, int], int]:
    """Longest simple path inside ``block`` between every ordered pair of its vertices."""
    out: dict[tuple[int, int], int] = {}
    inner = {v: [w for w in net.neighbors(v) if w in block] for v in block}
    for src in block:
        best: dict[int, int] = {}
        stack = [(src, 0, iter(inner[src]))]
        on_path = {src}
        while stack:
            v, d, it = stack[-1]
            if best.get(v, -1) < d:
                best[v] = d
            w = next(it, None)
            if w is None:
                stack.pop()
                on_path.discard(v)
            elif w not in on_path:
                on_path.add(w)
                stack.append((w, d + 1, iter(inner[w])))
        for v, d in best.items():
            out[(src, v)] = d
    return out


def longest_matrix(net: Network, max_level: int = 2) -> DistanceMatrix:
    """Longest leaf-to-leaf distances composed blockwise along the block-cut tree.

    A simple path visits the blocks on the tree path between its ends and
    inside each block runs from entry to exit vertex, so the longest path
    is the sum of per-block longest entry-exit paths.
    """
    net.require_valid()
    blocks = [frozenset(c) for c in nx.biconnected_components(net.graph)]
    blocks_of: dict[int, list[int]] = {}
    tables = []
    for i, b in enumerate(blocks):
        rank = sum(1 for u, v in net.edges if u in b and v in b) - len(b) + 1
        if rank > max_level:
            raise LevelTooHigh(f"block of level {rank}")
        tables.append(_block_longest(net, b) if len(b) > 2 else None)
        for v in b:
            blocks_of.setdefault(v, []).append(i)

    def weight(i, u, v):
        return 1 if tables[i] is None else tables[i][(u, v)]

    taxa = net.taxa
    dl = np.zeros((len(taxa), len(taxa)), dtype=np.int64)
    for a, x in enumerate(taxa):
        src = net.leaf(x)
        dist = {src: 0}
        stack = [(src, None)]
        while stack:
            v, came = stack.pop()
            for i in blocks_of[v]:
                if i == came:
                    continue
                for w in blocks[i]:
                    if w != v:
                        dist[w] = dist[v] + weight(i, v, w)
                        stack.append((w, i))
        for b_, y in enumerate(taxa):
            dl[a, b_] = dist[net.leaf(y)]
    return DistanceMatrix(taxa, dl)


def sl_matrix(net: Network) -> DistanceMatrix:
    return DistanceMatrix(net.taxa, shortest_matrix(net).dm, longest_matrix(net).dm)


def brute_force_longest(net: Network, bound: int = 60) -> DistanceMatrix:
    """Exhaustive simple-path enumeration from every leaf."""
    net.require_valid()
    if len(net) > bound:
        raise TooLarge(f"{len(net)} vertices exceeds bound {bound}")
    taxa = net.taxa
    index = {net.leaf(t): i for i, t in enumerate(taxa)}
    dl = np.zeros((len(taxa), len(taxa)), dtype=np.int64)
    for a, x in enumerate(taxa):
        src = net.leaf(x)
        row = dl[a]
        on_path = {src}
        stack = [(src, 0, iter(net.neighbors(src)))]
        while stack:
            v, d, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                on_path.discard(v)
                continue
            if w in on_path:
                continue
            j = index.get(w)
            if j is not None:
                if row[j] < d + 1:
                    row[j] = d + 1
                continue
            on_path.add(w)
            stack.append((w, d + 1, iter(net.neighbors(w))))
    return DistanceMatrix(taxa, dl)


# -- text format ---------------------------------------------------------


def format_matrix(m: DistanceMatrix) -> str:
    lines = [str(m.n), "\t".join(m.taxa)]
    for i in range(m.n):
        if m.dl is None:
            cells = (str(int(v)) for v in m.dm[i])
        else:
            cells = (f"{int(a)}:{int(b)}" for a, b in zip(m.dm[i], m.dl[i]))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> DistanceMatrix:
    lines = text.rstrip("\n").split("\n")
    try:
        n = int(lines[0])
    except (ValueError, IndexError):
        raise ParseError("first line must hold the taxon count") from None
    if len(lines) != n + 2:
        raise ParseError(f"expected {n + 2} lines, found {len(lines)}")
    taxa = lines[1].split("\t") if n else []
    if len(taxa) != n:
        raise ParseError("taxon line length mismatch")
    dm = np.zeros((n, n), dtype=np.int64)
    dl = np.zeros((n, n), dtype=np.int64)
    kinds = set()
    for i in range(n):
        cells = lines[i + 2].split("\t")
        if len(cells) != n:
            raise ParseError(f"row {i + 1} has {len(cells)} cells")
        for j, cell in enumerate(cells):
            try:
                if ":" in cell:
                    a, b = cell.split(":")
                    dm[i, j], dl[i, j] = int(a), int(b)
                    kinds.add("sl")
                else:
                    dm[i, j] = int(cell)
                    kinds.add("m")
            except ValueError:
                raise ParseError(f"bad cell {cell!r} at row {i + 1}") from None
    if len(kinds) > 1:
        raise ParseError("mixed sl and shortest-only cells")
    try:
        return DistanceMatrix(taxa, dm, dl if kinds == {"sl"} else None)
    except TaxonCollision as exc:
        raise ParseError(str(exc)) from None
