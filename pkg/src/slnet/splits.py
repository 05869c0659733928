"""Cut-edge induced splits recovered from shortest distances."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import EmptySide, NoNontrivialSplit, TooLargeForExhaustive, UnknownLeaf
from .metrics import DistanceMatrix
from .network import Network, cut_edge_splits


@dataclass(frozen=True)
class Split:
    A: frozenset[str]
    B: frozenset[str]

    @classmethod
    def of(cls, side: Iterable[str], taxa: Iterable[str]) -> "Split":
        side = frozenset(side)
        other = frozenset(taxa) - side
        if sorted(other) < sorted(side):
            side, other = other, side
        return cls(side, other)

    @property
    def nontrivial(self) -> bool:
        return min(len(self.A), len(self.B)) >= 2

    def sides(self) -> tuple[frozenset[str], frozenset[str]]:
        return self.A, self.B

    def __str__(self) -> str:
        return ",".join(sorted(self.A)) + "|" + ",".join(sorted(self.B))


def _passes(dm: np.ndarray, ia: list[int], ib: list[int]) -> bool:
    dab = dm[np.ix_(ia, ib)]
    f = dab[:, 0]
    g = dab[0, :] - dab[0, 0]
    # (i) cross distances split additively as f(a) + g(b)
    if not np.array_equal(dab, f[:, None] + g[None, :]):
        return False
    # (ii) d(a,a') + d(b,b') <= d(a,b) + d(a',b') - 2, maximized separately per side
    daa = dm[np.ix_(ia, ia)] - f[:, None] - f[None, :]
    dbb = dm[np.ix_(ib, ib)] - g[:, None] - g[None, :]
    return int(daa.max()) + int(dbb.max()) <= -2


def is_cut_split(m: DistanceMatrix, A: Iterable[str]) -> bool:
    A = set(A)
    unknown = A - set(m.taxa)
    if unknown:
        raise UnknownLeaf(f"{sorted(unknown)}")
    B = [t for t in m.taxa if t not in A]
    if not A or not B:
        raise EmptySide("both sides of a split must be non-empty")
    return _passes(m.dm, [m.index(t) for t in sorted(A)], [m.index(t) for t in B])


def _incremental(m: DistanceMatrix) -> set[Split]:
    # Splits passing the test are pairwise compatible, so at most 2n-3
    # survive on any taxon subset; restrictions of valid splits stay valid.
    taxa = sorted(m.taxa)
    idx = {t: m.index(t) for t in taxa}
    current: set[tuple[frozenset[str], frozenset[str]]] = {(frozenset(taxa[:1]), frozenset(taxa[1:2]))}
    for k in range(2, len(taxa)):
        x = taxa[k]
        seen = frozenset(taxa[:k])
        cands = {(frozenset([x]), seen)}
        for a, b in current:
            cands.add((a | {x}, b))
            cands.add((a, b | {x}))
        current = {(a, b) for a, b in cands
                   if _passes(m.dm, [idx[t] for t in a], [idx[t] for t in b])}
    return {Split.of(a, taxa) for a, _ in current}


def _exhaustive(m: DistanceMatrix, bound: int) -> set[Split]:
    taxa = sorted(m.taxa)
    if len(taxa) > bound:
        raise TooLargeForExhaustive(f"{len(taxa)} taxa exceeds bound {bound}")
    first, rest = taxa[0], taxa[1:]
    out = set()
    for r in range(len(rest)):
        for extra in combinations(rest, r):
            side = (first, *extra)
            ia = [m.index(t) for t in side]
            ib = [m.index(t) for t in taxa if t not in side]
            if _passes(m.dm, ia, ib):
                out.add(Split.of(side, taxa))
    return out


def all_splits(m: DistanceMatrix, exhaustive: bool = False, bound: int = 18) -> set[Split]:
    """All splits passing :func:`is_cut_split`, trivial ones included."""
    if m.n < 2:
        return set()
    return _exhaustive(m, bound) if exhaustive else _incremental(m)


def structural_splits(net: Network) -> set[Split]:
    taxa = net.taxa
    return {Split.of(side, taxa) for side in cut_edge_splits(net).values()}


def minimal_parts(m: DistanceMatrix, splits: set[Split] | None = None) -> list[frozenset[str]]:
    """Inclusion-minimal sides of non-trivial splits, sorted."""
    splits = all_splits(m) if splits is None else splits
    sides = {s for sp in splits if sp.nontrivial for s in sp.sides()}
    if not sides:
        raise NoNontrivialSplit("no non-trivial split")
    minimal = [s for s in sides if not any(o < s for o in sides)]
    return sorted(minimal, key=lambda s: sorted(s))


def is_laminar(splits: Iterable[Split]) -> bool:
    """True when every pair of splits is compatible."""
    splits = list(splits)
    for s, t in combinations(splits, 2):
        if all(x & y for x in s.sides() for y in t.sides()):
            return False
    return True
