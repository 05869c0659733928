"""Rebuild networks from sl-distance or shortest-distance matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Union

import networkx as nx

from .blobs import BlobReduction, expand_pendant, pendant_candidates, reduce_pendant
from .chains import Chain, CherryStep, FreshNames, chains_from_matrix, subtree_reduce
from .errors import (BranchBudgetExceeded, CherriesPresent, NetworkError, NoNontrivialSplit,
                     NotGenSideCovered)
from .iso import certificate
from .metrics import DistanceMatrix, shortest_matrix, sl_matrix
from .network import Network, NetworkBuilder, single_edge
from .splits import all_splits, minimal_parts

UNIQUE = "unique"
AMBIGUOUS = "ambiguous"
UNREALIZABLE = "unrealizable"

Step = Union[CherryStep, BlobReduction]


def expand_cherry_net(net: Network, z: str, x: str, y: str) -> Network:
    b = net.builder()
    v = b.unlabel(z)
    b.add_leaf(x, v)
    b.add_leaf(y, v)
    return b.build()


@dataclass(frozen=True)
class ReductionTrace:
    """Reductions applied top-down, plus the network solving the final base case."""

    steps: tuple[Step, ...]
    base: Network

    def replay(self) -> Network:
        net = self.base
        for step in reversed(self.steps):
            if isinstance(step, CherryStep):
                net = expand_cherry_net(net, step.z, step.x, step.y)
            else:
                net = expand_pendant(net, step.z, step.form)
        return net

    def describe(self) -> list[str]:
        out = []
        for step in self.steps:
            if isinstance(step, CherryStep):
                out.append(f"cherry {step.x},{step.y} -> {step.z}")
            else:
                out.append(f"pendant {step.form} -> {step.z}")
        return out


@dataclass
class ReconstructionResult:
    status: str
    networks: list[Network] = field(default_factory=list)
    reason: str = ""
    traces: list[ReductionTrace] = field(default_factory=list)

    @property
    def is_unique(self) -> bool:
        return self.status == UNIQUE

    @property
    def network(self) -> Network:
        if self.status != UNIQUE:
            raise ValueError(f"result is {self.status}")
        return self.networks[0]

    def __repr__(self) -> str:
        extra = f", reason={self.reason!r}" if self.reason else ""
        return f"ReconstructionResult({self.status}, {len(self.networks)} networks{extra})"


def _realizes(net: Network, m: DistanceMatrix) -> bool:
    if not net.is_valid or set(net.taxa) != set(m.taxa):
        return False
    try:
        got = sl_matrix(net) if m.is_sl else shortest_matrix(net)
    except NetworkError:
        return False
    return got == m


def _finish(m: DistanceMatrix, traces: list[ReductionTrace], empty_reason: str) -> ReconstructionResult:
    seen = {}
    for t in traces:
        try:
            net = t.replay()
        except NetworkError:
            continue
        if not _realizes(net, m):
            continue
        key = certificate(net)
        if key not in seen:
            seen[key] = (net, t)
    if not seen:
        return ReconstructionResult(UNREALIZABLE, reason=empty_reason)
    items = [seen[k] for k in sorted(seen)]
    status = UNIQUE if len(items) == 1 else AMBIGUOUS
    return ReconstructionResult(status, [n for n, _ in items], traces=[t for _, t in items])


# -- single blob ---------------------------------------------------------


def _distance3_graph(m: DistanceMatrix) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(m.taxa)
    g.add_edges_from((x, y) for x, y in combinations(m.taxa, 2) if m.m(x, y) == 3)
    return g


def _cycle_network(order) -> Network:
    b = NetworkBuilder()
    spine = [b.new_vertex() for _ in order]
    for i, t in enumerate(order):
        b.add_leaf(t, spine[i])
        b.add_edge(spine[i], spine[(i + 1) % len(spine)])
    return b.build()


def _theta_network(paths) -> Network | None:
    if sum(1 for p in paths if not p) > 1:
        return None
    b = NetworkBuilder()
    p, q = b.new_vertex(), b.new_vertex()
    for chain in paths:
        prev = p
        for t in chain:
            v = b.new_vertex()
            b.add_edge(prev, v)
            b.add_leaf(t, v)
            prev = v
        b.add_edge(prev, q)
    return b.build()


def single_blob_candidates(m: DistanceMatrix) -> list[Network]:
    """Cycles and theta graphs carrying every taxon directly on the blob."""
    g = _distance3_graph(m)
    out = []
    if m.n >= 3 and all(d == 2 for _, d in g.degree()) and nx.is_connected(g):
        order = [x for x, _ in nx.find_cycle(g, source=min(m.taxa))]
        out.append(_cycle_network(order))
    chains = chains_from_matrix(m)
    if 2 <= len(chains) <= 3:
        padded = list(chains) + [()] * (3 - len(chains))
        seen = set()
        for perm in permutations(padded):
            for oriented in product(*([ch, ch[::-1]] if len(ch) > 1 else [ch] for ch in perm)):
                key = tuple(oriented)
                if key in seen:
                    continue
                seen.add(key)
                net = _theta_network(oriented)
                if net is not None:
                    out.append(net)
    return out


def reconstruct_single_blob(m: DistanceMatrix) -> ReconstructionResult:
    traces = [ReductionTrace((), net) for net in single_blob_candidates(m)]
    return _finish(m, traces, "no single-blob arrangement realizes the matrix")


# -- level-2 pipeline ----------------------------------------------------


class _Solver:
    def __init__(self, taxa, budget: int):
        self.fresh = FreshNames(taxa)
        self.budget = budget
        self.branches = 1

    def _branch(self, k: int) -> None:
        self.branches += max(k - 1, 0)
        if self.branches > self.budget:
            raise BranchBudgetExceeded(f"more than {self.budget} branches")

    def solve(self, m: DistanceMatrix) -> list[ReductionTrace]:
        if m.n < 2:
            return []
        reduced, cherry_steps = subtree_reduce(m, self.fresh)
        return [ReductionTrace(tuple(cherry_steps) + t.steps, t.base) for t in self._reduced(reduced)]

    def _reduced(self, m: DistanceMatrix) -> list[ReductionTrace]:
        # a wrong branch shows up as a matrix no network can have
        if m.violations():
            return []
        if m.n == 2:
            x, y = m.taxa
            ok = m.m(x, y) == 1 and (m.dl is None or m.l(x, y) == 1)
            return [ReductionTrace((), single_edge(x, y))] if ok else []
        try:
            part = minimal_parts(m, all_splits(m))[0]
        except NoNontrivialSplit:
            return [ReductionTrace((), net) for net in single_blob_candidates(m)]
        try:
            forms = pendant_candidates(m, part)
        except CherriesPresent:
            return []
        self._branch(len(forms))
        out = []
        for form in forms:
            reduced, step = reduce_pendant(m, form, self.fresh())
            out += [ReductionTrace((step,) + t.steps, t.base) for t in self.solve(reduced)]
        return out


def _run(m: DistanceMatrix, budget: int) -> ReconstructionResult:
    bad = m.violations()
    if bad:
        return ReconstructionResult(UNREALIZABLE, reason="; ".join(bad))
    traces = _Solver(m.taxa, budget).solve(m)
    return _finish(m, traces, "no level-2 network realizes the matrix")


def reconstruct_sl(m: DistanceMatrix, budget: int = 4096) -> ReconstructionResult:
    if not m.is_sl:
        raise ValueError("reconstruct_sl needs longest distances")
    return _run(m, budget)


def reconstruct_shortest(m: DistanceMatrix, budget: int = 4096) -> ReconstructionResult:
    return _run(m.shortest(), budget)


# -- leaf on every generator side ----------------------------------------


@dataclass(frozen=True)
class Triple:
    chains: tuple[Chain, Chain, Chain]
    ends: tuple[str, str, str]


@dataclass(frozen=True)
class Bulb:
    petal: Chain
    partner: Chain
    partner_end: str


@dataclass(frozen=True)
class TripleBulbSystem:
    triples: tuple[Triple, ...]
    bulbs: tuple[Bulb, ...]


def _end_slots(i: int, chain: Chain):
    """(slot, leaf) pairs for both ends of a chain; singleton chains offer one leaf twice."""
    return [((i, 0), chain[0]), ((i, 1), chain[-1])]


def _constructs(m: DistanceMatrix, chains: list[Chain]):
    out = []
    slots = [_end_slots(i, ch) for i, ch in enumerate(chains)]
    for i, j, k in combinations(range(len(chains)), 3):
        for (si, x), (sj, y), (sk, z) in product(slots[i], slots[j], slots[k]):
            if m.m(x, y) == 4 and m.m(x, z) == 4 and m.m(y, z) == 4:
                out.append(("triple", (si, sj, sk), (x, y, z)))
    for p, petal in enumerate(chains):
        if len(petal) < 2:
            continue
        for q in range(len(chains)):
            if q == p:
                continue
            for sq, y in slots[q]:
                if m.m(petal[0], y) == 4 and m.m(petal[-1], y) == 4:
                    out.append(("bulb", ((p, 0), (p, 1), sq), (petal[0], petal[-1], y)))
    return out


def _covers(chains: list[Chain], constructs, limit: int = 64):
    """Choices of constructs using every chain end exactly once.

    Both ends of a singleton chain are the same leaf, so a construct may
    claim either of its two slots.
    """
    need = {(i, e): 1 for i in range(len(chains)) for e in (0, 1)}
    single = {i for i, ch in enumerate(chains) if len(ch) == 1}

    def options(c):
        # expand singleton slot choices into concrete slot tuples
        kind, slots, leaves = c
        alts = [[s] if s[0] not in single else [(s[0], 0), (s[0], 1)] for s in slots]
        return [(kind, tuple(combo), leaves) for combo in product(*alts)
                if len(set(combo)) == len(combo)]

    expanded = []
    seen = set()
    for c in constructs:
        for o in options(c):
            key = (o[0], frozenset(o[1]))
            if key not in seen:
                seen.add(key)
                expanded.append(o)
    by_slot: dict[tuple[int, int], list[int]] = {s: [] for s in need}
    for idx, (_, slots, _) in enumerate(expanded):
        for s in slots:
            by_slot[s].append(idx)

    results = []
    chosen: list[int] = []
    used = set()

    def rec():
        if len(results) >= limit:
            return
        open_slots = [s for s in need if s not in used]
        if not open_slots:
            results.append(list(chosen))
            return
        # singleton chains: fix the slot order so symmetric covers are not repeated
        slot = min(open_slots, key=lambda s: (len(by_slot[s]), s))
        for idx in by_slot[slot]:
            slots = expanded[idx][1]
            if any(s in used for s in slots):
                continue
            for s in slots:
                if s[0] in single and s[1] == 1 and (s[0], 0) not in used and (s[0], 0) not in slots:
                    break
            else:
                used.update(slots)
                chosen.append(idx)
                rec()
                chosen.pop()
                used.difference_update(slots)

    rec()
    return [[expanded[i] for i in cover] for cover in results]


def _system(chains, cover) -> TripleBulbSystem:
    triples, bulbs = [], []
    for kind, slots, leaves in cover:
        if kind == "triple":
            triples.append(Triple(tuple(chains[s[0]] for s in slots), leaves))
        else:
            bulbs.append(Bulb(chains[slots[0][0]], chains[slots[2][0]], leaves[2]))
    triples.sort(key=lambda t: sorted(t.chains))
    bulbs.sort(key=lambda b: (b.petal, b.partner))
    return TripleBulbSystem(tuple(triples), tuple(bulbs))


def _build_genside(chains, cover) -> Network | None:
    b = NetworkBuilder()
    at = {}
    for kind, slots, _ in cover:
        g = b.new_vertex()
        for s in slots:
            at[s] = g
    try:
        for i, ch in enumerate(chains):
            prev = at[(i, 0)]
            for t in ch:
                v = b.new_vertex()
                b.add_edge(prev, v)
                b.add_leaf(t, v)
                prev = v
            b.add_edge(prev, at[(i, 1)])
    except NetworkError:
        return None
    return b.build()


def _genside_solutions(m: DistanceMatrix):
    chains = chains_from_matrix(m)
    covers = _covers(chains, _constructs(m, chains))
    out = []
    for cover in covers:
        net = _build_genside(chains, cover)
        if net is not None and _realizes(net, m):
            out.append((net, _system(chains, cover)))
    return chains, covers, out


def extract_triples_and_bulbs(m: DistanceMatrix, chains=None, adjacency=None) -> TripleBulbSystem:
    """Pairwise adjacent triples and bulbs of a cherry-free matrix.

    Candidates are read off end-leaf distances; the system returned is the
    exact cover of chain ends whose generator rebuilds the matrix.
    """
    m = m.shortest()
    _, covers, solved = _genside_solutions(m)
    if solved:
        return solved[0][1]
    raise NotGenSideCovered("no set of triples and bulbs covers every chain end")


def reconstruct_genside(m: DistanceMatrix) -> ReconstructionResult:
    m = m.shortest()
    bad = m.violations()
    if bad:
        return ReconstructionResult(UNREALIZABLE, reason="; ".join(bad))
    fresh = FreshNames(m.taxa)
    reduced, steps = subtree_reduce(m, fresh)
    if reduced.n == 2:
        x, y = reduced.taxa
        bases = [single_edge(x, y)] if reduced.m(x, y) == 1 else []
    else:
        bases = [net for net, _ in _genside_solutions(reduced)[2]]
        if not bases:
            bases = single_blob_candidates(reduced)
    traces = [ReductionTrace(tuple(steps), net) for net in bases]
    return _finish(m, traces, "no generator with a leaf on every side realizes the matrix")
