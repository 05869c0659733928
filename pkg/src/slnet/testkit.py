"""Random network generation and end-to-end round-trip checks."""

from __future__ import annotations

import random
from dataclasses import dataclass

import networkx as nx

from .errors import InfeasibleParams, NetworkError
from .network import Network, NetworkBuilder
from .structure import blobs, is_bad_blob, level


@dataclass(frozen=True)
class GenParams:
    min_leaves: int = 5
    max_leaves: int = 20
    max_blobs: int = 6
    # relative weights of plain vertices, cycles and theta blobs when growing
    level_weights: tuple[float, float, float] = (1.0, 1.0, 1.0)
    max_chain: int = 3
    allow_bad_blobs: bool = True
    require_leaf_every_side: bool = False
    max_level: int = 2
    # chance that a leaf position on a side receives a cherry instead
    subtree_prob: float = 0.1
    seed: int = 0
    max_tries: int = 2000

    def check(self) -> None:
        if self.min_leaves < 2 or self.min_leaves > self.max_leaves:
            raise InfeasibleParams(f"leaf range [{self.min_leaves}, {self.max_leaves}]")
        if not 0 <= self.max_level <= 3:
            raise InfeasibleParams("max_level must lie in 0..3")
        if self.max_level == 3 and not self.require_leaf_every_side:
            raise InfeasibleParams("level 3 is only generated with a leaf on every side")
        if self.require_leaf_every_side and self.max_level < 1:
            raise InfeasibleParams("generator sides need at least one blob")
        if self.require_leaf_every_side and self.max_leaves < 3:
            raise InfeasibleParams("a leaf-on-every-side network needs at least 3 leaves")
        if self.max_chain < 1 or min(self.level_weights) < 0 or sum(self.level_weights) <= 0:
            raise InfeasibleParams("bad chain length or weights")


# -- level <= 2 by tree growth ---------------------------------------------


def _plan(kind: str, rng: random.Random, max_chain: int) -> tuple:
    """Shape of a unit: ("vertex",), ("cycle", size) or ("theta", l1, l2, l3)."""
    if kind == "vertex":
        return ("vertex",)
    if kind == "cycle":
        return ("cycle", rng.randint(3, max(3, max_chain + 1)))
    while True:
        lengths = [rng.randint(0, max_chain) for _ in range(3)]
        if sum(1 for k in lengths if k == 0) <= 1 and sum(lengths) >= 2:
            return ("theta", *lengths)


def _ports(plan: tuple) -> int:
    return {"vertex": 3, "cycle": plan[-1]}.get(plan[0], sum(plan[1:]))


def _build_unit(b: NetworkBuilder, plan: tuple) -> list[int]:
    """Create a unit and return its open ports (vertices still missing one edge)."""
    if plan[0] == "vertex":
        v = b.new_vertex()
        return [v, v, v]
    if plan[0] == "cycle":
        vs = [b.new_vertex() for _ in range(plan[1])]
        for i, v in enumerate(vs):
            b.add_edge(v, vs[i - 1])
        return vs
    p, q = b.new_vertex(), b.new_vertex()
    ports = []
    for k in plan[1:]:
        prev = p
        for _ in range(k):
            v = b.new_vertex()
            b.add_edge(prev, v)
            ports.append(v)
            prev = v
        b.add_edge(prev, q)
    return ports


def _grow_level2(p: GenParams, rng: random.Random) -> Network:
    kinds = ["vertex", "cycle", "theta"]
    weights = list(p.level_weights)
    if p.max_level < 2:
        weights[2] = 0
    if p.max_level < 1:
        weights[1] = 0
    target = rng.randint(p.min_leaves, p.max_leaves)
    b = NetworkBuilder()
    blobs = 0

    def pick(room):
        w = list(weights)
        if blobs >= p.max_blobs:
            w[1] = w[2] = 0
        if sum(w) == 0:
            w = [1, 0, 0]
        plan = _plan(rng.choices(kinds, w)[0], rng, p.max_chain)
        return plan if _ports(plan) <= room else ("vertex",)

    first = pick(target)
    blobs += first[0] != "vertex"
    open_ports = _build_unit(b, first)
    while len(open_ports) < target:
        # attaching a unit with k ports uses one open port and adds k - 1
        plan = pick(target - len(open_ports) + 2)
        blobs += plan[0] != "vertex"
        new = _build_unit(b, plan)
        host = open_ports.pop(rng.randrange(len(open_ports)))
        b.add_edge(host, new.pop(rng.randrange(len(new))))
        open_ports += new
    for i, v in enumerate(open_ports):
        b.add_leaf(f"t{i}", v)
    return b.build()


# -- leaf on every generator side ----------------------------------------

# cubic multigraph bases as (vertex count, side list)
_BASES = {
    1: [(1, [(0, 0)])],
    2: [(2, [(0, 1), (0, 1), (0, 1)])],
    3: [(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        (4, [(0, 1), (0, 1), (2, 3), (2, 3), (1, 2), (3, 0)])],
}


def _grow_genside(p: GenParams, rng: random.Random) -> Network:
    """Cubic bases glued into a tree, then every side subdivided with leaves.

    Gluing subdivides one side on each part with a new generator vertex and
    joins the two; a three-way gluing goes through a plain hub vertex.
    """
    sides: list[tuple[int, int]] = []
    count = 0
    cap = rng.randint(1, p.max_level)

    def add_base(lvl=None):
        nonlocal count
        n, base = rng.choice(_BASES[lvl or rng.randint(1, cap)])
        new = [(u + count, v + count) for u, v in base]
        count += n
        sides.extend(new)
        return new

    def glue_point(pool):
        # a loop base still has a free port on its own vertex
        nonlocal count
        s = rng.choice(pool)
        if s[0] == s[1] and degree(s[0]) == 2:
            return s[0]
        sides.remove(s)
        x = count
        count += 1
        sides.extend([(s[0], x), (x, s[1])])
        return x

    def degree(v):
        return sum((a == v) + (b_ == v) for a, b_ in sides)

    add_base(cap)
    nblocks = rng.randint(1, max(1, p.max_blobs))
    made = 1
    while made < nblocks:
        old = list(sides)
        if made + 2 <= nblocks and rng.random() < 0.3:
            hub = count
            count += 1
            pools = (old, add_base(), add_base())
            for pool in pools:
                sides.append((glue_point(pool), hub))
            made += 2
        else:
            x = glue_point(old)
            y = glue_point(add_base())
            sides.append((x, y))
            made += 1

    b = NetworkBuilder()
    gv = [b.new_vertex() for _ in range(count)]
    counter = 0

    def leaf_on(v):
        nonlocal counter
        if rng.random() < p.subtree_prob:
            w = b.new_vertex()
            b.add_edge(v, w)
            for _ in range(2):
                b.add_leaf(f"t{counter}", w)
                counter += 1
        else:
            b.add_leaf(f"t{counter}", v)
            counter += 1

    for x, y in sides:
        prev = gv[x]
        for _ in range(rng.randint(2 if x == y else 1, max(2, p.max_chain))):
            v = b.new_vertex()
            b.add_edge(prev, v)
            leaf_on(v)
            prev = v
        b.add_edge(prev, gv[y])
    for v in range(count):
        for _ in range(3 - degree(v)):
            leaf_on(gv[v])
    return b.build()


def _acceptable(net: Network, p: GenParams) -> bool:
    if not net.is_valid or not p.min_leaves <= len(net.taxa) <= p.max_leaves:
        return False
    try:
        if level(net) > p.max_level:
            return False
        if not p.allow_bad_blobs and any(is_bad_blob(net, bl) for bl in blobs(net)):
            return False
    except NetworkError:
        return False
    return True


def random_network(p: GenParams) -> Network:
    """Sample a valid network; deterministic for a fixed seed."""
    p.check()
    rng = random.Random(p.seed)
    grow = _grow_genside if p.require_leaf_every_side else _grow_level2
    for _ in range(p.max_tries):
        net = grow(p, rng)
        if _acceptable(net, p):
            return net
    raise InfeasibleParams(f"no acceptable network after {p.max_tries} tries")


def random_genside_network(p: GenParams) -> Network:
    return random_network(GenParams(**{**p.__dict__, "require_leaf_every_side": True}))


def random_colored_tree(seed: int, leaves: int) -> "ColoredTree":
    """Random binary tree with a proper colouring and random leaf sizes."""
    from .altpath import BLACK, RED, ColoredTree

    if leaves < 2:
        raise InfeasibleParams("a coloured tree needs two leaves")
    rng = random.Random(seed)
    edges = [("l0", "l1")]
    for k in range(2, leaves):
        u, v = edges.pop(rng.randrange(len(edges)))
        mid = f"i{k - 2}"
        edges += [(u, mid), (mid, v), (mid, f"l{k}")]
    g = nx.Graph(edges)
    first = rng.choice([BLACK, RED])
    colors = {v: first if d % 2 == 0 else (RED if first == BLACK else BLACK)
              for v, d in nx.single_source_shortest_path_length(g, "l0").items()}
    sizes = {v: rng.choice([2, 3]) for v in g if g.degree(v) == 1}
    return ColoredTree(edges, colors, sizes)


@dataclass
class RoundTripReport:
    mode: str
    passed: bool
    status: str
    expected: str
    detail: list[str]

    def __str__(self) -> str:
        head = f"{self.mode}: {'pass' if self.passed else 'FAIL'} ({self.status}, expected {self.expected})"
        return "\n".join([head] + ["  " + line for line in self.detail])


def verify_roundtrip(net: Network, mode: str = "sl") -> RoundTripReport:
    """Compute the matrix of ``net``, rebuild it and compare up to isomorphism.

    In shortest mode an ambiguous answer passes when the network contains an
    alt-path structure and is among the survivors.
    """
    from .altpath import is_shortest_reconstructible
    from .iso import is_isomorphic
    from .metrics import shortest_matrix, sl_matrix
    from .reconstruct import AMBIGUOUS, UNIQUE, reconstruct_genside, reconstruct_shortest, reconstruct_sl

    expected = UNIQUE
    try:
        if mode == "sl":
            result = reconstruct_sl(sl_matrix(net))
        elif mode == "shortest":
            result = reconstruct_shortest(shortest_matrix(net))
            if not is_shortest_reconstructible(net):
                expected = AMBIGUOUS
        elif mode == "genside":
            result = reconstruct_genside(shortest_matrix(net))
        else:
            raise ValueError(f"unknown mode {mode!r}")
    except (NetworkError, ValueError) as exc:
        return RoundTripReport(mode, False, "error", expected, [f"{type(exc).__name__}: {exc}"])
    found = any(is_isomorphic(n, net) for n in result.networks)
    detail = [result.reason] if result.reason else []
    for i, trace in enumerate(result.traces):
        detail += [f"network {i}: {line}" for line in trace.describe()]
    passed = found and result.status == expected
    return RoundTripReport(mode, passed, result.status, expected, detail)
