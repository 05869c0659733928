"""Pendant blob shapes and their construction.

A level-2 pendant blob has poles ``p`` and ``q`` joined by three paths.  The
chains are stored with a fixed orientation so that a form fully determines
the blob::

    path 1:  p - a[0] - ... - a[-1] - q
    path 2:  p - b[0] - ... - b[-1] - q          (the edge p-q if b is empty)
    path 3:  p - c[0] - ... - c[-1] - u - d[0] - ... - d[-1] - q

where ``u`` carries the non-trivial cut-edge.  A level-1 pendant blob is the
cycle ``u - a[0] - ... - a[-1] - u``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnrecognizedShape
from .network import Network, NetworkBuilder

LEVEL1 = "level1"
LEVEL2 = "level2"

Chain = tuple[str, ...]


@dataclass(frozen=True)
class PendantForm:
    kind: str
    a: Chain = ()
    b: Chain = ()
    c: Chain = ()
    d: Chain = ()

    @classmethod
    def level1(cls, chain) -> "PendantForm":
        return cls(LEVEL1, tuple(chain)).canonical()

    @classmethod
    def level2(cls, a, b=(), c=(), d=()) -> "PendantForm":
        return cls(LEVEL2, tuple(a), tuple(b), tuple(c), tuple(d)).canonical()

    @property
    def chain(self) -> Chain:
        return self.a

    @property
    def lengths(self) -> tuple[int, ...]:
        if self.kind == LEVEL1:
            return (len(self.a),)
        return (len(self.a), len(self.b), len(self.c), len(self.d))

    def leaves(self) -> tuple[str, ...]:
        return self.a + self.b + self.c + self.d

    def chains(self) -> list[Chain]:
        return [ch for ch in (self.a, self.b, self.c, self.d) if ch]

    def check(self) -> None:
        if self.kind == LEVEL1:
            if len(self.a) < 2 or self.b or self.c or self.d:
                raise UnrecognizedShape(f"level-1 pendant blob needs one chain of length >= 2: {self}")
        elif self.kind == LEVEL2:
            if not self.a:
                raise UnrecognizedShape(f"chain a must be non-empty: {self}")
            if self.lengths == (1, 0, 0, 0):
                raise UnrecognizedShape("form (1,0,0,0) violates the unique-split restriction")
        else:
            raise UnrecognizedShape(f"unknown kind {self.kind!r}")

    def _variants(self):
        if self.kind == LEVEL1:
            yield self.a
            yield self.a[::-1]
            return
        a, b, c, d = self.a, self.b, self.c, self.d
        for aa, bb in ((a, b), (b, a)):
            yield (aa, bb, c, d)
            yield (aa[::-1], bb[::-1], d[::-1], c[::-1])

    def canonical(self) -> "PendantForm":
        if self.kind == LEVEL1:
            return PendantForm(LEVEL1, min(self._variants()))
        best = min(self._variants(),
                   key=lambda v: (len(v[0]) < len(v[1]), len(v[2]) < len(v[3]), v))
        return PendantForm(LEVEL2, *best)

    def key(self) -> tuple:
        f = self.canonical()
        return (f.kind, f.a, f.b, f.c, f.d)

    def same_blob(self, other: "PendantForm") -> bool:
        return self.key() == other.key()

    def shape(self) -> str:
        if self.kind == LEVEL1:
            return f"level1({len(self.a)})"
        return "(" + ",".join(str(n) for n in self.lengths) + ")"

    def __str__(self) -> str:
        def fmt(ch):
            return "(" + ",".join(ch) + ")"
        if self.kind == LEVEL1:
            return f"level1 {fmt(self.a)}"
        return "level2 " + " ".join(f"{r}={fmt(ch)}" for r, ch in zip("abcd", (self.a, self.b, self.c, self.d)))


def is_bad_form(form: PendantForm) -> bool:
    """Level-1 with 2-3 leaves, or (k,0,0,0) with k in {2,3}."""
    if form.kind == LEVEL1:
        return len(form.a) in (2, 3)
    return form.lengths[1:] == (0, 0, 0) and len(form.a) in (2, 3)


def bad_counterpart(form: PendantForm) -> PendantForm:
    """The other bad shape carrying the same chain."""
    if not is_bad_form(form):
        raise ValueError(f"{form} is not a bad form")
    if form.kind == LEVEL1:
        return PendantForm.level2(form.a)
    return PendantForm.level1(form.a)


def _path(b: NetworkBuilder, start: int, chain: Chain, end: int) -> None:
    prev = start
    for taxon in chain:
        v = b.new_vertex()
        b.add_edge(prev, v)
        b.add_leaf(taxon, v)
        prev = v
    b.add_edge(prev, end)


def attach_form(b: NetworkBuilder, form: PendantForm, anchor: int) -> int:
    """Build the blob of ``form`` inside ``b`` joined to vertex ``anchor``.

    Returns the blob vertex ``u`` incident to the new cut-edge.
    """
    form.check()
    u = b.new_vertex()
    b.add_edge(u, anchor)
    if form.kind == LEVEL1:
        _path(b, u, form.a, u)
        return u
    p, q = b.new_vertex(), b.new_vertex()
    _path(b, p, form.a, q)
    if form.b:
        _path(b, p, form.b, q)
    else:
        b.add_edge(p, q)
    _path(b, p, form.c, u)
    _path(b, u, form.d, q)
    return u


def form_network(form: PendantForm, stub: str = "_stub") -> "Network":
    """Stand-alone network: the pendant blob plus one leaf ``stub`` on its cut-edge."""
    b = NetworkBuilder()
    s = b.add_leaf(stub)
    attach_form(b, form, s)
    return b.build()


