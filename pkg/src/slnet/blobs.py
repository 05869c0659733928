"""Identify the pendant blob behind a minimal part and swap it for a single leaf.

Every candidate form is checked against the matrix directly: distances
inside the part must match the blob's own distances, and for each outside
taxon ``x`` the difference ``d(a, x) - d(a, u)`` must not depend on ``a``
(``u`` being the blob's cut-edge vertex).  The same test serves both sl
matrices and shortest-only ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .chains import chains_from_matrix
from .errors import NoConsistentForm, TaxonCollision, UnknownLeaf
from .forms import LEVEL1, LEVEL2, PendantForm, bad_counterpart, form_network, is_bad_form, attach_form
from .metrics import DistanceMatrix, sl_matrix
from .network import Network

__all__ = [
    "BlobReduction", "identify_pendant", "pendant_candidates", "reduce_pendant",
    "expand_pendant", "is_bad_form", "bad_counterpart", "drop_middle_of_bad_triple",
    "blob_profile",
]

STUB = "_stub"
ROLES = "abcd"


@lru_cache(maxsize=None)
def _positional(kind: str, lengths: tuple[int, ...]) -> tuple[tuple[str, ...], np.ndarray, np.ndarray]:
    """sl-distances of a form whose leaves are named by position, stub last."""
    chains = [tuple(f"{r}{i}" for i in range(k)) for r, k in zip(ROLES, lengths)]
    form = PendantForm(kind, *chains)
    m = sl_matrix(form_network(form, STUB))
    order = [t for ch in chains for t in ch] + [STUB]
    m = m.reorder(order)
    return tuple(order), m.dm, m.dl


def blob_profile(form: PendantForm) -> DistanceMatrix:
    """sl-matrix of the blob of ``form`` together with a stub leaf on its cut-edge."""
    names, dm, dl = _positional(form.kind, form.lengths)
    return DistanceMatrix(list(form.leaves()) + [STUB], dm, dl)


def _consistent(m: DistanceMatrix, form: PendantForm, outside: list[int]) -> bool:
    _, pdm, pdl = _positional(form.kind, form.lengths)
    idx = [m.index(t) for t in form.leaves()]
    mats = [(m.dm, pdm)] if m.dl is None else [(m.dm, pdm), (m.dl, pdl)]
    for full, pos in mats:
        if not np.array_equal(full[np.ix_(idx, idx)], pos[:-1, :-1]):
            return False
        if outside:
            diff = full[np.ix_(idx, outside)] - pos[:-1, -1][:, None]
            if not np.all(diff == diff[0]):
                return False
    return True


def _orientations(chain):
    return [chain] if len(chain) == 1 else [chain, chain[::-1]]


def _candidate_forms(chains: list[tuple[str, ...]]):
    seen = set()
    if len(chains) == 1 and len(chains[0]) >= 2:
        seen.add(PendantForm.level1(chains[0]).key())
        yield PendantForm.level1(chains[0])
    for roles in permutations(range(4), len(chains)):
        if 0 not in roles:
            continue
        for oriented in product(*(_orientations(ch) for ch in chains)):
            slots = [()] * 4
            for r, ch in zip(roles, oriented):
                slots[r] = ch
            form = PendantForm(LEVEL2, *slots)
            if form.lengths == (1, 0, 0, 0):
                continue
            key = form.key()
            if key not in seen:
                seen.add(key)
                yield form


def pendant_candidates(m: DistanceMatrix, part) -> list[PendantForm]:
    """Every pendant form, in canonical orientation, that realizes ``m`` on ``part``."""
    part = set(part)
    if not part <= set(m.taxa):
        raise UnknownLeaf(f"{sorted(part - set(m.taxa))}")
    chains = chains_from_matrix(m.restrict(part))
    if len(chains) > 4:
        return []
    outside = [m.index(t) for t in m.taxa if t not in part]
    return sorted((f.canonical() for f in _candidate_forms(chains) if _consistent(m, f, outside)),
                  key=lambda f: f.key())


def identify_pendant(m: DistanceMatrix, part) -> PendantForm:
    forms = pendant_candidates(m, part)
    if len(forms) == 1:
        return forms[0]
    if not forms:
        raise NoConsistentForm(f"no pendant blob fits part {sorted(part)}")
    raise NoConsistentForm(f"{len(forms)} pendant forms fit part {sorted(part)}: {', '.join(map(str, forms))}")


@dataclass(frozen=True)
class BlobReduction:
    form: PendantForm
    z: str
    anchor: str


def _anchor(form: PendantForm) -> str:
    if form.kind == LEVEL1 or not form.c:
        return form.a[0]
    return form.c[0]


def reduce_pendant(m: DistanceMatrix, form: PendantForm, z: str) -> tuple[DistanceMatrix, BlobReduction]:
    """Replace the part of ``form`` by the leaf ``z`` standing where the blob's cut vertex was."""
    if z in m:
        raise TaxonCollision(f"taxon {z!r} already present")
    prof = blob_profile(form)
    anchor = _anchor(form)
    rest = m.drop(form.leaves())
    # d(z, x) = d(anchor, x) - d(anchor, u), and the stub sits one edge past u
    row_m = {x: m.m(anchor, x) - prof.m(anchor, STUB) + 1 for x in rest.taxa}
    row_l = None
    if m.dl is not None:
        row_l = {x: m.l(anchor, x) - prof.l(anchor, STUB) + 1 for x in rest.taxa}
    return rest.with_taxon(z, row_m, row_l), BlobReduction(form, z, anchor)


def expand_pendant(net: Network, z: str, form: PendantForm) -> Network:
    if z not in net.leaf_map:
        raise UnknownLeaf(f"{z!r} is not a leaf")
    clash = set(form.leaves()) & (set(net.taxa) - {z})
    if clash:
        raise TaxonCollision(f"{sorted(clash)} already present")
    b = net.builder()
    v = b.leaves[z]
    (w,) = b.adj[v]
    b.remove_vertex(v)
    attach_form(b, form, w)
    return b.build()


def drop_middle_of_bad_triple(m: DistanceMatrix, triple) -> DistanceMatrix:
    """Delete the middle leaf of a 3-leaf bad blob; its ends become 3 apart."""
    a1, a2, a3 = triple
    out = m.shortest().drop((a2,))
    dm = np.array(out.dm)
    i, j = out.index(a1), out.index(a3)
    dm[i, j] = dm[j, i] = 3
    return DistanceMatrix(out.taxa, dm)
