"""Multihomomorphisms, the Hom poset, its induced involution, components,
and single-vertex-move path certificates.

Internally an element of Hom(G, H) is a tuple of bitmasks over the vertices
of H, one mask per vertex of G in canonical order.  The canonical element
order is lexicographic on the sequence of color sets (each set read as its
sorted tuple of target indices).
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Sequence

from .errors import FreenessError, InputError, InvariantError, ResourceLimitError
from .graphs import Graph, GraphMap, Z2Graph, is_graph_map

__all__ = [
    "Multihom",
    "HomPoset",
    "PathCertificate",
    "CertificateCheck",
    "is_multihom",
    "enumerate_hom",
    "induced_map",
    "induced_involution",
    "enumerate_graph_maps",
    "find_path",
    "verify_certificate",
    "default_max_elements",
]

_DEFAULT_CAP = 10**7


def default_max_elements() -> int:
    """Enumeration cap; HOMLAB_MAX_ELEMENTS overrides the 10^7 default."""
    raw = os.environ.get("HOMLAB_MAX_ELEMENTS")
    if raw is None:
        return _DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"HOMLAB_MAX_ELEMENTS={raw!r} is not an integer") from None


@dataclass(frozen=True)
class Multihom:
    """A map vertex -> nonempty color set satisfying the cross-product condition."""

    source: Graph
    target: Graph
    sets: tuple  # frozensets aligned with source.vertices

    @classmethod
    def build(cls, source: Graph, target: Graph, sets) -> "Multihom":
        if isinstance(sets, dict):
            missing = [v for v in source.vertices if v not in sets]
            if missing:
                raise InputError(f"multihom missing vertices {missing!r}")
            extra = [v for v in sets if not source.has_vertex(v)]
            if extra:
                raise InputError(f"multihom mentions undeclared vertices {extra!r}")
            sets = tuple(sets[v] for v in source.vertices)
        fsets = tuple(frozenset(s) for s in sets)
        if len(fsets) != len(source.vertices):
            raise InputError("multihom set count does not match vertex count")
        for s in fsets:
            if not s:
                raise InputError("multihom sets must be nonempty")
            for w in s:
                target.index(w)
        return cls(source=source, target=target, sets=fsets)

    def as_dict(self) -> dict:
        return dict(zip(self.source.vertices, self.sets))


def is_multihom(eta, source: Graph, target: Graph) -> bool:
    """True iff every edge (v, w) of the source satisfies
    sets(v) x sets(w) a subset of E(target).  Loops in the source require
    sets(v) x sets(v) inside the target edge set."""
    mh = eta if isinstance(eta, Multihom) else Multihom.build(source, target, eta)
    for u, v in mh.source.edges:
        su = mh.sets[mh.source.index(u)]
        sv = mh.sets[mh.source.index(v)]
        for x in su:
            for y in sv:
                if not mh.target.has_edge(x, y):
                    return False
    return True


def _mask_key(mask: int) -> tuple:
    """Sorted tuple of bit positions; the canonical sort key of a color set."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class HomPoset:
    """All multihomomorphisms from ``source`` to ``target``, pointwise ordered.

    Immutable after construction; components and atoms are cached.  The
    optional involution is a permutation of element indices of order two.
    """

    def __init__(self, source: Graph, target: Graph, elements: Sequence[tuple],
                 involution: Optional[tuple] = None, involution_name: str = ""):
        self.source = source
        self.target = target
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.involution = involution
        self.involution_name = involution_name

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        a, b = self.elements[i], self.elements[j]
        return all(x & ~y == 0 for x, y in zip(a, b))

    @cached_property
    def atoms(self) -> tuple:
        """Indices of the elements that are graph maps (all sets singletons)."""
        return tuple(
            i for i, e in enumerate(self.elements)
            if all(m & (m - 1) == 0 for m in e)
        )

    def element_as_multihom(self, i: int) -> Multihom:
        sets = tuple(
            frozenset(self.target.vertices[b] for b in _mask_key(m))
            for m in self.elements[i]
        )
        return Multihom(source=self.source, target=self.target, sets=sets)

    def atom_as_graph_map(self, i: int) -> GraphMap:
        e = self.elements[i]
        if any(m & (m - 1) for m in e):
            raise InputError(f"element {i} is not an atom")
        assignment = tuple(self.target.vertices[m.bit_length() - 1] for m in e)
        return GraphMap.build(self.source, self.target, assignment)

    def index_of_graph_map(self, phi: GraphMap) -> int:
        e = tuple(1 << self.target.index(w) for w in phi.assignment)
        try:
            return self.index[e]
        except KeyError:
            raise InputError("graph map is not an element of this Hom poset") from None

    # -- components --------------------------------------------------------

    @cached_property
    def component_labels(self) -> tuple:
        """Component id per element (id = smallest element index in the component).

        Ground truth is the comparability graph; computed by union-find over
        lower covers (drop one color from one set), which generate the order.
        On posets with at most 2000 elements the atom-move fast path is
        cross-validated against this partition.
        """
        labels = self._component_labels_covers()
        if 0 < len(self) <= 2000:
            fast = self._component_labels_atom_moves()
            if fast != labels:
                raise InvariantError(
                    "atom-move components disagree with comparability components"
                )
        return labels

    def _component_labels_covers(self) -> tuple:
        parent = list(range(len(self)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> None:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        for i, e in enumerate(self.elements):
            for pos, m in enumerate(e):
                if m & (m - 1) == 0:
                    continue
                rest = m
                while rest:
                    bit = rest & -rest
                    rest ^= bit
                    cover = e[:pos] + (m ^ bit,) + e[pos + 1:]
                    union(i, self.index[cover])
        return self._normalize(tuple(find(i) for i in range(len(self))))

    def _component_labels_atom_moves(self) -> tuple:
        """Fast path: partition the atoms under the union-is-multihom relation,
        then give every element the label of its canonical dominated atom."""
        atoms = self.atoms
        parent = {a: a for a in atoms}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        edge_pairs = [
            (self.source.index(u), self.source.index(v))
            for u, v in self.source.sorted_edges()
        ]
        adjm = [0] * len(self.target.vertices)
        for x, y in self.target.edges:
            adjm[self.target.index(x)] |= 1 << self.target.index(y)
            adjm[self.target.index(y)] |= 1 << self.target.index(x)

        def union_is_multihom(e1: tuple, e2: tuple) -> bool:
            for iu, iv in edge_pairs:
                mu = e1[iu] | e2[iu]
                mv = e1[iv] | e2[iv]
                rest = mu
                while rest:
                    bit = rest & -rest
                    rest ^= bit
                    if mv & ~adjm[bit.bit_length() - 1]:
                        return False
            return True

        for ai in range(len(atoms)):
            for aj in range(ai + 1, len(atoms)):
                i, j = atoms[ai], atoms[aj]
                if find(i) != find(j) and union_is_multihom(
                    self.elements[i], self.elements[j]
                ):
                    ri, rj = find(i), find(j)
                    parent[max(ri, rj)] = min(ri, rj)

        labels = []
        for e in self.elements:
            atom = tuple(m & -m for m in e)  # pointwise-min choice function
            labels.append(find(self.index[atom]))
        return self._normalize(tuple(labels))

    @staticmethod
    def _normalize(labels: tuple) -> tuple:
        first = {}
        for i, lab in enumerate(labels):
            first.setdefault(lab, min(i, lab))
        return tuple(first[lab] for lab in labels)

    def components(self) -> list:
        """Partition of element indices by connected component, deterministic order."""
        groups = {}
        for i, lab in enumerate(self.component_labels):
            groups.setdefault(lab, []).append(i)
        return [groups[k] for k in sorted(groups)]

    def same_component(self, phi, psi) -> bool:
        i = phi if isinstance(phi, int) else self.index_of_graph_map(phi)
        j = psi if isinstance(psi, int) else self.index_of_graph_map(psi)
        return self.component_labels[i] == self.component_labels[j]

    def invariant_components(self) -> list:
        """Component ids mapped to themselves by the involution."""
        if self.involution is None:
            raise InputError("poset carries no involution")
        labels = self.component_labels
        return sorted({
            labels[i] for i in range(len(self)) if labels[self.involution[i]] == labels[i]
        })


def enumerate_hom(source: Graph, target: Graph,
                  max_elements: Optional[int] = None) -> HomPoset:
    """Enumerate all multihomomorphisms source -> target.

    Depth-first assignment of nonempty candidate sets per vertex in canonical
    order; a partial assignment is abandoned as soon as an edge constraint
    fails.  Raises ResourceLimitError beyond the element cap.
    """
    if not source.vertices:
        raise InputError("enumerate_hom requires a nonempty source vertex set")
    cap = default_max_elements() if max_elements is None else max_elements
    nt = len(target.vertices)
    adjm = [0] * nt
    for x, y in target.edges:
        adjm[target.index(x)] |= 1 << target.index(y)
        adjm[target.index(y)] |= 1 << target.index(x)

    all_masks = sorted(range(1, 1 << nt), key=_mask_key)

    compat_cache = {}

    def compat(m1: int, m2: int) -> bool:
        key = (m1, m2)
        hit = compat_cache.get(key)
        if hit is not None:
            return hit
        ok = True
        rest = m1
        while rest:
            bit = rest & -rest
            rest ^= bit
            if m2 & ~adjm[bit.bit_length() - 1]:
                ok = False
                break
        compat_cache[key] = ok
        compat_cache[(m2, m1)] = ok
        return ok

    ns = len(source.vertices)
    earlier = [
        [source.index(u) for u in source.neighbors(v) if source.index(u) < i]
        for i, v in enumerate(source.vertices)
    ]
    self_loop = [source.has_edge(v, v) for v in source.vertices]

    elements = []
    assignment = [0] * ns

    def extend(i: int) -> None:
        if i == ns:
            if len(elements) >= cap:
                raise ResourceLimitError(
                    f"Hom poset exceeds the cap of {cap} elements"
                )
            elements.append(tuple(assignment))
            return
        for m in all_masks:
            if self_loop[i] and not compat(m, m):
                continue
            if all(compat(assignment[j], m) for j in earlier[i]):
                assignment[i] = m
                extend(i + 1)
        assignment[i] = 0

    extend(0)
    elements.sort(key=lambda e: tuple(_mask_key(m) for m in e))
    return HomPoset(source, target, elements)


def induced_involution(z: Z2Graph, poset: HomPoset,
                       name: str = "") -> HomPoset:
    """Attach the involution eta -> eta o gamma to Hom(T, G).

    Requires a loopless target and a flipping involution, which together make
    the action fixed-point-free; a fixed element raises InvariantError.
    """
    if poset.source != z.graph:
        raise InputError("involution belongs to a different graph than the Hom source")
    if not poset.target.is_loopless():
        raise InputError("induced involution requires a loopless target graph")
    if not z.is_flipping:
        raise InputError("induced involution requires a flipping involution")
    gamma_pos = [z.graph.index(z.involution(v)) for v in z.graph.vertices]
    perm = []
    for i, e in enumerate(poset.elements):
        image = tuple(e[p] for p in gamma_pos)
        j = poset.index.get(image)
        if j is None:
            raise InvariantError("involution image is not a poset element")
        if j == i:
            raise InvariantError(f"induced involution fixes element {i}")
        perm.append(j)
    return HomPoset(poset.source, poset.target, poset.elements,
                    involution=tuple(perm), involution_name=name)


def induced_map(f: GraphMap, poset: HomPoset,
                codomain: Optional[HomPoset] = None):
    """Precomposition with ``f``: Hom(f.target, G) -> Hom(f.source, G).

    ``poset`` must be Hom(f.target, G).  Returns the list of image elements
    (bitmask tuples over f.source); with ``codomain`` given, returns indices
    into it instead.
    """
    if poset.source != f.target:
        raise InputError("poset source does not match the map's target graph")
    pos = [f.target.index(f(v)) for v in f.source.vertices]
    images = [tuple(e[p] for p in pos) for e in poset.elements]
    if codomain is None:
        return images
    if codomain.source != f.source or codomain.target != poset.target:
        raise InputError("codomain poset does not match Hom(f.source, G)")
    try:
        return [codomain.index[e] for e in images]
    except KeyError:
        raise InvariantError("precomposition image missing from codomain poset") from None


# ---------------------------------------------------------------------------
# Path certificates


@dataclass(frozen=True)
class PathCertificate:
    """A sequence of proper colorings, consecutive ones differing in at most
    one vertex; witnesses membership in one connected component."""

    source: Graph
    target: Graph
    colorings: tuple  # tuples aligned with source.vertices

    @classmethod
    def build(cls, source: Graph, target: Graph, colorings) -> "PathCertificate":
        rows = []
        for col in colorings:
            if isinstance(col, GraphMap):
                rows.append(col.assignment)
            elif isinstance(col, dict):
                missing = [v for v in source.vertices if v not in col]
                if missing:
                    raise InputError(f"coloring missing vertices {missing!r}")
                rows.append(tuple(col[v] for v in source.vertices))
            else:
                rows.append(tuple(col))
        return cls(source=source, target=target, colorings=tuple(rows))

    def moves(self) -> int:
        return max(0, len(self.colorings) - 1)


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    index: Optional[int] = None
    reason: Optional[str] = None


def verify_certificate(cert: PathCertificate) -> CertificateCheck:
    """Check every coloring is a graph map and consecutive colorings differ in
    zero or one vertex; reports the first failing index and reason."""
    for idx, row in enumerate(cert.colorings):
        if len(row) != len(cert.source.vertices):
            raise InputError(f"coloring {idx} has the wrong length")
        for w in row:
            cert.target.index(w)
        if not is_graph_map(row, cert.source, cert.target):
            return CertificateCheck(False, idx, "coloring is not a graph map")
    for idx in range(1, len(cert.colorings)):
        diff = sum(
            1 for a, b in zip(cert.colorings[idx - 1], cert.colorings[idx]) if a != b
        )
        if diff > 1:
            return CertificateCheck(False, idx, f"step changes {diff} vertices")
    return CertificateCheck(True)


def enumerate_graph_maps(source: Graph, target: Graph) -> list:
    """All graph maps source -> target as assignment tuples, lexicographic in
    canonical vertex/color order.  These are the atoms of Hom(source, target)."""
    ns = len(source.vertices)
    earlier = [
        [source.index(u) for u in source.neighbors(v) if source.index(u) < i]
        for i, v in enumerate(source.vertices)
    ]
    self_loop = [source.has_edge(v, v) for v in source.vertices]
    out = []
    assignment = [None] * ns

    def extend(i: int) -> None:
        if i == ns:
            out.append(tuple(assignment))
            return
        for w in target.vertices:
            if self_loop[i] and not target.has_edge(w, w):
                continue
            if all(target.has_edge(assignment[j], w) for j in earlier[i]):
                assignment[i] = w
                extend(i + 1)
        assignment[i] = None

    extend(0)
    return out


def find_path(source: Graph, target: Graph, phi: GraphMap,
              psi: GraphMap) -> Optional[PathCertificate]:
    """Shortest single-vertex-recoloring path between two proper colorings.

    Breadth-first search over the atoms of Hom(source, target); among the
    shortest paths the lexicographically first one (neighbor order = vertex
    canonical order, then color canonical order) is returned.  None means the
    two colorings are not joined by single-vertex moves; that does not by
    itself prove poset-level disconnection.
    """
    for m, nm in ((phi, "start"), (psi, "end")):
        if not is_graph_map(m.assignment, source, target):
            raise InputError(f"{nm} coloring is not a proper coloring")
    start, goal = phi.assignment, psi.assignment

    def neighbors(state: tuple):
        for i in range(len(state)):
            for w in target.vertices:
                if w == state[i]:
                    continue
                if source.has_edge(source.vertices[i], source.vertices[i]) and \
                        not target.has_edge(w, w):
                    continue
                ok = True
                for u in source.neighbors(source.vertices[i]):
                    j = source.index(u)
                    if j == i:
                        continue
                    if not target.has_edge(state[j], w):
                        ok = False
                        break
                if ok:
                    yield state[:i] + (w,) + state[i + 1:]

    # distances from the goal, then a greedy lexicographic descent from the start
    dist = {goal: 0}
    queue = deque([goal])
    while queue:
        cur = queue.popleft()
        if cur == start:
            break
        for nxt in neighbors(cur):
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    if start not in dist:
        return None

    path = [start]
    cur = start
    while cur != goal:
        d = dist[cur]
        nxt = next(n for n in neighbors(cur) if dist.get(n, -1) == d - 1)
        path.append(nxt)
        cur = nxt
    return PathCertificate.build(source, target, path)
