"""Ordered Delta-complexes, order complexes of posets, free quotients with the
first Stiefel-Whitney cocycle, mod-2 (co)homology, cup powers, and the height
and connectivity invariants.

Simplices are ordered tuples of distinct vertex identifiers; face maps are
tuple deletion.  All chain-level linear algebra is over GF(2) via the kernels
in :mod:`homlab.gf2`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import FreenessError, InputError, InvariantError, ResourceLimitError
from .gf2 import SPARSE_THRESHOLD, gf2_rank, gf2_solvable, rank_sparse
from .hom import HomPoset, default_max_elements

__all__ = [
    "OrderedDeltaComplex",
    "CocycleClass",
    "HeightResult",
    "ConnResult",
    "order_complex",
    "order_complex_from_relation",
    "quotient_with_w1",
    "betti_mod2",
    "cup_power",
    "unit_class",
    "is_coboundary",
    "sw_height",
    "conn_proxy",
]


class OrderedDeltaComplex:
    """Simplices by dimension, each an ordered tuple of distinct vertices.

    Every face (obtained by deleting one position) of every simplex must be
    present; simplex tuples are unique per dimension so faces can be resolved
    by tuple lookup.
    """

    def __init__(self, simplices_by_dim: Sequence[Sequence[tuple]]):
        dims = [tuple(tuple(s) for s in level) for level in simplices_by_dim]
        while dims and not dims[-1]:
            dims.pop()
        self.simplices = tuple(dims)
        self._index = []
        for d, level in enumerate(self.simplices):
            idx = {}
            for s in level:
                if len(s) != d + 1:
                    raise InputError(f"simplex {s!r} has wrong length for dimension {d}")
                if len(set(s)) != len(s):
                    raise InputError(f"simplex {s!r} repeats a vertex")
                if s in idx:
                    raise InputError(f"duplicate simplex {s!r}")
                idx[s] = len(idx)
            self._index.append(idx)
        for d in range(1, len(self.simplices)):
            for s in self.simplices[d]:
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    if face not in self._index[d - 1]:
                        raise InputError(f"face {face!r} of {s!r} is missing")

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def is_empty(self) -> bool:
        return not self.simplices

    def n_simplices(self, d: int) -> int:
        if 0 <= d < len(self.simplices):
            return len(self.simplices[d])
        return 0

    def simplex_index(self, d: int, s: tuple) -> int:
        try:
            return self._index[d][tuple(s)]
        except (IndexError, KeyError):
            raise InputError(f"no {d}-simplex {s!r}") from None

    def boundary_matrix(self, d: int) -> np.ndarray:
        """Mod-2 boundary from d-chains to (d-1)-chains; zero-size for d <= 0."""
        if d <= 0 or d > self.dim:
            rows = self.n_simplices(d - 1) if d >= 1 else 0
            return np.zeros((rows, self.n_simplices(d)), dtype=np.uint8)
        mat = np.zeros((self.n_simplices(d - 1), self.n_simplices(d)), dtype=np.uint8)
        for j, s in enumerate(self.simplices[d]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                mat[self._index[d - 1][face], j] ^= 1
        return mat

    def boundary_rows_sparse(self, d: int):
        """Rows of the transposed boundary: per d-simplex, its face indices mod 2."""
        rows = []
        if d <= 0 or d > self.dim:
            return rows
        for s in self.simplices[d]:
            row = set()
            for i in range(len(s)):
                face = self._index[d - 1][s[:i] + s[i + 1:]]
                row ^= {face}
            rows.append(row)
        return rows

    def export(self) -> dict:
        return {"simplices": [[list(s) for s in level] for level in self.simplices]}


def _boundary_rank(x: OrderedDeltaComplex, d: int) -> int:
    if d <= 0 or d > x.dim:
        return 0
    if max(x.n_simplices(d), x.n_simplices(d - 1)) > SPARSE_THRESHOLD:
        return rank_sparse(x.boundary_rows_sparse(d), x.n_simplices(d - 1))
    return gf2_rank(x.boundary_matrix(d))


def betti_mod2(x: OrderedDeltaComplex, reduced: bool = False) -> tuple:
    """GF(2) Betti numbers b_0..b_dim (reduced variant subtracts one from b_0)."""
    if x.is_empty():
        return ()
    out = []
    for d in range(x.dim + 1):
        rank_d = _boundary_rank(x, d)
        rank_d1 = _boundary_rank(x, d + 1)
        b = x.n_simplices(d) - rank_d - rank_d1
        if d == 0 and reduced:
            b -= 1
        out.append(b)
    return tuple(out)


# ---------------------------------------------------------------------------
# Order complexes


def order_complex_from_relation(n: int, leq: Callable[[int, int], bool],
                                max_chains: Optional[int] = None) -> OrderedDeltaComplex:
    """Order complex of the poset on 0..n-1 under ``leq``.

    Simplices are the chains, ordered ascending; raises ResourceLimitError
    beyond the chain cap.
    """
    cap = default_max_elements() if max_chains is None else max_chains
    greater = [
        [j for j in range(n) if j != i and leq(i, j)] for i in range(n)
    ]
    levels = []
    count = 0
    chain = []

    def record() -> None:
        nonlocal count
        count += 1
        if count > cap:
            raise ResourceLimitError(f"order complex exceeds the cap of {cap} chains")
        d = len(chain) - 1
        while len(levels) <= d:
            levels.append([])
        levels[d].append(tuple(chain))

    def extend(last: int) -> None:
        record()
        for j in greater[last]:
            chain.append(j)
            extend(j)
            chain.pop()

    for i in range(n):
        chain = [i]
        extend(i)
    for level in levels:
        level.sort()
    return OrderedDeltaComplex(levels)


def order_complex(poset: HomPoset,
                  max_chains: Optional[int] = None) -> OrderedDeltaComplex:
    """Order complex of a Hom poset; vertices are element indices."""
    return order_complex_from_relation(len(poset), poset.leq, max_chains)


# ---------------------------------------------------------------------------
# Free quotients and the first Stiefel-Whitney cocycle


@dataclass(frozen=True)
class CocycleClass:
    """A GF(2) cocycle representative on a fixed complex and degree."""

    complex: OrderedDeltaComplex
    degree: int
    values: np.ndarray  # uint8, aligned with simplices of that degree

    def is_zero(self) -> bool:
        return not self.values.any()

    def check_cocycle(self) -> bool:
        return not coboundary(self).values.any()

    def export(self) -> dict:
        return {
            "degree": self.degree,
            "support": [int(i) for i in np.nonzero(self.values)[0]],
        }


def coboundary(c: CocycleClass) -> CocycleClass:
    """delta c, a cochain one degree up."""
    x, k = c.complex, c.degree
    mat = x.boundary_matrix(k + 1)  # rows: k-simplices, cols: (k+1)-simplices
    vals = (mat.T @ c.values) % 2 if mat.size else \
        np.zeros(x.n_simplices(k + 1), dtype=np.uint8)
    return CocycleClass(x, k + 1, vals.astype(np.uint8))


def quotient_with_w1(x: OrderedDeltaComplex, tau: dict):
    """Quotient of a free simplicial involution, plus the twist cocycle of the
    resulting double cover.

    ``tau`` maps vertices to vertices; it must be simplicial, of order two,
    and move every simplex entirely off itself.  The returned degree-1
    cocycle takes value 1 on a quotient edge exactly when the lift of that
    edge starting at the chosen orbit representative ends at the non-chosen
    lift of the other endpoint.
    """
    if x.is_empty():
        return x, CocycleClass(x, 1, np.zeros(0, dtype=np.uint8))
    verts = [s[0] for s in x.simplices[0]]
    vpos = {v: i for i, v in enumerate(verts)}
    for v in verts:
        if tau.get(v) not in vpos:
            raise InputError(f"involution undefined or off-complex at {v!r}")
        if tau[tau[v]] != v:
            raise InputError("involution is not of order two")

    def image(s: tuple) -> tuple:
        return tuple(tau[v] for v in s)

    # orbit representative per vertex: smaller canonical position
    section = {}
    for v in verts:
        w = tau[v]
        rep = v if vpos[v] <= vpos[w] else w
        section[v] = rep

    levels = []
    rep_of = []  # per dim: quotient simplex tuple -> representative lift
    for d, level in enumerate(x.simplices):
        index = x._index[d]
        seen = set()
        qlevel = []
        reps = {}
        for s in level:
            ts = image(s)
            if ts not in index:
                raise InputError(f"involution is not simplicial on {s!r}")
            if set(s) & set(ts):
                raise FreenessError(f"simplex {s!r} meets its image")
            if s in seen:
                continue
            seen.add(s)
            seen.add(ts)
            rep = min(s, ts, key=lambda t: tuple(vpos[v] for v in t))
            q = tuple(section[v] for v in rep)
            if q in reps:
                raise InputError(
                    "quotient is not encodable by vertex tuples: "
                    f"two simplex orbits share {q!r}"
                )
            reps[q] = rep
            qlevel.append(q)
        qlevel.sort(key=lambda t: tuple(vpos[v] for v in t))
        levels.append(qlevel)
        rep_of.append(reps)
    quotient = OrderedDeltaComplex(levels)
    for d in range(len(levels)):
        if 2 * len(levels[d]) != x.n_simplices(d):
            raise InvariantError("free quotient must halve each simplex count")

    w1_vals = np.zeros(quotient.n_simplices(1), dtype=np.uint8)
    for q in quotient.simplices[1] if quotient.dim >= 1 else ():
        x0, x1 = rep_of[1][q]
        if x0 != section[x0]:
            x1 = tau[x1]  # lift starting at the chosen representative
        if x1 != section[x1]:
            w1_vals[quotient.simplex_index(1, q)] = 1
    w1 = CocycleClass(quotient, 1, w1_vals)
    if not w1.check_cocycle():
        raise InvariantError("w1 representative is not a cocycle")
    return quotient, w1


def unit_class(x: OrderedDeltaComplex) -> CocycleClass:
    """The degree-0 class with value 1 on every vertex."""
    return CocycleClass(x, 0, np.ones(x.n_simplices(0), dtype=np.uint8))


def cup_power(z: CocycleClass, n: int) -> CocycleClass:
    """n-th cup power of a degree-1 cocycle via the front/back-face product.

    On an n-simplex (v0, ..., vn) the value is the product of z on the
    consecutive edges (v_{i-1}, v_i).  Degrees above the complex dimension
    give the zero class.
    """
    if z.degree != 1:
        raise InputError("cup_power expects a degree-1 cocycle")
    x = z.complex
    if n == 0:
        return unit_class(x)
    if n > x.dim:
        return CocycleClass(x, n, np.zeros(0, dtype=np.uint8))
    vals = np.zeros(x.n_simplices(n), dtype=np.uint8)
    for j, s in enumerate(x.simplices[n]):
        prod = 1
        for i in range(1, len(s)):
            e = (s[i - 1], s[i])
            prod &= int(z.values[x.simplex_index(1, e)])
            if not prod:
                break
        vals[j] = prod
    out = CocycleClass(x, n, vals)
    if not out.check_cocycle():
        raise InvariantError("cup power of a cocycle failed the cocycle check")
    return out


def is_coboundary(c: CocycleClass) -> bool:
    """True iff delta x = c is solvable over GF(2) (the class of c vanishes)."""
    x, k = c.complex, c.degree
    if c.values.size == 0 or not c.values.any():
        return True
    if k == 0:
        return False  # unreduced: only the zero 0-cochain is a coboundary
    mat = x.boundary_matrix(k)  # delta on (k-1)-cochains is its transpose
    return gf2_solvable(mat.T if mat.size else
                        np.zeros((x.n_simplices(k), 0), dtype=np.uint8), c.values)


# ---------------------------------------------------------------------------
# Height and connectivity


NEG_INF = -math.inf


@dataclass(frozen=True)
class HeightResult:
    """Largest n with a nonvanishing n-th cup power of w1; -inf when empty.

    ``exact`` is False only for the component method's >= 1 answer, in which
    case ``value`` is a sound lower bound.
    """

    value: float
    exact: bool
    method: str


@dataclass(frozen=True)
class ConnResult:
    """Homological connectivity proxy; exact only in {-inf, -1, 0}."""

    value: float
    exact: bool


def sw_height(poset: HomPoset, method: str = "full",
              max_chains: Optional[int] = None) -> HeightResult:
    """Height of the free involution on a Hom poset.

    ``full`` builds the order complex, takes the free quotient, and finds the
    largest n whose cup power of the twist cocycle is not a coboundary.
    ``component`` answers exactly within {-inf, 0, >=1}: >= 1 iff some
    connected component is preserved by the involution.
    """
    if poset.involution is None:
        raise InputError("sw_height requires a poset with an involution")
    if len(poset) == 0:
        return HeightResult(NEG_INF, True, method)
    if method == "component":
        if poset.invariant_components():
            return HeightResult(1, False, method)
        return HeightResult(0, True, method)
    if method != "full":
        raise InputError(f"unknown height method {method!r}")

    try:
        x = order_complex(poset, max_chains)
    except ResourceLimitError as exc:
        raise ResourceLimitError(
            f"{exc}; use method='component' for large posets"
        ) from None
    tau = {i: poset.involution[i] for i in range(len(poset))}
    quotient, w1 = quotient_with_w1(x, tau)
    n = 0
    while n < quotient.dim + 1:
        if is_coboundary(cup_power(w1, n + 1)):
            break
        n += 1
    return HeightResult(n, True, "full")


def conn_proxy(x: OrderedDeltaComplex) -> ConnResult:
    """Largest n with vanishing reduced GF(2) homology in degrees <= n.

    Exact for -inf (empty) and for values <= 0 (path-connectivity); values
    >= 1 are heuristic because simple-connectivity is not computed.
    """
    if x.is_empty():
        return ConnResult(NEG_INF, True)
    reduced = betti_mod2(x, reduced=True)
    if reduced[0] != 0:
        return ConnResult(-1, True)
    n = 0
    while n + 1 <= x.dim and reduced[n + 1] == 0:
        n += 1
    if n + 1 > x.dim:
        return ConnResult(math.inf, False)  # homology vanishes in all degrees
    return ConnResult(n, n <= 0)
