"""Z/2 homology data on the closed-up surface.

A tree-cotree decomposition yields 2g closed curves transverse to the graph
(cycles in the dual graph) that avoid the boundary circuits. Each curve gets a
companion cycle of the graph running along its right side, i.e. with the curve
on its immediate left.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .surface import SurfaceGraph


class TopologyError(RuntimeError):
    """Internal invariant violation in the homology construction."""


@dataclass(frozen=True)
class TransverseCurve:
    """Closed curve crossing each of ``crossed_edges`` once (mod 2).

    ``exit_darts`` lists, in order, the dart whose edge is crossed when the
    curve leaves the face to the dart's left; empty for curves only known as
    Z/2 combinations.
    """

    crossed_edges: FrozenSet[int]
    exit_darts: Tuple[int, ...] = ()

    def face_walk(self, g: SurfaceGraph) -> Tuple[int, ...]:
        return tuple(int(g.face_of[d]) for d in self.exit_darts)


@dataclass(frozen=True)
class HomologyData:
    alphas: Tuple[TransverseCurve, ...]
    gammas: Tuple[Tuple[int, ...], ...]
    intersection: np.ndarray
    duals: Tuple[TransverseCurve, ...]

    @property
    def genus(self) -> int:
        return len(self.alphas) // 2


def close_surface(g: SurfaceGraph) -> SurfaceGraph:
    """Forget the boundary markings: every hole becomes an ordinary face."""
    return replace(g, holes=())


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def tree_cotree(g: SurfaceGraph):
    """Return ``(tree_edges, cotree_edges, leftover_edges)``.

    All boundary-circuit edges but one per circuit go into the primal tree,
    which makes every glued disk a leaf of the cotree.
    """
    uf = _UnionFind(g.n_vertices)
    tree = set()
    for k in range(g.b):
        for d in g.boundary_walk(k)[1:]:
            if uf.union(int(g.tail[d]), g.head(d)):
                tree.add(d >> 1)
    for e in range(g.n_edges):
        u, v = g.endpoints(e)
        if uf.union(u, v):
            tree.add(e)
    fuf = _UnionFind(len(g.faces))
    cotree = set()
    leftover = []
    for e in range(g.n_edges):
        if e in tree:
            continue
        if fuf.union(int(g.face_of[2 * e]), int(g.face_of[2 * e + 1])):
            cotree.add(e)
        else:
            leftover.append(e)
    return tree, cotree, leftover


def _cotree_path(g: SurfaceGraph, cotree, src: int, dst: int) -> List[int]:
    """Exit darts of the cotree path from face ``src`` to face ``dst``."""
    if src == dst:
        return []
    adj: Dict[int, List[int]] = {}
    for e in cotree:
        for d in (2 * e, 2 * e + 1):
            adj.setdefault(int(g.face_of[d]), []).append(d)
    prev: Dict[int, int] = {src: -1}
    queue = deque([src])
    while queue:
        f = queue.popleft()
        if f == dst:
            break
        for d in adj.get(f, []):
            nxt = int(g.face_of[d ^ 1])
            if nxt not in prev:
                prev[nxt] = d
                queue.append(nxt)
    if dst not in prev:
        raise TopologyError("cotree is disconnected")
    path = []
    f = dst
    while f != src:
        d = prev[f]
        path.append(d)
        f = int(g.face_of[d])
    return path[::-1]


def companion_cycle(g: SurfaceGraph, exit_darts: Sequence[int]) -> Tuple[int, ...]:
    """Darts of the cycle having the curve on its immediate left."""
    walk: List[int] = []
    m = len(exit_darts)
    for t in range(m):
        entry = exit_darts[t] ^ 1
        leave = exit_darts[(t + 1) % m]
        if int(g.face_of[entry]) != int(g.face_of[leave]):
            raise TopologyError("curve is not a closed face walk")
        d = g.phi(entry)
        while d != leave:
            walk.append(d)
            d = g.phi(d)
    return tuple(walk)


def crossing_parity(edges: FrozenSet[int], walk: Sequence[int]) -> int:
    return sum(1 for d in walk if (d >> 1) in edges) % 2


def gf2_inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    aug = np.concatenate([m.astype(np.uint8) % 2, np.eye(n, dtype=np.uint8)], axis=1)
    for col in range(n):
        pivots = np.nonzero(aug[col:, col])[0]
        if len(pivots) == 0:
            raise TopologyError("intersection matrix is singular over Z/2")
        p = col + pivots[0]
        if p != col:
            aug[[col, p]] = aug[[p, col]]
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] ^= aug[col]
    return aug[:, n:]


def gf2_rank(m: np.ndarray) -> int:
    a = m.astype(np.uint8).copy() % 2
    rank = 0
    rows, cols = a.shape
    for col in range(cols):
        pivots = np.nonzero(a[rank:, col])[0]
        if len(pivots) == 0:
            continue
        p = rank + pivots[0]
        a[[rank, p]] = a[[p, rank]]
        for r in range(rows):
            if r != rank and a[r, col]:
                a[r] ^= a[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def homology_basis(g: SurfaceGraph) -> Tuple[List[TransverseCurve], List[Tuple[int, ...]]]:
    """2g transverse curves avoiding the boundary, with companion cycles.

    The boundary faces must be circuits (see :mod:`preprocess`).
    """
    problems = g.circuit_problems()
    if problems:
        raise ValueError("homology needs boundary circuits: " + "; ".join(problems))
    _, cotree, leftover = tree_cotree(g)
    expected = 2 * g.genus
    if len(leftover) != expected:
        raise TopologyError(f"found {len(leftover)} generators, expected {expected}")
    boundary = g.boundary_edges
    alphas, gammas = [], []
    for e in leftover:
        d = 2 * e
        exits = [d] + _cotree_path(g, cotree, int(g.face_of[d ^ 1]), int(g.face_of[d]))
        crossed = frozenset(x >> 1 for x in exits)
        if len(crossed) != len(exits):
            raise TopologyError("dual cycle crosses an edge twice")
        if crossed & boundary:
            raise TopologyError(
                f"curve through edge {g.edge_names[e]} crosses a boundary circuit"
            )
        alphas.append(TransverseCurve(crossed, tuple(exits)))
        gammas.append(companion_cycle(g, exits))
    return alphas, gammas


def intersection_matrix(alphas: Sequence[TransverseCurve], gammas: Sequence[Sequence[int]]) -> np.ndarray:
    """Entry (i, j) is the parity of crossings of curve i with companion j."""
    n = len(alphas)
    m = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(n):
            m[i, j] = crossing_parity(alphas[i].crossed_edges, gammas[j])
    return m


def dual_curves(alphas: Sequence[TransverseCurve], intersection: np.ndarray) -> List[TransverseCurve]:
    """Z/2 combinations of the curves with prescribed crossing parities.

    Curve i of the result crosses companion j an odd number of times iff i == j.
    """
    if len(alphas) == 0:
        return []
    inv = gf2_inverse(intersection)
    out = []
    for i in range(len(alphas)):
        edges: set = set()
        for k in range(len(alphas)):
            if inv[i, k]:
                edges ^= set(alphas[k].crossed_edges)
        out.append(TransverseCurve(frozenset(edges)))
    return out


def homology(g: SurfaceGraph) -> HomologyData:
    alphas, gammas = homology_basis(g)
    inter = intersection_matrix(alphas, gammas)
    if inter.size:
        if np.any(np.diag(inter)) or np.any(inter != inter.T):
            raise TopologyError("intersection form is not alternating")
        if gf2_rank(inter) != len(alphas):
            raise TopologyError("curves do not form a homology basis")
    duals = dual_curves(alphas, inter)
    return HomologyData(tuple(alphas), tuple(gammas), inter, tuple(duals))
