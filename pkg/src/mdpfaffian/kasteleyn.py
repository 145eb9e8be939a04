"""Kasteleyn orientations and the boundary-constrained classes.

An orientation is a ``uint8`` array indexed by edge: ``0`` directs edge ``e``
along dart ``2e`` and ``1`` along dart ``2e + 1``. Flipping edges is XOR.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from .surface import SurfaceGraph
from .topology import HomologyData, TransverseCurve


class OrientationError(RuntimeError):
    pass


Orientation = np.ndarray


def tail_of(g: SurfaceGraph, k: Orientation, e: int) -> int:
    return int(g.tail[2 * e + int(k[e])])


def head_of(g: SurfaceGraph, k: Orientation, e: int) -> int:
    return int(g.tail[2 * e + 1 - int(k[e])])


def n_count(k: Orientation, walk: Iterable[int]) -> int:
    """Number of darts of the walk that run against the orientation."""
    return sum(1 for d in walk if int(k[d >> 1]) != (d & 1))


def interior_faces(g: SurfaceGraph) -> List[int]:
    holes = set(g.hole_faces)
    return [f for f in range(len(g.faces)) if f not in holes]


def is_kasteleyn(g: SurfaceGraph, k: Orientation, faces: Optional[Sequence[int]] = None) -> bool:
    """Odd disagreement count on each listed face (all faces by default)."""
    if faces is None:
        faces = range(len(g.faces))
    return all(n_count(k, g.face_walks[f]) % 2 == 1 for f in faces)


def boundary_pattern(g: SurfaceGraph, beta: Sequence[int]) -> Dict[int, int]:
    """Required direction bit of every boundary-circuit edge for class ``beta``.

    Labels increase along each hole walk. For ``beta_k = 0`` every edge points
    from the larger label to the smaller; for ``beta_k = 1`` edges follow the
    induced boundary orientation, i.e. run against the hole walk.
    """
    if len(beta) != g.b:
        raise ValueError(f"beta has {len(beta)} entries, graph has {g.b} boundary components")
    out: Dict[int, int] = {}
    for k, bk in enumerate(beta):
        walk = g.boundary_walk(k)
        last = len(walk) - 1
        for t, d in enumerate(walk):
            along = d if (bk == 0 and t == last) else d ^ 1
            out[d >> 1] = along & 1
    return out


def has_boundary_pattern(g: SurfaceGraph, k: Orientation, beta: Sequence[int]) -> bool:
    return all(int(k[e]) == bit for e, bit in boundary_pattern(g, beta).items())


def _fix_faces(g: SurfaceGraph, k: Orientation, faces: Sequence[int], mutable: Sequence[int]) -> bool:
    """Flip mutable edges along a dual spanning tree so that every face in
    ``faces`` except the tree roots gets odd parity. Returns True iff the
    roots end up odd as well."""
    wanted = set(faces)
    adj: Dict[int, List[int]] = {f: [] for f in wanted}
    for e in mutable:
        f1, f2 = int(g.face_of[2 * e]), int(g.face_of[2 * e + 1])
        if f1 != f2 and f1 in wanted and f2 in wanted:
            adj[f1].append(e)
            adj[f2].append(e)
    parent_edge: Dict[int, int] = {}
    order: List[int] = []
    roots: List[int] = []
    for root in sorted(wanted):
        if root in parent_edge or root in roots:
            continue
        roots.append(root)
        queue = deque([root])
        seen_here = {root}
        while queue:
            f = queue.popleft()
            order.append(f)
            for e in adj[f]:
                f1, f2 = int(g.face_of[2 * e]), int(g.face_of[2 * e + 1])
                nxt = f2 if f1 == f else f1
                if nxt not in seen_here and nxt not in parent_edge and nxt not in roots:
                    seen_here.add(nxt)
                    parent_edge[nxt] = e
                    queue.append(nxt)
    for f in reversed(order):
        if f in parent_edge and n_count(k, g.face_walks[f]) % 2 == 0:
            k[parent_edge[f]] ^= 1
    return all(n_count(k, g.face_walks[r]) % 2 == 1 for r in roots)


def build_base_orientation(g: SurfaceGraph, beta: Sequence[int]) -> Orientation:
    """An orientation with the exact boundary pattern of ``beta`` that is
    Kasteleyn on every interior face."""
    if sum(beta) % 2:
        raise OrientationError("beta must have an even number of ones")
    k = np.zeros(g.n_edges, dtype=np.uint8)
    pattern = boundary_pattern(g, beta)
    for e, bit in pattern.items():
        k[e] = bit
    mutable = [e for e in range(g.n_edges) if e not in pattern]
    if not _fix_faces(g, k, interior_faces(g), mutable):
        raise OrientationError(f"no orientation in the class {tuple(beta)}: parity obstruction")
    return k


def build_closed_kasteleyn(g: SurfaceGraph) -> Orientation:
    """Kasteleyn orientation of the closed-up map (holes count as faces)."""
    k = np.zeros(g.n_edges, dtype=np.uint8)
    if not _fix_faces(g, k, range(len(g.faces)), range(g.n_edges)):
        raise OrientationError("no Kasteleyn orientation: odd number of vertices")
    return k


def flip_edges(k: Orientation, edges: Iterable[int]) -> Orientation:
    out = k.copy()
    for e in edges:
        out[e] ^= 1
    return out


def fix_gamma_parities(k: Orientation, gammas: Sequence[Sequence[int]], duals: Sequence[TransverseCurve]) -> Orientation:
    """Flip along dual curves until every companion cycle has odd count."""
    out = k.copy()
    for i, gamma in enumerate(gammas):
        if n_count(out, gamma) % 2 == 0:
            out = flip_edges(out, duals[i].crossed_edges)
    return out


def flip_epsilon(k: Orientation, eps: Sequence[int], alphas: Sequence[TransverseCurve]) -> Orientation:
    """Invert ``k`` on every edge crossed an odd number of times by the curves
    selected by ``eps``."""
    flips = np.zeros_like(k)
    for on, curve in zip(eps, alphas):
        if on:
            for e in curve.crossed_edges:
                flips[e] ^= 1
    return k ^ flips


def orientation_class(g: SurfaceGraph, beta: Sequence[int], hom: HomologyData) -> Orientation:
    """The representative orientation used by the main formula for ``beta``."""
    base = build_base_orientation(g, beta)
    return fix_gamma_parities(base, hom.gammas, hom.duals)


def orientation_table(g: SurfaceGraph, k: Orientation) -> List[dict]:
    return [
        {
            "edge": g.edge_names[e],
            "tail": g.vertex_names[tail_of(g, k, e)],
            "head": g.vertex_names[head_of(g, k, e)],
        }
        for e in range(g.n_edges)
    ]
