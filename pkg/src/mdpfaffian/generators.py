"""Small instances: fixed examples and seeded random families."""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import Delaunay

from .rings import POLYNOMIAL, RATIONAL, Ring
from .surface import InvalidGraphError, SurfaceGraph, from_coordinates, from_edges


# ------------------------------------------------------------------ fixtures
def example_annulus(ring: Ring = POLYNOMIAL) -> SurfaceGraph:
    """Annulus with double edges b-c (outer) and a-d (inner), radial c-d, b-a."""
    return from_edges(
        4,
        [(0, 1), (0, 1), (2, 3), (2, 3), (1, 3), (0, 2)],
        [[10, 0, 2], [1, 8, 3], [4, 11, 6], [9, 5, 7]],
        holes=(0, 5),
        ring=ring,
        vertex_weights=["b", "c", "a", "d"] if ring is POLYNOMIAL else None,
        vertex_names=["b", "c", "a", "d"],
    )


def cycle_disk(n: int, ring: Ring = RATIONAL, symbolic: bool = False) -> SurfaceGraph:
    """n-cycle drawn as a convex polygon; the outside is the boundary."""
    pts = [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)]
    edges = [(i, (i + 1) % n) for i in range(n)]
    kw = {}
    if symbolic:
        kw = dict(
            edge_weights=[f"x{i + 1}" for i in range(n)],
            vertex_weights=[f"y{i + 1}" for i in range(n)],
        )
    g = from_coordinates(pts, edges, ring=ring, **kw)
    return _with_outer_hole(g, pts)


def wheel_disk(n: int, ring: Ring = RATIONAL) -> SurfaceGraph:
    """n-cycle plus a centre joined to every rim vertex."""
    pts = [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)]
    pts.append((0.0, 0.0))
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)]
    return _with_outer_hole(from_coordinates(pts, edges, ring=ring), pts)


def single_edge_disk(ring: Ring = RATIONAL, symbolic: bool = False) -> SurfaceGraph:
    kw = dict(edge_weights=["x"], vertex_weights=["y1", "y2"]) if symbolic else {}
    return from_edges(2, [(0, 1)], [[0], [1]], holes=(0,), ring=ring, **kw)


def two_vertex_disk(ring: Ring = POLYNOMIAL) -> SurfaceGraph:
    """Two boundary vertices joined only by a 0-weight edge (no real edges)."""
    return from_edges(
        2, [(0, 1)], [[0], [1]], holes=(0,), ring=ring,
        edge_weights=[0], vertex_weights=["y1", "y2"] if ring is POLYNOMIAL else None,
    )


def path_disk(n: int, ring: Ring = RATIONAL) -> SurfaceGraph:
    """Path on n vertices; its only face is the boundary."""
    pts = [(float(i), 0.0) for i in range(n)]
    edges = [(i, i + 1) for i in range(n - 1)]
    g = from_coordinates(pts, edges, ring=ring)
    return g.with_holes((0,))


def torus_grid(m: int, n: int, ring: Ring = RATIONAL, hole: bool = False) -> SurfaceGraph:
    """m x n grid with periodic identifications in both directions.

    With ``hole=True`` one square face is removed.
    """
    if m < 2 or n < 2:
        raise ValueError("torus grid needs m, n >= 2")

    def vid(i, j):
        return (i % m) * n + (j % n)

    edges, rots = [], [[0] * 4 for _ in range(m * n)]
    for i in range(m):
        for j in range(n):
            e = len(edges)
            edges.append((vid(i, j), vid(i + 1, j)))
            rots[vid(i, j)][0] = 2 * e
            rots[vid(i + 1, j)][2] = 2 * e + 1
            e = len(edges)
            edges.append((vid(i, j), vid(i, j + 1)))
            rots[vid(i, j)][1] = 2 * e
            rots[vid(i, j + 1)][3] = 2 * e + 1
    return from_edges(m * n, edges, rots, holes=(0,) if hole else (), ring=ring)


def cylinder_lattice(circumference: int, height: int, ring: Ring = RATIONAL) -> SurfaceGraph:
    """Square lattice on an annulus: ``height`` concentric rings of
    ``circumference`` vertices; the innermost and outermost rings bound holes."""
    pts, edges = [], []
    L = circumference
    for j in range(height):
        for i in range(L):
            a = 2 * math.pi * i / L
            pts.append(((j + 1) * math.cos(a), (j + 1) * math.sin(a)))
    for j in range(height):
        for i in range(L):
            edges.append((j * L + i, j * L + (i + 1) % L))
            if j + 1 < height:
                edges.append((j * L + i, (j + 1) * L + i))
    g = from_coordinates(pts, edges, ring=ring)
    inner = _face_through(g, list(range(L)))
    outer = _outer_face(g, pts)
    return g.with_holes((g.face_walks[outer][0], g.face_walks[inner][0]))


def theta_disk(ring: Ring = RATIONAL) -> SurfaceGraph:
    """Square with one diagonal."""
    pts = [(0, 0), (1, 0), (1, 1), (0, 1)]
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
    return _with_outer_hole(from_coordinates(pts, edges, ring=ring), pts)


# ------------------------------------------------------------------ helpers
def _signed_area(g: SurfaceGraph, pts, f: int) -> float:
    s = 0.0
    for d in g.face_walks[f]:
        (x1, y1), (x2, y2) = pts[int(g.tail[d])], pts[g.head(d)]
        s += x1 * y2 - x2 * y1
    return s / 2


def _outer_face(g: SurfaceGraph, pts) -> int:
    return min(range(len(g.faces)), key=lambda f: _signed_area(g, pts, f))


def _with_outer_hole(g: SurfaceGraph, pts) -> SurfaceGraph:
    return g.with_holes((g.face_walks[_outer_face(g, pts)][0],))


def _face_through(g: SurfaceGraph, cycle: Sequence[int]) -> int:
    target = set(cycle)
    for f, walk in enumerate(g.face_walks):
        if {int(g.tail[d]) for d in walk} == target and len(walk) == len(cycle):
            return f
    raise InvalidGraphError("no such face")


def _random_weights(rng: np.random.Generator, g: SurfaceGraph, max_weight: int) -> SurfaceGraph:
    ew = [int(x) for x in rng.integers(1, max_weight + 1, g.n_edges)]
    vw = [int(x) for x in rng.integers(1, max_weight + 1, g.n_vertices)]
    return g.with_weights(edge_weights=ew, vertex_weights=vw)


def _face_vertices(g: SurfaceGraph, f: int) -> set:
    return {int(g.tail[d]) for d in g.face_walks[f]}


def _pick_holes(rng, g: SurfaceGraph, first: int, b: int) -> Optional[List[int]]:
    """``first`` plus b-1 further faces, all pairwise vertex-disjoint."""
    chosen = [first]
    used = set(_face_vertices(g, first))
    for f in rng.permutation(len(g.faces)):
        if len(chosen) == b:
            break
        f = int(f)
        if f in chosen:
            continue
        vs = _face_vertices(g, f)
        if vs & used:
            continue
        chosen.append(f)
        used |= vs
    return chosen if len(chosen) == b else None


# ------------------------------------------------------------ random planar
def _delaunay(rng: np.random.Generator, n: int):
    while True:
        pts = rng.random((n, 2))
        if n < 3:
            return pts, [(0, 1)] if n == 2 else []
        try:
            tri = Delaunay(pts)
        except Exception:  # degenerate point sets
            continue
        edges = set()
        for s in tri.simplices:
            for a, b in ((s[0], s[1]), (s[1], s[2]), (s[0], s[2])):
                edges.add((int(min(a, b)), int(max(a, b))))
        return pts, sorted(edges)


def _thin(rng: np.random.Generator, pts, edges, keep: float, protected=frozenset()) -> SurfaceGraph:
    """Delete random edges separating distinct faces (keeps it connected).

    Edges listed in ``protected`` (as sorted endpoint pairs) are kept.
    """
    edges = list(edges)
    order = rng.permutation(len(edges))
    g = from_coordinates(pts, edges)
    target = max(len(pts) - 1, int(round(keep * len(edges))))
    removed = set()
    for idx in order:
        if len(edges) - len(removed) <= target:
            break
        if edges[idx] in protected:
            continue
        trial = [e for i, e in enumerate(edges) if i not in removed and i != idx]
        try:
            h = from_coordinates(pts, trial)
        except InvalidGraphError:
            continue
        if len(h.faces) == len(g.faces) - 1:
            removed.add(int(idx))
            g = h
    return g


def _face_edges(g: SurfaceGraph, f: int) -> set:
    return {tuple(sorted(g.endpoints(d >> 1))) for d in g.face_walks[f]}


def random_planar(
    seed: int,
    n_vertices: int,
    b: int = 1,
    keep: Optional[float] = None,
    max_weight: int = 5,
    attempts: int = 500,
) -> SurfaceGraph:
    """Random plane graph with the outer face and b-1 inner faces as holes.

    With one hole the whole graph is thinned, so the boundary walk may repeat
    vertices. With more holes they are picked among the triangles first and
    their edges survive the thinning.
    """
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        pts, edges = _delaunay(rng, n_vertices)
        frac = keep if keep is not None else float(rng.uniform(0.4, 1.0))
        if b == 1:
            g = _thin(rng, pts, edges, frac)
            return _random_weights(rng, _with_outer_hole(g, pts), max_weight)
        full = from_coordinates(pts, edges)
        holes = _pick_holes(rng, full, _outer_face(full, pts), b)
        if holes is None:
            continue
        inner = [[int(full.tail[d]) for d in full.face_walks[f]] for f in holes[1:]]
        protected = frozenset().union(*(_face_edges(full, f) for f in holes))
        g = _thin(rng, pts, edges, frac, protected)
        faces = [_outer_face(g, pts)] + [_face_through(g, cyc) for cyc in inner]
        g = g.with_holes(tuple(g.face_walks[f][0] for f in faces))
        return _random_weights(rng, g, max_weight)
    raise RuntimeError(f"could not build a planar graph with {b} holes on {n_vertices} vertices")


# ------------------------------------------------------------ random surface
def _random_rotation_graph(rng: np.random.Generator, n: int, m: int) -> SurfaceGraph:
    edges = []
    for v in range(1, n):
        edges.append((int(rng.integers(0, v)), v))
    while len(edges) < m:
        u, v = (int(x) for x in rng.choice(n, 2, replace=False))
        edges.append((u, v))
    at: List[List[int]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        at[u].append(2 * e)
        at[v].append(2 * e + 1)
    rots = [[int(d) for d in rng.permutation(ds)] for ds in at]
    return from_edges(n, edges, rots)


def random_surface(
    seed: int,
    n_vertices: int,
    genus: int,
    b: int = 1,
    max_weight: int = 5,
    attempts: int = 5000,
) -> SurfaceGraph:
    """Random map of the given genus with b vertex-disjoint faces as holes."""
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        extra = int(rng.integers(2 * genus, 2 * genus + 5))
        g = _random_rotation_graph(rng, n_vertices, n_vertices - 1 + extra)
        if g.genus != genus or len(g.faces) < b:
            continue
        holes = _pick_holes(rng, g, int(rng.integers(len(g.faces))), b)
        if holes is None:
            continue
        g = g.with_holes(tuple(g.face_walks[f][0] for f in holes))
        return _random_weights(rng, g, max_weight)
    raise RuntimeError(f"no genus-{genus} map found on {n_vertices} vertices")


FAMILIES = {
    "disk": dict(genus=0, b=1),
    "annulus": dict(genus=0, b=2),
    "pants": dict(genus=0, b=3),
    "torus1": dict(genus=1, b=1),
}


def random_instance(family: str, seed: int, max_vertices: int = 12) -> SurfaceGraph:
    """Instance of a named family with 2..max_vertices vertices."""
    rng = np.random.default_rng(seed)
    family_info = FAMILIES[family]
    if family_info["genus"] == 0:
        low = {1: 2, 2: 6, 3: 10}[family_info["b"]]
        n = int(rng.integers(low, max_vertices + 1))
        return random_planar(seed, n, b=family_info["b"])
    n = int(rng.integers(3, max_vertices - 1))
    return random_surface(seed, n, family_info["genus"], b=family_info["b"])
