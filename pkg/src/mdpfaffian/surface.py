"""Weighted graphs embedded in orientable surfaces with boundary.

The embedding is stored as a combinatorial map. Edge ``e`` owns the two darts
``2e`` and ``2e + 1`` (so the edge involution is ``d ^ 1``) and every vertex
lists its darts in counterclockwise order. Faces are traced with the face on
the left of each dart, i.e. by the permutation ``d -> sigma^-1(d ^ 1)``, which
walks interior faces counterclockwise. A boundary component of the surface is
a marked face (a "hole"); its face walk runs against the boundary orientation
induced by the surface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .rings import POLYNOMIAL, RATIONAL, Ring, RingElement, get_ring


class InvalidGraphError(ValueError):
    """Raised for inputs that do not describe a valid surface graph."""


@dataclass(frozen=True)
class Face:
    darts: Tuple[int, ...]
    boundary_index: Optional[int] = None

    @property
    def is_boundary(self) -> bool:
        return self.boundary_index is not None


@dataclass(frozen=True, eq=False)
class SurfaceGraph:
    """Immutable weighted surface graph.

    ``rotations[v]`` lists the darts leaving ``v`` counterclockwise; dart ``d``
    belongs to edge ``d >> 1``. ``holes[k]`` is any dart of the face glued to
    boundary component ``k``.
    """

    rotations: Tuple[Tuple[int, ...], ...]
    edge_weights: Tuple[RingElement, ...]
    vertex_weights: Tuple[RingElement, ...]
    holes: Tuple[int, ...] = ()
    ring: Ring = RATIONAL
    vertex_names: Tuple[str, ...] = ()
    edge_names: Tuple[str, ...] = ()
    dart_names: Tuple[str, ...] = ()

    def __post_init__(self):
        nv, ne = len(self.rotations), len(self.edge_weights)
        if not self.vertex_names:
            object.__setattr__(self, "vertex_names", tuple(str(v) for v in range(nv)))
        if not self.edge_names:
            object.__setattr__(self, "edge_names", tuple(str(e) for e in range(ne)))
        if not self.dart_names:
            object.__setattr__(self, "dart_names", tuple(str(d) for d in range(2 * ne)))
        self._validate()

    # ------------------------------------------------------------------ basics
    @property
    def n_vertices(self) -> int:
        return len(self.rotations)

    @property
    def n_edges(self) -> int:
        return len(self.edge_weights)

    @property
    def n_darts(self) -> int:
        return 2 * len(self.edge_weights)

    @property
    def b(self) -> int:
        return len(self.holes)

    @cached_property
    def tail(self) -> np.ndarray:
        t = np.full(self.n_darts, -1, dtype=np.int64)
        for v, rot in enumerate(self.rotations):
            for d in rot:
                t[d] = v
        return t

    def head(self, d: int) -> int:
        return int(self.tail[d ^ 1])

    def endpoints(self, e: int) -> Tuple[int, int]:
        return int(self.tail[2 * e]), int(self.tail[2 * e + 1])

    @cached_property
    def sigma(self) -> np.ndarray:
        s = np.empty(self.n_darts, dtype=np.int64)
        for rot in self.rotations:
            for i, d in enumerate(rot):
                s[d] = rot[(i + 1) % len(rot)]
        return s

    @cached_property
    def sigma_inv(self) -> np.ndarray:
        s = np.empty(self.n_darts, dtype=np.int64)
        s[self.sigma] = np.arange(self.n_darts)
        return s

    def phi(self, d: int) -> int:
        """Next dart along the face lying to the left of ``d``."""
        return int(self.sigma_inv[d ^ 1])

    def _validate(self):
        nd = self.n_darts
        seen = [d for rot in self.rotations for d in rot]
        if sorted(seen) != list(range(nd)):
            raise InvalidGraphError("rotation lists must partition the darts exactly once")
        if len(self.vertex_weights) != self.n_vertices:
            raise InvalidGraphError("one weight per vertex required")
        if any(len(rot) == 0 for rot in self.rotations) and self.n_vertices > 1:
            raise InvalidGraphError("isolated vertex in a graph with more than one vertex")
        for e in range(self.n_edges):
            u, v = self.endpoints(e)
            if u == v:
                raise InvalidGraphError(f"edge {self.edge_names[e]} is a loop")
        if not self.is_connected():
            raise InvalidGraphError("graph is disconnected")
        hole_faces = [self.face_of[h] for h in self.holes]
        if len(set(hole_faces)) != len(hole_faces):
            raise InvalidGraphError("two boundary markings refer to the same face")
        chi = self.n_vertices - self.n_edges + len(self.faces)
        if chi % 2 or chi > 2:
            raise InvalidGraphError(f"Euler characteristic {chi} of the closed surface is invalid")

    def is_connected(self) -> bool:
        n = self.n_vertices
        if n == 0:
            return True
        adj = [[] for _ in range(n)]
        for e in range(self.n_edges):
            u, v = self.endpoints(e)
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    # ------------------------------------------------------------------ faces
    @cached_property
    def _face_data(self):
        nd = self.n_darts
        face_of = np.full(nd, -1, dtype=np.int64)
        walks: List[Tuple[int, ...]] = []
        for start in range(nd):
            if face_of[start] >= 0:
                continue
            walk = []
            d = start
            while face_of[d] < 0:
                face_of[d] = len(walks)
                walk.append(d)
                d = self.phi(d)
            walks.append(tuple(walk))
        return walks, face_of

    @property
    def face_walks(self) -> List[Tuple[int, ...]]:
        return self._face_data[0]

    @property
    def face_of(self) -> np.ndarray:
        return self._face_data[1]

    @cached_property
    def faces(self) -> List[Face]:
        walks, face_of = self._face_data
        marks = {int(face_of[h]): k for k, h in enumerate(self.holes)}
        return [Face(w, marks.get(i)) for i, w in enumerate(walks)]

    @cached_property
    def hole_faces(self) -> Tuple[int, ...]:
        return tuple(int(self.face_of[h]) for h in self.holes)

    @property
    def genus(self) -> int:
        return genus(self)

    # --------------------------------------------------------------- boundary
    def boundary_walk(self, k: int) -> Tuple[int, ...]:
        """Darts of hole ``k``, started at its lowest-index vertex."""
        walk = self.face_walks[self.hole_faces[k]]
        start = min(range(len(walk)), key=lambda i: (int(self.tail[walk[i]]), i))
        return walk[start:] + walk[:start]

    def boundary_vertices(self, k: int) -> List[int]:
        return [int(self.tail[d]) for d in self.boundary_walk(k)]

    @cached_property
    def boundary_edges(self) -> frozenset:
        return frozenset(d >> 1 for k in range(self.b) for d in self.boundary_walk(k))

    @cached_property
    def circuit_of_vertex(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for k in range(self.b):
            for v in self.boundary_vertices(k):
                out.setdefault(v, k)
        return out

    def circuit_problems(self) -> List[str]:
        """Reasons why the holes are not disjoint boundary circuits (empty if fine)."""
        problems = []
        owner: Dict[int, int] = {}
        for k in range(self.b):
            walk = self.boundary_walk(k)
            verts = self.boundary_vertices(k)
            if len(set(verts)) != len(verts):
                problems.append(f"boundary {k} repeats a vertex")
            if len({d >> 1 for d in walk}) != len(walk):
                problems.append(f"boundary {k} traverses an edge twice")
            for v in set(verts):
                if v in owner and owner[v] != k:
                    problems.append(f"boundaries {owner[v]} and {k} share a vertex")
                owner[v] = k
        return problems

    def is_normalized(self) -> bool:
        if self.circuit_problems():
            return False
        if self.n_vertices % 2 and self.b:
            return False
        return all(len(self.boundary_walk(k)) % 2 == 0 for k in range(self.b))

    # ----------------------------------------------------------- conversions
    def with_ring(self, ring: Ring) -> "SurfaceGraph":
        return replace(
            self,
            ring=ring,
            edge_weights=tuple(ring.parse(str(w)) for w in self.edge_weights),
            vertex_weights=tuple(ring.parse(str(w)) for w in self.vertex_weights),
        )

    def with_weights(self, edge_weights=None, vertex_weights=None) -> "SurfaceGraph":
        parse = self.ring.parse
        return replace(
            self,
            edge_weights=tuple(map(parse, edge_weights)) if edge_weights is not None else self.edge_weights,
            vertex_weights=(
                tuple(map(parse, vertex_weights)) if vertex_weights is not None else self.vertex_weights
            ),
        )

    def with_holes(self, holes: Sequence[int]) -> "SurfaceGraph":
        return replace(self, holes=tuple(int(d) for d in holes))

    def to_document(self) -> dict:
        return {
            "vertices": [
                {"id": name, "weight": str(w)}
                for name, w in zip(self.vertex_names, self.vertex_weights)
            ],
            "darts": {
                self.vertex_names[v]: [self.dart_names[d] for d in rot]
                for v, rot in enumerate(self.rotations)
            },
            "edges": [
                {
                    "id": self.edge_names[e],
                    "darts": [self.dart_names[2 * e], self.dart_names[2 * e + 1]],
                    "weight": str(self.edge_weights[e]),
                }
                for e in range(self.n_edges)
            ],
            "boundary": [[self.dart_names[d] for d in self.boundary_walk(k)] for k in range(self.b)],
        }


def genus(g: SurfaceGraph) -> int:
    """Genus from Euler's formula on the closed-up surface."""
    chi = g.n_vertices - g.n_edges + len(g.faces)
    if chi % 2:
        raise InvalidGraphError("odd Euler characteristic: map is not orientable-consistent")
    out = (2 - chi) // 2
    if out < 0:
        raise InvalidGraphError("negative genus")
    return out


def faces(g: SurfaceGraph) -> List[Face]:
    return g.faces


# ---------------------------------------------------------------- surgery
def _copy_rotations(g: SurfaceGraph) -> List[List[int]]:
    return [list(r) for r in g.rotations]


def _insert_after(rot: List[int], after: int, new: int) -> None:
    rot.insert(rot.index(after) + 1, new)


def add_vertex_in_face(
    g: SurfaceGraph,
    face: int,
    corners: Sequence[int],
    edge_weights: Sequence[RingElement],
    vertex_weight: RingElement,
    name: Optional[str] = None,
    hole_updates: Optional[Dict[int, int]] = None,
) -> Tuple[SurfaceGraph, int, List[int]]:
    """Place a new vertex inside ``face`` joined to the given corners.

    ``corners`` are increasing positions in the face walk; corner ``t`` sits at
    the tail of walk dart ``t``. Returns ``(graph, new_vertex, new_center_darts)``.
    ``hole_updates`` maps boundary indices to replacement representative darts.
    """
    walk = g.face_walks[face]
    if list(corners) != sorted(set(corners)):
        raise ValueError("corners must be strictly increasing")
    rots = _copy_rotations(g)
    new_v = g.n_vertices
    e0 = g.n_edges
    center = []
    for i, t in enumerate(corners):
        e = e0 + i
        d_center, d_corner = 2 * e, 2 * e + 1
        _insert_after(rots[int(g.tail[walk[t]])], walk[t], d_corner)
        center.append(d_center)
    rots.append(center)
    return (
        _rebuild(g, rots, list(edge_weights), [vertex_weight], name, hole_updates),
        new_v,
        center,
    )


def add_chord(
    g: SurfaceGraph,
    face: int,
    corner_a: int,
    corner_b: int,
    weight: RingElement,
    hole_updates: Optional[Dict[int, int]] = None,
) -> Tuple[SurfaceGraph, int]:
    """Join two corners of ``face`` by a new edge drawn inside it."""
    walk = g.face_walks[face]
    va, vb = int(g.tail[walk[corner_a]]), int(g.tail[walk[corner_b]])
    if va == vb:
        raise ValueError("chord would be a loop")
    rots = _copy_rotations(g)
    e = g.n_edges
    _insert_after(rots[va], walk[corner_a], 2 * e)
    _insert_after(rots[vb], walk[corner_b], 2 * e + 1)
    return _rebuild(g, rots, [weight], [], None, hole_updates), e


def _rebuild(g, rots, new_edge_weights, new_vertex_weights, name, hole_updates):
    holes = list(g.holes)
    for k, d in (hole_updates or {}).items():
        holes[k] = d
    ne_old = g.n_edges
    n_new_e = len(new_edge_weights)
    vnames = list(g.vertex_names)
    for i in range(len(new_vertex_weights)):
        vnames.append(name if name and i == 0 else _fresh(vnames, "n"))
    enames = list(g.edge_names)
    dnames = list(g.dart_names)
    for i in range(n_new_e):
        enames.append(_fresh(enames, "e"))
        dnames.append(_fresh(dnames, "d"))
        dnames.append(_fresh(dnames, "d"))
    return SurfaceGraph(
        rotations=tuple(tuple(r) for r in rots),
        edge_weights=g.edge_weights + tuple(new_edge_weights),
        vertex_weights=g.vertex_weights + tuple(new_vertex_weights),
        holes=tuple(holes),
        ring=g.ring,
        vertex_names=tuple(vnames),
        edge_names=tuple(enames),
        dart_names=tuple(dnames),
    )


def _fresh(existing: List[str], prefix: str) -> str:
    taken = set(existing)
    i = len(existing)
    while f"{prefix}{i}" in taken:
        i += 1
    return f"{prefix}{i}"


# -------------------------------------------------------------- construction
def from_edges(
    n_vertices: int,
    edges: Sequence[Tuple[int, int]],
    rotations: Sequence[Sequence[int]],
    holes: Sequence[int] = (),
    edge_weights: Optional[Sequence] = None,
    vertex_weights: Optional[Sequence] = None,
    ring: Ring = RATIONAL,
    vertex_names: Optional[Sequence[str]] = None,
) -> SurfaceGraph:
    """Build from an edge list and rotations given as internal dart ids.

    Edge ``e = (u, v)`` has dart ``2e`` at ``u`` and ``2e + 1`` at ``v``.
    Weights default to 1.
    """
    ew = [ring.parse(w) for w in (edge_weights if edge_weights is not None else [1] * len(edges))]
    vw = [ring.parse(w) for w in (vertex_weights if vertex_weights is not None else [1] * n_vertices)]
    for v, rot in enumerate(rotations):
        for d in rot:
            e, end = d >> 1, d & 1
            if e >= len(edges) or edges[e][end] != v:
                raise InvalidGraphError(f"dart {d} listed at vertex {v} does not belong to it")
    return SurfaceGraph(
        rotations=tuple(tuple(r) for r in rotations),
        edge_weights=tuple(ew),
        vertex_weights=tuple(vw),
        holes=tuple(holes),
        ring=ring,
        vertex_names=tuple(vertex_names) if vertex_names else (),
    )


def from_coordinates(
    points: Sequence[Tuple[float, float]],
    edges: Sequence[Tuple[int, int]],
    **kwargs,
) -> SurfaceGraph:
    """Planar embedding with rotations sorted by angle (straight-line drawing)."""
    pts = np.asarray(points, dtype=float)
    darts_at: List[List[int]] = [[] for _ in range(len(pts))]
    for e, (u, v) in enumerate(edges):
        darts_at[u].append(2 * e)
        darts_at[v].append(2 * e + 1)

    def angle(d):
        e = d >> 1
        u, v = edges[e] if d % 2 == 0 else edges[e][::-1]
        dx, dy = pts[v] - pts[u]
        return float(np.arctan2(dy, dx))

    rotations = [sorted(ds, key=angle) for ds in darts_at]
    return from_edges(len(pts), edges, rotations, **kwargs)


def hole_dart(g: SurfaceGraph, cycle: Sequence[int]) -> int:
    """A dart whose left face is bounded by the oriented vertex cycle ``cycle``."""
    for d in range(g.n_darts):
        if int(g.tail[d]) == cycle[0] and g.head(d) == cycle[1 % len(cycle)]:
            walk = g.face_walks[int(g.face_of[d])]
            if [int(g.tail[x]) for x in walk] and len(walk) == len(cycle):
                i = walk.index(d)
                seq = [int(g.tail[x]) for x in walk[i:] + walk[:i]]
                if seq == list(cycle):
                    return d
    raise InvalidGraphError(f"no face traces the vertex cycle {list(cycle)}")


# ------------------------------------------------------------------ JSON I/O
def load(document, ring="rational") -> SurfaceGraph:
    """Parse a graph document (dict, JSON text, or path) into a SurfaceGraph."""
    if isinstance(ring, str):
        ring = get_ring(ring)
    if isinstance(document, (str, bytes)) and not str(document).lstrip().startswith("{"):
        with open(document, encoding="utf-8") as fh:
            document = json.load(fh)
    elif isinstance(document, (str, bytes)):
        document = json.loads(document)
    try:
        vertices = document["vertices"]
        dart_map = document["darts"]
        edges = document["edges"]
        boundary = document.get("boundary", [])
    except (KeyError, TypeError) as exc:
        raise InvalidGraphError(f"missing field: {exc}") from None

    vnames = [str(v["id"]) for v in vertices]
    if len(set(vnames)) != len(vnames):
        raise InvalidGraphError("duplicate vertex ids")
    vindex = {n: i for i, n in enumerate(vnames)}
    dart_index: Dict[str, int] = {}
    enames, dnames = [], []
    for e, edge in enumerate(edges):
        ds = [str(d) for d in edge["darts"]]
        if len(ds) != 2 or ds[0] == ds[1]:
            raise InvalidGraphError(f"edge {edge.get('id')} must have two distinct darts")
        for end, d in enumerate(ds):
            if d in dart_index:
                raise InvalidGraphError(f"dart {d} used by two edges")
            dart_index[d] = 2 * e + end
        enames.append(str(edge.get("id", e)))
        dnames.extend(ds)
    rotations: List[List[int]] = [[] for _ in vnames]
    listed = set()
    for vname, ds in dart_map.items():
        if str(vname) not in vindex:
            raise InvalidGraphError(f"unknown vertex {vname} in dart rotations")
        for d in ds:
            d = str(d)
            if d not in dart_index:
                raise InvalidGraphError(f"unknown dart {d}")
            if d in listed:
                raise InvalidGraphError(f"dart {d} appears in two rotations")
            listed.add(d)
            rotations[vindex[str(vname)]].append(dart_index[d])
    if len(listed) != len(dart_index):
        missing = sorted(set(dart_index) - listed)
        raise InvalidGraphError(f"darts without a vertex: {missing}")
    try:
        ew = tuple(ring.parse(edge.get("weight", "1")) for edge in edges)
        vw = tuple(ring.parse(v.get("weight", "1")) for v in vertices)
    except ValueError as exc:
        raise InvalidGraphError(str(exc)) from None

    g = SurfaceGraph(
        rotations=tuple(tuple(r) for r in rotations),
        edge_weights=ew,
        vertex_weights=vw,
        holes=(),
        ring=ring,
        vertex_names=tuple(vnames),
        edge_names=tuple(enames),
        dart_names=tuple(dnames),
    )
    holes = []
    for k, walk in enumerate(boundary):
        ids = [dart_index.get(str(d)) for d in walk]
        if not ids or None in ids:
            raise InvalidGraphError(f"boundary {k} references unknown darts")
        holes.append(_match_hole(g, ids, k))
    return replace(g, holes=tuple(holes))


def _match_hole(g: SurfaceGraph, ids: List[int], k: int) -> int:
    def is_face_cycle(seq):
        walk = g.face_walks[int(g.face_of[seq[0]])]
        if len(walk) != len(seq):
            return False
        i = walk.index(seq[0])
        return list(walk[i:] + walk[:i]) == list(seq)

    if is_face_cycle(ids):
        return ids[0]
    # also accept the walk along the induced boundary orientation
    rev = [d ^ 1 for d in reversed(ids)]
    if is_face_cycle(rev):
        return rev[0]
    raise InvalidGraphError(f"boundary {k} is not the walk of a face")


def save(g: SurfaceGraph) -> str:
    return json.dumps(g.to_document(), indent=2)
