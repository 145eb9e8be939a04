"""Normalizations that leave the boundary partition function unchanged.

After :func:`normalize` every boundary face is a circuit through distinct
vertices, circuits are pairwise disjoint, every circuit has an even number of
vertices and the graph has an even number of vertices.
"""

from __future__ import annotations

from .surface import InvalidGraphError, SurfaceGraph, add_chord, add_vertex_in_face


def _hole_walk(g: SurfaceGraph, k: int):
    return g.face_walks[g.hole_faces[k]]


def _shortcut(g: SurfaceGraph, k: int):
    """One zero-weight chord that shortens hole ``k``, or None if it is a circuit.

    The chord joins corners ``a`` and ``c`` of the hole and cuts off the
    stretch between them. It is only allowed when every vertex strictly inside
    that stretch is visited again by the rest of the walk, so the hole keeps
    all of its vertices.
    """
    walk = _hole_walk(g, k)
    n = len(walk)
    verts = [int(g.tail[d]) for d in walk]
    if n == 2 and walk[0] >> 1 == walk[1] >> 1:
        return add_chord(g, g.hole_faces[k], 0, 1, g.ring.zero, {k: walk[1]})[0]
    if len(set(verts)) == n:
        return None
    for span in range(2, n):
        for a in range(n):
            c = (a + span) % n
            if verts[a] == verts[c]:
                continue
            inside = {verts[(a + t) % n] for t in range(1, span)}
            rest = {verts[(c + t) % n] for t in range(n - span + 1)}
            if inside <= rest:
                return add_chord(g, g.hole_faces[k], a, c, g.ring.zero, {k: walk[c]})[0]
    raise InvalidGraphError(f"boundary {k} cannot be turned into a circuit")


def normalize_boundary_circuits(g: SurfaceGraph) -> SurfaceGraph:
    """Cut repeated vertices out of every boundary walk with 0-weight chords."""
    for k in range(g.b):
        while True:
            g2 = _shortcut(g, k)
            if g2 is None:
                break
            g = g2
    problems = g.circuit_problems()
    if problems:
        raise InvalidGraphError("; ".join(problems))
    return g


def _corner(g: SurfaceGraph, k: int):
    """Position in the raw hole walk of the dart leaving the lowest vertex."""
    walk = _hole_walk(g, k)
    return walk.index(g.boundary_walk(k)[0]), walk


def _add_boundary_vertex(g: SurfaceGraph, k: int, weight):
    """New vertex inserted into circuit ``k`` with two 0-weight edges."""
    t, walk = _corner(g, k)
    n = len(walk)
    corners = sorted([t, (t + 1) % n])
    return add_vertex_in_face(
        g, g.hole_faces[k], corners, [g.ring.zero, g.ring.zero], weight,
        hole_updates={k: walk[(t + 1) % n]},
    )


def _pendant_pair(g: SurfaceGraph, k: int) -> SurfaceGraph:
    """Add a boundary vertex p on circuit ``k`` plus an interior pendant q with
    a weight-1 edge p-q; every covering must use that edge."""
    t, walk = _corner(g, k)
    d_t = walk[t]
    g, p, _ = _add_boundary_vertex(g, k, g.ring.zero)
    face = int(g.face_of[d_t])
    fwalk = g.face_walks[face]
    pos = next(i for i, d in enumerate(fwalk) if int(g.tail[d]) == p)
    g, _, _ = add_vertex_in_face(g, face, [pos], [g.ring.one], g.ring.one)
    return g


def ensure_even_boundary(g: SurfaceGraph) -> SurfaceGraph:
    for k in range(g.b):
        if len(_hole_walk(g, k)) % 2:
            g = _pendant_pair(g, k)
    return g


def ensure_even_vertex_count(g: SurfaceGraph) -> SurfaceGraph:
    """Fix an odd vertex count on circuit 0: a weight-1 vertex joined by
    0-weight edges (always a monomer) plus a pendant pair to restore parity."""
    if g.n_vertices % 2 == 0 or g.b == 0:
        return g
    g, _, _ = _add_boundary_vertex(g, 0, g.ring.one)
    return _pendant_pair(g, 0)


def normalize(g: SurfaceGraph) -> SurfaceGraph:
    g = normalize_boundary_circuits(g)
    g = ensure_even_boundary(g)
    return ensure_even_vertex_count(g)
