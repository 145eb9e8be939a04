"""Auxiliary closed-surface graphs G_beta used to check the main formula.

Each boundary disk is filled with a shuriken: an inner ring p_1..p_N, where
p_m sits opposite the boundary edge from b_m to b_{m+1} and is joined to both
of its ends (the blades). When beta_k = 1 a centre vertex is joined to every
p_m. Dimer coverings of G_beta restrict to monomer-dimer coverings of G in
the class beta: a blade at b_j stands in for a monomer at b_j.

Local labels on circuit k are 1..N for the boundary (in hole-walk order),
N + m for p_m and 2N + 1 for the centre.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .kasteleyn import Orientation, is_kasteleyn, orientation_class
from .md_pfaffian import adjacency_matrix, labelling, modified_matrix
from .oracle import oracle_Z_beta, oracle_Z_dimer
from .pfaffian import pfaffian
from .rings import RingElement
from .surface import SurfaceGraph
from .topology import homology


class ShurikenError(RuntimeError):
    pass


@dataclass(frozen=True)
class Shuriken:
    circuit: int
    beta: int
    boundary: Tuple[int, ...]  # global ids of b_1..b_N
    inner: Tuple[int, ...]  # global ids of p_1..p_N
    centre: Optional[int]
    edges: Dict[Tuple[int, int], int]  # (local tail, local head) per new edge -> edge id

    @property
    def size(self) -> int:
        return len(self.boundary)

    def local_ids(self) -> List[int]:
        return list(self.boundary) + list(self.inner) + ([self.centre] if self.centre is not None else [])


@dataclass(frozen=True)
class GBeta:
    graph: SurfaceGraph
    base: SurfaceGraph
    beta: Tuple[int, ...]
    shurikens: Tuple[Shuriken, ...]
    order: Tuple[int, ...]  # vertex order used for the Pfaffian

    @property
    def multiplicity(self) -> int:
        out = 1
        for s in self.shurikens:
            out *= 2 if s.beta == 0 else s.size
        return out

    @property
    def sign(self) -> int:
        return -1 if sum(s.size // 2 for s in self.shurikens) % 2 else 1


def build_G_beta(g: SurfaceGraph, beta: Sequence[int]) -> GBeta:
    """Fill every hole of the normalized graph ``g`` with a shuriken."""
    beta = tuple(int(x) for x in beta)
    if len(beta) != g.b or sum(beta) % 2:
        raise ValueError(f"inadmissible beta {beta}")
    if not g.is_normalized():
        raise ValueError("build_G_beta needs a normalized graph")
    rots = [list(r) for r in g.rotations]
    ew = list(g.edge_weights)
    vw = list(g.vertex_weights)
    one = g.ring.one
    shurikens = []
    order: List[int] = []

    def new_vertex() -> int:
        rots.append([])
        vw.append(one)
        return len(rots) - 1

    def new_edge(w) -> int:
        ew.append(w)
        return len(ew) - 1

    for k, bk in enumerate(beta):
        walk = g.boundary_walk(k)
        n = len(walk)
        bs = [int(g.tail[d]) for d in walk]
        ps = [new_vertex() for _ in range(n)]
        c = new_vertex() if bk else None
        # local edge ends: A_m = (b_m, p_m), B_m = (b_{m+1}, p_m), R_m = (p_m, p_{m+1}), C_m = (c, p_m)
        A = [new_edge(g.vertex_weights[bs[m]]) for m in range(n)]
        B = [new_edge(g.vertex_weights[bs[(m + 1) % n]]) for m in range(n)]
        R = [new_edge(one) for _ in range(n)]
        C = [new_edge(one) for _ in range(n)] if bk else []
        for m in range(n):
            at_b = rots[bs[m]]
            i = at_b.index(walk[m])
            at_b[i + 1:i + 1] = [2 * A[m], 2 * B[m - 1]]
            rot_p = [2 * R[m - 1] + 1, 2 * A[m] + 1, 2 * B[m] + 1, 2 * R[m]]
            if bk:
                rot_p.append(2 * C[m] + 1)
            rots[ps[m]] = rot_p
        if bk:
            rots[c] = [2 * C[m] for m in range(n)]
        local = {}
        for m in range(n):
            j, nxt = m + 1, (m + 1) % n + 1
            local[(j, n + j, "A")] = A[m]
            local[(nxt, n + j, "B")] = B[m]
            local[(n + j, n + (m + 1) % n + 1, "R")] = R[m]
            if bk:
                local[(2 * n + 1, n + j, "C")] = C[m]
        shurikens.append(Shuriken(k, bk, tuple(bs), tuple(ps), c, local))
        order.extend(bs + ps + ([c] if bk else []))
    on = set(order)
    order.extend(v for v in range(g.n_vertices) if v not in on)
    graph = SurfaceGraph(
        rotations=tuple(tuple(r) for r in rots),
        edge_weights=tuple(ew),
        vertex_weights=tuple(vw),
        holes=(),
        ring=g.ring,
    )
    return GBeta(graph, g, beta, tuple(shurikens), tuple(order))


def _blade_out(j: int) -> bool:
    return j % 2 == 0


def extend_orientation(gb: GBeta, k: Orientation) -> Orientation:
    """Extend an orientation of the base graph over every shuriken.

    Blades leave even boundary labels and enter odd ones; ring edges run from
    the larger inner label to the smaller. For beta_k = 0 the blade between 1
    and 2N is reversed; for beta_k = 1 the ring edge N+1 -> 2N is the
    exception instead, and the centre points to odd inner labels.
    """
    g = gb.graph
    out = np.zeros(g.n_edges, dtype=np.uint8)
    out[: len(k)] = k
    for s in gb.shurikens:
        n = s.size
        ids = {i + 1: v for i, v in enumerate(s.local_ids())}
        for (a, b, kind), e in s.edges.items():
            if kind in ("A", "B"):
                j, p = a, b
                tail, head = (j, p) if _blade_out(j) else (p, j)
                if s.beta == 0 and {j, p} == {1, 2 * n}:
                    tail, head = head, tail
            elif kind == "R":
                tail, head = (a, b) if a > b else (b, a)
                if s.beta == 1 and (a, b) == (2 * n, n + 1):
                    tail, head = n + 1, 2 * n
            else:
                tail, head = (a, b) if b % 2 else (b, a)
            out[e] = 0 if int(g.tail[2 * e]) == ids[tail] else 1
            if int(g.tail[2 * e + out[e]]) != ids[tail]:
                raise ShurikenError("edge endpoints do not match the local labels")
    if not is_kasteleyn(g, out):
        raise ShurikenError("extended orientation is not Kasteleyn on G_beta")
    return out


def verify_bijection_lemma(g: SurfaceGraph, beta: Sequence[int]) -> bool:
    """Z_D(G_beta) equals the shuriken multiplicity times Z^beta_MD(g)."""
    gb = build_G_beta(g, beta)
    lhs = oracle_Z_dimer(gb.graph, max_vertices=gb.graph.n_vertices)
    rhs = oracle_Z_beta(g, beta) * gb.multiplicity
    return lhs == rhs


def matrix_proposition_sides(g: SurfaceGraph, beta: Sequence[int], k: Optional[Orientation] = None):
    """Both sides of Pf(A(G_beta)) = sign * multiplicity * Pf(M_beta(g))."""
    beta = tuple(int(x) for x in beta)
    if k is None:
        k = orientation_class(g, beta, homology(g))
    gb = build_G_beta(g, beta)
    kbar = extend_orientation(gb, k)
    lhs: RingElement = pfaffian(adjacency_matrix(gb.graph, kbar, gb.order))
    m = modified_matrix(g, k, beta, labelling(g, beta))
    rhs = pfaffian(m.matrix) * (gb.sign * gb.multiplicity)
    return lhs, rhs


def verify_matrix_proposition(g: SurfaceGraph, beta: Sequence[int], k: Optional[Orientation] = None) -> bool:
    lhs, rhs = matrix_proposition_sides(g, beta, k)
    return lhs == rhs
