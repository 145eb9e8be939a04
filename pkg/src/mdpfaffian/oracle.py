"""Brute-force enumeration of monomer-dimer and dimer coverings.

Nothing here touches orientations or Pfaffians: coverings are produced by
branching on the smallest uncovered vertex, which either takes an edge to an
uncovered neighbour or, if it lies on the boundary, becomes a monomer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .rings import RingElement, to_number
from .surface import SurfaceGraph

DEFAULT_MAX_VERTICES = 24


class OracleSizeError(ValueError):
    """The instance is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class Covering:
    dimers: Tuple[int, ...]
    monomers: Tuple[int, ...]

    def weight(self, g: SurfaceGraph) -> RingElement:
        w = g.ring.one
        for e in self.dimers:
            w = w * g.edge_weights[e]
        for v in self.monomers:
            w = w * g.vertex_weights[v]
        return w


def _guard(g: SurfaceGraph, max_vertices: Optional[int]) -> None:
    limit = DEFAULT_MAX_VERTICES if max_vertices is None else max_vertices
    if g.n_vertices > limit:
        raise OracleSizeError(f"{g.n_vertices} vertices exceeds the oracle limit of {limit}")


def boundary_sets(g: SurfaceGraph) -> List[frozenset]:
    """Vertex set of every hole, read straight off the face walks."""
    return [frozenset(int(g.tail[d]) for d in g.face_walks[f]) for f in g.hole_faces]


def _incidence(g: SurfaceGraph) -> List[List[Tuple[int, int]]]:
    inc: List[List[Tuple[int, int]]] = [[] for _ in range(g.n_vertices)]
    for e in range(g.n_edges):
        u, v = g.endpoints(e)
        inc[u].append((v, e))
        inc[v].append((u, e))
    return inc


def _walk(n: int, inc, allowed_monomers: frozenset) -> Iterator[Covering]:
    covered = [False] * n
    dimers: List[int] = []
    monomers: List[int] = []

    def rec(start: int):
        v = start
        while v < n and covered[v]:
            v += 1
        if v == n:
            yield Covering(tuple(dimers), tuple(monomers))
            return
        covered[v] = True
        if v in allowed_monomers:
            monomers.append(v)
            yield from rec(v + 1)
            monomers.pop()
        for u, e in inc[v]:
            if not covered[u]:
                covered[u] = True
                dimers.append(e)
                yield from rec(v + 1)
                dimers.pop()
                covered[u] = False
        covered[v] = False

    yield from rec(0)


def enumerate_md(g: SurfaceGraph, max_vertices: Optional[int] = None) -> Iterator[Covering]:
    """Every boundary monomer-dimer covering, each exactly once."""
    _guard(g, max_vertices)
    allowed = frozenset().union(*boundary_sets(g)) if g.b else frozenset()
    return _walk(g.n_vertices, _incidence(g), allowed)


def enumerate_dimers(g: SurfaceGraph, max_vertices: Optional[int] = None) -> Iterator[Covering]:
    _guard(g, max_vertices)
    return _walk(g.n_vertices, _incidence(g), frozenset())


def monomer_parity(g: SurfaceGraph, cov: Covering) -> Tuple[int, ...]:
    return tuple(len(s.intersection(cov.monomers)) % 2 for s in boundary_sets(g))


def _sum(g: SurfaceGraph, coverings) -> RingElement:
    total = g.ring.zero
    for cov in coverings:
        total = total + cov.weight(g)
    return total


def _by_parity(g: SurfaceGraph, monomers: bool) -> Dict[int, RingElement]:
    """Memoized version of the same branching, keyed by covered-vertex mask.

    Returns weighted sums indexed by the bitmask of boundaries carrying an odd
    number of monomers.
    """
    n = g.n_vertices
    inc = _incidence(g)
    owner = {}
    if monomers:
        for k, s in enumerate(boundary_sets(g)):
            for v in s:
                owner.setdefault(v, k)
    full = (1 << n) - 1
    memo: Dict[int, Dict[int, RingElement]] = {full: {0: g.ring.one}}

    def rec(mask: int) -> Dict[int, RingElement]:
        got = memo.get(mask)
        if got is not None:
            return got
        v = (~mask & (mask + 1)).bit_length() - 1
        m2 = mask | (1 << v)
        out: Dict[int, RingElement] = {}
        if v in owner:
            y, flip = g.vertex_weights[v], 1 << owner[v]
            for par, val in rec(m2).items():
                key = par ^ flip
                out[key] = out.get(key, g.ring.zero) + y * val
        for u, e in inc[v]:
            if not (m2 >> u) & 1:
                x = g.edge_weights[e]
                for par, val in rec(m2 | (1 << u)).items():
                    out[par] = out.get(par, g.ring.zero) + x * val
        memo[mask] = out
        return out

    return rec(0)


def oracle_Z_md(g: SurfaceGraph, max_vertices: Optional[int] = None) -> RingElement:
    _guard(g, max_vertices)
    total = g.ring.zero
    for val in _by_parity(g, True).values():
        total = total + val
    return total


def oracle_Z_by_parity(g: SurfaceGraph, max_vertices: Optional[int] = None) -> Dict[Tuple[int, ...], RingElement]:
    """Weighted sums split by the monomer parity on each boundary."""
    _guard(g, max_vertices)
    return {
        tuple((par >> k) & 1 for k in range(g.b)): val
        for par, val in sorted(_by_parity(g, True).items())
        if val
    }


def oracle_Z_beta(g: SurfaceGraph, beta: Sequence[int], max_vertices: Optional[int] = None) -> RingElement:
    beta = tuple(int(x) for x in beta)
    if len(beta) != g.b:
        raise ValueError(f"beta has {len(beta)} entries, graph has {g.b} boundary components")
    return oracle_Z_by_parity(g, max_vertices).get(beta, g.ring.zero)


def oracle_Z_dimer(g: SurfaceGraph, max_vertices: Optional[int] = None) -> RingElement:
    _guard(g, max_vertices)
    return _by_parity(g, False).get(0, g.ring.zero)


def count_md(g: SurfaceGraph, max_vertices: Optional[int] = None) -> int:
    """Number of boundary MD coverings, ignoring weights."""
    return sum(1 for _ in enumerate_md(g, max_vertices))


def integer_arrays(g: SurfaceGraph, monomers: bool = True):
    """Edge and vertex weights as int64 arrays for the compiled kernel.

    Raises ValueError unless every weight is an integer.
    """
    def as_int(x):
        n = to_number(x)
        if Fraction(n).denominator != 1:
            raise ValueError(f"weight {x} is not an integer")
        return int(n)

    us = np.array([g.endpoints(e)[0] for e in range(g.n_edges)], dtype=np.int64)
    vs = np.array([g.endpoints(e)[1] for e in range(g.n_edges)], dtype=np.int64)
    ws = np.array([as_int(w) for w in g.edge_weights], dtype=np.int64)
    ys = np.zeros(g.n_vertices, dtype=np.int64)
    if monomers and g.b:
        for v in frozenset().union(*boundary_sets(g)):
            ys[v] = as_int(g.vertex_weights[v])
    return us, vs, ws, ys


def fast_Z_md(g: SurfaceGraph, max_vertices: int = 22) -> int:
    """Integer-weight Z_MD by subset dynamic programming (int64 arithmetic)."""
    _guard(g, max_vertices)
    return int(_kernels.md_sum(g.n_vertices, *integer_arrays(g)))


def fast_Z_dimer(g: SurfaceGraph, max_vertices: int = 22) -> int:
    _guard(g, max_vertices)
    return int(_kernels.md_sum(g.n_vertices, *integer_arrays(g, monomers=False)))
