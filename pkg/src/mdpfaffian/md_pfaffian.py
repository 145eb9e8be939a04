"""Pfaffian formula for the boundary monomer-dimer partition function."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .kasteleyn import (
    Orientation,
    build_closed_kasteleyn,
    fix_gamma_parities,
    flip_epsilon,
    has_boundary_pattern,
    orientation_class,
)
from .pfaffian import pfaffian
from .preprocess import normalize
from .rings import Poly, Ring, RingElement, exact_div
from .surface import SurfaceGraph
from .topology import HomologyData, close_surface, homology


class InvariantViolation(RuntimeError):
    """A proof-level identity failed to hold (indicates a bug upstream)."""


# ----------------------------------------------------------------- labelling
@dataclass(frozen=True)
class Labelling:
    """Matrix index order: per circuit its vertices (then its virtual vertex
    when ``beta_k = 1``), followed by the interior vertices."""

    order: Tuple[Hashable, ...]
    beta: Tuple[int, ...]
    circuit: Dict[Hashable, int] = field(compare=False, hash=False)

    def index(self) -> Dict[Hashable, int]:
        return {key: i for i, key in enumerate(self.order)}


def virtual(k: int) -> Tuple[str, int]:
    return ("virtual", k)


def labelling(g: SurfaceGraph, beta: Sequence[int]) -> Labelling:
    beta = tuple(int(x) for x in beta)
    if len(beta) != g.b:
        raise ValueError("labelling: beta length does not match the boundary count")
    if sum(beta) % 2:
        raise ValueError("labelling: beta must have an even number of ones")
    order: List[Hashable] = []
    circuit: Dict[Hashable, int] = {}
    for k in range(g.b):
        for v in g.boundary_vertices(k):
            order.append(v)
            circuit[v] = k
        if beta[k]:
            order.append(virtual(k))
            circuit[virtual(k)] = k
    on_boundary = set(circuit)
    order.extend(v for v in range(g.n_vertices) if v not in on_boundary)
    return Labelling(tuple(order), beta, circuit)


# ------------------------------------------------------------------ matrices
@dataclass(frozen=True)
class ModifiedMatrix:
    matrix: List[List[RingElement]]
    edge_part: List[List[RingElement]]
    monomer_part: List[List[RingElement]]
    labels: Labelling


def _zeros(n, zero):
    return [[zero for _ in range(n)] for _ in range(n)]


def adjacency_matrix(g: SurfaceGraph, k: Orientation, order: Optional[Sequence[Hashable]] = None):
    """Skew adjacency matrix; parallel edges add up."""
    order = list(order) if order is not None else list(range(g.n_vertices))
    idx = {key: i for i, key in enumerate(order)}
    a = _zeros(len(order), g.ring.zero)
    for e in range(g.n_edges):
        t = int(g.tail[2 * e + int(k[e])])
        h = int(g.tail[2 * e + 1 - int(k[e])])
        i, j = idx[t], idx[h]
        w = g.edge_weights[e]
        a[i][j] = a[i][j] + w
        a[j][i] = a[j][i] - w
    return a


def modified_matrix(
    g: SurfaceGraph,
    k: Orientation,
    beta: Sequence[int],
    labels: Optional[Labelling] = None,
    check_pattern: bool = True,
) -> ModifiedMatrix:
    """Adjacency matrix plus the signed monomer pair terms within each circuit."""
    labels = labels or labelling(g, beta)
    if tuple(beta) != labels.beta:
        raise ValueError("labelling was built for a different beta")
    if check_pattern and not has_boundary_pattern(g, k, beta):
        raise ValueError("orientation does not have the boundary pattern of beta")
    order = labels.order
    n = len(order)
    edge_part = adjacency_matrix(g, k, order)
    mono = _zeros(n, g.ring.zero)

    def weight(key):
        return g.vertex_weights[key] if isinstance(key, int) else g.ring.one

    for i in range(n):
        ci = labels.circuit.get(order[i])
        if ci is None:
            continue
        for j in range(i + 1, n):
            if labels.circuit.get(order[j]) != ci:
                continue
            term = weight(order[i]) * weight(order[j])
            if (i + j) % 2:
                term = -term
            mono[i][j] = term
            mono[j][i] = -term
    total = [[edge_part[i][j] + mono[i][j] for j in range(n)] for i in range(n)]
    return ModifiedMatrix(total, edge_part, mono, labels)


# ------------------------------------------------------------------ formula
def epsilon_sign(eps: Sequence[int], intersection) -> int:
    s = 0
    for i in range(len(eps)):
        for j in range(i + 1, len(eps)):
            s += eps[i] * eps[j] * int(intersection[i, j])
    return -1 if s % 2 else 1


@dataclass
class BetaTerm:
    beta: Tuple[int, ...]
    pfaffians: List[Tuple[Tuple[int, ...], int, RingElement]]
    inner_sum: RingElement
    value: RingElement


@dataclass
class PartitionResult:
    total: RingElement
    terms: List[BetaTerm]
    genus: int
    n_boundary: int
    graph: SurfaceGraph

    @property
    def n_pfaffians(self) -> int:
        return sum(len(t.pfaffians) for t in self.terms)

    def to_dict(self) -> dict:
        return {
            "total": str(self.total),
            "genus": self.genus,
            "boundary_components": self.n_boundary,
            "pfaffian_count": self.n_pfaffians,
            "terms": [
                {
                    "beta": list(t.beta),
                    "value": str(t.value),
                    "inner_sum": str(t.inner_sum),
                    "pfaffians": [
                        {"epsilon": list(eps), "sign": sign, "pfaffian": str(pf)}
                        for eps, sign, pf in t.pfaffians
                    ],
                }
                for t in self.terms
            ],
        }


def _normalize_sign(ring: Ring, inner: RingElement, g_genus: int) -> RingElement:
    value = exact_div(ring.abs(inner), 2 ** g_genus) if g_genus else ring.abs(inner)
    if not ring.is_nonnegative(value):
        raise InvariantViolation(f"partition function has negative coefficients: {value}")
    return value


def _check_divisible(inner: RingElement, g_genus: int) -> None:
    d = 2 ** g_genus
    try:
        exact_div(inner, d)
    except ArithmeticError as exc:
        raise InvariantViolation(f"inner sum {inner} is not divisible by 2^g = {d}") from exc


def _evaluate(matrices, jobs: int):
    if jobs > 1 and len(matrices) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(pfaffian, matrices))
    return [pfaffian(m) for m in matrices]


def admissible_betas(b: int) -> List[Tuple[int, ...]]:
    return [beta for beta in itertools.product((0, 1), repeat=b) if sum(beta) % 2 == 0]


def beta_matrices(g: SurfaceGraph, beta: Sequence[int], hom: HomologyData):
    """Yield ``(eps, sign, modified matrix)`` over all epsilon for one beta."""
    k_beta = orientation_class(g, beta, hom)
    labels = labelling(g, beta)
    for eps in itertools.product((0, 1), repeat=len(hom.alphas)):
        k_eps = flip_epsilon(k_beta, eps, hom.alphas)
        sign = epsilon_sign(eps, hom.intersection)
        yield eps, sign, modified_matrix(g, k_eps, beta, labels)


def _combine(g: SurfaceGraph, beta, items, pfs, genus: int) -> BetaTerm:
    inner: RingElement = g.ring.zero
    records = []
    for (eps, sign, _), pf in zip(items, pfs):
        inner = inner + pf if sign > 0 else inner - pf
        records.append((eps, sign, pf))
    _check_divisible(inner, genus)
    value = _normalize_sign(g.ring, inner, genus)
    return BetaTerm(tuple(beta), records, inner, value)


def partial_Z(g: SurfaceGraph, beta: Sequence[int], hom: Optional[HomologyData] = None, jobs: int = 1) -> BetaTerm:
    """Weighted count of coverings whose monomer parity on circuit k is beta_k.

    ``g`` must already be normalized.
    """
    hom = hom or homology(g)
    items = list(beta_matrices(g, beta, hom))
    pfs = _evaluate([m.matrix for _, _, m in items], jobs)
    return _combine(g, beta, items, pfs, hom.genus)


def boundary_md_partition(g: SurfaceGraph, jobs: int = 1, preprocess: bool = True) -> PartitionResult:
    """Boundary monomer-dimer partition function via Pfaffians.

    The graph is normalized first (zero-weight chords, forced pendant edges)
    unless ``preprocess`` is False.
    """
    if preprocess:
        g = normalize(g)
    elif not g.is_normalized():
        raise ValueError("graph is not normalized: " + "; ".join(g.circuit_problems() or ["odd sizes"]))
    if g.n_vertices % 2:
        # only possible without boundary: no perfect matching exists
        return PartitionResult(g.ring.zero, [], g.genus, g.b, g)
    hom = homology(g)
    betas = admissible_betas(g.b)
    batches = [list(beta_matrices(g, beta, hom)) for beta in betas]
    flat = [m.matrix for batch in batches for _, _, m in batch]
    pfs = _evaluate(flat, jobs)
    terms = []
    pos = 0
    for beta, batch in zip(betas, batches):
        terms.append(_combine(g, beta, batch, pfs[pos:pos + len(batch)], hom.genus))
        pos += len(batch)
    total: RingElement = g.ring.zero
    for t in terms:
        total = total + t.value
    return PartitionResult(total, terms, hom.genus, g.b, g)


def dimer_partition(g: SurfaceGraph, jobs: int = 1) -> PartitionResult:
    """Dimer partition function of the graph on the closed-up surface."""
    closed = close_surface(g)
    if closed.n_vertices % 2:
        return PartitionResult(closed.ring.zero, [], closed.genus, 0, closed)
    hom = homology(closed)
    k = fix_gamma_parities(build_closed_kasteleyn(closed), hom.gammas, hom.duals)
    items = []
    for eps in itertools.product((0, 1), repeat=len(hom.alphas)):
        k_eps = flip_epsilon(k, eps, hom.alphas)
        items.append((eps, epsilon_sign(eps, hom.intersection), adjacency_matrix(closed, k_eps)))
    pfs = _evaluate([m for _, _, m in items], jobs)
    term = _combine(closed, (), items, pfs, hom.genus)
    return PartitionResult(term.value, [term], hom.genus, 0, closed)
