import pytest

from mdpfaffian.generators import cycle_disk, path_disk, random_instance, single_edge_disk, wheel_disk
from mdpfaffian.oracle import oracle_Z_md
from mdpfaffian.preprocess import (
    ensure_even_boundary,
    ensure_even_vertex_count,
    normalize,
    normalize_boundary_circuits,
)
from mdpfaffian.rings import POLYNOMIAL
from mdpfaffian.surface import InvalidGraphError, from_edges


def test_single_edge_gets_parallel_chord():
    g = single_edge_disk(POLYNOMIAL, symbolic=True)
    h = normalize_boundary_circuits(g)
    assert h.n_edges == 2 and h.edge_weights[1] == 0
    assert len(h.boundary_walk(0)) == 2 and not h.circuit_problems()
    assert oracle_Z_md(h) == oracle_Z_md(g)


def test_cut_vertex_needs_one_chord():
    # two triangles sharing vertex 0
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
    g = from_edges(5, edges, [[0, 5, 6, 11], [1, 2], [3, 4], [7, 8], [9, 10]])
    outer = max(range(len(g.faces)), key=lambda f: len(g.face_walks[f]))
    g = g.with_holes((g.face_walks[outer][0],))
    assert len(g.boundary_walk(0)) == 6
    h = normalize_boundary_circuits(g)
    assert h.n_edges == g.n_edges + 1
    assert not h.circuit_problems()
    assert oracle_Z_md(h) == oracle_Z_md(g)


def test_circuits_unchanged(annulus):
    assert normalize_boundary_circuits(annulus) is annulus
    assert ensure_even_boundary(annulus) is annulus
    assert ensure_even_vertex_count(annulus) is annulus


def test_triangle_becomes_even():
    g = ensure_even_boundary(cycle_disk(3))
    assert len(g.boundary_walk(0)) == 4
    assert oracle_Z_md(g) == oracle_Z_md(cycle_disk(3))


def test_five_cycle():
    g = cycle_disk(5, POLYNOMIAL, symbolic=True)
    h = ensure_even_boundary(g)
    assert len(h.boundary_walk(0)) % 2 == 0
    assert oracle_Z_md(h) == oracle_Z_md(g)


def test_even_vertex_count():
    w = wheel_disk(5)
    assert w.n_vertices == 6
    g = normalize(w)
    assert g.n_vertices % 2 == 0
    p = path_disk(3, POLYNOMIAL)
    h = normalize(p)
    assert h.is_normalized()
    assert oracle_Z_md(h) == oracle_Z_md(p)


@pytest.mark.parametrize("family", ["disk", "annulus", "pants", "torus1"])
def test_normalize_preserves_partition_function(family):
    for seed in range(20):
        g = random_instance(family, seed)
        h = normalize(g)
        assert h.is_normalized()
        assert normalize(h) is h or normalize(h).rotations == h.rotations
        assert oracle_Z_md(h) == oracle_Z_md(g)


def test_shared_boundary_vertex_rejected():
    # two triangular holes meeting at vertex 0 (a bowtie with both triangles open)
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
    g = from_edges(5, edges, [[0, 5, 6, 11], [1, 2], [3, 4], [7, 8], [9, 10]])
    small = [f for f in range(len(g.faces)) if len(g.face_walks[f]) == 3]
    g = g.with_holes(tuple(g.face_walks[f][0] for f in small))
    with pytest.raises(InvalidGraphError):
        normalize(g)
