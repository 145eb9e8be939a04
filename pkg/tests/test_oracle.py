import pytest

from mdpfaffian import _kernels
from mdpfaffian.generators import cycle_disk, random_instance, single_edge_disk, torus_grid
from mdpfaffian.oracle import (
    OracleSizeError,
    count_md,
    enumerate_dimers,
    enumerate_md,
    fast_Z_dimer,
    fast_Z_md,
    integer_arrays,
    oracle_Z_beta,
    oracle_Z_by_parity,
    oracle_Z_dimer,
    oracle_Z_md,
)
from mdpfaffian.rings import POLYNOMIAL, parse_poly
from mdpfaffian.surface import from_edges


def test_single_edge():
    covs = list(enumerate_md(single_edge_disk()))
    assert sorted((c.dimers, c.monomers) for c in covs) == [((), (0, 1)), ((0,), ())]


def test_four_cycle():
    assert count_md(cycle_disk(4)) == 7
    assert sum(1 for _ in enumerate_dimers(cycle_disk(4))) == 2


def test_complete_graph_k4():
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    rots = [[0, 2, 4], [1, 6, 8], [3, 7, 10], [5, 9, 11]]
    g = from_edges(4, edges, rots)
    assert oracle_Z_dimer(g) == 3


def test_annulus(annulus):
    assert oracle_Z_md(annulus) == parse_poly("5+2*a*d+2*b*c+a*b*c*d+a*b+c*d")
    assert oracle_Z_beta(annulus, (0, 0)) == parse_poly("5+2*a*d+2*b*c+a*b*c*d")
    assert oracle_Z_beta(annulus, (1, 1)) == parse_poly("a*b+c*d")
    assert oracle_Z_beta(annulus, (1, 0)) == 0


def test_every_covering_once():
    g = random_instance("annulus", 2)
    seen = set()
    for cov in enumerate_md(g):
        key = (frozenset(cov.dimers), frozenset(cov.monomers))
        assert key not in seen
        seen.add(key)
        covered = sorted(list(cov.monomers) + [v for e in cov.dimers for v in g.endpoints(e)])
        assert covered == list(range(g.n_vertices))


@pytest.mark.parametrize("family", ["disk", "annulus", "pants", "torus1"])
def test_memoized_sums_match_enumeration(family):
    for seed in range(10):
        g = random_instance(family, seed)
        total = sum((c.weight(g) for c in enumerate_md(g)), 0)
        assert oracle_Z_md(g) == total
        assert sum(oracle_Z_by_parity(g).values(), 0) == total
        assert oracle_Z_dimer(g) == sum((c.weight(g) for c in enumerate_dimers(g)), 0)


def test_kernel_matches_enumeration():
    for seed in range(10):
        g = random_instance("pants", seed)
        assert fast_Z_md(g) == oracle_Z_md(g)
        assert fast_Z_dimer(g) == oracle_Z_dimer(g)
    args = integer_arrays(torus_grid(3, 4))
    assert _kernels.md_sum_python(12, *args) == 50


def test_kernel_needs_integers(annulus):
    with pytest.raises(TypeError):
        fast_Z_md(annulus)


def test_size_guard():
    with pytest.raises(OracleSizeError):
        oracle_Z_md(cycle_disk(6), max_vertices=5)
    with pytest.raises(OracleSizeError):
        list(enumerate_md(cycle_disk(6), max_vertices=5))
