"""Exact boundary monomer-dimer partition functions on surface graphs.

The partition function of a weighted graph embedded in an orientable surface,
with monomers allowed only on boundary vertices, is computed as a signed
combination of Pfaffians. A brute-force oracle and checkers for the
intermediate identities are included.
"""

from .generators import cylinder_lattice, example_annulus, random_instance, torus_grid
from .kasteleyn import (
    OrientationError,
    boundary_pattern,
    build_base_orientation,
    flip_epsilon,
    has_boundary_pattern,
    is_kasteleyn,
    orientation_class,
)
from .md_pfaffian import (
    InvariantViolation,
    PartitionResult,
    adjacency_matrix,
    boundary_md_partition,
    dimer_partition,
    labelling,
    modified_matrix,
    partial_Z,
)
from .oracle import (
    enumerate_dimers,
    enumerate_md,
    oracle_Z_beta,
    oracle_Z_dimer,
    oracle_Z_md,
)
from .pfaffian import add_scaled_row_col, determinant, laplace_expand, pfaffian, pfaffian_definition
from .preprocess import ensure_even_boundary, ensure_even_vertex_count, normalize, normalize_boundary_circuits
from .rings import POLYNOMIAL, RATIONAL, Poly, get_ring, parse_poly
from .shuriken import build_G_beta, extend_orientation, verify_bijection_lemma, verify_matrix_proposition
from .surface import InvalidGraphError, SurfaceGraph, from_coordinates, from_edges, load, save
from .topology import homology

__version__ = "0.1.0"

