"""Exact lattice-width invariants of lattice and rational polytopes, with certificates."""

from .constructions import FAMILIES, build, idp_witness_check, tfold_member
from .errors import LatgeoError
from .flatness import (
    FltTable,
    SimplexCertificate,
    Unknown,
    contains_unimodular_copy,
    cube_lemma_map,
    find_unimodular_simplex,
    flt1_exact,
    largest_simplex_dilate,
    simplex_in_parallelepiped,
)
from .gromov import (
    delzant_polygon_classify,
    gromov_bounds,
    is_delzant,
    largest_diamond,
    lu_lambda,
    lu_upsilon,
)
from .polytope import (
    Polytope,
    UnimodularMap,
    apply_map,
    contains_point,
    dilate,
    hull_from_points,
    lattice_points,
    translate,
    vertices_from_halfspaces,
)
from .spanning import (
    affine_lattice_of_points,
    caratheodory_spanning_rank,
    generating_subset_recursive,
    is_spanning,
    size_bound_C,
    spanning_rank,
)
from .verify import verify_certificate
from .width import directional_width, facet_width, lattice_width, successive_minima_diffbody

__version__ = "0.1.0"
