"""Wedge decompositions of polyhedral products (CX, X)^K."""

from .algebra import (
    Decomposition,
    Summand,
    canonical_render,
    half_smash_expand,
    join_closed_form,
    join_summands,
    left_half_smash_expand,
    product_join_expand,
    substitute_join,
    subtract,
)
from .complex import (
    SimplicialComplex,
    boundary_simplex,
    build_complex,
    cone,
    glue,
    isolated_vertices,
    join_complexes,
    link,
    restriction,
    simplicial_wedge,
    skeleton,
    star,
)
from .decomposer import (
    adjoin_step,
    closed_form_disjoint_points,
    closed_form_skeleton,
    decompose,
    decompose_glued,
    decompose_wedge_construction,
)
from .homology import bbcg, reduced_homology, smith_normal_form
from .shifted import filtration, find_shifted_order, is_shifted
from .specializer import moment_angle, moment_angle_poincare, specialize

__version__ = "0.1.0"
