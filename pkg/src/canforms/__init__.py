"""Exact rational calculator for hyperplane arrangements: intersection
posets, broken-circuit bases, canonical region forms with their residues
and adjoints, and stratified boundary invariants."""

from .arrangement import (
    Arrangement,
    EXPLICIT,
    GENERIC,
    PROJECTIVE_CLOSURE,
    Flat,
    FlatPoset,
    SignVector,
    bounded_regions,
    broken_circuits,
    build_flat_poset,
    characteristic_polynomial,
    circuits,
    combinatorial_rank_moebius,
    deletion,
    genericity_violation,
    is_essential,
    nbc_sets,
    reorder,
    restriction,
    send_to_infinity,
)
from .errors import (
    CanformsError,
    InternalInvariantError,
    PreconditionError,
    ValidationError,
)
from .exact import (
    LinearFunctional,
    MultiPoly,
    RationalForm,
    frac,
    wedge_of_dlogs,
)
from .osalgebra import (
    CornerResidueVector,
    DlogCombination,
    OSElement,
    adjoint_polynomial,
    canonical_form_nbc,
    canonical_form_polygon,
    canonical_form_simple_polytope,
    corner_residues,
    os_normalize,
    os_relations,
    product_arrangement,
    product_form,
    pullback_power,
    pushforward_power,
    residue,
    to_rational_form,
)
from .regions import (
    OrientedFace,
    Region,
    cut_region,
    face_sign_ratio,
    facet_region,
    iterated_boundary,
    partial_boundary,
    region_face,
    region_from_point,
    region_vertices,
    vertex_sign_shortcut,
)
from .strata import (
    DeltaComplex,
    HomologySummary,
    StrataInput,
    Stratum,
    curve_rank,
    curve_rank_relative,
    dual_complex,
    genus_plane_curve,
    genus_smooth_hypersurface,
    logforms_dim_ncd,
    reduced_homology_dims,
    simplex_boundary_input,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
