"""Matrix factorizations and their constructions."""
from .constructions import (
    F_THEN_ID,
    ID_THEN_F,
    coker_presentation,
    cone,
    direct_sum,
    infer_grading,
    koszul_of_variables,
    koszul_stabilization,
    rename_vars,
    shift,
    tensor,
    tensor_morphism_identity,
    trivial_mf,
)
from .factorization import (
    BasisMap,
    Grading,
    MatrixFactorization,
    MFMorphism,
    OddMap,
    apply_basis_map,
    boundary_even,
    boundary_odd,
    compose,
    find_basis_map,
    is_valid,
    validate,
)
from .jsonio import mf_from_json, mf_to_json
from .stripping import StripResult, strip_trivial_summands
