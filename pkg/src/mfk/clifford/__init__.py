"""Clifford algebras of diagonal forms, graded modules, BEH and ABS classes."""

from .absgroups import AbsClass, AbsGroup, abs_class, abs_group, pair_classes, pairing_well_defined
from .algebra import AlgebraType, CliffordElement, DiagonalForm, blade_product, classify, clifford_multiply
from .irreducibles import decompose, hom_dim, hom_space, irreducibles, multiplicities
from .modules import (
    X8_WORDS,
    GradedCliffordModule,
    beh_theta,
    column_module_X8,
    form_of_polynomial,
    graded_tensor,
    mf_to_clifford_module,
    module_direct_sum,
    regular_module,
    unit_module,
)
from .snf import smith_normal_form

__all__ = [n for n, v in globals().items() if not n.startswith("_") and not hasattr(v, "__path__") and type(v).__name__ != "module"]
