"""jetkern: exact-arithmetic jet kernels on the unit disc.

Builders for jet kernels of Szego-power product kernels on the bidisc and
tridisc, their normalized coefficients, a commutant-based irreducibility
verdict, curvature invariants, the disc-automorphism cocycles behind
quasi-invariance, and the block decomposition of the tridisc case.  Every
identity with a rational formulation is checked bit-exactly; floating point
is confined to square roots and evaluation away from the origin.
"""

from .curvature import (
    curvature_at_zero,
    curvature_series,
    equivalence_test,
    invariant_pair,
    jet2_curvature_closed_form,
    rotated_curvature_restriction,
)
from .kernels import (
    KernelSpec,
    SzegoTermSum,
    bidisc_spec,
    jet_entry_closed_form,
    jet_kernel_series,
    jet_kernel_series_bruteforce,
    szego_power_series,
    tridisc_jet_closed_form,
    tridisc_spec,
)
from .mobius import (
    MobiusElement,
    binomial_identity_check,
    cocycle_c,
    cocycle_p,
    jmatrix,
    mobius_apply,
    mobius_compose,
    mobius_invert,
    quasi_invariance_at_zero,
    quasi_invariance_polynomial,
    scalar_cocycle_check,
    verify_matrix_cocycle,
)
from .normalize import (
    CommutantReport,
    closed_form_coefficient,
    commutant_basis,
    irreducibility_verdict,
    normalized_coefficients,
    reducing_projections,
    symmetrized_normalized_coeff,
    verify_inverse_relation,
)
from .scalars import ComplexRational, Rational, binomial_general, pochhammer
from .series import MatrixSeries, series_invert, series_multiply
from .tridisc import (
    TridiscReport,
    tridisc_block_diagonalize,
    tridisc_match_bidisc,
    tridisc_normalized,
)
from .wilkins import ShiftBlock, kq_partial_sum, nilpotency_check, onb_image, shift_block

__all__ = [
    "ComplexRational",
    "CommutantReport",
    "KernelSpec",
    "MatrixSeries",
    "MobiusElement",
    "Rational",
    "ShiftBlock",
    "SzegoTermSum",
    "TridiscReport",
    "bidisc_spec",
    "binomial_general",
    "binomial_identity_check",
    "closed_form_coefficient",
    "cocycle_c",
    "cocycle_p",
    "commutant_basis",
    "curvature_at_zero",
    "curvature_series",
    "equivalence_test",
    "invariant_pair",
    "irreducibility_verdict",
    "jet2_curvature_closed_form",
    "jet_entry_closed_form",
    "jet_kernel_series",
    "jet_kernel_series_bruteforce",
    "jmatrix",
    "kq_partial_sum",
    "mobius_apply",
    "mobius_compose",
    "mobius_invert",
    "nilpotency_check",
    "normalized_coefficients",
    "onb_image",
    "pochhammer",
    "quasi_invariance_at_zero",
    "quasi_invariance_polynomial",
    "reducing_projections",
    "rotated_curvature_restriction",
    "scalar_cocycle_check",
    "series_invert",
    "series_multiply",
    "shift_block",
    "symmetrized_normalized_coeff",
    "szego_power_series",
    "tridisc_block_diagonalize",
    "tridisc_jet_closed_form",
    "tridisc_match_bidisc",
    "tridisc_normalized",
    "tridisc_spec",
    "verify_inverse_relation",
    "verify_matrix_cocycle",
]
