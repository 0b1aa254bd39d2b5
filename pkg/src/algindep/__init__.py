"""Exact and certified arithmetic for an algebraic-independence measure of
values of the exponential function at algebraic points."""

__version__ = "0.1.0"

from .balls import BallComplex, InsufficientPrecision, working_prec
from .logmag import LogMagnitude, lm_max
from .numberfield import (AlgebraicNumber, FieldError, NumberField,
                          check_q_independence, common_denominator,
                          house_bound, is_integral, nf_create)
from .heights import (HeightValue, MultiHomPoly, ProjectivePointK, h_weil,
                      poly_height, poly_length, propU_check)
from .interpolation import (AuxParams, DeltaNormalizer, HermiteBasis,
                            aux_eval_direct, aux_eval_series, aux_params,
                            delta_normalizer, hermite_basis, lemA_check,
                            phi_apply, propQ_check, sigma_set)
from .polysys import (HomogeneousPolynomial, PolynomialError, build_Q,
                      family_F, homogenize, poly_eval_ball, poly_norm,
                      zero_lemma_check)
from .resultant import (ResultantIndeterminate, bm_select, corRes1_bound,
                        corRes2_bound, macaulay_resultant, res_property_suite)
from .bounds import (BoundsError, TheoremParams, audit_chain, choose_S,
                     choose_T, theorem_bound, theorem_params, verify_measure)

__all__ = [
    "__version__",
    "BallComplex", "InsufficientPrecision", "working_prec",
    "LogMagnitude", "lm_max",
    "AlgebraicNumber", "FieldError", "NumberField", "check_q_independence",
    "common_denominator", "house_bound", "is_integral", "nf_create",
    "HeightValue", "MultiHomPoly", "ProjectivePointK", "h_weil",
    "poly_height", "poly_length", "propU_check",
    "AuxParams", "DeltaNormalizer", "HermiteBasis", "aux_eval_direct",
    "aux_eval_series", "aux_params", "delta_normalizer", "hermite_basis",
    "lemA_check", "phi_apply", "propQ_check", "sigma_set",
    "HomogeneousPolynomial", "PolynomialError", "build_Q", "family_F",
    "homogenize", "poly_eval_ball", "poly_norm", "zero_lemma_check",
    "ResultantIndeterminate", "bm_select", "corRes1_bound", "corRes2_bound",
    "macaulay_resultant", "res_property_suite",
    "BoundsError", "TheoremParams", "audit_chain", "choose_S", "choose_T",
    "theorem_bound", "theorem_params", "verify_measure",
]
