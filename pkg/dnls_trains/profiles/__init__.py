"""Soliton and half-kink profiles, train specifications and separation
quantities.
"""
from dnls_trains.profiles.kink import (KinkParams, first_integral_coefficients,
                                       halfkink_derivatives, halfkink_phi,
                                       kink_derivative, kink_field,
                                       kink_residual, kink_tail_rate)
from dnls_trains.profiles.params import (EquationVariant, Orientation,
                                         TrainMember, gamma_of)
from dnls_trains.profiles.soliton import (SolitonParams, SolitonValidation,
                                          capital_phi, soliton_field,
                                          soliton_phi, validate_soliton)
from dnls_trains.profiles.train import (TrainSpec, lambda_of, scaled_family,
                                        separation_estimate, separation_lhs,
                                        v_star)

__all__ = [
    "KinkParams", "first_integral_coefficients", "halfkink_derivatives",
    "halfkink_phi", "kink_derivative", "kink_field", "kink_residual",
    "kink_tail_rate", "EquationVariant", "Orientation", "TrainMember",
    "gamma_of", "SolitonParams", "SolitonValidation", "capital_phi",
    "soliton_field", "soliton_phi", "validate_soliton", "TrainSpec",
    "lambda_of", "scaled_family", "separation_estimate", "separation_lhs",
    "v_star"
]
