"""Ergodic capacities of cooperative NOMA downlinks with an OAM side beam.

Thin Python surface over the C++ core: Rician channel statistics, the
deterministic OAM branch, Monte Carlo averaging, and the closed-form
capacity series.
"""

from ._core import (
    BaselineSplit,
    LinkTriple,
    NumericError,
    OamChannel,
    OperatingPoint,
    OptimalPn2,
    PowerAllocation,
    RicianLink,
    Scheme,
    SchemeCapacities,
    SeriesControl,
    SeriesTruncationError,
    __version__,
    build_oam_channel,
    c_x1_exact,
    c_x2_exact,
    c_x3_exact,
    cdf_min_pair,
    cdf_power_gain,
    cdf_scaled_min,
    d_of_rho,
    ergodic_capacities,
    exact_scheme_capacities,
    exponential_integral_en,
    find_optimal_pn2,
    marcum_q1,
    oam_sinr,
    reference_operating_point,
    sample_power_gain,
    upper_incomplete_gamma,
)

__all__ = [
    "BaselineSplit",
    "LinkTriple",
    "NumericError",
    "OamChannel",
    "OperatingPoint",
    "OptimalPn2",
    "PowerAllocation",
    "RicianLink",
    "Scheme",
    "SchemeCapacities",
    "SeriesControl",
    "SeriesTruncationError",
    "__version__",
    "build_oam_channel",
    "c_x1_exact",
    "c_x2_exact",
    "c_x3_exact",
    "cdf_min_pair",
    "cdf_power_gain",
    "cdf_scaled_min",
    "d_of_rho",
    "ergodic_capacities",
    "exact_scheme_capacities",
    "exponential_integral_en",
    "find_optimal_pn2",
    "marcum_q1",
    "oam_sinr",
    "reference_operating_point",
    "sample_power_gain",
    "upper_incomplete_gamma",
]
