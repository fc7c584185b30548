"""Numerical harmonic analysis on the periodic torus, with a verification
harness for pointwise and norm inequalities between fractional derivatives,
maximal functions, and Besov/Orlicz/variable-exponent Lebesgue norms.
"""
from .besov import (
    LittlewoodPaleyBasis,
    TGrid,
    besov_norm_lp,
    besov_norm_thermic,
    dyadic_block,
    lp_square_function_norm,
    phi_hat_profile,
    sequence_interpolation_check,
    weighted_sequence_norm,
)
from .exponents import (
    GateError,
    hedberg_theta,
    lorentz_exponent,
    mixed_theta,
    q_pointwise,
    sigma_exponent,
    sobolev_conjugate,
    young_oneil_q,
)
from .fields import (
    DomainSpec,
    FourierMode,
    Gaussian,
    RandomBandLimited,
    SampledField,
    SmoothBump,
    SumOf,
    coords,
    dilate,
    lp_norm,
    sample,
    xi_axes,
    xi_magnitude,
)
from .harness import (
    ExponentSpec,
    FunctionFamily,
    InequalityReport,
    exponent_consistency_scan,
    standard_family,
    verify_besov_equivalence,
    verify_classical_hedberg,
    verify_hls,
    verify_maximal_boundedness,
    verify_modified_hedberg,
    verify_phi_maximal_domination,
    verify_theorem2,
    verify_theorem3,
    verify_theorem4,
    verify_theorem5,
    verify_young_oneil,
)
from .maximal import (
    BallFamily,
    SmoothProfile,
    band_profile,
    heat_profile,
    hl_maximal,
    hl_maximal_brute,
    phi_maximal,
    weak_lorentz_norm,
)
from .norms import (
    MixedSpaceSpec,
    VariableExponent,
    YoungFunction,
    log_holder_constants,
    luxemburg_norm,
    mixed_lebesgue_norm,
    mixed_sobolev_norm,
    modular,
    nabla2_constant,
    orlicz_luxemburg_norm,
    orlicz_modular,
    rescaled_orlicz_norm,
    sobolev_norm,
)
from .spectral import (
    LogGridSpec,
    apply_multiplier,
    default_rl_quadrature,
    fractional_laplacian,
    heat_convolve,
    riemann_liouville_fraclap,
    riesz_potential,
)

__version__ = "0.1.0"
