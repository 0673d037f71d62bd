"""Code-capacity analysis of rectangular-lattice GKP codes under repetition coding.

The package maps a lattice aspect ratio and a Gaussian displacement noise
level to single-mode Pauli channels, concatenates them through odd-length
bit-flip repetition codes, optimizes the lattice bias per code length, and
locates break-even points and the family threshold. A seeded Monte Carlo
sampler validates the closed-form pipeline end to end, and a Wigner-grid
emitter reproduces the corresponding phase-space pictures. The `gkprep`
console script exposes all of it as batch commands.
"""

from .errors import EvenCodeLengthError, ParameterRangeError
from .gkp import (
    SIGMA_VAC,
    GkpLattice,
    GkpQubitChannel,
    NoiseChannel,
    QuadratureOutcome,
    db_from_sigma,
    equivalent_biased_channel,
    gkp_channel,
    pz_erfc_approx,
    quadrature_outcomes,
    sigma_from_db,
)
from .montecarlo import (
    McConfig,
    McEstimate,
    decode_quadrature,
    sample_gkp_outcomes,
    simulate_gkp_mode,
    simulate_rep_code,
)
from .optimize import (
    OptimizationResult,
    SweepResult,
    SweepRow,
    crossover_sigma,
    default_n_grid,
    default_threshold_sigma_grid,
    estimate_threshold,
    optimize_bias,
    scaling_curve,
    sweep_grid,
)
from .repetition import (
    MAX_CODE_LENGTH,
    LogicalChannel,
    RepetitionCode,
    bitflip_success,
    logical_channel,
    logical_error_rate,
    phaseflip_even,
)
from .special import (
    WrappedGaussian,
    central_bin_mass,
    jacobi_theta3,
    outer_bin_mass,
    reg_incomplete_beta,
    std_normal_cdf,
    wrapped_pdf,
    wrapped_pdf_comb,
    wrapped_pdf_theta,
)
from .wigner import (
    WignerGrid,
    WignerPeak,
    biased_blur_square_grid,
    blurred_grid,
    ideal_peaks,
    unit_cell_integral,
)

__version__ = "0.1.0"

__all__ = [
    "EvenCodeLengthError",
    "GkpLattice",
    "GkpQubitChannel",
    "LogicalChannel",
    "MAX_CODE_LENGTH",
    "McConfig",
    "McEstimate",
    "NoiseChannel",
    "OptimizationResult",
    "ParameterRangeError",
    "QuadratureOutcome",
    "RepetitionCode",
    "SIGMA_VAC",
    "SweepResult",
    "SweepRow",
    "WignerGrid",
    "WignerPeak",
    "WrappedGaussian",
    "__version__",
    "biased_blur_square_grid",
    "bitflip_success",
    "blurred_grid",
    "central_bin_mass",
    "crossover_sigma",
    "db_from_sigma",
    "decode_quadrature",
    "default_n_grid",
    "default_threshold_sigma_grid",
    "equivalent_biased_channel",
    "estimate_threshold",
    "gkp_channel",
    "ideal_peaks",
    "jacobi_theta3",
    "logical_channel",
    "logical_error_rate",
    "optimize_bias",
    "outer_bin_mass",
    "phaseflip_even",
    "pz_erfc_approx",
    "quadrature_outcomes",
    "reg_incomplete_beta",
    "sample_gkp_outcomes",
    "scaling_curve",
    "sigma_from_db",
    "simulate_gkp_mode",
    "simulate_rep_code",
    "std_normal_cdf",
    "sweep_grid",
    "unit_cell_integral",
    "wrapped_pdf",
    "wrapped_pdf_comb",
    "wrapped_pdf_theta",
]
