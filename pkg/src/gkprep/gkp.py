"""Single-mode rectangular GKP codes under isotropic Gaussian displacement noise.

A rectangular-lattice GKP qubit has stabilizer spacings T_q = 2 sqrt(pi/r)
and T_p = 2 sqrt(pi r) in the position and momentum quadratures, with the
aspect ratio r >= 1 trading protection between them (T_q T_p = 4 pi always).
Logical displacements sit at half the stabilizer spacing, so ideal syndrome
correction in a quadrature succeeds exactly when the displacement, wrapped
to one stabilizer period, lands within a quarter period of a lattice point.

Under the isotropic Gaussian displacement channel both quadrature shifts are
independent N(0, sigma^2) draws, so the corrected qubit sees a Pauli channel
that factorizes over quadratures: a residual q flip is X, a residual p flip
is Z, both together are Y.
"""

import math
from dataclasses import dataclass

from numba import njit

from .errors import ParameterRangeError
from .special import central_bin_mass, outer_bin_mass

__all__ = [
    "SIGMA_VAC",
    "GkpLattice",
    "GkpQubitChannel",
    "NoiseChannel",
    "QuadratureOutcome",
    "db_from_sigma",
    "equivalent_biased_channel",
    "gkp_channel",
    "pz_erfc_approx",
    "quadrature_outcomes",
    "sigma_from_db",
]

# Vacuum quadrature standard deviation in hbar = 1 units: sigma_vac^2 = 1/2.
# Fixed (not configurable) so dB values always refer to the same reference.
SIGMA_VAC = math.sqrt(0.5)


def db_from_sigma(sigma: float) -> float:
    """Squeezing of a displacement channel in dB: s = -10 log10(sigma^2 / sigma_vac^2)."""
    if sigma <= 0.0:
        raise ParameterRangeError("db_from_sigma requires sigma > 0")
    return -10.0 * math.log10(sigma * sigma / (SIGMA_VAC * SIGMA_VAC))


def sigma_from_db(db: float) -> float:
    """Inverse of `db_from_sigma`: sigma = 10^(-s/20) * sigma_vac."""
    return 10.0 ** (-db / 20.0) * SIGMA_VAC


@dataclass(frozen=True)
class NoiseChannel:
    """Isotropic Gaussian displacement channel with per-quadrature std `sigma`."""

    sigma: float

    def __post_init__(self):
        if self.sigma <= 0.0:
            raise ParameterRangeError("NoiseChannel requires sigma > 0")

    @property
    def squeezing_db(self) -> float:
        return db_from_sigma(self.sigma)


@dataclass(frozen=True)
class GkpLattice:
    """Rectangular GKP lattice with aspect ratio r >= 1.

    r < 1 is rejected rather than accepted: it is the same code with the
    quadrature labels swapped (T_q(r) = T_p(1/r)), and allowing both
    spellings invites sign errors in the bias optimization downstream.
    """

    r: float

    def __post_init__(self):
        if not (self.r >= 1.0):
            raise ParameterRangeError("GkpLattice requires aspect ratio r >= 1")

    @property
    def t_q(self) -> float:
        """Stabilizer spacing in the position quadrature, 2 sqrt(pi / r)."""
        return 2.0 * math.sqrt(math.pi / self.r)

    @property
    def t_p(self) -> float:
        """Stabilizer spacing in the momentum quadrature, 2 sqrt(pi r)."""
        return 2.0 * math.sqrt(math.pi * self.r)


@dataclass(frozen=True)
class QuadratureOutcome:
    """Success/failure probabilities of syndrome correction in one quadrature.

    `p_err` is stored as the complement of `p_ok`, so the pair sums to 1
    exactly in floating point.
    """

    p_ok: float
    p_err: float

    @classmethod
    def from_p_ok(cls, p_ok: float) -> "QuadratureOutcome":
        return cls(p_ok=p_ok, p_err=1.0 - p_ok)


@dataclass(frozen=True)
class GkpQubitChannel:
    """Pauli channel of one syndrome-corrected GKP qubit.

    Products of independent per-quadrature outcomes: p_i = ok_q ok_p,
    p_x = err_q ok_p, p_z = ok_q err_p, p_y = err_q err_p. This structure
    implies p_i p_y = p_x p_z.
    """

    p_i: float
    p_x: float
    p_y: float
    p_z: float

    @property
    def p_err_q(self) -> float:
        """Marginal flip probability in q (X or Y)."""
        return self.p_x + self.p_y

    @property
    def p_err_p(self) -> float:
        """Marginal flip probability in p (Z or Y)."""
        return self.p_z + self.p_y


@njit(cache=True)
def _quadrature_failures(r, sigma):
    # Flip marginals (f_q, f_p); the scalar hot path for optimizers, so no
    # dataclass construction. Computed failure-side so that deeply
    # suppressed rates (down to ~1e-70 at low sigma) stay comparable
    # instead of flooring at the 1e-16 complement resolution.
    f_q = outer_bin_mass(sigma, 2.0 * math.sqrt(math.pi / r))
    f_p = outer_bin_mass(sigma, 2.0 * math.sqrt(math.pi * r))
    return f_q, f_p


def quadrature_outcomes(lattice: GkpLattice, channel: NoiseChannel):
    """Per-quadrature correction outcomes for a lattice under a channel.

    Each quadrature sees an independent N(0, sigma^2) shift; correction
    succeeds when the shift wrapped to one stabilizer period falls in the
    central bin of width half a period. Returns (q, p) outcomes.
    """
    ok_q = central_bin_mass(channel.sigma, lattice.t_q)
    ok_p = central_bin_mass(channel.sigma, lattice.t_p)
    return QuadratureOutcome.from_p_ok(ok_q), QuadratureOutcome.from_p_ok(ok_p)


def gkp_channel(lattice: GkpLattice, channel: NoiseChannel) -> GkpQubitChannel:
    """Effective Pauli channel of one corrected GKP qubit."""
    out_q, out_p = quadrature_outcomes(lattice, channel)
    return GkpQubitChannel(
        p_i=out_q.p_ok * out_p.p_ok,
        p_x=out_q.p_err * out_p.p_ok,
        p_y=out_q.p_err * out_p.p_err,
        p_z=out_q.p_ok * out_p.p_err,
    )


def equivalent_biased_channel(lattice: GkpLattice, channel: NoiseChannel):
    """Anisotropic square-lattice noise equivalent to (r, sigma).

    Rescaling the quadratures maps the rectangular code under isotropic
    noise onto the square code (r = 1) under anisotropic noise with
    (sigma_q, sigma_p) = (sigma sqrt(r), sigma / sqrt(r)). The per-quadrature
    outcome probabilities are identical under the map.
    """
    root = math.sqrt(lattice.r)
    return channel.sigma * root, channel.sigma / root


def pz_erfc_approx(lattice: GkpLattice, channel: NoiseChannel) -> float:
    """Single-tail upper bound on the momentum flip rate.

    Extends the first error bin to infinity: erfc((T_p/4) / (sigma sqrt(2))).
    Always >= the exact p_err_p, and tight once T_p/4 is a few sigma, since
    the neglected bins decay super-exponentially.
    """
    return math.erfc(0.25 * lattice.t_p / (channel.sigma * math.sqrt(2.0)))
