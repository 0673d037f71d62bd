"""Phase-space data for rectangular-lattice grid states.

The ideal logical-null grid state of the rectangular code has a Wigner
function that is a lattice of delta peaks at

    (q, p) = (n sqrt(pi / r), m sqrt(pi r) / 2),    n, m integers,

with weight (-1)^(n m) / 2: positive on the stabilizer sublattice,
alternating on the logical displacements. Ideal states are therefore kept
as explicit peak lists; only noisy states are rasterized. Under the
isotropic displacement channel every peak blurs into a Gaussian of variance
sigma^2, and the same state is equivalently a square-lattice state under an
anisotropic blur with widths (sigma sqrt(r), sigma / sqrt(r)) after the
squeezing change of coordinates (q, p) -> (q sqrt(r), p / sqrt(r)).

The blurred function is doubly periodic with unit cell T_q x T_p/2 (two
peak spacings in each direction, net weight 1), over which it integrates
to one; `unit_cell_integral` checks that numerically.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterRangeError
from .gkp import GkpLattice, NoiseChannel

__all__ = [
    "WignerGrid",
    "WignerPeak",
    "biased_blur_square_grid",
    "blurred_grid",
    "ideal_peaks",
    "unit_cell_integral",
]

_TRUNCATION_SIGMAS = 8.0


@dataclass(frozen=True)
class WignerPeak:
    """One delta peak of an ideal grid state."""

    q: float
    p: float
    weight: float


@dataclass(frozen=True)
class WignerGrid:
    """Dense Wigner samples with explicit axes.

    values[i, j] is W evaluated at (q_axis[i], p_axis[j]).
    """

    q_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.q_axis.size, self.p_axis.size):
            raise ParameterRangeError("WignerGrid values shape must match axes")


def _axis_indices(lo: float, hi: float, spacing: float):
    """Integer multiples of `spacing` lying inside [lo, hi]."""
    first = int(math.ceil(lo / spacing - 1e-12))
    last = int(math.floor(hi / spacing + 1e-12))
    return range(first, last + 1)


def ideal_peaks(r: float, extent) -> tuple:
    """Delta peaks of the ideal grid state inside a finite rectangle.

    `extent` is (q_min, q_max, p_min, p_max). Peaks are returned in
    deterministic (n, m) order with exact lattice coordinates and signed
    weights (-1)^(n m) / 2.
    """
    lattice = GkpLattice(r)
    q_min, q_max, p_min, p_max = (float(v) for v in extent)
    if not (math.isfinite(q_min) and math.isfinite(q_max)
            and math.isfinite(p_min) and math.isfinite(p_max)):
        raise ParameterRangeError("ideal_peaks requires a finite extent")
    if q_min > q_max or p_min > p_max:
        raise ParameterRangeError("ideal_peaks extent must be ordered")
    dq = 0.5 * lattice.t_q
    dp = 0.25 * lattice.t_p
    peaks = []
    for n in _axis_indices(q_min, q_max, dq):
        for m in _axis_indices(p_min, p_max, dp):
            weight = 0.5 if (n * m) % 2 == 0 else -0.5
            peaks.append(WignerPeak(q=n * dq, p=m * dp, weight=weight))
    return tuple(peaks)


def _blur_onto_axes(peaks, q_axis, p_axis, sigma_q, sigma_p):
    # Separable accumulation: each peak contributes an outer product of two
    # 1-D Gaussians, normalized to unit mass.
    norm = 1.0 / (2.0 * math.pi * sigma_q * sigma_p)
    values = np.zeros((q_axis.size, p_axis.size))
    for peak in peaks:
        gq = np.exp(-((q_axis - peak.q) ** 2) / (2.0 * sigma_q * sigma_q))
        gp = np.exp(-((p_axis - peak.p) ** 2) / (2.0 * sigma_p * sigma_p))
        values += (peak.weight * norm) * np.outer(gq, gp)
    return values


def _as_axis(axis) -> np.ndarray:
    arr = np.asarray(axis, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ParameterRangeError("grid axes must be non-empty 1-D sequences")
    return arr


def blurred_grid(r: float, sigma: float, q_axis, p_axis) -> WignerGrid:
    """Wigner function of the rectangular grid state after isotropic blur.

    Sums weight * Gaussian(sigma) over every lattice peak lying within
    8 sigma of the requested extent; peaks beyond that contribute less
    than exp(-32) of their weight anywhere on the grid.
    """
    channel = NoiseChannel(sigma)
    q_axis = _as_axis(q_axis)
    p_axis = _as_axis(p_axis)
    pad = _TRUNCATION_SIGMAS * channel.sigma
    peaks = ideal_peaks(r, (
        q_axis.min() - pad, q_axis.max() + pad,
        p_axis.min() - pad, p_axis.max() + pad,
    ))
    values = _blur_onto_axes(peaks, q_axis, p_axis, channel.sigma, channel.sigma)
    return WignerGrid(q_axis=q_axis, p_axis=p_axis, values=values)


def biased_blur_square_grid(r: float, sigma: float, q_axis, p_axis) -> WignerGrid:
    """Square-lattice grid state after the equivalent anisotropic blur.

    The blur widths are (sigma_q, sigma_p) = (sigma sqrt(r), sigma / sqrt(r));
    sampling this at (q sqrt(r), p / sqrt(r)) reproduces `blurred_grid(r,
    sigma)` at (q, p) exactly, prefactor included, since sigma_q sigma_p =
    sigma^2.
    """
    GkpLattice(r)
    channel = NoiseChannel(sigma)
    q_axis = _as_axis(q_axis)
    p_axis = _as_axis(p_axis)
    root = math.sqrt(r)
    sigma_q = channel.sigma * root
    sigma_p = channel.sigma / root
    peaks = ideal_peaks(1.0, (
        q_axis.min() - _TRUNCATION_SIGMAS * sigma_q,
        q_axis.max() + _TRUNCATION_SIGMAS * sigma_q,
        p_axis.min() - _TRUNCATION_SIGMAS * sigma_p,
        p_axis.max() + _TRUNCATION_SIGMAS * sigma_p,
    ))
    values = _blur_onto_axes(peaks, q_axis, p_axis, sigma_q, sigma_p)
    return WignerGrid(q_axis=q_axis, p_axis=p_axis, values=values)


def unit_cell_integral(r: float, sigma: float, resolution: int = 256) -> float:
    """Midpoint-rule integral of the blurred Wigner function over one cell.

    The cell is [0, T_q) x [0, T_p/2), containing net peak weight 1. The
    integrand is smooth and periodic over the cell, so the midpoint rule
    converges superexponentially in `resolution`; 256 points per axis is
    far below 1e-6 error for any sigma of interest.
    """
    if resolution < 2:
        raise ParameterRangeError("unit_cell_integral requires resolution >= 2")
    lattice = GkpLattice(r)
    width_q = lattice.t_q
    width_p = 0.5 * lattice.t_p
    step_q = width_q / resolution
    step_p = width_p / resolution
    q_axis = step_q * (np.arange(resolution) + 0.5)
    p_axis = step_p * (np.arange(resolution) + 0.5)
    grid = blurred_grid(r, sigma, q_axis, p_axis)
    return float(grid.values.sum() * step_q * step_p)
