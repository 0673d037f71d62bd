"""Bias optimization, crossover location, and threshold/scaling sweeps.

For each code length n and noise level sigma there is an optimal lattice
aspect ratio: widening T_p suppresses the unprotected phase flips while the
repetition code absorbs the extra bit flips, up to the point where majority
vote starts losing. The error rate is observed to be unimodal in r, so each
optimization is a coarse scan (default step 0.01 over [1, r_cap]) followed
by golden-section refinement inside the bracketing interval; a count of
local minima on the coarse grid is kept as a diagnostic for the unimodality
assumption. Ties are resolved toward smaller r throughout.

Sweeps share work per sigma: the quadrature flip marginals over the coarse
r grid are computed once and reused for every n, which is what makes the
threshold estimate (tens of sigma points times ~100 code lengths) cheap.
Grid rows are keyed by their coordinates, never by completion order, so the
optional process parallelism cannot change any output.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numba import njit

from .errors import ParameterRangeError
from .gkp import _quadrature_failures
from .repetition import MAX_CODE_LENGTH, RepetitionCode, _failure_rate, _rep_failure

__all__ = [
    "OptimizationResult",
    "SweepResult",
    "SweepRow",
    "crossover_sigma",
    "default_n_grid",
    "default_threshold_sigma_grid",
    "estimate_threshold",
    "optimize_bias",
    "scaling_curve",
    "sweep_grid",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_R_TOL = 1e-4
_SIGMA_TOL = 5e-4
_CROSSOVER_LO = 0.2
_CROSSOVER_HI = 0.7


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of a bias scan for one (n, sigma) point.

    `grid_local_minima` counts local minima of the error rate on the coarse
    r grid; anything above 1 flags that the unimodality assumption behind
    the golden-section refinement did not hold at this point.
    """

    n: int
    sigma: float
    r_opt: float
    error_rate: float
    r_cap: float
    grid_local_minima: int


@dataclass(frozen=True)
class SweepRow:
    """One (sigma, n) grid point of a sweep."""

    sigma: float
    n: int
    r_opt: float
    error_rate: float
    single_mode_error: float
    beats_single: bool


@dataclass(frozen=True)
class SweepResult:
    """Rows of a sweep in (sigma, n) grid order."""

    rows: tuple

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)


@njit(cache=True)
def _marginal_grid(r_values, sigma):
    """Quadrature flip marginals over an r grid, shared by all n at one sigma."""
    f_q = np.empty(r_values.size)
    f_p = np.empty(r_values.size)
    for i in range(r_values.size):
        f_q[i], f_p[i] = _quadrature_failures(r_values[i], sigma)
    return f_q, f_p


@njit(cache=True)
def _rep_failure_grid(n, f_q, f_p):
    out = np.empty(f_q.size)
    for i in range(f_q.size):
        out[i] = _rep_failure(n, f_q[i], f_p[i])
    return out


def _coarse_r_grid(r_cap: float, step: float) -> np.ndarray:
    count = int(round((r_cap - 1.0) / step))
    grid = 1.0 + step * np.arange(count + 1)
    if grid[-1] > r_cap:
        grid[-1] = r_cap
    elif grid[-1] < r_cap - 1e-12:
        grid = np.append(grid, r_cap)
    return grid


def _count_local_minima(errors: np.ndarray) -> int:
    if errors.size == 1:
        return 1
    count = 0
    if errors[0] < errors[1]:
        count += 1
    for i in range(1, errors.size - 1):
        if errors[i] < errors[i - 1] and errors[i] < errors[i + 1]:
            count += 1
    if errors[-1] < errors[-2]:
        count += 1
    return count


def _refine_golden(n, sigma, lo, hi, best_r, best_err):
    """Golden-section descent on r within [lo, hi], ties toward smaller r."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    f_c = _failure_rate(n, c, sigma)
    f_d = _failure_rate(n, d, sigma)
    while b - a > _R_TOL:
        if f_c <= f_d:
            b, d, f_d = d, c, f_c
            c = b - _GOLDEN * (b - a)
            f_c = _failure_rate(n, c, sigma)
        else:
            a, c, f_c = c, d, f_d
            d = a + _GOLDEN * (b - a)
            f_d = _failure_rate(n, d, sigma)
        probe, f_probe = (c, f_c) if f_c <= f_d else (d, f_d)
        if f_probe < best_err or (f_probe == best_err and probe < best_r):
            best_r, best_err = probe, f_probe
    return best_r, best_err


def _optimize_on_grid(n, sigma, r_values, f_q, f_p, r_cap) -> OptimizationResult:
    errors = _rep_failure_grid(n, f_q, f_p)
    i = int(np.argmin(errors))  # first occurrence: ties toward smaller r
    minima = _count_local_minima(errors)
    best_r = float(r_values[i])
    best_err = float(errors[i])
    if r_values.size > 1:
        lo = float(r_values[max(i - 1, 0)])
        hi = float(r_values[min(i + 1, r_values.size - 1)])
        best_r, best_err = _refine_golden(n, sigma, lo, hi, best_r, best_err)
    return OptimizationResult(
        n=n, sigma=sigma, r_opt=best_r, error_rate=best_err,
        r_cap=r_cap, grid_local_minima=minima,
    )


def _validate_optimize_args(n: int, sigma: float, r_cap: float, coarse_step: float):
    RepetitionCode(n)
    if sigma <= 0.0:
        raise ParameterRangeError("optimize_bias requires sigma > 0")
    if not (1.0 <= r_cap <= 15.0):
        raise ParameterRangeError("r_cap must lie in [1, 15]")
    if coarse_step <= 0.0:
        raise ParameterRangeError("coarse_step must be positive")


def optimize_bias(
    n: int,
    sigma: float,
    r_cap: float = 15.0,
    coarse_step: float = 0.01,
) -> OptimizationResult:
    """Minimize the logical error rate of an n-mode code over the aspect ratio.

    Coarse scan at `coarse_step` over [1, r_cap], then golden-section
    refinement within the bracketing coarse interval until the bracket is
    narrower than 1e-4. The reported r_opt is the best point actually
    evaluated, so its error never exceeds the coarse-grid minimum, and on
    exact ties the smaller r wins.
    """
    _validate_optimize_args(n, sigma, r_cap, coarse_step)
    r_values = _coarse_r_grid(r_cap, coarse_step)
    f_q, f_p = _marginal_grid(r_values, sigma)
    return _optimize_on_grid(n, sigma, r_values, f_q, f_p, r_cap)


def crossover_sigma(n: int, r_cap: float = 15.0) -> Optional[float]:
    """Noise level where the optimized n-code stops beating a single mode.

    Bisects the sign change of (optimized n-code error - optimized
    single-mode error) over sigma in [0.2, 0.7] down to a 5e-4 bracket and
    returns the midpoint. Returns None when the gap does not change sign on
    the interval, i.e. there is no crossover to locate.
    """
    if n < 3:
        raise ParameterRangeError("crossover_sigma requires n >= 3")

    def gap(sigma: float) -> float:
        code = optimize_bias(n, sigma, r_cap)
        single = optimize_bias(1, sigma, r_cap)
        return code.error_rate - single.error_rate

    lo, hi = _CROSSOVER_LO, _CROSSOVER_HI
    if not (gap(lo) < 0.0 < gap(hi)):
        return None
    while hi - lo > _SIGMA_TOL:
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def default_n_grid(max_n: int = MAX_CODE_LENGTH) -> tuple:
    """Code lengths used by the threshold estimate.

    Every odd n up to 101, then 60 log-spaced points up to `max_n` rounded
    to the nearest odd integer (deduplicated). Dense where crossovers move
    fastest, sparse where only the order of magnitude matters.
    """
    small = set(range(1, 102, 2))
    spaced = np.geomspace(1.0, float(max_n), 60)
    rounded = {2 * int(round((x - 1.0) / 2.0)) + 1 for x in spaced}
    merged = sorted(v for v in small | rounded if 1 <= v <= max_n)
    return tuple(merged)


def default_threshold_sigma_grid() -> tuple:
    """Fine sigma grid bracketing the threshold: [0.58, 0.62] at 0.001."""
    return tuple(0.58 + 0.001 * i for i in range(41))


def _sweep_one_sigma(sigma, n_values, r_cap, coarse_step):
    """All rows for one sigma; the per-sigma marginal grid is built once."""
    r_values = _coarse_r_grid(r_cap, coarse_step)
    f_q, f_p = _marginal_grid(r_values, sigma)
    single = _optimize_on_grid(1, sigma, r_values, f_q, f_p, r_cap)
    rows = []
    for n in n_values:
        res = _optimize_on_grid(n, sigma, r_values, f_q, f_p, r_cap)
        rows.append(SweepRow(
            sigma=sigma,
            n=n,
            r_opt=res.r_opt,
            error_rate=res.error_rate,
            single_mode_error=single.error_rate,
            beats_single=res.error_rate < single.error_rate,
        ))
    return rows


def sweep_grid(
    sigma_values: Sequence[float],
    n_values: Sequence[int],
    r_cap: float = 15.0,
    coarse_step: float = 0.01,
    jobs: int = 1,
) -> SweepResult:
    """Optimized error rates over the full sigma x n grid.

    With jobs > 1 the sigma points are farmed out to worker processes; rows
    come back keyed by grid position, so the output is identical for any
    job count.
    """
    for n in n_values:
        RepetitionCode(n)
    for sigma in sigma_values:
        _validate_optimize_args(1, sigma, r_cap, coarse_step)
    if jobs < 1:
        raise ParameterRangeError("jobs must be >= 1")
    n_values = tuple(n_values)
    sigma_values = tuple(sigma_values)
    if jobs == 1 or len(sigma_values) <= 1:
        per_sigma = [
            _sweep_one_sigma(s, n_values, r_cap, coarse_step) for s in sigma_values
        ]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_sigma = list(pool.map(
                _sweep_one_sigma,
                sigma_values,
                [n_values] * len(sigma_values),
                [r_cap] * len(sigma_values),
                [coarse_step] * len(sigma_values),
            ))
    rows = [row for chunk in per_sigma for row in chunk]
    return SweepResult(rows=tuple(rows))


def estimate_threshold(
    sigma_grid: Optional[Sequence[float]] = None,
    n_grid: Optional[Sequence[int]] = None,
    r_cap: float = 15.0,
    coarse_step: float = 0.01,
) -> Optional[float]:
    """Conservative threshold estimate from a fine sigma sweep.

    Returns the largest grid sigma at which some code length still beats
    the optimized single mode; past the returned value no tested n does.
    None means no grid point showed an improvement. The whole grid is
    always scanned, so a non-contiguous improvement region cannot slip
    through on the high side.
    """
    if sigma_grid is None:
        sigma_grid = default_threshold_sigma_grid()
    if n_grid is None:
        n_grid = default_n_grid()
    result = sweep_grid(sigma_grid, n_grid, r_cap=r_cap, coarse_step=coarse_step)
    threshold = None
    for row in result:
        if row.beats_single:
            if threshold is None or row.sigma > threshold:
                threshold = row.sigma
    return threshold


def scaling_curve(
    sigma: float,
    n_list: Optional[Sequence[int]] = None,
    r_cap: float = 15.0,
    coarse_step: float = 0.01,
) -> SweepResult:
    """Optimized performance against code length at a fixed noise level."""
    if n_list is None:
        n_list = default_n_grid()
    return sweep_grid([sigma], n_list, r_cap=r_cap, coarse_step=coarse_step)
