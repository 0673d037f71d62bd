"""Monte Carlo oracle for the analytic pipeline.

Samples raw displacement pairs, runs nearest-lattice-point decoding per
mode and majority-vote / parity decoding across modes, and tabulates the
joint logical outcome. Everything analytic upstream (wrapped masses, beta
sums) is bypassed on purpose: agreement between these frequencies and the
closed-form channel is an end-to-end check of both.

Reproducibility contract
------------------------
Results are a pure function of (n, r, sigma, trials, seed); worker count
and chunk size never change a single count. The construction:

* the Philox counter-based generator is keyed directly by the 64-bit seed;
* each trial owns a fixed span of whole 4-word counter blocks
  (ceil(2n/4) of them), so any chunk of trials can be generated by
  advancing the counter to its first block, independent of history;
* each uint64 raw word maps to one open-interval uniform
  u = ((word >> 12) + 0.5) * 2^-52, exactly representable and never 0 or 1;
* normals are the inverse CDF (scipy.special.ndtri) of those uniforms,
  scaled by sigma. The first n uniforms of a trial are the position
  displacements, the next n the momentum displacements.

The inverse-CDF method is pinned deliberately: a ziggurat or polar method
would consume a data-dependent number of words and break the fixed layout.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .errors import ParameterRangeError
from .gkp import GkpLattice, NoiseChannel
from .repetition import RepetitionCode

__all__ = [
    "McConfig",
    "McEstimate",
    "decode_quadrature",
    "sample_gkp_outcomes",
    "simulate_gkp_mode",
    "simulate_rep_code",
]

_PAULIS = ("I", "X", "Y", "Z")
_DEFAULT_CHUNK = 65536


def decode_quadrature(value: float, period: float) -> bool:
    """Whether nearest-lattice-point correction leaves a logical flip.

    The centered remainder rho = value - T round(value / T) (round half to
    even) lies in [-T/2, T/2); the flip fires iff |rho| > T/4. The
    measure-zero boundary |rho| = T/4 counts as no flip.
    """
    if period <= 0.0:
        raise ParameterRangeError("decode_quadrature requires period > 0")
    rho = value - period * round(value / period)
    return abs(rho) > 0.25 * period


def _uniform_open(raw: np.ndarray) -> np.ndarray:
    # (raw >> 12 + 0.5) * 2^-52: 52-bit uniforms strictly inside (0, 1),
    # one per word, exactly representable. Keeps ndtri finite.
    return ((raw >> np.uint64(12)).astype(np.float64) + 0.5) * 2.0**-52


def _flip_matrix(values: np.ndarray, period: float) -> np.ndarray:
    rho = values - period * np.rint(values / period)
    return np.abs(rho) > 0.25 * period


@dataclass(frozen=True)
class McConfig:
    """One reproducible repetition-code experiment."""

    n: int
    r: float
    sigma: float
    trials: int
    seed: int

    def __post_init__(self):
        RepetitionCode(self.n)
        GkpLattice(self.r)
        NoiseChannel(self.sigma)
        if self.trials < 1:
            raise ParameterRangeError("McConfig requires trials >= 1")
        if not (0 <= self.seed < 2**64):
            raise ParameterRangeError("McConfig seed must be a 64-bit integer")

    @property
    def blocks_per_trial(self) -> int:
        """Philox counter blocks reserved per trial: ceil(2n / 4)."""
        return (2 * self.n + 3) // 4


@dataclass(frozen=True)
class McEstimate:
    """Joint logical outcome counts and the derived frequencies."""

    trials: int
    count_i: int
    count_x: int
    count_y: int
    count_z: int

    def __post_init__(self):
        if self.count_i + self.count_x + self.count_y + self.count_z != self.trials:
            raise ParameterRangeError("McEstimate counts must sum to trials")

    @property
    def counts(self):
        return (self.count_i, self.count_x, self.count_y, self.count_z)

    @property
    def p_i(self):
        return self.count_i / self.trials

    @property
    def p_x(self):
        return self.count_x / self.trials

    @property
    def p_y(self):
        return self.count_y / self.trials

    @property
    def p_z(self):
        return self.count_z / self.trials

    @property
    def p_fail(self):
        """Estimated logical error rate 1 - p_i."""
        return (self.count_x + self.count_y + self.count_z) / self.trials

    @property
    def marginal_x(self):
        """Bit-flip marginal (X or Y)."""
        return (self.count_x + self.count_y) / self.trials

    @property
    def marginal_z(self):
        """Phase-flip marginal (Z or Y)."""
        return (self.count_z + self.count_y) / self.trials

    def standard_error(self, p_hat: float) -> float:
        """Binomial standard error sqrt(p(1-p)/trials) of any estimate here."""
        return math.sqrt(p_hat * (1.0 - p_hat) / self.trials)


def _simulate_span(config: McConfig, start: int, count: int, chunk: int) -> np.ndarray:
    """Counts over the contiguous trial span [start, start + count)."""
    n = config.n
    k = (n - 1) // 2
    lattice = GkpLattice(config.r)
    t_q, t_p = lattice.t_q, lattice.t_p
    blocks = config.blocks_per_trial
    words = 4 * blocks
    counts = np.zeros(4, dtype=np.int64)
    done = 0
    while done < count:
        m = min(chunk, count - done)
        bitgen = np.random.Philox(key=config.seed)
        bitgen.advance((start + done) * blocks)
        raw = bitgen.random_raw(m * words).reshape(m, words)[:, : 2 * n]
        draws = config.sigma * ndtri(_uniform_open(raw))
        q_flips = _flip_matrix(draws[:, :n], t_q)
        p_flips = _flip_matrix(draws[:, n:], t_p)
        x_fail = q_flips.sum(axis=1) > k
        z_fail = (p_flips.sum(axis=1) & 1).astype(bool)
        counts[0] += int(np.sum(~x_fail & ~z_fail))
        counts[1] += int(np.sum(x_fail & ~z_fail))
        counts[2] += int(np.sum(x_fail & z_fail))
        counts[3] += int(np.sum(~x_fail & z_fail))
        done += m
    return counts


def simulate_rep_code(config: McConfig, jobs: int = 1,
                      chunk: int = _DEFAULT_CHUNK) -> McEstimate:
    """Estimate the logical channel of a repetition code by direct sampling.

    `jobs` splits the trial range over worker processes and `chunk` bounds
    working-set memory; both are pure performance knobs, the counts are
    identical for every setting (see the module reproducibility contract).
    """
    if jobs < 1:
        raise ParameterRangeError("jobs must be >= 1")
    if chunk < 1:
        raise ParameterRangeError("chunk must be >= 1")
    if jobs == 1 or config.trials < 2 * jobs:
        counts = _simulate_span(config, 0, config.trials, chunk)
    else:
        base, extra = divmod(config.trials, jobs)
        spans = []
        at = 0
        for w in range(jobs):
            size = base + (1 if w < extra else 0)
            spans.append((at, size))
            at += size
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(
                _simulate_span,
                [config] * len(spans),
                [s for s, _ in spans],
                [c for _, c in spans],
                [chunk] * len(spans),
            ))
        counts = np.sum(parts, axis=0)
    return McEstimate(
        trials=config.trials,
        count_i=int(counts[0]),
        count_x=int(counts[1]),
        count_y=int(counts[2]),
        count_z=int(counts[3]),
    )


def sample_gkp_outcomes(r: float, sigma: float, rng: np.random.Generator,
                        size: int) -> np.ndarray:
    """Sample `size` single-mode Pauli outcomes; returns counts (I, X, Y, Z).

    Consumes 2 * size raw words from `rng` (position then momentum per
    outcome), with the same word-to-normal mapping as `simulate_rep_code`.
    """
    if size < 1:
        raise ParameterRangeError("sample_gkp_outcomes requires size >= 1")
    lattice = GkpLattice(r)
    channel = NoiseChannel(sigma)
    raw = rng.bit_generator.random_raw(2 * size).reshape(size, 2)
    draws = channel.sigma * ndtri(_uniform_open(raw))
    x_flip = _flip_matrix(draws[:, 0], lattice.t_q)
    z_flip = _flip_matrix(draws[:, 1], lattice.t_p)
    return np.array([
        int(np.sum(~x_flip & ~z_flip)),
        int(np.sum(x_flip & ~z_flip)),
        int(np.sum(x_flip & z_flip)),
        int(np.sum(~x_flip & z_flip)),
    ], dtype=np.int64)


def simulate_gkp_mode(r: float, sigma: float, rng: np.random.Generator) -> str:
    """One corrected-mode Pauli outcome under the displacement channel.

    Draws the two quadrature displacements from `rng` and decodes each
    against its stabilizer spacing: a surviving q flip is X, a p flip is Z,
    both together Y.
    """
    counts = sample_gkp_outcomes(r, sigma, rng, 1)
    return _PAULIS[int(np.argmax(counts))]
