"""Bit-flip repetition coding over independent, identical GKP qubit channels.

An odd-length repetition code corrects up to k = (n-1)/2 bit flips by
majority vote and leaves phase flips undecoded: a logical Z occurs whenever
an odd number of modes suffers one. With i.i.d. per-mode marginals p_x and
p_z (a Y on a mode counts toward both), the two failure mechanisms are
independent binomial/parity events, so the logical channel factorizes the
same way the single-mode channel does.

Majority vote fails with probability

    Pr(flips > k) = I_p(k+1, k+1),

the regularized incomplete beta function at equal parameters (n - k = k + 1
for odd n). The failure side is always computed directly, never as
1 - success, so small logical rates keep relative precision; successes are
the complements. Code lengths are capped at 10^7, where the beta evaluation
is still certified to 1e-12.
"""

import math
from dataclasses import dataclass

from numba import njit

from .errors import EvenCodeLengthError, ParameterRangeError
from .gkp import GkpLattice, GkpQubitChannel, NoiseChannel, _quadrature_failures
from .special import reg_incomplete_beta

__all__ = [
    "MAX_CODE_LENGTH",
    "LogicalChannel",
    "RepetitionCode",
    "bitflip_success",
    "logical_channel",
    "logical_error_rate",
    "phaseflip_even",
]

MAX_CODE_LENGTH = 10_000_000


@dataclass(frozen=True)
class RepetitionCode:
    """An n-mode bit-flip repetition code, n odd, correcting k = (n-1)/2 flips.

    Even lengths are rejected outright (a tie vote only detects), as are
    lengths beyond `MAX_CODE_LENGTH`.
    """

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterRangeError("RepetitionCode requires n >= 1")
        if self.n % 2 == 0:
            raise EvenCodeLengthError("RepetitionCode requires odd n")
        if self.n > MAX_CODE_LENGTH:
            raise ParameterRangeError(
                "RepetitionCode length capped at %d" % MAX_CODE_LENGTH
            )

    @property
    def k(self) -> int:
        """Number of correctable bit flips."""
        return (self.n - 1) // 2


@dataclass(frozen=True)
class LogicalChannel:
    """Pauli channel of the decoded logical qubit.

    Same product structure as the per-mode channel: bit-flip and phase-flip
    failures are independent, so p_i p_y = p_x p_z.
    """

    p_i: float
    p_x: float
    p_y: float
    p_z: float

    @property
    def p_fail(self) -> float:
        """Total logical error rate 1 - p_i."""
        return self.p_x + self.p_y + self.p_z


@njit(cache=True)
def _bitflip_failure(n, p):
    """Pr(more than (n-1)/2 of n modes flip) = I_p(k+1, k+1)."""
    if not (0.0 <= p <= 1.0):
        raise ParameterRangeError("bit-flip probability must lie in [0, 1]")
    if n == 1:
        return p
    half = 0.5 * (n + 1.0)
    return reg_incomplete_beta(p, half, half)


@njit(cache=True)
def _phaseflip_odd(n, p):
    """Pr(odd number of phase flips among n modes) = (1 - (1-2p)^n) / 2.

    For p <= 1/2 this is -expm1(n log1p(-2p))/2, which keeps relative
    accuracy when n p is small; past 1/2 the same form applied to the
    mirrored base 2p - 1 gives the even-parity side, and the odd side is
    its complement (large there, so the subtraction is benign).
    """
    if not (0.0 <= p <= 1.0):
        raise ParameterRangeError("phase-flip probability must lie in [0, 1]")
    if n == 1:
        return p
    if p <= 0.5:
        return -0.5 * math.expm1(n * math.log1p(-2.0 * p))
    return 1.0 + 0.5 * math.expm1(n * math.log(2.0 * p - 1.0))


@njit(cache=True)
def _rep_failure(n, p_x_marginal, p_z_marginal):
    """Total logical failure rate f_x + f_z - f_x f_z (= 1 - P[I_L])."""
    f_x = _bitflip_failure(n, p_x_marginal)
    f_z = _phaseflip_odd(n, p_z_marginal)
    return f_x + f_z - f_x * f_z


@njit(cache=True)
def _failure_rate(n, r, sigma):
    """Scalar kernel behind logical_error_rate; inputs pre-validated."""
    f_q, f_p = _quadrature_failures(r, sigma)
    return _rep_failure(n, f_q, f_p)


def bitflip_success(code: RepetitionCode, p_x: float) -> float:
    """Probability that majority vote corrects the bit-flip pattern.

    Equals the partial binomial sum sum_{j<=k} C(n,j) p^j (1-p)^(n-j),
    evaluated as 1 - I_p(k+1, k+1) so it works unchanged at n ~ 10^7.
    """
    return 1.0 - _bitflip_failure(code.n, p_x)


def phaseflip_even(code: RepetitionCode, p_z: float) -> float:
    """Probability that an even number of the n modes phase-flips."""
    return 1.0 - _phaseflip_odd(code.n, p_z)


def logical_channel(code: RepetitionCode, gkp: GkpQubitChannel) -> LogicalChannel:
    """Logical Pauli channel of the repetition code over n copies of `gkp`.

    The per-mode marginals p_x + p_y and p_z + p_y drive the two decoders;
    the logical outcomes are their independent products. n = 1 is an
    identity concatenation and passes the channel through unchanged.
    """
    if code.n == 1:
        return LogicalChannel(gkp.p_i, gkp.p_x, gkp.p_y, gkp.p_z)
    f_x = _bitflip_failure(code.n, gkp.p_err_q)
    f_z = _phaseflip_odd(code.n, gkp.p_err_p)
    s_x = 1.0 - f_x
    s_z = 1.0 - f_z
    return LogicalChannel(p_i=s_x * s_z, p_x=f_x * s_z, p_y=f_x * f_z, p_z=s_x * f_z)


def logical_error_rate(n: int, r: float, sigma: float) -> float:
    """Overall logical error rate 1 - P[I_L] of an n-mode code at (r, sigma).

    Composes the single-mode channel with the repetition decoders, but sums
    the failure sides directly (f_x + f_z - f_x f_z) instead of subtracting
    from 1, so deeply suppressed rates come out with relative precision.
    """
    code = RepetitionCode(n)
    lattice = GkpLattice(r)
    channel = NoiseChannel(sigma)
    return _failure_rate(code.n, lattice.r, channel.sigma)
