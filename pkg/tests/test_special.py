"""Accuracy tests for the scalar special-function layer.

Reference values were computed independently with mpmath at 50
significant digits (mp.ncdf, mp.jtheta, erf/erfc sums, and log-domain
quadrature of the beta integrand for the huge-parameter cases) and are
frozen here as literals.
"""

import math

import numpy as np
import pytest

from gkprep.errors import ParameterRangeError
from gkprep.special import (
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

TWO_ROOT_PI = 2.0 * math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# standard normal CDF
# ---------------------------------------------------------------------------

# mpmath mp.ncdf at 50 digits
PHI_TABLE = [
    (-8.0, 6.2209605742717841e-16),
    (-4.0, 3.1671241833119921e-5),
    (-2.0, 0.022750131948179207),
    (-1.2533, 0.10504827422342763),
    (-1.0, 0.15865525393145705),
    (-0.5, 0.30853753872598690),
    (0.5, 0.69146246127401310),
    (1.0, 0.84134474606854295),
    (2.0, 0.97724986805182079),
    (4.0, 0.99996832875816688),
    (8.0, 0.99999999999999938),
]


@pytest.mark.parametrize("x,expected", PHI_TABLE)
def test_std_normal_cdf_reference(x, expected):
    assert std_normal_cdf(x) == pytest.approx(expected, rel=1e-14)


def test_std_normal_cdf_center():
    assert std_normal_cdf(0.0) == 0.5


def test_std_normal_cdf_reflection():
    for x in np.linspace(-8.0, 8.0, 81):
        assert std_normal_cdf(x) + std_normal_cdf(-x) == pytest.approx(1.0, abs=1e-15)


def test_std_normal_cdf_monotone():
    grid = np.linspace(-12.0, 12.0, 2001)
    values = [std_normal_cdf(x) for x in grid]
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert all(0.0 <= v <= 1.0 for v in values)


# ---------------------------------------------------------------------------
# Jacobi theta series
# ---------------------------------------------------------------------------

# mpmath jtheta(3, pi z, exp(-pi tau)) at 50 digits
THETA_TABLE = [
    (0.0, 1.0, 1.0864348112133080),
    (0.3, 0.8, 0.94986798513848477),
    (0.123, 2.5, 1.0005558576730354),
    (0.5, 0.3, 0.26637230805362245),
    (0.25, 0.05, 0.088113926700242327),
]


@pytest.mark.parametrize("z,tau,expected", THETA_TABLE)
def test_theta3_reference(z, tau, expected):
    assert jacobi_theta3(z, tau) == pytest.approx(expected, rel=1e-12)


def test_theta3_large_tau_limit():
    # only the m = 0 term survives
    assert jacobi_theta3(0.77, 60.0) == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("z", [0.0, 0.21, -0.4, 0.5])
@pytest.mark.parametrize("tau", [0.2, 1.0, 3.0])
def test_theta3_periodicity(z, tau):
    assert jacobi_theta3(z + 1.0, tau) == pytest.approx(
        jacobi_theta3(z, tau), rel=1e-13)


@pytest.mark.parametrize("tau", [0.0, -1.0])
def test_theta3_rejects_nonpositive_tau(tau):
    with pytest.raises(ParameterRangeError):
        jacobi_theta3(0.1, tau)


def test_theta3_term_cap_is_diagnostic():
    # tau so small the envelope needs ~1e5 terms: must fail loudly, not
    # return a silently truncated sum
    with pytest.raises(ParameterRangeError):
        jacobi_theta3(0.0, 1e-9)


# ---------------------------------------------------------------------------
# wrapped Gaussian density
# ---------------------------------------------------------------------------

# mpmath (1/T) jtheta(3, pi u/T, exp(-2 pi^2 s^2/T^2)) at 50 digits
WRAPPED_TABLE = [
    (0.13, 0.3, 1.0, 1.2315811804076173),
    (0.13, 2.0, 1.0, 1.0000000000000000),
    (1.1, 0.45, 2.5066282746310002, 0.051384948049228348),
    (0.0, 0.7071067811865476, TWO_ROOT_PI, 0.56419351859221950),
]


@pytest.mark.parametrize("u,sigma,period,expected", WRAPPED_TABLE)
def test_wrapped_pdf_reference(u, sigma, period, expected):
    assert wrapped_pdf(u, sigma, period) == pytest.approx(expected, rel=1e-13)


def test_wrapped_pdf_dual_representations():
    # comb and theta forms must agree across the full supported ratio range;
    # the switched public form must also stay nonnegative (the raw theta
    # series may cancel to a negative few-ulp residue in its off-regime)
    ratios = np.geomspace(0.05, 20.0, 31)
    for period in (0.7, TWO_ROOT_PI, 3.2):
        for ratio in ratios:
            sigma = ratio * period
            for frac in (0.0, 0.11, 0.25, -0.37, 0.49, -0.5):
                u = frac * period
                comb = wrapped_pdf_comb(u, sigma, period)
                theta = wrapped_pdf_theta(u, sigma, period)
                assert abs(comb - theta) <= 1e-12
                assert wrapped_pdf(u, sigma, period) >= 0.0


def test_wrapped_pdf_uniform_limit():
    for period in (0.5, 1.0, TWO_ROOT_PI):
        sigma = 100.0 * period
        for frac in (0.0, 0.2, -0.45):
            assert wrapped_pdf(frac * period, sigma, period) == pytest.approx(
                1.0 / period, abs=1e-10)


def test_wrapped_pdf_matches_brute_force_comb():
    sigma, period = 0.7071, TWO_ROOT_PI
    norm = 1.0 / (sigma * math.sqrt(2.0 * math.pi))
    brute = math.fsum(
        norm * math.exp(-0.5 * ((k * period) / sigma) ** 2)
        for k in range(-50, 51)
    )
    assert wrapped_pdf(0.0, sigma, period) == pytest.approx(brute, rel=1e-13)


def test_wrapped_pdf_reduces_argument_to_fundamental_domain():
    # -3.7 + 2*2.0 = 0.3
    inside = wrapped_pdf(0.3, 0.6, 2.0)
    assert wrapped_pdf(-3.7, 0.6, 2.0) == pytest.approx(inside, rel=1e-12)
    # the right edge maps to the left edge
    assert wrapped_pdf(1.0, 0.6, 2.0) == pytest.approx(
        wrapped_pdf(-1.0, 0.6, 2.0), rel=1e-12)


@pytest.mark.parametrize("sigma,period", [(0.3, 1.0), (2.0, 1.0),
                                          (0.7071, TWO_ROOT_PI), (0.05, 1.0)])
def test_wrapped_pdf_normalization(sigma, period):
    # midpoint rule over one period; superexponentially accurate for a
    # smooth periodic integrand
    m = 4096
    step = period / m
    u = -0.5 * period + (np.arange(m) + 0.5) * step
    total = math.fsum(wrapped_pdf(v, sigma, period) for v in u) * step
    assert total == pytest.approx(1.0, abs=1e-12)


def test_wrapped_gaussian_type():
    wg = WrappedGaussian(sigma=0.5, period=2.0)
    assert wg.pdf(0.3) == wrapped_pdf(0.3, 0.5, 2.0)
    with pytest.raises(ParameterRangeError):
        WrappedGaussian(sigma=0.0, period=2.0)
    with pytest.raises(ParameterRangeError):
        WrappedGaussian(sigma=0.5, period=-1.0)


# ---------------------------------------------------------------------------
# bin masses
# ---------------------------------------------------------------------------

# mpmath erf-sum oracle at 50 digits
CENTRAL_TABLE = [
    (0.1, 1.0, 0.98758066934851155),
    (0.7071067811865476, TWO_ROOT_PI, 0.79007854666215335),
    (0.7071067811865476, 2.5066282746310005, 0.63234009473770649),
    (0.7071067811865476, 5.0132565492620010, 0.92368085582568167),
    (0.3, 2.2882280821594225, 0.94346086855865690),
    (0.3, 5.4917473971826140, 0.99999527081252703),
    (0.7, 1.0, 0.50004011360443954),
    (0.5, 3.0, 0.86639239280846951),
    (0.5, TWO_ROOT_PI, 0.92368085582568170),
]


@pytest.mark.parametrize("sigma,period,expected", CENTRAL_TABLE)
def test_central_bin_mass_reference(sigma, period, expected):
    assert central_bin_mass(sigma, period) == pytest.approx(expected, abs=1e-13)
    assert 0.0 < central_bin_mass(sigma, period) < 1.0


def test_central_bin_mass_small_sigma_limit():
    assert central_bin_mass(0.001, 1.0) == pytest.approx(1.0, abs=1e-15)


def test_central_bin_mass_monotone_in_sigma():
    # strict in exact arithmetic; in float64 the mass saturates to exactly
    # 1.0 below sigma/T ~ 0.03 and to exactly 0.5 above sigma/T ~ 1.35, so
    # test the representable band
    for period in (1.0, TWO_ROOT_PI):
        sigmas = np.linspace(0.08, 1.2, 60) * period
        masses = [central_bin_mass(s, period) for s in sigmas]
        assert all(b < a for a, b in zip(masses, masses[1:]))


def test_central_bin_mass_monotone_in_period():
    periods = np.linspace(0.5, 8.0, 60)
    masses = [central_bin_mass(0.6, t) for t in periods]
    assert all(b > a for a, b in zip(masses, masses[1:]))


def test_outer_bin_mass_complements_central():
    for sigma in (0.2, 0.5, 0.7071, 1.5, 4.0):
        for period in (1.0, TWO_ROOT_PI, 5.0):
            total = central_bin_mass(sigma, period) + outer_bin_mass(sigma, period)
            assert total == pytest.approx(1.0, abs=1e-14)


def test_outer_bin_mass_far_below_double_complement_floor():
    # 1 - central_bin_mass would round to zero here; the direct failure-side
    # sum must stay relatively accurate
    expected = 2.7112893156833375e-70  # mpmath erfc sum
    assert outer_bin_mass(0.05, TWO_ROOT_PI) == pytest.approx(expected, rel=1e-10)


# ---------------------------------------------------------------------------
# regularized incomplete beta
# ---------------------------------------------------------------------------

# mpmath betainc(regularized) at 50 digits
BETA_MODERATE = [
    (0.3, 2.0, 5.0, 0.57982500000000000),
    (0.9, 2.0, 2.0, 0.97200000000000000),
    (0.7, 10.5, 3.25, 0.26480115319386282),
    (1e-4, 5.0, 5.0, 1.2595800539968501e-18),
    (0.8, 0.5, 0.5, 0.70483276469913345),
    (0.25, 0.5, 1.5, 0.60899778104422936),
]

# log-domain quadrature oracle at 60 digits (hyp2f1 diverges up here)
BETA_HUGE = [
    (0.4999, 5e6, 5e6, 0.26354463153141826),
    (0.4995, 5e6, 5e6, 0.00078269921641982260),
    (0.499, 5e6, 5e6, 1.2697635901159107e-10),
    (0.498, 5e6, 5e6, 5.6537997367556655e-37),
    (0.500001, 5e6, 5e6, 0.50252311563816308),
    (0.497, 500001.0, 500001.0, 9.8623226160229190e-10),
    (0.48, 5000.0, 5000.0, 3.1470916320310295e-5),
    (0.52, 5000.0, 5000.0, 0.99996852908367969),
]


@pytest.mark.parametrize("x,a,b,expected", BETA_MODERATE)
def test_reg_incomplete_beta_moderate(x, a, b, expected):
    assert reg_incomplete_beta(x, a, b) == pytest.approx(expected, abs=1e-13)


@pytest.mark.parametrize("x,a,b,expected", BETA_HUGE)
def test_reg_incomplete_beta_huge(x, a, b, expected):
    value = reg_incomplete_beta(x, a, b)
    assert value == pytest.approx(expected, abs=1e-12)
    # the tiny tail values must also be relatively accurate, or downstream
    # logical rates near zero lose all their digits
    assert value == pytest.approx(expected, rel=5e-11)


def test_reg_incomplete_beta_edges():
    assert reg_incomplete_beta(0.0, 3.0, 4.0) == 0.0
    assert reg_incomplete_beta(1.0, 3.0, 4.0) == 1.0
    assert reg_incomplete_beta(0.5, 5e6, 5e6) == 0.5


@pytest.mark.parametrize("x,a,b", [(-0.1, 2.0, 2.0), (1.1, 2.0, 2.0),
                                   (0.5, 0.0, 2.0), (0.5, 2.0, -3.0)])
def test_reg_incomplete_beta_domain(x, a, b):
    with pytest.raises(ParameterRangeError):
        reg_incomplete_beta(x, a, b)


def test_reg_incomplete_beta_reflection():
    cases = [(0.3, 2.0, 5.0), (0.7, 10.5, 3.25), (0.123, 0.5, 1.5),
             (0.4995, 5e6, 5e6), (0.48, 5000.0, 5000.0)]
    for x, a, b in cases:
        total = reg_incomplete_beta(x, a, b) + reg_incomplete_beta(1.0 - x, b, a)
        assert total == pytest.approx(1.0, abs=1e-12)


def test_reg_incomplete_beta_matches_binomial_cdf():
    # P(X <= k) for X ~ Binomial(n, p) equals I_{1-p}(n-k, k+1)
    for n in range(1, 21):
        for p in (0.01, 0.1, 0.3, 0.5):
            for k in range(n):
                direct = math.fsum(
                    math.comb(n, j) * p**j * (1.0 - p) ** (n - j)
                    for j in range(k + 1)
                )
                via_beta = reg_incomplete_beta(1.0 - p, n - k, k + 1)
                assert abs(direct - via_beta) <= 1e-12
