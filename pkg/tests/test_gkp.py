"""Lattice geometry, squeezing scale, and the effective Pauli channel."""

import math

import numpy as np
import pytest

from gkprep.errors import ParameterRangeError
from gkprep.gkp import (
    SIGMA_VAC,
    GkpLattice,
    NoiseChannel,
    db_from_sigma,
    equivalent_biased_channel,
    gkp_channel,
    pz_erfc_approx,
    quadrature_outcomes,
    sigma_from_db,
)
from gkprep.special import central_bin_mass, outer_bin_mass

TWO_ROOT_PI = 2.0 * math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# squeezing scale
# ---------------------------------------------------------------------------

DB_TABLE = [(0.0, 0.707), (3.0, 0.501), (6.0, 0.354), (9.0, 0.251)]


@pytest.mark.parametrize("db,sigma", DB_TABLE)
def test_db_table(db, sigma):
    assert sigma_from_db(db) == pytest.approx(sigma, abs=5e-4)


def test_db_vacuum_reference():
    assert db_from_sigma(SIGMA_VAC) == 0.0
    assert SIGMA_VAC == math.sqrt(0.5)


def test_db_round_trip():
    for sigma in np.geomspace(0.05, 2.0, 25):
        assert sigma_from_db(db_from_sigma(sigma)) == pytest.approx(sigma, rel=1e-12)


def test_db_monotone():
    sigmas = np.geomspace(0.05, 2.0, 50)
    dbs = [db_from_sigma(s) for s in sigmas]
    assert all(b < a for a, b in zip(dbs, dbs[1:]))


def test_noise_channel_rejects_nonpositive_sigma():
    for sigma in (0.0, -0.3):
        with pytest.raises(ParameterRangeError):
            NoiseChannel(sigma)


# ---------------------------------------------------------------------------
# lattice geometry
# ---------------------------------------------------------------------------

def test_lattice_periods():
    for r in (1.0, 2.0, 2.4, 15.0):
        lat = GkpLattice(r)
        assert lat.t_q == pytest.approx(2.0 * math.sqrt(math.pi / r), rel=1e-15)
        assert lat.t_p == pytest.approx(2.0 * math.sqrt(math.pi * r), rel=1e-15)
        assert lat.t_q * lat.t_p == pytest.approx(4.0 * math.pi, rel=1e-14)


def test_square_lattice_is_isotropic():
    lat = GkpLattice(1.0)
    assert lat.t_q == lat.t_p == pytest.approx(TWO_ROOT_PI, rel=1e-15)


def test_aspect_inversion_exchanges_periods():
    # r < 1 is rejected as a relabeling: the would-be position period of
    # aspect 1/r is exactly the momentum period of aspect r
    for r in (2.0, 4.0, 15.0):
        lat = GkpLattice(r)
        assert lat.t_p == pytest.approx(2.0 * math.sqrt(math.pi / (1.0 / r)),
                                        rel=1e-14)


@pytest.mark.parametrize("r", [0.999, 0.5, 0.0, -2.0])
def test_lattice_rejects_sub_unit_aspect(r):
    with pytest.raises(ParameterRangeError):
        GkpLattice(r)


# ---------------------------------------------------------------------------
# quadrature outcomes
# ---------------------------------------------------------------------------

def test_outcomes_square_lattice():
    out_q, out_p = quadrature_outcomes(GkpLattice(1.0), NoiseChannel(SIGMA_VAC))
    # mpmath erf-sum oracle: 0.79007854666215335
    assert out_q.p_err == pytest.approx(0.21, abs=5e-3)
    assert out_p.p_err == pytest.approx(0.21, abs=5e-3)
    assert out_q.p_ok == pytest.approx(0.79007854666215335, abs=1e-13)
    assert out_q.p_ok == out_p.p_ok


def test_outcomes_rectangular_lattice():
    out_q, out_p = quadrature_outcomes(GkpLattice(2.0), NoiseChannel(SIGMA_VAC))
    assert out_q.p_err == pytest.approx(0.37, abs=5e-3)
    assert out_p.p_err == pytest.approx(0.08, abs=5e-3)
    # mpmath erf-sum oracle
    assert out_q.p_ok == pytest.approx(0.63234009473770649, abs=1e-13)
    assert out_p.p_ok == pytest.approx(0.92368085582568167, abs=1e-13)


def test_outcome_probabilities_are_exact_complements():
    # p_ok saturates to exactly 1.0 once the true failure rate drops under
    # one ulp (e.g. the momentum side at large r and small sigma), so only
    # the lower bound is strict here
    for r in (1.0, 3.3, 8.0):
        for sigma in (0.2, 0.5, 0.9):
            for out in quadrature_outcomes(GkpLattice(r), NoiseChannel(sigma)):
                assert out.p_ok + out.p_err == 1.0
                assert 0.0 < out.p_ok <= 1.0
                assert 0.0 <= out.p_err < 1.0


def test_bias_trades_quadrature_protection():
    # more aspect: position error grows, momentum error shrinks
    sigma = NoiseChannel(0.4)
    rs = np.geomspace(1.0, 15.0, 20)
    errs_q = [quadrature_outcomes(GkpLattice(r), sigma)[0].p_err for r in rs]
    errs_p = [quadrature_outcomes(GkpLattice(r), sigma)[1].p_err for r in rs]
    assert all(b > a for a, b in zip(errs_q, errs_q[1:]))
    assert all(b < a for a, b in zip(errs_p, errs_p[1:]))


# ---------------------------------------------------------------------------
# effective Pauli channel
# ---------------------------------------------------------------------------

def test_channel_reference_values():
    ch = gkp_channel(GkpLattice(2.0), NoiseChannel(SIGMA_VAC))
    # mpmath erf-sum oracle products
    assert ch.p_i == pytest.approx(0.58408043988021741, abs=1e-13)
    assert ch.p_x == pytest.approx(0.33960041594546429, abs=1e-13)
    assert ch.p_y == pytest.approx(0.028059489316829183, abs=1e-13)
    assert ch.p_z == pytest.approx(0.048259654857489117, abs=1e-13)


@pytest.mark.parametrize("r", [1.0, 2.0, 5.5, 15.0])
@pytest.mark.parametrize("sigma", [0.2, 0.5, 0.7071, 1.1])
def test_channel_simplex_and_factorization(r, sigma):
    ch = gkp_channel(GkpLattice(r), NoiseChannel(sigma))
    assert ch.p_i + ch.p_x + ch.p_y + ch.p_z == pytest.approx(1.0, abs=1e-14)
    assert min(ch.p_i, ch.p_x, ch.p_y, ch.p_z) >= 0.0
    # independence of the two quadratures
    assert ch.p_i * ch.p_y == pytest.approx(ch.p_x * ch.p_z, rel=1e-13, abs=1e-300)


@pytest.mark.parametrize("r", [1.0, 2.0, 5.5])
@pytest.mark.parametrize("sigma", [0.2, 0.5, 0.7071])
def test_channel_marginals(r, sigma):
    out_q, out_p = quadrature_outcomes(GkpLattice(r), NoiseChannel(sigma))
    ch = gkp_channel(GkpLattice(r), NoiseChannel(sigma))
    assert ch.p_err_q == pytest.approx(out_q.p_err, rel=1e-14)
    assert ch.p_err_p == pytest.approx(out_p.p_err, rel=1e-14)


def test_channel_noiseless_limit():
    ch = gkp_channel(GkpLattice(2.0), NoiseChannel(0.01))
    assert ch.p_i == 1.0
    assert ch.p_x == ch.p_y == ch.p_z == 0.0


def test_channel_extreme_bias_limit():
    # position quadrature fully scrambled, momentum fully protected
    ch = gkp_channel(GkpLattice(200.0), NoiseChannel(0.5))
    assert ch.p_err_p < 1e-30
    assert ch.p_i == pytest.approx(0.5, abs=1e-3)
    assert ch.p_x == pytest.approx(0.5, abs=1e-3)


# ---------------------------------------------------------------------------
# biased square-lattice equivalence
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("r", [1.0, 2.0, 4.0, 8.0, 15.0])
@pytest.mark.parametrize("sigma", [0.2, 0.4, 0.6])
def test_equivalent_biased_channel(r, sigma):
    lat = GkpLattice(r)
    ch = NoiseChannel(sigma)
    sigma_q, sigma_p = equivalent_biased_channel(lat, ch)
    assert sigma_q == pytest.approx(sigma * math.sqrt(r), rel=1e-15)
    assert sigma_p == pytest.approx(sigma / math.sqrt(r), rel=1e-15)
    out_q, out_p = quadrature_outcomes(lat, ch)
    assert abs(out_q.p_ok - central_bin_mass(sigma_q, TWO_ROOT_PI)) <= 1e-12
    assert abs(out_p.p_ok - central_bin_mass(sigma_p, TWO_ROOT_PI)) <= 1e-12


# ---------------------------------------------------------------------------
# erfc tail bound
# ---------------------------------------------------------------------------

def test_pz_bound_reference():
    bound = pz_erfc_approx(GkpLattice(2.0), NoiseChannel(SIGMA_VAC))
    assert bound == pytest.approx(0.076319249457054720, rel=1e-13)  # mpmath erfc


def test_pz_bound_dominates_exact_rate():
    # compare against the failure-side sum, which stays relatively accurate
    # when the rate drops below the 1 - p_ok ulp floor
    for r in (2.0, 4.0, 8.0, 16.0):
        for sigma in (0.3, 0.5, SIGMA_VAC):
            lat, ch = GkpLattice(r), NoiseChannel(sigma)
            exact = outer_bin_mass(sigma, lat.t_p)
            assert pz_erfc_approx(lat, ch) >= exact * (1.0 - 1e-12)


def test_pz_bound_tightens_with_aspect():
    # sigma chosen so the relative gap stays above double resolution over
    # the whole r range (it decays like erfc(3c)/erfc(c) with c ~ sqrt(r))
    sigma = NoiseChannel(1.2)
    gaps = []
    for r in (2.0, 4.0, 8.0, 16.0):
        lat = GkpLattice(r)
        exact = outer_bin_mass(sigma.sigma, lat.t_p)
        gaps.append((pz_erfc_approx(lat, sigma) - exact) / exact)
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert 0.0 <= gaps[-1] < 1e-10
